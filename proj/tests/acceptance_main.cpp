// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (all checks here are exact) and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "weilkit/commands.hpp"

using namespace weilkit;
namespace fs = std::filesystem;

#ifndef WEILKIT_SOURCE_DIR
#define WEILKIT_SOURCE_DIR "."
#endif

namespace {

int failures = 0;

void criterion(int number, const std::string& what, bool pass) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << what << "\n";
  if (!pass) ++failures;
}

AlgebraPtr f4() {
  BaseField k = BaseField::gf(2);
  return EtaleAlgebra::make(k, {k.one(), k.one(), k.one()});
}
AlgebraPtr f8() {
  BaseField k = BaseField::gf(2);
  return EtaleAlgebra::make(k, {k.one(), k.one(), k.zero(), k.one()});
}
AlgebraPtr f25() {
  BaseField k = BaseField::gf(5);
  return EtaleAlgebra::make(k, {k.from_int(2), k.zero(), k.one()});
}
AlgebraPtr qi() {
  BaseField k = BaseField::rationals();
  return EtaleAlgebra::make(k, {k.one(), k.zero(), k.one()});
}
AlgebraPtr qcbrt2() {
  BaseField k = BaseField::rationals();
  return EtaleAlgebra::make(k, {k.from_int(-2), k.zero(), k.zero(), k.one()});
}

SchemePtr affine(AlgebraPtr l, int n) {
  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
  return AffineScheme::make(std::move(l), std::move(vars), {});
}

SchemePtr gm(AlgebraPtr l) {
  auto r = PolyRing::make(std::move(l), {"x", "y"});
  return AffineScheme::make(r, {Poly::variable(r, 0) * Poly::variable(r, 1) - Poly::from_int(r, 1)});
}

SchemePtr circle(AlgebraPtr l) {
  auto r = PolyRing::make(std::move(l), {"x", "y"});
  Poly x = Poly::variable(r, 0), y = Poly::variable(r, 1);
  return AffineScheme::make(r, {x * x + y * y - Poly::from_int(r, 1)});
}

SchemePtr cubic(AlgebraPtr l) {
  auto r = PolyRing::make(std::move(l), {"x", "y"});
  Poly x = Poly::variable(r, 0), y = Poly::variable(r, 1);
  return AffineScheme::make(r, {y * y - x * x * x - x});
}

SchemePtr cusp(AlgebraPtr l) {
  auto r = PolyRing::make(std::move(l), {"x", "y"});
  Poly x = Poly::variable(r, 0), y = Poly::variable(r, 1);
  return AffineScheme::make(r, {y * y - x * x * x});
}

BundlePresentation free_bundle(SchemePtr x, std::size_t rank) {
  std::vector<std::vector<Poly>> p(rank, std::vector<Poly>(rank, Poly::zero(x->ring())));
  for (std::size_t i = 0; i < rank; ++i) p[i][i] = Poly::from_int(x->ring(), 1);
  return make_bundle(std::move(x), p, rank);
}

BundlePresentation circle_bundle() {
  SchemePtr c = circle(f25());
  auto r = c->ring();
  Poly x = Poly::variable(r, 0), y = Poly::variable(r, 1);
  AlgElem three = r->coeff->from_int(3);
  std::vector<std::vector<Poly>> p{
      {(Poly::from_int(r, 1) + x).scaled(three), y.scaled(three)},
      {y.scaled(three), (Poly::from_int(r, 1) - x).scaled(three)}};
  return make_bundle(c, p, 1);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// the scheme corpus used by the cross-cutting criteria
struct CorpusEntry {
  std::string name;
  SchemePtr scheme;
};

std::vector<CorpusEntry> scheme_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"A1/F4", affine(f4(), 1)});
  out.push_back({"A2/F4", affine(f4(), 2)});
  out.push_back({"Gm/F4", gm(f4())});
  out.push_back({"A1/F8", affine(f8(), 1)});
  out.push_back({"A1/F25", affine(f25(), 1)});
  out.push_back({"Gm/F25", gm(f25())});
  out.push_back({"circle/F25", circle(f25())});
  out.push_back({"cubic/F25", cubic(f25())});
  out.push_back({"A1/QQ(i)", affine(qi(), 1)});
  out.push_back({"Gm/QQ(i)", gm(qi())});
  return out;
}

bool criterion_1() {
  bool ok = true;
  for (int d : {2, 3}) {
    for (int n = 1; n <= 3; ++n) {
      for (AlgebraPtr l : {d == 2 ? f4() : f8(), d == 2 ? qi() : qcbrt2()}) {
        auto start = std::chrono::steady_clock::now();
        RestrictionResult rx = restrict_scheme(affine(l, n));
        bool this_ok = rx.result->nvars() == static_cast<std::size_t>(n * d) &&
                       rx.result->generators().empty() && rx.result->gb().basis().empty();
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        ok = ok && this_ok && ms < 1000.0;
      }
    }
  }
  return ok;
}

bool criterion_2() {
  bool ok = true;
  // triangle identities across the corpus, with a k-scheme on the unit side
  for (const auto& entry : scheme_corpus()) {
    SchemePtr y = affine(EtaleAlgebra::trivial(entry.scheme->base()->base()), 1);
    TriangleReport rep = triangle_identities(entry.scheme, y);
    if (!rep.ok) {
      std::cout << "  triangles failed on " << entry.name << "\n";
      ok = false;
    }
  }
  // adjunction bijections over F4/F2 and F25/F5, test fields up to 625
  // elements, within the enumeration budget
  int attempted = 0;
  for (const auto& entry : scheme_corpus()) {
    const BaseField& base = entry.scheme->base()->base();
    if (!base.is_finite() || entry.scheme->base()->is_trivial()) continue;
    std::uint64_t p = base.characteristic();
    for (std::uint32_t s = 1; s <= 2; ++s) {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < s; ++i) q *= p;
      if (q > 625) continue;
      TestAlgebra a = TestAlgebra::finite_field(p, s);
      try {
        RestrictionResult rx = restrict_scheme(entry.scheme);
        auto start = std::chrono::steady_clock::now();
        AdjunctionReport rep = adjunction_bijection(rx, a);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        ++attempted;
        if (!rep.ok || ms > 10000.0) {
          std::cout << "  adjunction failed on " << entry.name << " at " << a.label() << "\n";
          ok = false;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::budget_exceeded) throw;  // budget skips are legal
      }
    }
  }
  return ok && attempted >= 8;
}

bool criterion_3() {
  bool ok = true;
  // base change: three instances
  ok = ok && base_change_compat(gm(f4()), affine(EtaleAlgebra::trivial(BaseField::gf(2)), 1)).ok;
  ok = ok && base_change_compat(circle(f25()), affine(EtaleAlgebra::trivial(BaseField::gf(5)), 2)).ok;
  {
    SchemePtr u = affine(EtaleAlgebra::trivial(BaseField::rationals()), 1);
    OpenSubscheme dh = distinguished_open(u, Poly::variable(u->ring(), 0));
    ok = ok && base_change_compat(affine(qi(), 1), dh.scheme).ok;
    ok = ok && base_change_compat(gm(f4()), affine(EtaleAlgebra::trivial(BaseField::gf(2)), 0)).ok;
  }
  // fiber products: three instances
  {
    SchemePtr a1 = affine(f4(), 1);
    SchemePtr pt = affine(f4(), 0);
    auto f = SchemeMorphism::make(a1, pt, {});
    ok = ok && fiber_product_compat(f, f).ok;
    auto id = SchemeMorphism::identity(gm(f4()));
    ok = ok && fiber_product_compat(id, id).ok;
    OpenSubscheme dx = distinguished_open(a1, Poly::variable(a1->ring(), 0));
    ClosedSubscheme vc = closed_subscheme(
        a1, {Poly::variable(a1->ring(), 0) - Poly::constant(a1->ring(), f4()->gen())});
    ok = ok && fiber_product_compat(dx.inclusion, vc.inclusion).ok;
  }
  return ok;
}

bool criterion_4() {
  bool ok = true;
  // closed embeddings and their restrictions
  {
    SchemePtr a2 = affine(f4(), 2);
    ClosedSubscheme axis = closed_subscheme(a2, {Poly::variable(a2->ring(), 1)});
    ok = ok && is_closed_embedding(axis.inclusion).closed_embedding;
    RestrictionResult rs = restrict_scheme(axis.scheme);
    RestrictionResult rt = restrict_scheme(a2);
    ok = ok && is_closed_embedding(restrict_morphism(axis.inclusion, rs, rt)).closed_embedding;
    // G_m into A^1 is not closed
    SchemePtr a1 = affine(f4(), 1);
    auto gm4 = gm(f4());
    auto incl = SchemeMorphism::make(gm4, a1, {Poly::variable(gm4->ring(), 0)});
    ok = ok && !is_closed_embedding(incl).closed_embedding;
  }
  // smoothness certificates: G_m, circle, cubic; the cusp must be refuted
  ok = ok && is_smooth(gm(f4()), 1).smooth;
  ok = ok && is_smooth(circle(f25()), 1).smooth;
  ok = ok && is_smooth(cubic(f25()), 1).smooth;
  {
    SmoothnessReport rep = is_smooth(cusp(qi()), 1);
    bool refuted_with_witness = !rep.smooth && !rep.jacobian_ideal_basis.empty() &&
                                rep.jacobian_ideal_basis != std::vector<std::string>{"1"};
    ok = ok && refuted_with_witness;
    // and the restrictions of the smooth examples stay smooth
    RestrictionResult rx = restrict_scheme(gm(f4()));
    ok = ok && is_smooth(rx.result, 2).smooth;
    RestrictionResult rc = restrict_scheme(circle(f25()));
    ok = ok && is_smooth(rc.result, 2).smooth;
  }
  // etale certificates: the z^2 - x cover of G_m in char 5, plus restriction
  {
    auto r = PolyRing::make(f25(), {"x", "y", "z"});
    Poly x = Poly::variable(r, 0), y = Poly::variable(r, 1), z = Poly::variable(r, 2);
    SchemePtr cover = AffineScheme::make(r, {x * y - Poly::from_int(r, 1), z * z - x});
    SchemePtr gm25 = gm(f25());
    auto m = SchemeMorphism::make(cover, gm25, {Poly::variable(r, 0), Poly::variable(r, 1)});
    ok = ok && is_etale_morphism(m).etale;
    RestrictionResult rs = restrict_scheme(cover);
    RestrictionResult rt = restrict_scheme(gm25);
    ok = ok && is_etale_morphism(restrict_morphism(m, rs, rt)).etale;
    // Frobenius is not etale
    SchemePtr line2 = affine(EtaleAlgebra::trivial(BaseField::gf(2)), 1);
    auto frob = SchemeMorphism::make(
        line2, line2, {Poly::variable(line2->ring(), 0) * Poly::variable(line2->ring(), 0)});
    ok = ok && !is_etale_morphism(frob).etale;
  }
  // norm-open comparisons
  for (auto& [x, g] : std::vector<std::pair<SchemePtr, int>>{
           {affine(f4(), 1), 0}, {affine(qi(), 1), 0}, {gm(f4()), 0}, {circle(f25()), 0}}) {
    NormOpenReport rep = restrict_open(x, Poly::variable(x->ring(), static_cast<std::size_t>(g)));
    ok = ok && rep.comparison.ok;
    if (x->base()->base().is_finite()) {
      TestAlgebra a = TestAlgebra::finite_field(x->base()->base().characteristic());
      ok = ok && norm_open_point_check(rep, Poly::variable(x->ring(), 0), a).ok;
    }
  }
  return ok;
}

bool criterion_5() {
  bool ok = true;
  // the free bundle on G_m and the circle bundle; make_bundle re-validates
  // idempotency exactly and the rank at every enumerated point
  for (auto& e : std::vector<BundlePresentation>{free_bundle(gm(f4()), 2), circle_bundle()}) {
    RestrictedBundle rb = restrict_bundle(e);
    ok = ok && rb.bundle.rank == e.rank * static_cast<std::size_t>(rb.rx.algebra->degree());
    ok = ok && rb.total_space_compat.ok;
    // explicit exactness check of P'^2 = P' modulo the ideal
    const auto& p = rb.bundle.projector;
    const auto& gb = rb.bundle.base_scheme->gb();
    for (std::size_t i = 0; i < p.size() && ok; ++i)
      for (std::size_t j = 0; j < p.size() && ok; ++j) {
        Poly acc = Poly::zero(rb.bundle.base_scheme->ring());
        for (std::size_t k = 0; k < p.size(); ++k) acc = acc + p[i][k] * p[k][j];
        ok = ok && gb.normal_form(acc - p[i][j]).is_zero();
      }
  }
  return ok;
}

bool criterion_6() {
  bool ok = true;
  // presentation-level isomorphism for two complete intersections
  {
    SchemePtr a2 = affine(f4(), 2);
    ClosedSubscheme axis = closed_subscheme(a2, {Poly::variable(a2->ring(), 1)});
    NormalCompatReport rep = normal_compat(
        axis.scheme, {TestAlgebra::finite_field(2), TestAlgebra::finite_field(2, 2)});
    ok = ok && rep.ok && rep.presentation_checked;
    int ran = 0;
    for (const auto& f : rep.fiberwise)
      if (!f.skipped) ++ran;
    ok = ok && ran == 2;
  }
  {
    SchemePtr amb = affine(f25(), 2);
    auto r = amb->ring();
    Poly x = Poly::variable(r, 0), y = Poly::variable(r, 1);
    ClosedSubscheme e = closed_subscheme(amb, {y * y - x * x * x - x});
    NormalCompatReport rep = normal_compat(e.scheme, {TestAlgebra::finite_field(5)});
    ok = ok && rep.ok && rep.presentation_checked;
    ok = ok && !rep.fiberwise.empty() && !rep.fiberwise[0].skipped && rep.fiberwise[0].points > 0;
  }
  {
    // codimension 2 over F4
    SchemePtr a3 = affine(f4(), 3);
    ClosedSubscheme p = closed_subscheme(
        a3, {Poly::variable(a3->ring(), 1), Poly::variable(a3->ring(), 2)});
    NormalCompatReport rep = normal_compat(
        p.scheme, {TestAlgebra::finite_field(2), TestAlgebra::finite_field(2, 2)});
    ok = ok && rep.ok && rep.presentation_checked;
  }
  return ok;
}

std::vector<BundlePresentation> bundle_corpus() {
  std::vector<BundlePresentation> out;
  out.push_back(free_bundle(affine(f4(), 0), 1));
  out.push_back(free_bundle(affine(f4(), 1), 1));
  out.push_back(free_bundle(gm(f4()), 1));
  out.push_back(free_bundle(gm(f4()), 2));
  out.push_back(circle_bundle());
  // the zero bundle
  SchemePtr a1 = affine(f4(), 1);
  out.push_back(make_bundle(a1, {{Poly::zero(a1->ring())}}, 0));
  return out;
}

bool criterion_7() {
  bool ok = true;
  for (const auto& e : bundle_corpus()) {
    ZeroSectionReport rep = restrict_zero_section(e);
    if (!rep.ok) ok = false;
  }
  // and over QQ(i)
  ok = ok && restrict_zero_section(free_bundle(affine(qi(), 1), 1)).ok;
  return ok;
}

bool criterion_8() {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (const auto& e : bundle_corpus()) {
    std::uint64_t q = e.base_scheme->base()->base().characteristic();
    ThomCompareReport rep = thom_compare(e, q);
    if (!rep.ok) {
      std::cout << "  thom_compare failed on a corpus bundle\n";
      ok = false;
    }
    Step2Report s2 = step2_check(e, TestAlgebra::finite_field(q));
    if (!s2.skipped && !s2.ok) ok = false;
    Step2Report s2d = step2_check(e, TestAlgebra::dual_numbers(q));
    if (!s2d.skipped && !s2d.ok) ok = false;
  }
  // gysin shadows
  {
    SchemePtr a2 = affine(f4(), 2);
    ClosedSubscheme axis = closed_subscheme(a2, {Poly::variable(a2->ring(), 1)});
    GysinReport g = gysin_shadow(axis.scheme, TestAlgebra::finite_field(2, 2));
    ok = ok && g.ok && g.thom_classes == 5;
    SchemePtr amb = affine(f25(), 2);
    Poly x = Poly::variable(amb->ring(), 0), y = Poly::variable(amb->ring(), 1);
    ClosedSubscheme e = closed_subscheme(amb, {y * y - x * x * x - x});
    ok = ok && gysin_shadow(e.scheme, TestAlgebra::finite_field(5, 2)).ok;
  }
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (ms >= 30000.0) {
    std::cout << "  thom criterion exceeded 30 s (" << ms << " ms)\n";
    ok = false;
  }
  return ok;
}

bool criterion_9() {
  bool ok = true;
  for (const auto& entry : scheme_corpus()) {
    if (entry.scheme->base()->is_trivial()) continue;
    try {
      GaloisReport rep = galois_decomposition(entry.scheme);
      ok = ok && rep.comparison.ok && rep.idempotents_ok;
      RestrictionResult rx = restrict_scheme(entry.scheme);
      GaloisCountReport counts = galois_count_check(rep, rx);
      ok = ok && counts.ok;
      if (entry.name == "Gm/F4")
        ok = ok && counts.left == 9 && counts.right.size() == 2 && counts.right[0] == 3 &&
             counts.right[1] == 3;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::budget_exceeded) throw;
    }
  }
  return ok;
}

bool criterion_10() {
  bool ok = true;
  for (const auto& entry : scheme_corpus()) {
    for (int n = 0; n <= 2; ++n) {
      AffineShadowReport rep = affine_shadow(entry.scheme, n);
      if (!rep.ok) {
        std::cout << "  affine shadow failed on " << entry.name << " n=" << n << "\n";
        ok = false;
      }
    }
  }
  return ok;
}

bool criterion_11() {
  fs::path root(WEILKIT_SOURCE_DIR);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root / "corpus"))
    if (entry.path().extension() == ".wk") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) return false;
  bool ok = true;
  for (const auto& file : files) {
    std::string src = slurp(file);
    Session s1 = parse_session(src);
    Session s2 = parse_session(src);
    std::string run1 = reports_to_json(run_session(s1), false).dump(2);
    std::string run2 = reports_to_json(run_session(s2), false).dump(2);
    if (run1 != run2) {
      std::cout << "  nondeterministic output for " << file.filename().string() << "\n";
      ok = false;
    }
    fs::path golden = root / "tests" / "golden" / (file.stem().string() + ".json");
    if (!fs::exists(golden) || run1 + "\n" != slurp(golden)) {
      std::cout << "  golden mismatch for " << file.filename().string() << "\n";
      ok = false;
    }
    for (const auto& r : run_session(s1))
      if (r.status != Report::Status::verified && r.status != Report::Status::skipped) {
        std::cout << "  corpus command not verified: " << r.command << "\n";
        ok = false;
      }
  }
  return ok;
}

}  // namespace

int main() {
  criterion(1, "restriction of affine spaces is an affine space with empty reduced basis",
            criterion_1());
  criterion(2, "triangle identities and exhaustive adjunction bijections", criterion_2());
  criterion(3, "base change and fiber product comparisons", criterion_3());
  criterion(4, "preservation of closed embeddings, smoothness, etaleness, opens via norms",
            criterion_4());
  criterion(5, "restricted bundles: exact idempotents, rank r*d, total-space compatibility",
            criterion_5());
  criterion(6, "normal bundle comparison: presentation-level and fiberwise", criterion_6());
  criterion(7, "zero sections are preserved on the bundle corpus", criterion_7());
  criterion(8, "Thom compatibility, step-2 equivalence and Gysin shadows", criterion_8());
  criterion(9, "tensor-split idempotents and Galois point-count decomposition", criterion_9());
  criterion(10, "A^1-shadow: restriction of X x A^n matches R(X) x A^(n d)", criterion_10());
  criterion(11, "byte-identical corpus runs and golden files", criterion_11());
  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
