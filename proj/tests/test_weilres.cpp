#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_helpers.hpp"
#include "weilkit/points.hpp"

using namespace weilkit;

namespace {

SchemePtr gm(AlgebraPtr base) {
  auto R = wt::ring(base, {"x", "y"});
  return AffineScheme::make(R, {wt::var(R, 0) * wt::var(R, 1) - wt::cnst(R, 1)});
}

SchemePtr affine_space(AlgebraPtr base, std::vector<std::string> vars) {
  return AffineScheme::make(std::move(base), std::move(vars), {});
}

}  // namespace

TEST_CASE("restriction sends affine spaces to affine spaces") {
  auto rx = restrict_scheme(affine_space(wt::f4(), {"x"}));
  CHECK(rx.result->nvars() == 2);
  CHECK(rx.result->generators().empty());
  CHECK(rx.result->vars() == std::vector<std::string>{"x_0", "x_1"});
  CHECK(rx.result->gb().basis().empty());

  // A^0 goes to A^0
  auto r0 = restrict_scheme(affine_space(wt::f4(), {}));
  CHECK(r0.result->nvars() == 0);
  CHECK(r0.result->generators().empty());

  // degree 3
  auto r3 = restrict_scheme(affine_space(wt::f8(), {"x", "y"}));
  CHECK(r3.result->nvars() == 6);
  CHECK(r3.result->generators().empty());
}

TEST_CASE("restriction of G_m over F4 matches the component presentation") {
  auto rx = restrict_scheme(gm(wt::f4()));
  REQUIRE(rx.result->nvars() == 4);
  REQUIRE(rx.result->generators().size() == 2);
  // x0*y0 + x1*y1 + 1 and x1*y0 + x0*y1 + x1*y1 over GF(2), grevlex order
  CHECK(rx.result->generators()[0].to_string() == "x_0*y_0 + x_1*y_1 + 1");
  CHECK(rx.result->generators()[1].to_string() == "x_1*y_0 + x_0*y_1 + x_1*y_1");
  CHECK(rx.pruned.empty());
}

TEST_CASE("restriction of morphisms: identity and the squaring map") {
  auto X = affine_space(wt::f4(), {"x"});
  auto rx = restrict_scheme(X);
  auto id = SchemeMorphism::identity(X);
  auto rid = restrict_morphism(id, rx, rx);
  CHECK(rid.is_identity_mod_ideal());

  // x |-> x^2 becomes (x0, x1) |-> (x0^2 + x1^2, x1^2) in char 2
  auto sq = SchemeMorphism::make(X, X, {wt::var(X->ring(), 0) * wt::var(X->ring(), 0)});
  auto rsq = restrict_morphism(sq, rx, rx);
  Poly x0 = wt::var(rx.result->ring(), 0), x1 = wt::var(rx.result->ring(), 1);
  CHECK(rsq.images()[0].equals(x0 * x0 + x1 * x1));
  CHECK(rsq.images()[1].equals(x1 * x1));
}

TEST_CASE("restriction is functorial on composites") {
  auto L = wt::f4();
  auto X = affine_space(L, {"x"});
  auto sq = SchemeMorphism::make(X, X, {wt::var(X->ring(), 0) * wt::var(X->ring(), 0)});
  auto shift = SchemeMorphism::make(
      X, X, {wt::var(X->ring(), 0) + Poly::constant(X->ring(), L->gen())});
  auto rx = restrict_scheme(X);
  auto lhs = restrict_morphism(shift.compose(sq), rx, rx);
  auto rhs = restrict_morphism(shift, rx, rx).compose(restrict_morphism(sq, rx, rx));
  CHECK(lhs.equals_mod_ideal(rhs));
}

TEST_CASE("restriction is functorial on random endomorphisms (property)") {
  auto L = wt::f4();
  auto A2 = affine_space(L, {"x", "y"});
  auto rx = restrict_scheme(A2);
  std::mt19937_64 rng(20260808);
  auto random_image = [&]() {
    std::vector<Term> ts;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      Exps e{static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 2)};
      AlgElem c = L->from_coords({L->base().from_int(static_cast<long long>(rng() % 2)),
                                  L->base().from_int(static_cast<long long>(rng() % 2))});
      if (L->is_zero(c)) c = L->one();
      ts.push_back(Term{std::move(e), std::move(c)});
    }
    return Poly::from_terms(A2->ring(), std::move(ts));
  };
  for (int iter = 0; iter < 15; ++iter) {
    auto phi = SchemeMorphism::make(A2, A2, {random_image(), random_image()});
    auto psi = SchemeMorphism::make(A2, A2, {random_image(), random_image()});
    auto lhs = restrict_morphism(psi.compose(phi), rx, rx);
    auto rhs = restrict_morphism(psi, rx, rx).compose(restrict_morphism(phi, rx, rx));
    CHECK(lhs.equals_mod_ideal(rhs));
  }
}

TEST_CASE("counit and unit validate") {
  auto X = gm(wt::f4());
  auto rx = restrict_scheme(X);
  auto q = counit(rx);
  CHECK(q.source()->nvars() == 4);
  CHECK(q.target().get() == X.get());

  auto u = unit(affine_space(wt::gf(2), {"x"}), wt::f4());
  CHECK(u.morphism.images().size() == 2);
  CHECK(u.morphism.images()[0].to_string() == "x");
  CHECK(u.morphism.images()[1].is_zero());

  // counit of Spec L is the identity of Spec L
  auto pt = affine_space(wt::f4(), {});
  auto qpt = counit(restrict_scheme(pt));
  CHECK(qpt.images().empty());

  // unit over a nontrivial k-scheme with relations
  auto R = wt::ring(wt::gf(5), {"x", "y"});
  auto curve = AffineScheme::make(
      R, {wt::var(R, 1) * wt::var(R, 1) - wt::var(R, 0) * wt::var(R, 0) * wt::var(R, 0) -
          wt::var(R, 0)});
  auto u5 = unit(curve, wt::f25());
  CHECK(u5.morphism.images().size() == 4);
}

TEST_CASE("triangle identities") {
  auto X = gm(wt::f4());
  auto Y = affine_space(wt::gf(2), {"u"});
  auto rep = triangle_identities(X, Y);
  CHECK(rep.ok);
  CHECK(rep.coordinates_checked == 5);  // 4 on R(X), 1 on Y_L

  // A^0 on both sides
  auto rep0 = triangle_identities(affine_space(wt::f4(), {}), affine_space(wt::gf(2), {}));
  CHECK(rep0.ok);

  // A^2 over QQ(i) with a curve downstairs
  auto A2 = affine_space(wt::qi(), {"x", "y"});
  auto Rq = wt::ring(wt::qq(), {"u", "v"});
  auto Yq = AffineScheme::make(Rq, {wt::var(Rq, 0) * wt::var(Rq, 1) - wt::cnst(Rq, 1)});
  CHECK(triangle_identities(A2, Yq).ok);
}

TEST_CASE("base change compatibility") {
  auto X = gm(wt::f4());
  auto A1 = affine_space(wt::gf(2), {"u"});
  auto rep = base_change_compat(X, A1);
  CHECK(rep.ok);

  // T_i = Spec k
  CHECK(base_change_compat(X, affine_space(wt::gf(2), {})).ok);

  // T_i = D(u) over QQ for X over QQ(i)
  auto Xi = affine_space(wt::qi(), {"x"});
  auto A1q = affine_space(wt::qq(), {"u"});
  auto dh = distinguished_open(A1q, wt::var(A1q->ring(), 0));
  CHECK(base_change_compat(Xi, dh.scheme).ok);

  // unsupported shape
  auto Rq = wt::ring(wt::qq(), {"u"});
  auto vanish = AffineScheme::make(Rq, {wt::var(Rq, 0) * wt::var(Rq, 0)});
  CHECK_THROWS_AS(base_change_compat(Xi, vanish), Error);
}

TEST_CASE("fiber product compatibility") {
  auto L = wt::f4();
  // R(A^1 x A^1) = R(A^1) x R(A^1) = A^4
  auto A1 = affine_space(L, {"x"});
  auto pt = affine_space(L, {});
  auto f = SchemeMorphism::make(A1, pt, {});
  auto rep = fiber_product_compat(f, f);
  CHECK(rep.ok);

  // diagonal: G_m x_{G_m} G_m along identities
  auto Gm = gm(L);
  auto id = SchemeMorphism::identity(Gm);
  CHECK(fiber_product_compat(id, id).ok);

  // D(x) x_{A^1} V(x - c) for c = t (a unit)
  auto dx = distinguished_open(A1, wt::var(A1->ring(), 0));
  auto vc = closed_subscheme(
      A1, {wt::var(A1->ring(), 0) - Poly::constant(A1->ring(), L->gen())});
  CHECK(fiber_product_compat(dx.inclusion, vc.inclusion).ok);
}

TEST_CASE("norm of a coordinate on the affine line") {
  // F4: N(x) = x0^2 + x0 x1 + x1^2
  auto X = affine_space(wt::f4(), {"x"});
  auto rep = restrict_open(X, wt::var(X->ring(), 0));
  CHECK(rep.comparison.ok);
  CHECK(rep.norm.to_string() == "x_0^2 + x_0*x_1 + x_1^2");

  // QQ(i): N(x) = x0^2 + x1^2
  auto Xi = affine_space(wt::qi(), {"x"});
  auto repi = restrict_open(Xi, wt::var(Xi->ring(), 0));
  CHECK(repi.comparison.ok);
  CHECK(repi.norm.to_string() == "x_0^2 + x_1^2");

  // g = 1: N = 1
  auto rep1 = restrict_open(X, wt::cnst(X->ring(), 1));
  CHECK(rep1.comparison.ok);
  CHECK(rep1.norm.to_string() == "1");

  // on G_m over F4 the norm comparison also goes through
  auto Gm = gm(wt::f4());
  auto repg = restrict_open(Gm, wt::var(Gm->ring(), 0));
  CHECK(repg.comparison.ok);
}

TEST_CASE("norm of a coordinate in degree 3") {
  // F8/F2: N(x) is the cubic norm form; the localization comparison uses
  // the 3x3 adjugate
  auto X = affine_space(wt::f8(), {"x"});
  auto rep = restrict_open(X, wt::var(X->ring(), 0));
  CHECK(rep.comparison.ok);
  CHECK(rep.norm.total_degree() == 3);
  auto pts = norm_open_point_check(rep, wt::var(X->ring(), 0), TestAlgebra::finite_field(2));
  CHECK(pts.ok);
  CHECK(pts.points_checked == 8);
}

TEST_CASE("galois decomposition of a cyclic cubic over QQ") {
  // t^3 - 3t - 1 has square discriminant 81, so QQ[t]/(f) is Galois of
  // degree 3; the decomposition is purely structural over QQ
  BaseField q = BaseField::rationals();
  auto L = EtaleAlgebra::make(q, {q.from_int(-1), q.from_int(-3), q.zero(), q.one()});
  auto rep = galois_decomposition(affine_space(L, {"x"}));
  CHECK(rep.comparison.ok);
  CHECK(rep.idempotents_ok);
  CHECK(rep.group_order == 3);

  auto gm_rep = galois_decomposition(gm(L));
  CHECK(gm_rep.comparison.ok);
}

TEST_CASE("twists") {
  auto L = wt::f4();
  auto R = wt::ring(L, {"x", "y"});
  // V(y^2 - t x): Frobenius twist has t+1
  Poly g = wt::var(R, 1) * wt::var(R, 1) - wt::var(R, 0).scaled(L->gen());
  auto X = AffineScheme::make(R, {g});
  auto G = galois_group(*L);
  auto tw = twist(X, G.automorphisms[1]);
  Poly expected =
      wt::var(R, 1) * wt::var(R, 1) - wt::var(R, 0).scaled(L->add(L->gen(), L->one()));
  CHECK(tw.result->generators()[0].equals(expected));

  // identity twist returns an equal presentation
  auto tid = twist(X, G.automorphisms[0]);
  CHECK(tid.result->generators()[0].equals(g));

  // twisting by sigma then tau equals twisting by the composite
  auto t2 = twist(tw.result, G.automorphisms[1]);
  CHECK(t2.result->generators()[0].equals(g));  // frob^2 = id

  // coefficients fixed by G: X^sigma = X as presentations
  auto Gm = gm(L);
  auto twgm = twist(Gm, G.automorphisms[1]);
  CHECK(twgm.result->generators()[0].equals(Gm->generators()[0]));
}

TEST_CASE("galois decomposition of G_m over F4") {
  auto rep = galois_decomposition(gm(wt::f4()));
  CHECK(rep.comparison.ok);
  CHECK(rep.idempotents_ok);
  CHECK(rep.group_order == 2);
  CHECK(rep.product_of_twists->nvars() == 4);

  // twisted example
  auto L = wt::f4();
  auto R = wt::ring(L, {"x", "y"});
  auto X = AffineScheme::make(
      R, {wt::var(R, 1) * wt::var(R, 1) - wt::var(R, 0).scaled(L->gen())});
  auto rep2 = galois_decomposition(X);
  CHECK(rep2.comparison.ok);

  // over QQ(i) as well
  auto rep3 = galois_decomposition(gm(wt::qi()));
  CHECK(rep3.comparison.ok);
  CHECK(rep3.idempotents_ok);

  // d = 1: trivial decomposition
  auto rep4 = galois_decomposition(gm(wt::gf(3)));
  CHECK(rep4.comparison.ok);
  CHECK(rep4.group_order == 1);
}

TEST_CASE("galois decomposition requires a Galois algebra") {
  BaseField q = BaseField::rationals();
  auto L = EtaleAlgebra::make(q, {q.from_int(-2), q.zero(), q.zero(), q.one()});
  auto X = affine_space(L, {"x"});
  CHECK_THROWS_AS(galois_decomposition(X), Error);
}

TEST_CASE("affine shadow") {
  auto Gm = gm(wt::f4());
  for (int n = 0; n <= 2; ++n) {
    auto rep = affine_shadow(Gm, n);
    CHECK(rep.ok);
    CHECK(rep.lhs_vars == 4 + 2 * static_cast<std::size_t>(n));
  }
  auto rep3 = affine_shadow(gm(wt::f8()), 2);
  CHECK(rep3.ok);
  CHECK(rep3.lhs_vars == 6 + 6);

  auto repq = affine_shadow(gm(wt::qi()), 1);
  CHECK(repq.ok);
}

TEST_CASE("restriction variable and generator counts") {
  // n*d variables, m*d generators before pruning
  auto L = wt::f8();
  auto R = wt::ring(L, {"x", "y", "z"});
  Poly g1 = wt::var(R, 0) * wt::var(R, 1) - wt::cnst(R, 1);
  Poly g2 = wt::var(R, 2) * wt::var(R, 2) - wt::var(R, 0);
  auto X = AffineScheme::make(R, {g1, g2});
  auto rx = restrict_scheme(X);
  CHECK(rx.result->nvars() == 9);
  CHECK(rx.result->generators().size() + rx.pruned.size() == 6);
  CHECK(rx.pruned.empty());

  // expansion invariant: substituting the expansion into each source
  // generator and splitting reproduces the stored components
  auto comps = rx.expand(g1);
  REQUIRE(comps.size() == 3);
  for (int j = 0; j < 3; ++j) CHECK(comps[j].equals(rx.result->generators()[j]));
}
