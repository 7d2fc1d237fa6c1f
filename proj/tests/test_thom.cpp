#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"
#include "weilkit/thom.hpp"

using namespace weilkit;

namespace {

SchemePtr circle25() {
  auto R = wt::ring(wt::f25(), {"x", "y"});
  Poly x = wt::var(R, 0), y = wt::var(R, 1);
  return AffineScheme::make(R, {x * x + y * y - wt::cnst(R, 1)});
}

BundlePresentation circle_bundle() {
  auto X = circle25();
  auto R = X->ring();
  Poly x = wt::var(R, 0), y = wt::var(R, 1);
  auto three = R->coeff->from_int(3);
  std::vector<std::vector<Poly>> P{
      {(wt::cnst(R, 1) + x).scaled(three), y.scaled(three)},
      {y.scaled(three), (wt::cnst(R, 1) - x).scaled(three)}};
  return make_bundle(X, P, 1);
}

BundlePresentation free_bundle(SchemePtr x, std::size_t rank) {
  std::vector<std::vector<Poly>> P(rank, std::vector<Poly>(rank, Poly::zero(x->ring())));
  for (std::size_t i = 0; i < rank; ++i) P[i][i] = Poly::from_int(x->ring(), 1);
  return make_bundle(std::move(x), P, rank);
}

}  // namespace

TEST_CASE("thom classes of the affine line with the origin collapsed") {
  // E = A^1 over F4, Z = {0}, A = F4: 3 nonzero points collapse, leaving
  // the class of 0 and the basepoint
  auto A1 = AffineScheme::make(wt::f4(), {"x"}, {});
  auto p = make_thom(A1, {wt::var(A1->ring(), 0)});
  auto cs = thom_points(p, TestAlgebra::etale_ring(wt::f4()));
  CHECK(cs.total_points == 4);
  CHECK(cs.classes.size() == 1);
  CHECK(cs.class_count() == 2);

  // Z = E (no equations): nothing collapses
  auto pt = AffineScheme::make(wt::f4(), {}, {});
  auto pall = make_thom(pt, {});
  auto call = thom_points(pall, TestAlgebra::etale_ring(wt::f4()));
  CHECK(call.class_count() == 2);  // the single point plus the formal basepoint

  // Z empty: everything collapses to the single basepoint class
  auto pnone = make_thom(pt, {Poly::from_int(pt->ring(), 1)});
  auto cnone = thom_points(pnone, TestAlgebra::etale_ring(wt::f4()));
  CHECK(cnone.class_count() == 1);
}

TEST_CASE("thom classes over dual numbers classify by the closed point") {
  auto A1 = AffineScheme::make(wt::gf(2), {"x"}, {});
  auto p = make_thom(A1, {wt::var(A1->ring(), 0)});
  auto cs = thom_points(p, TestAlgebra::dual_numbers(2));
  // points: 2 closed x 2 tangent = 4; classes: those above x = 0 (2 of them)
  CHECK(cs.total_points == 4);
  CHECK(cs.classes.size() == 2);
}

TEST_CASE("thom_points requires a local algebra") {
  auto Gm = [] {
    auto R = wt::ring(wt::f4(), {"x", "y"});
    return AffineScheme::make(R, {wt::var(R, 0) * wt::var(R, 1) - wt::cnst(R, 1)});
  }();
  auto rx = restrict_scheme(Gm);
  auto p = make_thom(rx.result, {});
  // GF(4) (x) F4 is not local, and the non-local ring is rejected
  EnumRing nonlocal = EnumRing::tensor_with(wt::f4(), TestAlgebra::finite_field(2, 2));
  CHECK_THROWS_AS(thom_points(make_thom(Gm, {}), nonlocal, "GF(4) (x) L"), Error);
  (void)p;
}

TEST_CASE("thom compatibility for the free rank-1 bundle on Spec F4") {
  auto pt = AffineScheme::make(wt::f4(), {}, {});
  auto rep = thom_compare(free_bundle(pt, 1), 2);
  CHECK(rep.ok);
  REQUIRE(!rep.runs.empty());
  // A = GF(2): R(E) = A^2, classes = origin + basepoint on both sides
  CHECK(rep.runs[0].algebra == "GF(2)");
  CHECK_FALSE(rep.runs[0].skipped);
  CHECK(rep.runs[0].left_classes == 2);
  CHECK(rep.runs[0].right_classes == 2);
  // A = GF(4) splits F4 (x) F4: skipped with notice
  bool found_skip = false;
  for (const auto& run : rep.runs)
    if (run.algebra == "GF(4)" && run.skipped) found_skip = true;
  CHECK(found_skip);
}

TEST_CASE("thom compatibility for the free rank-1 bundle on G_m over F4") {
  auto Gm = [] {
    auto R = wt::ring(wt::f4(), {"x", "y"});
    return AffineScheme::make(R, {wt::var(R, 0) * wt::var(R, 1) - wt::cnst(R, 1)});
  }();
  auto rep = thom_compare(free_bundle(Gm, 1), 2);
  CHECK(rep.ok);
  // A = GF(2): classes on both sides = zero-section points + basepoint = 3 + 1
  REQUIRE(!rep.runs.empty());
  CHECK(rep.runs[0].left_classes == 4);
  CHECK(rep.runs[0].right_classes == 4);
}

TEST_CASE("thom compatibility for the circle bundle over F25, including duals") {
  auto rep = thom_compare(circle_bundle(), 5);
  CHECK(rep.ok);
  bool dual_ran = false;
  for (const auto& run : rep.runs)
    if (run.algebra == "GF(5)[e]" && !run.skipped) {
      dual_ran = true;
      CHECK(run.bijection);
      CHECK(run.basepoint_preserved);
    }
  CHECK(dual_ran);
}

TEST_CASE("step 2: complement factorization matches the norm locus") {
  // the total space of the free rank-1 bundle on Spec F4 is A^1 over F4, so
  // R(E) = A^2 over F2; for A = GF(2) exactly the 3 points with N(x) != 0
  // factor through the complement on both sides
  auto pt = AffineScheme::make(wt::f4(), {}, {});
  auto rep = step2_check(free_bundle(pt, 1), TestAlgebra::finite_field(2));
  CHECK(rep.ok);
  CHECK(rep.points_checked == 4);  // all of A^2(F2)

  // dual numbers: nilpotent coordinates above 0 stay on the Z side
  auto repd = step2_check(free_bundle(pt, 1), TestAlgebra::dual_numbers(2));
  CHECK(repd.ok);
  CHECK(repd.points_checked == 16);

  // GF(4) splits the tensor: skipped
  auto reps = step2_check(free_bundle(pt, 1), TestAlgebra::finite_field(2, 2));
  CHECK(reps.skipped);

  // a bundle over a positive-dimensional base works too
  auto A1 = AffineScheme::make(wt::f4(), {"x"}, {});
  auto repb = step2_check(free_bundle(A1, 1), TestAlgebra::finite_field(2));
  CHECK(repb.ok);
  CHECK(repb.points_checked == 16);
}

TEST_CASE("step 2 for the zero bundle: no point factors through the empty complement") {
  auto pt = AffineScheme::make(wt::f4(), {}, {});
  auto zero = make_bundle(pt, {{Poly::zero(pt->ring())}}, 0);
  auto rep = step2_check(zero, TestAlgebra::finite_field(2));
  CHECK(rep.ok);
}

TEST_CASE("thom bijections are compatible with the field inclusion when both run") {
  // over F8/F2 both GF(2) and GF(4) stay local (gcd(s, 3) = 1); the left
  // class set over GF(2) embeds residue-for-residue into the one over GF(4)
  auto A1 = AffineScheme::make(wt::f8(), {"x"}, {});
  auto rep = thom_compare(free_bundle(A1, 1), 2);
  CHECK(rep.ok);
  const ThomCompareReport::Run* r1 = nullptr;
  const ThomCompareReport::Run* r2 = nullptr;
  for (const auto& run : rep.runs) {
    if (run.algebra == "GF(2)") r1 = &run;
    if (run.algebra == "GF(4)") r2 = &run;
  }
  REQUIRE(r1 != nullptr);
  REQUIRE(r2 != nullptr);
  CHECK_FALSE(r1->skipped);
  CHECK_FALSE(r2->skipped);
  CHECK(r1->bijection);
  CHECK(r2->bijection);

  // the GF(2)-points of the restricted total space are GF(4)-points with the
  // same residue indices (GF(2) sits inside every flat 2-power field as
  // indices {0, 1}), and the classification by the zero section agrees
  auto total = total_space(free_bundle(A1, 1));
  auto rtot = restrict_scheme(total.scheme);
  std::vector<Poly> zeros;
  for (std::size_t fv : total.fiber_vars)
    for (std::size_t pos : rtot.var_map[fv])
      zeros.push_back(Poly::variable(rtot.result->ring(), pos));
  auto small = thom_points(make_thom(rtot.result, zeros), TestAlgebra::finite_field(2));
  auto big = thom_points(make_thom(rtot.result, zeros), TestAlgebra::finite_field(2, 2));
  for (const auto& pt : small.classes)
    CHECK(std::binary_search(big.classes.begin(), big.classes.end(), pt));
  for (const auto& pt : small.basepoint_points)
    CHECK(std::binary_search(big.basepoint_points.begin(), big.basepoint_points.end(), pt));
}

TEST_CASE("gysin shadow for V(y) in A^2 over F4") {
  auto A2 = AffineScheme::make(wt::f4(), {"x", "y"}, {});
  auto axis = closed_subscheme(A2, {wt::var(A2->ring(), 1)});
  auto rep = gysin_shadow(axis.scheme, TestAlgebra::finite_field(2, 2));
  CHECK(rep.ok);
  CHECK(rep.thom_classes == 5);  // |Z(F4)| + 1 = 4 + 1
  CHECK(rep.pair_classes == 5);

  // Z = X: both sides |X(F)| + 1
  auto all = closed_subscheme(A2, {});
  auto repx = gysin_shadow(all.scheme, TestAlgebra::finite_field(2, 2));
  CHECK(repx.ok);
  CHECK(repx.thom_classes == 17);

  // Z empty: both sides 1
  auto none = closed_subscheme(A2, {wt::cnst(A2->ring(), 1)});
  auto repn = gysin_shadow(none.scheme, TestAlgebra::finite_field(2, 2));
  CHECK(repn.ok);
  CHECK(repn.thom_classes == 1);
}

TEST_CASE("gysin shadow for the cubic over F25 at F5-points of the ambient") {
  auto R = wt::ring(wt::f25(), {"x", "y"});
  Poly x = wt::var(R, 0), y = wt::var(R, 1);
  auto amb = AffineScheme::make(R, {});
  auto cubic = closed_subscheme(amb, {y * y - x * x * x - x});
  auto rep = gysin_shadow(cubic.scheme, TestAlgebra::finite_field(5, 2));
  CHECK(rep.ok);
  CHECK(rep.thom_classes == rep.pair_classes);
  CHECK(rep.thom_classes > 1);
}
