#include <benchmark/benchmark.h>

#include "weilkit/thom.hpp"

using namespace weilkit;

namespace {

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

SchemePtr gm(AlgebraPtr l) {
  auto r = PolyRing::make(std::move(l), {"x", "y"});
  return AffineScheme::make(r, {Poly::variable(r, 0) * Poly::variable(r, 1) - Poly::from_int(r, 1)});
}

SchemePtr circle(AlgebraPtr l) {
  auto r = PolyRing::make(std::move(l), {"x", "y"});
  Poly x = Poly::variable(r, 0), y = Poly::variable(r, 1);
  return AffineScheme::make(r, {x * x + y * y - Poly::from_int(r, 1)});
}

void bm_restrict_gm(benchmark::State& state) {
  auto x = gm(f4());
  for (auto _ : state) benchmark::DoNotOptimize(restrict_scheme(x).result->nvars());
}
BENCHMARK(bm_restrict_gm);

void bm_restrict_affine3_f8(benchmark::State& state) {
  auto x = AffineScheme::make(f8(), {"x", "y", "z"}, {});
  for (auto _ : state) benchmark::DoNotOptimize(restrict_scheme(x).result->nvars());
}
BENCHMARK(bm_restrict_affine3_f8);

void bm_groebner_restricted_gm(benchmark::State& state) {
  auto rx = restrict_scheme(gm(f4()));
  for (auto _ : state) {
    auto gb = GroebnerBasis::compute(Ideal::make(rx.result->ring(), rx.result->generators()));
    benchmark::DoNotOptimize(gb.basis().size());
  }
}
BENCHMARK(bm_groebner_restricted_gm);

void bm_smoothness_circle(benchmark::State& state) {
  auto c = circle(f25());
  for (auto _ : state) benchmark::DoNotOptimize(is_smooth(c, 1).smooth);
}
BENCHMARK(bm_smoothness_circle);

void bm_enumerate_restricted_circle(benchmark::State& state) {
  auto rx = restrict_scheme(circle(f25()));
  for (auto _ : state) {
    auto ps = enumerate_points(rx.result, TestAlgebra::finite_field(5));
    benchmark::DoNotOptimize(ps.count());
  }
}
BENCHMARK(bm_enumerate_restricted_circle);

void bm_adjunction_gm_f4(benchmark::State& state) {
  auto rx = restrict_scheme(gm(f4()));
  for (auto _ : state) {
    auto rep = adjunction_bijection(rx, TestAlgebra::finite_field(2, 2));
    benchmark::DoNotOptimize(rep.ok);
  }
}
BENCHMARK(bm_adjunction_gm_f4);

void bm_thom_free_rank1_gm(benchmark::State& state) {
  auto x = gm(f4());
  std::vector<std::vector<Poly>> p{{Poly::from_int(x->ring(), 1)}};
  auto e = make_bundle(x, p, 1);
  for (auto _ : state) {
    auto rep = thom_compare(e, 2);
    benchmark::DoNotOptimize(rep.ok);
  }
}
BENCHMARK(bm_thom_free_rank1_gm);

}  // namespace

BENCHMARK_MAIN();
