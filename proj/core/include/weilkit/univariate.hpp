#pragma once

#include <cstddef>
#include <vector>

#include "weilkit/errors.hpp"

namespace weilkit::uni {

// Dense univariate polynomials over a coefficient context `Ops`:
//   Ops::Elem, zero(), one(), add, sub, neg, mul, inv, is_zero, eq.
// Coefficient i is the coefficient of t^i; no trailing zeros are stored.

template <class Ops>
using Poly = std::vector<typename Ops::Elem>;

template <class Ops>
void normalize(const Ops& F, Poly<Ops>& p) {
  while (!p.empty() && F.is_zero(p.back())) p.pop_back();
}

template <class Elem>
int degree(const std::vector<Elem>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class Ops>
Poly<Ops> add(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b) {
  Poly<Ops> out(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.add(out[i], b[i]);
  normalize(F, out);
  return out;
}

template <class Ops>
Poly<Ops> sub(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b) {
  Poly<Ops> out(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.sub(out[i], b[i]);
  normalize(F, out);
  return out;
}

template <class Ops>
Poly<Ops> mul(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<Ops> out(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  normalize(F, out);
  return out;
}

template <class Ops>
Poly<Ops> scale(const Ops& F, const Poly<Ops>& a, const typename Ops::Elem& c) {
  Poly<Ops> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(F.mul(x, c));
  normalize(F, out);
  return out;
}

/// Quotient/remainder by a nonzero divisor with invertible leading coefficient.
template <class Ops>
std::pair<Poly<Ops>, Poly<Ops>> divmod(const Ops& F, Poly<Ops> num, const Poly<Ops>& den) {
  if (den.empty()) throw Error(ErrorKind::not_invertible, "univariate division by zero");
  auto lc_inv = F.inv(den.back());
  Poly<Ops> quot;
  if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, F.zero());
  while (num.size() >= den.size()) {
    std::size_t shift = num.size() - den.size();
    auto c = F.mul(num.back(), lc_inv);
    quot[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i)
      num[shift + i] = F.sub(num[shift + i], F.mul(c, den[i]));
    normalize(F, num);
  }
  normalize(F, quot);
  return {quot, num};
}

template <class Ops>
Poly<Ops> monic(const Ops& F, const Poly<Ops>& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

/// Monic gcd via the Euclidean algorithm (coefficients must form a field).
template <class Ops>
Poly<Ops> gcd(const Ops& F, Poly<Ops> a, Poly<Ops> b) {
  normalize(F, a);
  normalize(F, b);
  while (!b.empty()) {
    auto [q, r] = divmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : monic(F, a);
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
template <class Ops>
std::tuple<Poly<Ops>, Poly<Ops>, Poly<Ops>> ext_gcd(const Ops& F, Poly<Ops> a, Poly<Ops> b) {
  normalize(F, a);
  normalize(F, b);
  Poly<Ops> s0{F.one()}, s1{}, t0{}, t1{F.one()};
  normalize(F, s0);
  normalize(F, t1);
  while (!b.empty()) {
    auto [q, r] = divmod(F, a, b);
    auto s2 = sub(F, s0, mul(F, q, s1));
    auto t2 = sub(F, t0, mul(F, q, t1));
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.empty()) return {a, s0, t0};
  auto lc_inv = F.inv(a.back());
  return {scale(F, a, lc_inv), scale(F, s0, lc_inv), scale(F, t0, lc_inv)};
}

template <class Ops>
Poly<Ops> derivative(const Ops& F, const Poly<Ops>& a) {
  Poly<Ops> out;
  for (std::size_t i = 1; i < a.size(); ++i) {
    auto c = F.zero();
    for (std::size_t k = 0; k < i; ++k) c = F.add(c, a[i]);  // i * a[i] in the prime field / QQ
    out.push_back(c);
  }
  normalize(F, out);
  return out;
}

template <class Ops>
typename Ops::Elem eval(const Ops& F, const Poly<Ops>& a, const typename Ops::Elem& x) {
  auto acc = F.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

}  // namespace weilkit::uni
