#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "weilkit/errors.hpp"

namespace weilkit {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

bool is_prime(std::uint64_t n);

/// Desk-scale resource limits, adjustable from the CLI.
struct Options {
  int gb_degree_cap = 40;                // max S-polynomial lcm degree
  std::uint64_t point_budget = 1000000;  // max brute-forced assignments per enumeration
  std::uint64_t height_bound = 1000000;  // divisor-search bound for QQ root tests
};

Options& global_options();

/// An element of a base field: a residue in [0, p) for GF(p), a canonical
/// rational for QQ. Interpreting the variant requires the owning BaseField.
using BaseElem = std::variant<std::uint64_t, Rational>;

/// Exact arithmetic context for k in {QQ, GF(p)}.
///
/// Elements do not carry their field; all operations go through the context,
/// which keeps GF(p) residues as plain machine words.
class BaseField {
 public:
  enum class Kind { rationals, prime_field };

  static BaseField rationals() { return BaseField(Kind::rationals, 0); }
  static BaseField gf(std::uint64_t p);

  Kind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }
  bool is_finite() const { return kind_ == Kind::prime_field; }

  bool operator==(const BaseField& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const BaseField& o) const { return !(*this == o); }

  BaseElem zero() const;
  BaseElem one() const;
  BaseElem from_int(long long v) const;
  BaseElem from_rational(const Rational& q) const;  // throws for GF(p) if denominator vanishes mod p

  BaseElem add(const BaseElem& a, const BaseElem& b) const;
  BaseElem sub(const BaseElem& a, const BaseElem& b) const;
  BaseElem neg(const BaseElem& a) const;
  BaseElem mul(const BaseElem& a, const BaseElem& b) const;
  BaseElem inv(const BaseElem& a) const;  // throws not_invertible on 0
  BaseElem pow(const BaseElem& a, std::uint64_t e) const;

  bool is_zero(const BaseElem& a) const;
  bool is_one(const BaseElem& a) const;
  bool eq(const BaseElem& a, const BaseElem& b) const;

  /// Total order used only for deterministic printing and sorting.
  int cmp(const BaseElem& a, const BaseElem& b) const;

  std::string to_string(const BaseElem& a) const;

  /// All field elements, residues 0..p-1. Throws for QQ.
  std::vector<BaseElem> elements() const;

 private:
  BaseField(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  std::uint64_t r(const BaseElem& a) const { return std::get<std::uint64_t>(a); }
  const Rational& q(const BaseElem& a) const { return std::get<Rational>(a); }

  Kind kind_;
  std::uint64_t p_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

}  // namespace weilkit
