#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "weilkit/algebra.hpp"

namespace weilkit {

struct PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

/// A polynomial ring: a coefficient algebra (trivial algebra = plain base
/// field) and an ordered list of variable names. The monomial order is
/// grevlex with respect to the declared variable order.
struct PolyRing {
  AlgebraPtr coeff;
  std::vector<std::string> vars;

  static RingPtr make(AlgebraPtr coeff, std::vector<std::string> vars);

  std::size_t nvars() const { return vars.size(); }
  int var_index(const std::string& name) const;
  bool same(const PolyRing& o) const;
};

using Exps = std::vector<std::uint32_t>;

struct Term {
  Exps exps;
  AlgElem coeff;
};

/// grevlex, or a block elimination order ranking variables [0, split)
/// strictly above the rest (grevlex inside each block).
struct MonomialOrder {
  enum class Kind { grevlex, elim };
  Kind kind = Kind::grevlex;
  std::size_t split = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder eliminate_first(std::size_t split) { return {Kind::elim, split}; }

  int cmp(const Exps& a, const Exps& b) const;
  bool equal(const MonomialOrder& o) const { return kind == o.kind && split == o.split; }
};

std::uint32_t exps_degree(const Exps& e);
bool exps_divides(const Exps& a, const Exps& b);  // a | b
Exps exps_lcm(const Exps& a, const Exps& b);
Exps exps_sub(const Exps& a, const Exps& b);  // a - b, requires b | a
Exps exps_add(const Exps& a, const Exps& b);

class Poly {
 public:
  Poly() = default;

  static Poly zero(RingPtr ring);
  static Poly constant(RingPtr ring, AlgElem c);
  static Poly from_int(RingPtr ring, long long v);
  static Poly variable(RingPtr ring, std::size_t index);
  /// Normalizes: combines duplicate monomials, drops zeros, sorts grevlex-desc.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::uint32_t total_degree() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const AlgElem& c) const;
  Poly mul_monomial(const Term& t) const;

  bool equals(const Poly& o) const;

  Poly derivative(std::size_t var) const;

  /// Ring homomorphism: variable i maps to images[i] (a polynomial in the
  /// target ring); coefficients pass through coeff_map.
  Poly substitute(const RingPtr& target, const std::vector<Poly>& images,
                  const std::function<AlgElem(const AlgElem&)>& coeff_map) const;
  /// Same-coefficient convenience overload (embeds via identity).
  Poly substitute(const RingPtr& target, const std::vector<Poly>& images) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;  // sorted strictly descending in grevlex
};

struct Ideal {
  RingPtr ring;
  std::vector<Poly> gens;

  static Ideal make(RingPtr ring, std::vector<Poly> gens);
};

/// Reindex into a ring containing the same variables: variable i goes to
/// position var_map[i]; coefficients unchanged.
Poly reindex(const Poly& p, const RingPtr& target, const std::vector<std::size_t>& var_map);

/// Entry (a, i) is the formal partial derivative of gens[a] by vars[i].
std::vector<std::vector<Poly>> jacobian(const std::vector<Poly>& gens, const RingPtr& ring);

/// All size x size minors by cofactor expansion, rows/columns in index order.
std::vector<Poly> minors(const std::vector<std::vector<Poly>>& m, std::size_t size);

Poly det(const std::vector<std::vector<Poly>>& m);

// term-list helpers shared with the Groebner engine; inputs sorted
// strictly descending under `ord`
std::vector<Term> merge_add(const PolyRing& ring, const MonomialOrder& ord,
                            const std::vector<Term>& a, const std::vector<Term>& b);
std::vector<Term> sort_terms(const PolyRing& ring, const MonomialOrder& ord,
                             std::vector<Term> terms);

}  // namespace weilkit
