#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weilkit/numeric.hpp"
#include "weilkit/univariate.hpp"

namespace weilkit {

/// Element of a monogenic etale algebra, as coordinates in the power basis
/// 1, t, ..., t^(d-1). The owning EtaleAlgebra interprets the coordinates.
using AlgElem = std::vector<BaseElem>;

class EtaleAlgebra;
using AlgebraPtr = std::shared_ptr<const EtaleAlgebra>;

/// Coefficient ops over a BaseField, for the univariate helpers.
struct BaseOps {
  using Elem = BaseElem;
  const BaseField* F;
  Elem zero() const { return F->zero(); }
  Elem one() const { return F->one(); }
  Elem add(const Elem& a, const Elem& b) const { return F->add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return F->sub(a, b); }
  Elem neg(const Elem& a) const { return F->neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return F->mul(a, b); }
  Elem inv(const Elem& a) const { return F->inv(a); }
  bool is_zero(const Elem& a) const { return F->is_zero(a); }
  bool eq(const Elem& a, const Elem& b) const { return F->eq(a, b); }
};

/// L = k[t]/(f) for a monic separable f of degree d >= 1.
///
/// d = 1 gives the base field itself (used as the coefficient context for
/// schemes over k). f need not be irreducible: split algebras are legal,
/// only the Galois machinery insists on a field.
class EtaleAlgebra {
 public:
  /// f given by its d+1 coefficients, constant first, leading 1.
  static AlgebraPtr make(BaseField base, std::vector<BaseElem> f);
  /// The degree-1 algebra k[t]/(t), i.e. k itself.
  static AlgebraPtr trivial(BaseField base);

  const BaseField& base() const { return base_; }
  int degree() const { return degree_; }
  bool is_trivial() const { return degree_ == 1; }
  const std::vector<BaseElem>& min_poly() const { return min_poly_; }

  /// true when f is irreducible over k (exact for finite base and for
  /// degree <= 3 over QQ; higher degrees over QQ raise SearchExhausted).
  bool is_field() const;

  static bool same(const EtaleAlgebra& a, const EtaleAlgebra& b);

  // --- element constructors ---
  AlgElem zero() const { return AlgElem(degree_, base_.zero()); }
  AlgElem one() const;
  AlgElem gen() const;  // the class of t
  AlgElem from_base(const BaseElem& c) const;
  AlgElem from_int(long long v) const { return from_base(base_.from_int(v)); }
  /// Coordinates, padded or validated to length d.
  AlgElem from_coords(std::vector<BaseElem> coords) const;

  // --- arithmetic ---
  AlgElem add(const AlgElem& a, const AlgElem& b) const;
  AlgElem sub(const AlgElem& a, const AlgElem& b) const;
  AlgElem neg(const AlgElem& a) const;
  AlgElem mul(const AlgElem& a, const AlgElem& b) const;
  AlgElem inv(const AlgElem& a) const;  // throws not_invertible, witness = zero-divisor factor
  AlgElem pow(const AlgElem& a, std::uint64_t e) const;
  bool is_zero(const AlgElem& a) const;
  bool is_one(const AlgElem& a) const;
  bool is_unit(const AlgElem& a) const;
  bool eq(const AlgElem& a, const AlgElem& b) const;
  int cmp(const AlgElem& a, const AlgElem& b) const;

  /// Column j holds the power-basis coordinates of a * t^j.
  std::vector<std::vector<BaseElem>> mult_matrix(const AlgElem& a) const;
  BaseElem norm(const AlgElem& a) const;
  BaseElem trace(const AlgElem& a) const;

  /// Evaluate the coordinate polynomial of `a` at `x` (e.g. a Galois image of t).
  AlgElem substitute_gen(const AlgElem& a, const AlgElem& x) const;

  /// All q^d elements, in deterministic counter order. Finite base only.
  std::vector<AlgElem> elements() const;
  std::uint64_t size() const;  // q^d, finite base only

  std::string to_string(const AlgElem& a) const;
  /// Fixed symbol for printing/parsing the generator.
  static constexpr const char* gen_name = "t";

 private:
  EtaleAlgebra(BaseField base, std::vector<BaseElem> f);

  BaseField base_;
  std::vector<BaseElem> min_poly_;  // length d+1, monic
  int degree_;
  // t^(d+i) in the power basis, i = 0..d-2
  std::vector<std::vector<BaseElem>> reduction_table_;
  mutable std::optional<bool> is_field_;
};

/// Coefficient ops over an etale algebra; `inv` requires units.
struct AlgOps {
  using Elem = AlgElem;
  const EtaleAlgebra* A;
  Elem zero() const { return A->zero(); }
  Elem one() const { return A->one(); }
  Elem add(const Elem& a, const Elem& b) const { return A->add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return A->sub(a, b); }
  Elem neg(const Elem& a) const { return A->neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return A->mul(a, b); }
  Elem inv(const Elem& a) const { return A->inv(a); }
  bool is_zero(const Elem& a) const { return A->is_zero(a); }
  bool eq(const Elem& a, const Elem& b) const { return A->eq(a, b); }
};

/// Aut(L/k) listed by the images of t; index 0 is the identity.
struct GaloisGroup {
  std::vector<AlgElem> automorphisms;
  std::size_t identity_index = 0;
  std::vector<std::vector<std::size_t>> composition;  // composition[i][j] = sigma_i . sigma_j
  std::vector<std::size_t> inverse;
};

/// Finds all roots of f in L and packages them as a group; throws NotGalois
/// when fewer than d roots exist, SearchExhausted when the exact search is
/// out of reach (QQ, degree > 3).
GaloisGroup galois_group(const EtaleAlgebra& L);

/// Apply sigma (given by its image of t) to an element.
AlgElem apply_automorphism(const EtaleAlgebra& L, const AlgElem& sigma_image, const AlgElem& a);

/// One orthogonal idempotent of L (x) L per automorphism. Elements of
/// L (x) L are univariate residues mod f(u) with L coefficients: the first
/// tensor leg lives in the coefficients, the second is u.
struct TensorIdempotent {
  std::size_t sigma_index;
  std::vector<AlgElem> coeffs;  // length d; coefficient of u^m
};

std::vector<TensorIdempotent> tensor_split(const EtaleAlgebra& L, const GaloisGroup& G);

// --- univariate utilities over finite fields (shared with enumeration) ---

/// Lexicographically smallest monic irreducible of the given degree over GF(p).
std::vector<BaseElem> deterministic_irreducible(const BaseField& k, int degree);

bool is_irreducible_over_finite(const BaseField& k, const std::vector<BaseElem>& f);

/// Monic irreducible factors (with multiplicity 1 for separable input),
/// sorted deterministically; brute-force divisor search over a finite field.
std::vector<std::vector<AlgElem>> factor_over_algebra_field(const EtaleAlgebra& F,
                                                            const std::vector<AlgElem>& f);

}  // namespace weilkit
