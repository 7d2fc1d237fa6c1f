#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weilkit/weilres.hpp"

namespace weilkit {

/// Finite test algebra over the base field: F_{p^s}, the etale algebra L
/// itself as a ring, or dual numbers F_{p^s}[e]/(e^2).
struct TestAlgebra {
  enum class Kind { finite_field, etale_as_ring, dual_numbers };
  Kind kind = Kind::finite_field;
  std::uint64_t p = 0;
  std::uint32_t s = 1;
  AlgebraPtr algebra;  // etale_as_ring only

  static TestAlgebra finite_field(std::uint64_t p, std::uint32_t s = 1);
  static TestAlgebra dual_numbers(std::uint64_t p, std::uint32_t s = 1);
  static TestAlgebra etale_ring(AlgebraPtr a);

  std::uint64_t element_count() const;  // |A|
  std::string label() const;
};

/// F_{p^m} presented as GF(p)[w]/(h) for the deterministic irreducible h,
/// with elements addressed by their index in the p-adic digit encoding of
/// power-basis coordinates. Multiplication runs on discrete-log tables.
class FlatField {
 public:
  using Idx = std::uint32_t;

  FlatField(std::uint64_t p, std::uint32_t m);

  std::uint64_t p() const { return p_; }
  std::uint32_t degree() const { return m_; }
  std::uint64_t size() const { return size_; }
  const AlgebraPtr& backing() const { return alg_; }

  Idx zero() const { return 0; }
  Idx one() const { return 1; }
  Idx add(Idx a, Idx b) const;
  Idx sub(Idx a, Idx b) const { return add(a, neg(b)); }
  Idx neg(Idx a) const;
  Idx mul(Idx a, Idx b) const;
  Idx inv(Idx a) const;
  Idx pow(Idx a, std::uint64_t e) const;
  bool is_zero(Idx a) const { return a == 0; }

  Idx from_residue(std::uint64_t r) const { return static_cast<Idx>(r % p_); }
  Idx encode(const AlgElem& a) const;
  AlgElem decode(Idx a) const;

  /// All roots of a polynomial given by Idx coefficients (constant first).
  std::vector<Idx> roots(const std::vector<Idx>& poly) const;

 private:
  std::uint64_t p_;
  std::uint32_t m_;
  std::uint64_t size_;
  AlgebraPtr alg_;
  std::vector<Idx> exp_, log_;
};

/// A finite ring suitable for exhaustive evaluation: a product of flat-field
/// components, each with the images of the scheme's coefficient generator
/// (rho) and an embedding of its stage-1 test field (eta), optionally with
/// dual numbers on top.
class EnumRing {
 public:
  struct Component {
    std::shared_ptr<const FlatField> field;
    std::vector<FlatField::Idx> rho_powers;  // images of t^0..t^(d-1)
    std::size_t stage1_index = 0;            // which component of A this lies over
    std::vector<FlatField::Idx> eta_powers;  // embedding of that component's power basis
  };

  /// A as an algebra over the scheme's coefficient algebra (identity or a
  /// chosen root embedding); throws when no embedding exists.
  static EnumRing over_algebra(const AlgebraPtr& coeff, const TestAlgebra& a);
  /// A (x)_k L for the scheme's coefficient algebra L, CRT-decomposed along
  /// the factorization of L's minimal polynomial.
  static EnumRing tensor_with(const AlgebraPtr& coeff, const TestAlgebra& a);

  const std::vector<Component>& components() const { return comps_; }
  bool dual() const { return dual_; }
  bool local() const { return comps_.size() == 1; }
  std::uint64_t ring_size() const;  // |A (x) L| or |A|, including the dual doubling

  /// per-variable slot width in a flattened point
  std::size_t slot() const { return comps_.size() * (dual_ ? 2 : 1); }

 private:
  std::vector<Component> comps_;
  bool dual_ = false;
};

/// Exhaustive, sorted, duplicate-free list of A-points; coordinates are
/// flattened per variable as component indices (closed part, then the
/// tangent part when dual).
struct PointSet {
  SchemePtr scheme;
  std::string algebra_label;
  std::uint64_t ring_size = 0;
  std::vector<std::vector<FlatField::Idx>> points;

  std::uint64_t count() const { return points.size(); }
};

PointSet enumerate_points(const SchemePtr& x, const EnumRing& ring, const std::string& label,
                          std::optional<std::uint64_t> budget = std::nullopt);

/// Saturating count of the assignments enumeration would brute-force:
/// trailing variables in which every generator is jointly affine-linear are
/// solved exactly instead of enumerated, so only the prefix counts.
std::uint64_t enumeration_cost(const SchemePtr& x, const EnumRing& ring, std::uint64_t cap);

/// Convenience: interpret `a` as an algebra over x's base and enumerate.
PointSet enumerate_points(const SchemePtr& x, const TestAlgebra& a,
                          std::optional<std::uint64_t> budget = std::nullopt);

/// Tangent vectors: points over F_{p^s}[e]/(e^2).
PointSet tangent_points(const SchemePtr& x, std::uint64_t p, std::uint32_t s = 1,
                        std::optional<std::uint64_t> budget = std::nullopt);

struct AdjunctionReport {
  bool ok = false;
  std::uint64_t left_count = 0;   // |R(X)(A)|
  std::uint64_t right_count = 0;  // |X(A (x) L)|
  std::string algebra;
  std::string witness;
};

/// The unit-side bijection R(X)(A) = X(A (x) L), realized by the expansion
/// coordinate map and checked exhaustively.
AdjunctionReport adjunction_bijection(const RestrictionResult& rx, const TestAlgebra& a,
                                      std::optional<std::uint64_t> budget = std::nullopt);

/// Values of polynomials at flattened points.
struct RingValue {
  std::vector<FlatField::Idx> parts;  // per component: closed, then tangent if dual
};

RingValue evaluate_at(const EnumRing& ring, const Poly& p,
                      const std::vector<FlatField::Idx>& point);
bool value_is_unit(const EnumRing& ring, const RingValue& v);
bool value_is_zero(const EnumRing& ring, const RingValue& v);

/// The expansion coordinate map on flattened points: a point (or a tangent
/// vector) of R(X) over A, with `left` built from A over k, goes to the
/// corresponding point of X over A (x) L, with `right` built by tensor_with.
std::vector<FlatField::Idx> expand_point(const RestrictionResult& rx, const EnumRing& left,
                                         const EnumRing& right,
                                         const std::vector<FlatField::Idx>& lp);

/// |R(X)(L)| = prod_sigma |X^sigma(L)|, the point-count shadow of the Galois
/// decomposition; fills the counts and flags mismatches.
struct GaloisCountReport {
  bool ok = false;
  std::uint64_t left = 0;
  std::vector<std::uint64_t> right;
  std::string detail;
};
GaloisCountReport galois_count_check(const GaloisReport& g, const RestrictionResult& rx);

/// Exhaustive check that N(g) vanishes at a k-point of R(X) exactly when the
/// corresponding L-point of X lies in V(g).
struct NormOpenPointReport {
  bool ok = false;
  std::uint64_t points_checked = 0;
  std::string detail;
};
NormOpenPointReport norm_open_point_check(const NormOpenReport& n, const Poly& g,
                                          const TestAlgebra& a);

}  // namespace weilkit
