#pragma once

#include "weilkit/scheme.hpp"

namespace weilkit {

/// Weil restriction of an affine scheme X over L along L/k, with the
/// expansion bookkeeping: source variable x_i expands to
/// x_i = sum_j x_{i,j} t^j over the power basis.
struct RestrictionResult {
  SchemePtr source;   // over L
  SchemePtr result;   // over k, n*d variables named <var>_<j>
  AlgebraPtr algebra;  // L
  /// var_map[i][j] = position of x_{i,j} in the result ring.
  std::vector<std::vector<std::size_t>> var_map;
  /// indices a*d+j of component generators dropped by redundancy pruning
  std::vector<std::size_t> pruned;

  /// component polynomials of g (a polynomial on the source), in the result ring
  std::vector<Poly> expand(const Poly& g) const;
  /// the expansion of g with L coefficients kept, over the result variables
  Poly expand_to_l(const Poly& g) const;
  /// ring of expand_to_l: result variables, L coefficients
  const RingPtr& result_ring_over_l() const { return dst_l_; }

  RingPtr dst_l_;
};

RestrictionResult restrict_scheme(const SchemePtr& x);

/// R(phi): R(X) -> R(Y) for phi: X -> Y over L, using precomputed restrictions.
SchemeMorphism restrict_morphism(const SchemeMorphism& phi, const RestrictionResult& rx,
                                 const RestrictionResult& ry);

/// Presentation of a k-scheme re-read over L (coefficient inclusion).
SchemePtr base_change(const SchemePtr& y, const AlgebraPtr& l);
SchemeMorphism base_change(const SchemeMorphism& m, const AlgebraPtr& l);

/// q: R(X)_L -> X, sending x_i to sum_j x_{i,j} t^j.
SchemeMorphism counit(const RestrictionResult& rx);

/// Y -> R(Y_L), sending y_{u,0} <- y_u and y_{u,j} <- 0 for j >= 1.
/// Returns the morphism together with the restriction it lands in.
struct UnitResult {
  SchemeMorphism morphism;
  RestrictionResult restricted_base_change;
};
UnitResult unit(const SchemePtr& y, const AlgebraPtr& l);

struct TriangleReport {
  bool ok = false;
  int coordinates_checked = 0;
  std::vector<std::string> failures;
};

/// Checks R(counit_X) . unit_{R(X)} = id and counit_{Y_L} . (unit_Y)_L = id.
TriangleReport triangle_identities(const SchemePtr& x_over_l, const SchemePtr& y_over_k);

struct ComparisonReport {
  bool ok = false;
  std::vector<std::string> notes;
  std::vector<std::string> failures;
};

/// Mutually inverse coordinate-renaming maps between two presentations whose
/// variables correspond position by position; verified by normal forms.
ComparisonReport positional_isomorphism(const SchemePtr& a, const SchemePtr& b);

/// R_{T'/T}(X x_S T') vs R_{S/T}(X) x_T T_i for T_i an affine space or a
/// distinguished open of one; verified by mutually inverse coordinate maps.
ComparisonReport base_change_compat(const SchemePtr& x, const SchemePtr& t_i);

/// R(X x_Z Y) vs R(X) x_{R(Z)} R(Y).
ComparisonReport fiber_product_compat(const SchemeMorphism& f, const SchemeMorphism& g);

struct NormOpenReport {
  ComparisonReport comparison;
  Poly norm;            // N(g) on R(X)
  SchemePtr restricted_open;          // R(D(g))
  SchemePtr norm_open;                // D(N(g)) inside R(X)
  RestrictionResult rx;
};

/// The norm of a function: det of multiplication by the expanded g, plus the
/// isomorphism O(R(D(g))) = O(R(X))[1/N(g)].
NormOpenReport restrict_open(const SchemePtr& x, const Poly& g);

struct TwistedScheme {
  SchemePtr source;
  AlgElem sigma_image;
  SchemePtr result;
};

/// X^sigma: sigma applied to every coefficient of every generator.
TwistedScheme twist(const SchemePtr& x, const AlgElem& sigma_image);

struct GaloisReport {
  ComparisonReport comparison;
  std::size_t group_order = 0;
  bool idempotents_ok = false;
  std::vector<std::string> idempotents;
  SchemePtr base_changed;        // R(X) x_k L
  SchemePtr product_of_twists;   // prod_sigma X^sigma over L
  std::vector<TwistedScheme> twists;
};

/// base_change(R(X), L) = prod_sigma X^sigma via the tensor-split idempotents.
GaloisReport galois_decomposition(const SchemePtr& x);

struct AffineShadowReport {
  bool ok = false;
  std::size_t lhs_vars = 0, rhs_vars = 0;
  std::size_t lhs_gens = 0, rhs_gens = 0;
  std::string detail;
  SchemePtr lhs;  // R(X x A^n)
  SchemePtr rhs;  // R(X) x A^{n d}
};

/// R(X x_L A^n_L) has the same canonical presentation as R(X) x_k A^{nd}_k.
AffineShadowReport affine_shadow(const SchemePtr& x, int n);

/// Verifies e_s e_t = 0, sum e_s = 1 and the twisted diagonal relation for
/// the idempotents of L (x) L; returns failures as strings.
std::vector<std::string> verify_tensor_split(const EtaleAlgebra& l, const GaloisGroup& g,
                                             const std::vector<TensorIdempotent>& es);

}  // namespace weilkit
