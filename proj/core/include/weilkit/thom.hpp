#pragma once

#include "weilkit/bundle.hpp"

namespace weilkit {

/// A pair (E, Z): an ambient affine scheme and a closed subscheme cut by
/// explicit equations inside it. The quotient E/(E \ Z) is only evaluated on
/// local test algebras, where the presheaf description is unambiguous.
struct ThomPresentation {
  SchemePtr total;
  std::vector<Poly> z_equations;
};

ThomPresentation make_thom(SchemePtr total, std::vector<Poly> z_equations);

/// Pointed class set of E(A)/(E \ Z)(A) at a local A: a point is the
/// basepoint class iff some defining equation of Z evaluates to a unit;
/// every other point is its own class. The formal basepoint * is always
/// present, so class_count() = |classes| + 1.
struct ThomClassSet {
  std::string algebra;
  std::uint64_t total_points = 0;
  std::vector<std::vector<FlatField::Idx>> classes;          // sorted
  std::vector<std::vector<FlatField::Idx>> basepoint_points; // sorted
  std::uint64_t class_count() const { return classes.size() + 1; }
};

ThomClassSet thom_points(const ThomPresentation& p, const EnumRing& ring,
                         const std::string& label,
                         std::optional<std::uint64_t> budget = std::nullopt);
ThomClassSet thom_points(const ThomPresentation& p, const TestAlgebra& a,
                         std::optional<std::uint64_t> budget = std::nullopt);

/// R(Th(E)) vs Th(R(E)) on every admissible local test algebra derived from
/// the characteristic q: fields F_{q^s} and dual numbers F_{q^s}[e] for
/// s <= 3, restricted to those where A (x) L stays local and enumeration
/// stays within budget.
struct ThomCompareReport {
  struct Run {
    std::string algebra;
    bool skipped = false;
    std::string note;
    std::uint64_t left_classes = 0;   // classes of Th(R(E))(A)
    std::uint64_t right_classes = 0;  // classes of R(Th(E))(A) = Th(E)(A (x) L)
    bool bijection = false;
    bool basepoint_preserved = false;
  };
  std::vector<Run> runs;
  bool ok = false;
};

ThomCompareReport thom_compare(const BundlePresentation& e, std::uint64_t q,
                               std::optional<std::uint64_t> budget = std::nullopt);

/// Step 2 of the comparison: a point of R(E)(A) factors through the
/// complement of R(Z) iff its adjoint factors through E \ Z; exhaustive.
struct Step2Report {
  std::string algebra;
  bool skipped = false;
  std::uint64_t points_checked = 0;
  bool ok = false;
  std::string detail;
};

Step2Report step2_check(const BundlePresentation& e, const TestAlgebra& a,
                        std::optional<std::uint64_t> budget = std::nullopt);

/// Field-point shadow of the Gysin isomorphism Th(N_{Z/X}) = X/(X \ Z):
/// both class sets are Z(F) plus the basepoint, matched identically.
struct GysinReport {
  std::string field;
  std::uint64_t thom_classes = 0;
  std::uint64_t pair_classes = 0;
  bool ok = false;
  std::string detail;
};

GysinReport gysin_shadow(const SchemePtr& z, const TestAlgebra& field,
                         std::optional<std::uint64_t> budget = std::nullopt);

}  // namespace weilkit
