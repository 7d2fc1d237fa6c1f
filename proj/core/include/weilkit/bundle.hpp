#pragma once

#include "weilkit/points.hpp"

namespace weilkit {

/// A vector bundle on an affine scheme, presented as an idempotent matrix
/// over the coordinate ring; sections are the image of the projector.
struct BundlePresentation {
  SchemePtr base_scheme;
  std::size_t ambient_rank = 0;  // N
  std::size_t rank = 0;          // generic rank r
  std::vector<std::vector<Poly>> projector;  // N x N, P^2 = P mod the ideal
};

/// Validates idempotency by normal forms and, over a finite field base, the
/// rank of the evaluated projector at every rational point of the base.
BundlePresentation make_bundle(SchemePtr x, std::vector<std::vector<Poly>> projector,
                               std::size_t rank);

struct TotalSpace {
  BundlePresentation bundle;
  SchemePtr scheme;  // base variables + fiber variables, relations (I - P) v
  SchemeMorphism zero_section;
  SchemeMorphism projection;
  std::vector<std::size_t> fiber_vars;
};

TotalSpace total_space(const BundlePresentation& e);

/// The pushforward bundle: counit substitution entrywise, then each entry
/// replaced by its d x d multiplication-matrix block; rank r*d over R(X).
struct RestrictedBundle {
  BundlePresentation bundle;  // over R(X)
  RestrictionResult rx;       // restriction of the base scheme
  RestrictionResult rtotal;   // restriction of the total space over L
  TotalSpace total;           // total space of the restricted bundle
  ComparisonReport total_space_compat;  // R(total space) vs total space of R(bundle)
};

RestrictedBundle restrict_bundle(const BundlePresentation& e);

struct ZeroSectionReport {
  bool ok = false;
  int coordinates_checked = 0;
  std::vector<std::string> failures;
};

/// R(zero section of E) equals the zero section of R(E), coordinatewise
/// modulo the ideal, through the total-space identification.
ZeroSectionReport restrict_zero_section(const BundlePresentation& e);

/// Free conormal/normal data of a complete-intersection closed embedding.
struct NormalPresentation {
  bool complete_intersection = false;
  std::size_t codim = 0;
  std::string detail;
  BundlePresentation normal;  // free of rank c on Z
  TotalSpace total;
};

/// Z must carry closed provenance (ambient scheme + extra equations); both
/// Z and the ambient scheme must be smooth at their computed dimensions.
NormalPresentation normal_presentation(const SchemePtr& z);

struct NormalCompatReport {
  bool ok = false;
  bool presentation_checked = false;  // complete-intersection route taken
  ComparisonReport presentation;
  struct Fiber {
    std::string field;
    std::uint64_t points = 0;
    bool ok = false;
    bool skipped = false;  // budget or infinite base
    std::string detail;
  };
  std::vector<Fiber> fiberwise;
};

/// R(N_{Z/X}) vs N_{R(Z)/R(X)}: presentation-level for complete
/// intersections, and the counit-derivative fiberwise bijection at every
/// rational point of R(Z) over each test field.
NormalCompatReport normal_compat(const SchemePtr& z, const std::vector<TestAlgebra>& fields);

/// d x d multiplication-matrix block of the expanded polynomial, over R(X).
std::vector<std::vector<Poly>> expansion_block(const RestrictionResult& rx, const Poly& p);

}  // namespace weilkit
