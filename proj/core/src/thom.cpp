#include "weilkit/thom.hpp"

#include <algorithm>

namespace weilkit {

ThomPresentation make_thom(SchemePtr total, std::vector<Poly> z_equations) {
  for (const auto& h : z_equations)
    if (!h.ring()->same(*total->ring()))
      throw Error(ErrorKind::ring_mismatch, "Z-equation outside the ambient coordinate ring");
  return ThomPresentation{std::move(total), std::move(z_equations)};
}

ThomClassSet thom_points(const ThomPresentation& p, const EnumRing& ring,
                         const std::string& label, std::optional<std::uint64_t> budget) {
  if (!ring.local())
    throw Error(ErrorKind::not_local_algebra,
                "Thom classes are only computed over local test algebras");
  PointSet pts = enumerate_points(p.total, ring, label, budget);
  ThomClassSet out;
  out.algebra = label;
  out.total_points = pts.count();
  for (auto& pt : pts.points) {
    bool base = false;
    for (const auto& h : p.z_equations) {
      if (value_is_unit(ring, evaluate_at(ring, h, pt))) {
        base = true;
        break;
      }
    }
    if (base)
      out.basepoint_points.push_back(std::move(pt));
    else
      out.classes.push_back(std::move(pt));
  }
  std::sort(out.classes.begin(), out.classes.end());
  std::sort(out.basepoint_points.begin(), out.basepoint_points.end());
  return out;
}

ThomClassSet thom_points(const ThomPresentation& p, const TestAlgebra& a,
                         std::optional<std::uint64_t> budget) {
  EnumRing ring = EnumRing::over_algebra(p.total->base(), a);
  return thom_points(p, ring, a.label(), budget);
}

ThomCompareReport thom_compare(const BundlePresentation& e, std::uint64_t q,
                               std::optional<std::uint64_t> budget) {
  ThomCompareReport report;
  const std::uint64_t cap = budget.value_or(global_options().point_budget);
  const AlgebraPtr& L = e.base_scheme->base();
  AlgebraPtr k = EtaleAlgebra::trivial(L->base());

  TotalSpace over_l = total_space(e);
  RestrictionResult rtot = restrict_scheme(over_l.scheme);

  // E/(E \ s(X)) over L: the zero section is cut by the fiber coordinates
  std::vector<Poly> z_l;
  for (std::size_t fv : over_l.fiber_vars) z_l.push_back(Poly::variable(over_l.scheme->ring(), fv));
  ThomPresentation p_l = make_thom(over_l.scheme, z_l);

  // Th(R(E)) on the restriction side: the restricted zero section is cut by
  // the component variables of the fiber coordinates
  std::vector<Poly> z_k;
  for (std::size_t fv : over_l.fiber_vars)
    for (std::size_t pos : rtot.var_map[fv])
      z_k.push_back(Poly::variable(rtot.result->ring(), pos));
  ThomPresentation p_k = make_thom(rtot.result, z_k);

  for (std::uint32_t s = 1; s <= 3; ++s) {
    for (int dual = 0; dual < 2; ++dual) {
      ThomCompareReport::Run run;
      TestAlgebra a = dual ? TestAlgebra::dual_numbers(q, s) : TestAlgebra::finite_field(q, s);
      run.algebra = a.label();
      EnumRing left_ring = EnumRing::over_algebra(k, a);
      EnumRing right_ring = EnumRing::tensor_with(L, a);
      if (!right_ring.local()) {
        run.skipped = true;
        run.note = "A (x) L is not local";
        report.runs.push_back(std::move(run));
        continue;
      }
      if (enumeration_cost(rtot.result, left_ring, cap) > cap ||
          enumeration_cost(over_l.scheme, right_ring, cap) > cap) {
        run.skipped = true;
        run.note = "enumeration budget";
        report.runs.push_back(std::move(run));
        continue;
      }

      ThomClassSet left, right;
      try {
        left = thom_points(p_k, left_ring, a.label(), budget);
        right = thom_points(p_l, right_ring, a.label() + " (x) L", budget);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::budget_exceeded) throw;
        run.skipped = true;
        run.note = "enumeration budget";
        report.runs.push_back(std::move(run));
        continue;
      }
      run.left_classes = left.class_count();
      run.right_classes = right.class_count();

      // the adjunction coordinate map on class representatives
      bool bijection = left.classes.size() == right.classes.size();
      std::vector<std::vector<FlatField::Idx>> mapped;
      for (const auto& lp : left.classes) {
        auto rp = expand_point(rtot, left_ring, right_ring, lp);
        if (!std::binary_search(right.classes.begin(), right.classes.end(), rp)) {
          bijection = false;
          break;
        }
        mapped.push_back(std::move(rp));
      }
      if (bijection) {
        std::sort(mapped.begin(), mapped.end());
        bijection = std::adjacent_find(mapped.begin(), mapped.end()) == mapped.end();
      }
      run.bijection = bijection;

      // basepoint preservation: collapsed points stay collapsed
      bool base_ok = true;
      for (const auto& lp : left.basepoint_points) {
        auto rp = expand_point(rtot, left_ring, right_ring, lp);
        if (!std::binary_search(right.basepoint_points.begin(), right.basepoint_points.end(),
                                rp)) {
          base_ok = false;
          break;
        }
      }
      run.basepoint_preserved = base_ok;
      report.runs.push_back(std::move(run));
    }
  }

  bool any = false;
  report.ok = true;
  for (const auto& run : report.runs) {
    if (run.skipped) continue;
    any = true;
    if (!run.bijection || !run.basepoint_preserved) report.ok = false;
  }
  report.ok = report.ok && any;
  return report;
}

Step2Report step2_check(const BundlePresentation& e, const TestAlgebra& a,
                        std::optional<std::uint64_t> budget) {
  Step2Report report;
  report.algebra = a.label();
  const AlgebraPtr& L = e.base_scheme->base();
  AlgebraPtr k = EtaleAlgebra::trivial(L->base());

  EnumRing left_ring = EnumRing::over_algebra(k, a);
  EnumRing right_ring = EnumRing::tensor_with(L, a);
  if (!left_ring.local() || !right_ring.local()) {
    report.skipped = true;
    report.detail = "A (x) L is not local";
    return report;
  }

  TotalSpace over_l = total_space(e);
  RestrictionResult rtot = restrict_scheme(over_l.scheme);

  std::vector<Poly> z_l;
  for (std::size_t fv : over_l.fiber_vars) z_l.push_back(Poly::variable(over_l.scheme->ring(), fv));
  std::vector<Poly> z_k;
  for (std::size_t fv : over_l.fiber_vars)
    for (std::size_t pos : rtot.var_map[fv])
      z_k.push_back(Poly::variable(rtot.result->ring(), pos));

  PointSet left = enumerate_points(rtot.result, left_ring, a.label(), budget);
  for (const auto& lp : left.points) {
    bool left_complement = false;
    for (const auto& h : z_k)
      if (value_is_unit(left_ring, evaluate_at(left_ring, h, lp))) {
        left_complement = true;
        break;
      }
    auto rp = expand_point(rtot, left_ring, right_ring, lp);
    bool right_complement = false;
    for (const auto& h : z_l)
      if (value_is_unit(right_ring, evaluate_at(right_ring, h, rp))) {
        right_complement = true;
        break;
      }
    if (left_complement != right_complement) {
      report.ok = false;
      report.detail = "complement membership disagrees at a point";
      return report;
    }
    ++report.points_checked;
  }
  report.ok = true;
  report.detail = "factorization through the complement agrees on all points";
  return report;
}

GysinReport gysin_shadow(const SchemePtr& z, const TestAlgebra& field,
                         std::optional<std::uint64_t> budget) {
  GysinReport report;
  report.field = field.label();
  if (field.kind == TestAlgebra::Kind::dual_numbers)
    throw Error(ErrorKind::not_local_algebra, "the Gysin shadow is checked at field points");
  if (z->provenance().kind != Provenance::Kind::closed || !z->provenance().parent)
    throw Error(ErrorKind::not_complete_intersection,
                "Gysin shadow requires a closed subscheme with recorded equations");
  const SchemePtr& x = z->provenance().parent;
  const auto& hs = z->provenance().closed_extra;

  // Th(N_{Z/X}): total space of the (free) normal bundle, zero section cut
  // by the fiber coordinates. Z = X (no equations) and empty Z are legal.
  std::uint64_t thom_side, pair_side;
  std::vector<std::vector<FlatField::Idx>> thom_base_points;
  EnumRing ring = EnumRing::over_algebra(x->base(), field);
  if (z->is_empty()) {
    thom_side = 1;  // only the basepoint
    pair_side = 1;
  } else if (hs.empty()) {
    // Z = X: nothing collapses; classes = X(F) plus the basepoint
    PointSet pts = enumerate_points(x, ring, field.label(), budget);
    thom_side = pts.count() + 1;
    pair_side = thom_side;
  } else {
    NormalPresentation np = normal_presentation(z);
    std::vector<Poly> zeros;
    for (std::size_t fv : np.total.fiber_vars)
      zeros.push_back(Poly::variable(np.total.scheme->ring(), fv));
    ThomClassSet thom = thom_points(make_thom(np.total.scheme, zeros),
                                    EnumRing::over_algebra(x->base(), field), field.label(),
                                    budget);
    ThomClassSet pair =
        thom_points(make_thom(x, hs), ring, field.label(), budget);
    thom_side = thom.class_count();
    pair_side = pair.class_count();
    // the canonical bijection matches Z-points identically: class points of
    // the Thom side are (z, 0); dropping fiber coordinates must give exactly
    // the class points of the pair side
    std::vector<std::vector<FlatField::Idx>> dropped;
    const std::size_t slot = ring.components().size();
    for (const auto& cp : thom.classes)
      dropped.emplace_back(cp.begin(), cp.begin() + static_cast<std::ptrdiff_t>(x->nvars() * slot));
    std::sort(dropped.begin(), dropped.end());
    dropped.erase(std::unique(dropped.begin(), dropped.end()), dropped.end());
    if (dropped != pair.classes) {
      report.ok = false;
      report.thom_classes = thom_side;
      report.pair_classes = pair_side;
      report.detail = "class points do not match Z(F)";
      return report;
    }
  }
  report.thom_classes = thom_side;
  report.pair_classes = pair_side;
  report.ok = thom_side == pair_side;
  report.detail = report.ok ? "both class sets are Z(F) plus the basepoint"
                            : "class counts differ";
  return report;
}

}  // namespace weilkit
