#include "weilkit/commands.hpp"

#include <chrono>

namespace weilkit {

using nlohmann::json;

const char* to_string(Report::Status s) {
  switch (s) {
    case Report::Status::verified: return "verified";
    case Report::Status::refuted: return "refuted";
    case Report::Status::skipped: return "skipped";
    case Report::Status::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

json Report::to_json(bool include_timing) const {
  json out;
  out["command"] = command;
  out["status"] = weilkit::to_string(status);
  out["witnesses"] = witnesses;
  out["timing_ms"] = include_timing ? timing_ms : 0.0;
  return out;
}

namespace {

json strings(const std::vector<std::string>& v) { return json(v); }

json poly_strings(const std::vector<Poly>& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

void set_comparison(json& w, const ComparisonReport& rep) {
  w["notes"] = strings(rep.notes);
  w["failures"] = strings(rep.failures);
}

// default fiberwise test fields for the base characteristic: F_p and F_{p^2}
std::vector<TestAlgebra> default_fields(const AlgebraPtr& base) {
  std::vector<TestAlgebra> out;
  if (!base->base().is_finite()) return out;
  std::uint64_t p = base->base().characteristic();
  out.push_back(TestAlgebra::finite_field(p, 1));
  out.push_back(TestAlgebra::finite_field(p, 2));
  return out;
}

Report execute(const Session& session, const Command& cmd) {
  Report report;
  report.command = cmd.text;
  json& w = report.witnesses;
  auto ok_status = [&](bool ok) {
    report.status = ok ? Report::Status::verified : Report::Status::refuted;
  };

  auto scheme_arg = [&](std::size_t i) -> const SchemePtr& {
    return session.schemes.at(cmd.names.at(i));
  };
  auto morphism_arg = [&](std::size_t i) -> const SchemeMorphism& {
    return session.morphisms.at(cmd.names.at(i));
  };
  auto bundle_arg = [&](std::size_t i) -> const BundlePresentation& {
    return session.bundles.at(cmd.names.at(i));
  };

  if (cmd.verb == Command::Verb::restrict) {
    const SchemePtr& x = scheme_arg(0);
    RestrictionResult rx = restrict_scheme(x);
    w["algebra"] = algebra_label(*rx.algebra);
    w["degree"] = rx.algebra->degree();
    w["source"] = x->describe();
    w["variables"] = json(rx.result->vars());
    w["generators"] = poly_strings(rx.result->generators());
    w["pruned"] = json(rx.pruned);
    report.status = Report::Status::verified;
    return report;
  }

  if (cmd.verb == Command::Verb::points) {
    const SchemePtr& x = scheme_arg(0);
    PointSet ps = enumerate_points(x, *cmd.algebra);
    w["algebra"] = cmd.algebra->label();
    w["count"] = ps.count();
    report.status = Report::Status::verified;
    return report;
  }

  const std::string& t = cmd.target;
  if (t == "adjunction") {
    RestrictionResult rx = restrict_scheme(scheme_arg(0));
    AdjunctionReport rep = adjunction_bijection(rx, *cmd.algebra);
    w["algebra"] = rep.algebra;
    w["left"] = rep.left_count;
    w["right"] = rep.right_count;
    if (!rep.witness.empty()) w["witness"] = rep.witness;
    ok_status(rep.ok);
  } else if (t == "triangles") {
    const SchemePtr& x = scheme_arg(0);
    SchemePtr y = cmd.names.size() > 1 ? scheme_arg(1) : restrict_scheme(x).result;
    TriangleReport rep = triangle_identities(x, y);
    w["coordinates"] = rep.coordinates_checked;
    w["failures"] = strings(rep.failures);
    ok_status(rep.ok);
  } else if (t == "base-change") {
    ComparisonReport rep = base_change_compat(scheme_arg(0), scheme_arg(1));
    set_comparison(w, rep);
    ok_status(rep.ok);
  } else if (t == "fiber-product") {
    ComparisonReport rep = fiber_product_compat(morphism_arg(0), morphism_arg(1));
    set_comparison(w, rep);
    ok_status(rep.ok);
  } else if (t == "preserves-closed") {
    const SchemeMorphism& m = morphism_arg(0);
    ClosedEmbeddingReport src = is_closed_embedding(m);
    w["source"] = {{"closed_embedding", src.closed_embedding},
                   {"expressions", strings(src.expressions)}};
    if (!src.closed_embedding) {
      w["source"]["offending_variable"] = src.offending_variable;
      w["note"] = "source morphism is not a closed embedding; nothing to preserve";
      report.status = Report::Status::skipped;
      return report;
    }
    RestrictionResult rs = restrict_scheme(m.source());
    RestrictionResult rt = restrict_scheme(m.target());
    ClosedEmbeddingReport res = is_closed_embedding(restrict_morphism(m, rs, rt));
    w["restricted"] = {{"closed_embedding", res.closed_embedding},
                       {"expressions", strings(res.expressions)}};
    if (!res.closed_embedding) w["restricted"]["offending_variable"] = res.offending_variable;
    ok_status(res.closed_embedding);
  } else if (t == "preserves-smooth") {
    const SchemePtr& x = scheme_arg(0);
    SmoothnessReport src = is_smooth(x, cmd.int_arg);
    w["expected_dimension"] = cmd.int_arg;
    w["source"] = {{"smooth", src.smooth},
                   {"dimension", src.dimension},
                   {"jacobian_ideal", strings(src.jacobian_ideal_basis)}};
    if (cmd.expect_refuted) {
      w["expectation"] = "refuted";
      ok_status(!src.smooth);
      return report;
    }
    if (!src.smooth) {
      ok_status(false);
      return report;
    }
    RestrictionResult rx = restrict_scheme(x);
    SmoothnessReport res = is_smooth(rx.result, cmd.int_arg * rx.algebra->degree());
    w["restricted"] = {{"smooth", res.smooth},
                       {"dimension", res.dimension},
                       {"jacobian_ideal", strings(res.jacobian_ideal_basis)}};
    ok_status(res.smooth);
  } else if (t == "preserves-etale") {
    const SchemeMorphism& m = morphism_arg(0);
    EtaleReport src = is_etale_morphism(m);
    w["source"] = {{"etale", src.etale},
                   {"source_dimension", src.source_dimension},
                   {"target_dimension", src.target_dimension}};
    if (!src.etale) {
      w["note"] = "source morphism is not etale; nothing to preserve";
      report.status = Report::Status::skipped;
      return report;
    }
    RestrictionResult rs = restrict_scheme(m.source());
    RestrictionResult rt = restrict_scheme(m.target());
    EtaleReport res = is_etale_morphism(restrict_morphism(m, rs, rt));
    w["restricted"] = {{"etale", res.etale},
                       {"source_dimension", res.source_dimension},
                       {"target_dimension", res.target_dimension}};
    ok_status(res.etale);
  } else if (t == "bundle") {
    const BundlePresentation& e = bundle_arg(0);
    RestrictedBundle rb = restrict_bundle(e);  // re-validates idempotency and rank
    w["ambient_rank"] = e.ambient_rank;
    w["rank"] = e.rank;
    w["restricted_ambient_rank"] = rb.bundle.ambient_rank;
    w["restricted_rank"] = rb.bundle.rank;
    json compat;
    set_comparison(compat, rb.total_space_compat);
    w["total_space_compat"] = compat;
    ok_status(rb.total_space_compat.ok);
  } else if (t == "zero-section") {
    ZeroSectionReport rep = restrict_zero_section(bundle_arg(0));
    w["coordinates"] = rep.coordinates_checked;
    w["failures"] = strings(rep.failures);
    ok_status(rep.ok);
  } else if (t == "normal") {
    const SchemePtr& z = scheme_arg(0);
    NormalCompatReport rep = normal_compat(z, default_fields(z->base()));
    w["presentation_checked"] = rep.presentation_checked;
    json pres;
    set_comparison(pres, rep.presentation);
    w["presentation"] = pres;
    json fibers = json::array();
    for (const auto& f : rep.fiberwise)
      fibers.push_back(json{{"field", f.field},
                            {"points", f.points},
                            {"ok", f.ok},
                            {"skipped", f.skipped},
                            {"detail", f.detail}});
    w["fiberwise"] = fibers;
    ok_status(rep.ok);
  } else if (t == "thom") {
    ThomCompareReport rep = thom_compare(bundle_arg(0), cmd.algebra->p);
    json runs = json::array();
    for (const auto& r : rep.runs)
      runs.push_back(json{{"algebra", r.algebra},
                          {"skipped", r.skipped},
                          {"note", r.note},
                          {"left_classes", r.left_classes},
                          {"right_classes", r.right_classes},
                          {"bijection", r.bijection},
                          {"basepoint_preserved", r.basepoint_preserved}});
    w["runs"] = runs;
    ok_status(rep.ok);
  } else if (t == "step2") {
    Step2Report rep = step2_check(bundle_arg(0), *cmd.algebra);
    w["algebra"] = rep.algebra;
    w["points_checked"] = rep.points_checked;
    w["detail"] = rep.detail;
    if (rep.skipped) {
      report.status = Report::Status::skipped;
      return report;
    }
    ok_status(rep.ok);
  } else if (t == "gysin-shadow") {
    GysinReport rep = gysin_shadow(scheme_arg(0), *cmd.algebra);
    w["field"] = rep.field;
    w["thom_classes"] = rep.thom_classes;
    w["pair_classes"] = rep.pair_classes;
    w["detail"] = rep.detail;
    ok_status(rep.ok);
  } else if (t == "galois-split") {
    const SchemePtr& x = scheme_arg(0);
    GaloisReport rep = galois_decomposition(x);
    RestrictionResult rx = restrict_scheme(x);
    GaloisCountReport counts = galois_count_check(rep, rx);
    w["group_order"] = rep.group_order;
    w["idempotents"] = strings(rep.idempotents);
    w["idempotents_ok"] = rep.idempotents_ok;
    json comparison;
    set_comparison(comparison, rep.comparison);
    w["comparison"] = comparison;
    w["left_count"] = counts.left;
    w["right_counts"] = json(counts.right);
    w["count_detail"] = counts.detail;
    ok_status(rep.comparison.ok && counts.ok);
  } else if (t == "norm-open") {
    const SchemePtr& x = scheme_arg(0);
    NormOpenReport rep = restrict_open(x, *cmd.poly_arg);
    w["norm"] = rep.norm.to_string();
    json comparison;
    set_comparison(comparison, rep.comparison);
    w["comparison"] = comparison;
    bool points_ok = true;
    if (x->base()->base().is_finite()) {
      TestAlgebra a = TestAlgebra::finite_field(x->base()->base().characteristic());
      NormOpenPointReport pts = norm_open_point_check(rep, *cmd.poly_arg, a);
      w["points_checked"] = pts.points_checked;
      w["points_detail"] = pts.detail;
      points_ok = pts.ok;
    } else {
      w["points_detail"] = "enumeration skipped over QQ";
    }
    ok_status(rep.comparison.ok && points_ok);
  } else if (t == "affine-shadow") {
    AffineShadowReport rep = affine_shadow(scheme_arg(0), cmd.int_arg);
    w["n"] = cmd.int_arg;
    w["lhs_vars"] = rep.lhs_vars;
    w["rhs_vars"] = rep.rhs_vars;
    w["detail"] = rep.detail;
    ok_status(rep.ok);
  } else {
    throw Error(ErrorKind::internal, "unhandled verify target " + t);
  }
  return report;
}

}  // namespace

Report run_command(const Session& session, const Command& cmd) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    report = execute(session, cmd);
  } catch (const Error& e) {
    report.command = cmd.text;
    report.status = e.kind() == ErrorKind::budget_exceeded ||
                            e.kind() == ErrorKind::degree_budget_exceeded
                        ? Report::Status::budget_exceeded
                        : Report::Status::refuted;
    report.witnesses = json{{"error", std::string(to_string(e.kind())) + ": " + e.what()}};
    if (!e.witness().empty()) report.witnesses["witness"] = e.witness();
  }
  auto end = std::chrono::steady_clock::now();
  report.timing_ms = std::chrono::duration<double, std::milli>(end - start).count();
  return report;
}

std::vector<Report> run_session(const Session& session) {
  std::vector<Report> out;
  out.reserve(session.commands.size());
  for (const auto& cmd : session.commands) out.push_back(run_command(session, cmd));
  return out;
}

json reports_to_json(const std::vector<Report>& reports, bool include_timing) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(r.to_json(include_timing));
  return out;
}

}  // namespace weilkit
