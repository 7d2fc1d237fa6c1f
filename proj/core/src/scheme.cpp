#include "weilkit/scheme.hpp"

#include <algorithm>
#include <sstream>

namespace weilkit {

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

}  // namespace

std::string algebra_label(const EtaleAlgebra& a) {
  std::string base = a.base().is_finite()
                         ? "GF(" + std::to_string(a.base().characteristic()) + ")"
                         : "QQ";
  if (a.is_trivial()) return base;
  std::ostringstream os;
  os << base << "[t]/(";
  bool first = true;
  for (int j = a.degree(); j >= 0; --j) {
    const BaseElem& c = a.min_poly()[j];
    if (a.base().is_zero(c)) continue;
    std::string cs = a.base().to_string(c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (!first) os << (neg ? " - " : " + ");
    if (neg && !first) cs = cs.substr(1);
    first = false;
    if (j == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << "t";
      if (j > 1) os << "^" << j;
    }
  }
  os << ")";
  return os.str();
}

std::string fresh_var_name(const std::string& base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& n) {
    return std::find(taken.begin(), taken.end(), n) != taken.end();
  };
  if (!used(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used(cand)) return cand;
  }
}

AffineScheme::AffineScheme(RingPtr ring, std::vector<Poly> gens, Provenance prov)
    : ring_(std::move(ring)), gens_(std::move(gens)), prov_(std::move(prov)) {}

SchemePtr AffineScheme::make(AlgebraPtr base, std::vector<std::string> vars,
                             std::vector<Poly> gens, Provenance prov) {
  return make(PolyRing::make(std::move(base), std::move(vars)), std::move(gens), std::move(prov));
}

SchemePtr AffineScheme::make(RingPtr ring, std::vector<Poly> gens, Provenance prov) {
  for (const auto& g : gens)
    if (!g.ring()->same(*ring))
      throw Error(ErrorKind::ring_mismatch, "scheme generator lies in a different ring");
  return SchemePtr(new AffineScheme(std::move(ring), std::move(gens), std::move(prov)));
}

const GroebnerBasis& AffineScheme::gb() const {
  std::lock_guard<std::mutex> lock(gb_mutex_);
  if (!gb_)
    gb_ = std::make_shared<const GroebnerBasis>(
        GroebnerBasis::compute(Ideal::make(ring_, gens_)));
  return *gb_;
}

std::string AffineScheme::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < ring_->vars.size(); ++i) {
    if (i) os << ", ";
    os << ring_->vars[i];
  }
  os << "] / (";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) os << ", ";
    os << gens_[i].to_string();
  }
  os << ") over " << algebra_label(*ring_->coeff);
  return os.str();
}

SchemeMorphism SchemeMorphism::make(SchemePtr source, SchemePtr target,
                                    std::vector<Poly> images) {
  if (!EtaleAlgebra::same(*source->base(), *target->base()))
    throw Error(ErrorKind::ring_mismatch, "morphism between schemes over different bases");
  if (images.size() != target->nvars())
    throw Error(ErrorKind::not_well_defined,
                "expected " + std::to_string(target->nvars()) + " coordinate images, got " +
                    std::to_string(images.size()));
  for (const auto& p : images)
    if (!p.ring()->same(*source->ring()))
      throw Error(ErrorKind::ring_mismatch, "coordinate image lies in a different ring");
  // well-definedness: target generators must vanish after substitution
  for (const auto& g : target->generators()) {
    Poly pulled = g.substitute(source->ring(), images);
    if (!source->gb().normal_form(pulled).is_zero())
      throw Error(ErrorKind::not_well_defined,
                  "target relation does not vanish on the source", g.to_string());
  }
  SchemeMorphism m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.images_ = std::move(images);
  return m;
}

SchemeMorphism SchemeMorphism::identity(SchemePtr scheme) {
  std::vector<Poly> images;
  images.reserve(scheme->nvars());
  for (std::size_t i = 0; i < scheme->nvars(); ++i)
    images.push_back(Poly::variable(scheme->ring(), i));
  SchemeMorphism m;
  m.source_ = scheme;
  m.target_ = std::move(scheme);
  m.images_ = std::move(images);
  return m;
}

Poly SchemeMorphism::pullback(const Poly& p) const {
  if (!p.ring()->same(*target_->ring()))
    throw Error(ErrorKind::ring_mismatch, "pullback of polynomial from a different ring");
  return p.substitute(source_->ring(), images_);
}

SchemeMorphism SchemeMorphism::compose(const SchemeMorphism& inner) const {
  if (!inner.target_->ring()->same(*source_->ring()))
    throw Error(ErrorKind::ring_mismatch, "composition of non-composable morphisms");
  std::vector<Poly> images;
  images.reserve(images_.size());
  for (const auto& img : images_) images.push_back(img.substitute(inner.source_->ring(), inner.images_));
  return make(inner.source_, target_, std::move(images));
}

bool SchemeMorphism::equals_mod_ideal(const SchemeMorphism& o) const {
  if (!source_->ring()->same(*o.source_->ring())) return false;
  if (!target_->ring()->same(*o.target_->ring())) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!source_->gb().normal_form(images_[i] - o.images_[i]).is_zero()) return false;
  return true;
}

bool SchemeMorphism::is_identity_mod_ideal() const {
  if (!source_->ring()->same(*target_->ring())) return false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    Poly v = Poly::variable(source_->ring(), i);
    if (!source_->gb().normal_form(images_[i] - v).is_zero()) return false;
  }
  return true;
}

std::string SchemeMorphism::describe() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ", ";
    os << images_[i].to_string();
  }
  os << ")";
  return os.str();
}

FiberProduct fiber_product(const SchemeMorphism& f, const SchemeMorphism& g) {
  const SchemePtr& X = f.source();
  const SchemePtr& Y = g.source();
  if (!f.target()->ring()->same(*g.target()->ring()))
    throw Error(ErrorKind::ring_mismatch, "fiber product needs a common target");
  if (!EtaleAlgebra::same(*X->base(), *Y->base()))
    throw Error(ErrorKind::ring_mismatch, "fiber product over different bases");

  std::vector<std::string> vars = X->vars();
  std::vector<std::string> right_names;
  for (const auto& v : Y->vars()) {
    std::string name = v;
    while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_r";
    vars.push_back(name);
    right_names.push_back(name);
  }
  RingPtr P = PolyRing::make(X->base(), vars);

  std::vector<std::size_t> left_map = identity_map(X->nvars());
  std::vector<std::size_t> right_map;
  for (std::size_t i = 0; i < Y->nvars(); ++i) right_map.push_back(X->nvars() + i);

  std::vector<Poly> gens;
  for (const auto& p : X->generators()) gens.push_back(reindex(p, P, left_map));
  for (const auto& p : Y->generators()) gens.push_back(reindex(p, P, right_map));
  for (std::size_t w = 0; w < f.target()->nvars(); ++w) {
    Poly glue = reindex(f.images()[w], P, left_map) - reindex(g.images()[w], P, right_map);
    if (!glue.is_zero()) gens.push_back(std::move(glue));
  }

  Provenance prov;
  prov.kind = Provenance::Kind::product;
  SchemePtr prod = AffineScheme::make(P, std::move(gens), std::move(prov));

  std::vector<Poly> proj_left, proj_right;
  for (std::size_t i = 0; i < X->nvars(); ++i) proj_left.push_back(Poly::variable(P, left_map[i]));
  for (std::size_t i = 0; i < Y->nvars(); ++i) proj_right.push_back(Poly::variable(P, right_map[i]));
  FiberProduct out;
  out.scheme = prod;
  out.to_left = SchemeMorphism::make(prod, X, std::move(proj_left));
  out.to_right = SchemeMorphism::make(prod, Y, std::move(proj_right));
  out.left_vars = left_map;
  out.right_vars = right_map;
  return out;
}

FiberProduct product(const SchemePtr& x, const SchemePtr& y) {
  SchemePtr point = AffineScheme::make(x->base(), {}, {});
  auto fx = SchemeMorphism::make(x, point, {});
  auto fy = SchemeMorphism::make(y, point, {});
  return fiber_product(fx, fy);
}

OpenSubscheme distinguished_open(const SchemePtr& x, const Poly& g) {
  if (!g.ring()->same(*x->ring()))
    throw Error(ErrorKind::ring_mismatch, "function from a different coordinate ring");
  std::vector<std::string> vars = x->vars();
  vars.push_back(fresh_var_name("y_inv", vars));
  RingPtr R = PolyRing::make(x->base(), vars);
  auto vmap = identity_map(x->nvars());
  std::vector<Poly> gens;
  for (const auto& p : x->generators()) gens.push_back(reindex(p, R, vmap));
  Poly y = Poly::variable(R, x->nvars());
  gens.push_back(y * reindex(g, R, vmap) - Poly::from_int(R, 1));

  Provenance prov;
  prov.kind = Provenance::Kind::open;
  prov.parent = x;
  prov.open_g = g;
  SchemePtr open = AffineScheme::make(R, std::move(gens), std::move(prov));
  std::vector<Poly> incl;
  for (std::size_t i = 0; i < x->nvars(); ++i) incl.push_back(Poly::variable(R, i));
  OpenSubscheme out;
  out.scheme = open;
  out.inclusion = SchemeMorphism::make(open, x, std::move(incl));
  return out;
}

ClosedSubscheme closed_subscheme(const SchemePtr& x, std::vector<Poly> extra) {
  for (const auto& p : extra)
    if (!p.ring()->same(*x->ring()))
      throw Error(ErrorKind::ring_mismatch, "equation from a different coordinate ring");
  std::vector<Poly> gens = x->generators();
  for (const auto& p : extra) gens.push_back(p);
  Provenance prov;
  prov.kind = Provenance::Kind::closed;
  prov.parent = x;
  prov.closed_extra = extra;
  SchemePtr z = AffineScheme::make(x->ring(), std::move(gens), std::move(prov));
  std::vector<Poly> incl;
  for (std::size_t i = 0; i < x->nvars(); ++i) incl.push_back(Poly::variable(x->ring(), i));
  ClosedSubscheme out;
  out.scheme = z;
  out.inclusion = SchemeMorphism::make(z, x, std::move(incl));
  return out;
}

ClosedEmbeddingReport is_closed_embedding(const SchemeMorphism& m) {
  ClosedEmbeddingReport report;
  const SchemePtr& X = m.source();
  const SchemePtr& Y = m.target();
  if (X->is_empty()) {
    report.closed_embedding = true;
    report.empty_source = true;
    return report;
  }
  // ring k[x's | tags], elimination order on the x block
  std::vector<std::string> vars = X->vars();
  std::vector<std::string> tags;
  for (const auto& yv : Y->vars()) {
    std::string t = fresh_var_name(yv + "_im", vars);
    vars.push_back(t);
    tags.push_back(t);
  }
  RingPtr E = PolyRing::make(X->base(), vars);
  auto xmap = identity_map(X->nvars());
  std::vector<Poly> gens;
  for (const auto& p : X->generators()) gens.push_back(reindex(p, E, xmap));
  for (std::size_t u = 0; u < Y->nvars(); ++u) {
    Poly tag = Poly::variable(E, X->nvars() + u);
    gens.push_back(tag - reindex(m.images()[u], E, xmap));
  }
  auto gb = GroebnerBasis::compute(Ideal::make(E, gens),
                                   MonomialOrder::eliminate_first(X->nvars()));
  // each source variable must reduce to a tags-only polynomial
  for (std::size_t i = 0; i < X->nvars(); ++i) {
    Poly nf = gb.normal_form(Poly::variable(E, i));
    bool tags_only = true;
    for (const auto& t : nf.terms())
      for (std::size_t v = 0; v < X->nvars(); ++v)
        if (t.exps[v] > 0) tags_only = false;
    if (!tags_only) {
      report.closed_embedding = false;
      report.offending_variable = X->vars()[i];
      report.expressions.clear();
      return report;
    }
    // print the expression with the tag variables renamed back to Y's names
    std::vector<Poly> back;
    for (std::size_t v = 0; v < X->nvars(); ++v) back.push_back(Poly::zero(Y->ring()));
    for (std::size_t u = 0; u < Y->nvars(); ++u) back.push_back(Poly::variable(Y->ring(), u));
    report.expressions.push_back(X->vars()[i] + " = " + nf.substitute(Y->ring(), back).to_string());
  }
  report.closed_embedding = true;
  return report;
}

SmoothnessReport is_smooth(const SchemePtr& x, int expected_dim) {
  SmoothnessReport report;
  report.expected_dimension = expected_dim;
  if (x->is_empty()) {
    report.smooth = true;
    report.empty = true;
    report.dimension = -1;
    return report;
  }
  report.dimension = x->dimension();
  const int n = static_cast<int>(x->nvars());
  const int codim = n - expected_dim;
  if (report.dimension != expected_dim) {
    report.smooth = false;
    return report;
  }
  if (codim == 0) {
    report.smooth = true;
    report.jacobian_ideal_basis = {"1"};
    return report;
  }
  auto jac = jacobian(x->generators(), x->ring());
  std::vector<Poly> gens = x->generators();
  for (auto& mi : minors(jac, static_cast<std::size_t>(codim))) gens.push_back(std::move(mi));
  auto gb = GroebnerBasis::compute(Ideal::make(x->ring(), std::move(gens)));
  report.smooth = gb.is_unit();
  for (const auto& b : gb.basis()) report.jacobian_ideal_basis.push_back(b.to_string());
  return report;
}

EtaleReport is_etale_morphism(const SchemeMorphism& m) {
  EtaleReport report;
  const SchemePtr& X = m.source();
  const SchemePtr& Y = m.target();
  if (X->is_empty()) {
    report.etale = true;
    report.empty_source = true;
    return report;
  }
  report.source_dimension = X->dimension();
  report.target_dimension = Y->dimension();

  // fast path: coordinate images are distinct source variables, so the
  // remaining variables give the relative presentation directly
  std::vector<int> image_var(X->nvars(), 0);
  bool variable_images = true;
  for (const auto& img : m.images()) {
    const auto& ts = img.terms();
    if (ts.size() == 1 && exps_degree(ts[0].exps) == 1 && X->base()->is_one(ts[0].coeff)) {
      for (std::size_t v = 0; v < X->nvars(); ++v)
        if (ts[0].exps[v] == 1) {
          if (image_var[v]) variable_images = false;  // duplicate
          image_var[v] = 1;
        }
    } else {
      variable_images = false;
    }
    if (!variable_images) break;
  }

  GroebnerBasis gb_test = [&]() {
    if (variable_images) {
      report.used_variable_presentation = true;
      std::vector<std::size_t> rel_vars;
      for (std::size_t v = 0; v < X->nvars(); ++v)
        if (!image_var[v]) rel_vars.push_back(v);
      std::vector<Poly> gens = X->generators();
      for (const auto& g : Y->generators()) gens.push_back(m.pullback(g));
      if (rel_vars.empty()) {
        // no relative variables: the empty 0x0 minor is 1
        gens.push_back(Poly::from_int(X->ring(), 1));
      } else {
        std::vector<std::vector<Poly>> jac;
        for (const auto& g : X->generators()) {
          std::vector<Poly> row;
          for (std::size_t v : rel_vars) row.push_back(g.derivative(v));
          jac.push_back(std::move(row));
        }
        // fewer relation rows than relative variables leaves a zero Fitting
        // ideal, i.e. no minors to add
        for (auto& mi : minors(jac, rel_vars.size())) gens.push_back(std::move(mi));
      }
      return GroebnerBasis::compute(Ideal::make(X->ring(), std::move(gens)));
    }
    // graph presentation: X = Y[all source vars] / (I_X + graph relations)
    std::vector<std::string> vars = X->vars();
    std::vector<std::string> tags;
    for (const auto& yv : Y->vars()) {
      std::string t = fresh_var_name(yv + "_im", vars);
      vars.push_back(t);
      tags.push_back(t);
    }
    RingPtr G = PolyRing::make(X->base(), vars);
    auto xmap = identity_map(X->nvars());
    std::vector<std::size_t> tagmap;
    for (std::size_t u = 0; u < Y->nvars(); ++u) tagmap.push_back(X->nvars() + u);
    std::vector<Poly> gens;
    for (const auto& p : X->generators()) gens.push_back(reindex(p, G, xmap));
    for (std::size_t u = 0; u < Y->nvars(); ++u)
      gens.push_back(Poly::variable(G, tagmap[u]) - reindex(m.images()[u], G, xmap));
    for (const auto& p : Y->generators()) gens.push_back(reindex(p, G, tagmap));
    if (X->nvars() == 0) {
      gens.push_back(Poly::from_int(G, 1));  // empty 0x0 minor
    } else {
      std::vector<std::vector<Poly>> jac;
      for (const auto& g : gens) {
        std::vector<Poly> row;
        for (std::size_t v = 0; v < X->nvars(); ++v) row.push_back(g.derivative(v));
        jac.push_back(std::move(row));
      }
      for (auto& mi : minors(jac, X->nvars())) gens.push_back(std::move(mi));
    }
    return GroebnerBasis::compute(Ideal::make(G, std::move(gens)));
  }();

  bool unramified = gb_test.is_unit();
  for (const auto& b : gb_test.basis()) report.fitting_basis.push_back(b.to_string());
  report.etale = unramified && report.source_dimension == report.target_dimension;
  return report;
}

}  // namespace weilkit
