#include "weilkit/weilres.hpp"

#include <algorithm>
#include <sstream>

namespace weilkit {

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

// component polynomials of a polynomial with L coefficients over the
// restricted variables: p = sum_j t^j G_j
std::vector<Poly> split_components(const Poly& p, const RingPtr& dst) {
  const EtaleAlgebra& L = *p.ring()->coeff;
  const int d = L.degree();
  std::vector<std::vector<Term>> comps(d);
  for (const auto& t : p.terms()) {
    for (int j = 0; j < d; ++j) {
      if (L.base().is_zero(t.coeff[j])) continue;
      comps[j].push_back(Term{t.exps, dst->coeff->from_base(t.coeff[j])});
    }
  }
  std::vector<Poly> out;
  out.reserve(d);
  for (int j = 0; j < d; ++j) out.push_back(Poly::from_terms(dst, std::move(comps[j])));
  return out;
}

std::vector<Poly> expansion_images(const RestrictionResult& rx) {
  const EtaleAlgebra& L = *rx.algebra;
  std::vector<Poly> images;
  images.reserve(rx.var_map.size());
  for (const auto& positions : rx.var_map) {
    Poly img = Poly::zero(rx.dst_l_);
    for (std::size_t j = 0; j < positions.size(); ++j)
      img = img + Poly::variable(rx.dst_l_, positions[j]).scaled(L.pow(L.gen(), j));
    images.push_back(std::move(img));
  }
  return images;
}

// restriction with selected variables kept inert (used for base change
// compatibility, where T_i's coordinates pass through unexpanded)
RestrictionResult restrict_impl(const SchemePtr& x, const std::vector<bool>& inert) {
  const RingPtr& src = x->ring();
  AlgebraPtr L = src->coeff;
  AlgebraPtr k = EtaleAlgebra::trivial(L->base());
  const int d = L->degree();

  RestrictionResult rx;
  rx.source = x;
  rx.algebra = L;
  std::vector<std::string> names;
  rx.var_map.resize(src->nvars());
  for (std::size_t i = 0; i < src->nvars(); ++i) {
    if (inert[i]) {
      std::string n = fresh_var_name(src->vars[i], names);
      rx.var_map[i] = {names.size()};
      names.push_back(n);
    } else {
      for (int j = 0; j < d; ++j) {
        std::string n = fresh_var_name(src->vars[i] + "_" + std::to_string(j), names);
        rx.var_map[i].push_back(names.size());
        names.push_back(n);
      }
    }
  }
  RingPtr dst = PolyRing::make(k, names);
  rx.dst_l_ = PolyRing::make(L, std::move(names));

  std::vector<Poly> images = expansion_images(rx);
  std::vector<Poly> components;
  for (const auto& g : x->generators()) {
    Poly hat = g.substitute(rx.dst_l_, images);
    for (auto& comp : split_components(hat, dst)) components.push_back(std::move(comp));
  }

  // prune component generators that are redundant against the others
  std::vector<bool> active(components.size(), true);
  std::vector<std::size_t> pruned;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].is_zero()) {
      active[i] = false;
      pruned.push_back(i);
      continue;
    }
    std::vector<Poly> others;
    for (std::size_t j = 0; j < components.size(); ++j)
      if (j != i && active[j]) others.push_back(components[j]);
    if (others.empty()) continue;
    auto gb = GroebnerBasis::compute(Ideal::make(dst, others));
    if (gb.normal_form(components[i]).is_zero()) {
      active[i] = false;
      pruned.push_back(i);
    }
  }
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < components.size(); ++i)
    if (active[i]) gens.push_back(components[i]);

  Provenance prov;
  prov.kind = Provenance::Kind::restriction;
  prov.parent = x;
  prov.pruned = pruned;
  rx.pruned = std::move(pruned);
  rx.result = AffineScheme::make(dst, std::move(gens), std::move(prov));
  return rx;
}

// rethrow resource errors, turn everything else into a recorded failure
template <class F>
void guarded(ComparisonReport& report, const char* step, F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::degree_budget_exceeded || e.kind() == ErrorKind::budget_exceeded)
      throw;
    report.ok = false;
    report.failures.push_back(std::string(step) + ": " + e.what());
  }
}

}  // namespace

std::vector<Poly> RestrictionResult::expand(const Poly& g) const {
  return split_components(expand_to_l(g), result->ring());
}

Poly RestrictionResult::expand_to_l(const Poly& g) const {
  if (!g.ring()->same(*source->ring()))
    throw Error(ErrorKind::ring_mismatch, "expansion of polynomial from a different ring");
  return g.substitute(dst_l_, expansion_images(*this));
}

RestrictionResult restrict_scheme(const SchemePtr& x) {
  return restrict_impl(x, std::vector<bool>(x->nvars(), false));
}

SchemeMorphism restrict_morphism(const SchemeMorphism& phi, const RestrictionResult& rx,
                                 const RestrictionResult& ry) {
  if (rx.source.get() != phi.source().get() && !rx.source->ring()->same(*phi.source()->ring()))
    throw Error(ErrorKind::ring_mismatch, "restriction of a morphism from a different scheme");
  const int d = rx.algebra->degree();
  std::vector<Poly> images(ry.result->nvars(), Poly());
  for (std::size_t u = 0; u < phi.images().size(); ++u) {
    auto comps = rx.expand(phi.images()[u]);
    for (int j = 0; j < d; ++j) images[ry.var_map[u][j]] = comps[j];
  }
  return SchemeMorphism::make(rx.result, ry.result, std::move(images));
}

SchemePtr base_change(const SchemePtr& y, const AlgebraPtr& l) {
  if (!y->base()->is_trivial())
    throw Error(ErrorKind::unsupported_base_change,
                "base change is only defined for schemes over the base field");
  if (y->base()->base() != l->base())
    throw Error(ErrorKind::ring_mismatch, "base change along an algebra over a different field");
  RingPtr R = PolyRing::make(l, y->vars());
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < y->nvars(); ++i) vars.push_back(Poly::variable(R, i));
  std::vector<Poly> gens;
  for (const auto& g : y->generators())
    gens.push_back(
        g.substitute(R, vars, [&](const AlgElem& c) { return l->from_base(c[0]); }));
  return AffineScheme::make(R, std::move(gens));
}

SchemeMorphism base_change(const SchemeMorphism& m, const AlgebraPtr& l) {
  SchemePtr src = base_change(m.source(), l);
  SchemePtr tgt = base_change(m.target(), l);
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < src->nvars(); ++i) vars.push_back(Poly::variable(src->ring(), i));
  std::vector<Poly> images;
  for (const auto& img : m.images())
    images.push_back(
        img.substitute(src->ring(), vars, [&](const AlgElem& c) { return l->from_base(c[0]); }));
  return SchemeMorphism::make(src, tgt, std::move(images));
}

SchemeMorphism counit(const RestrictionResult& rx) {
  SchemePtr source = base_change(rx.result, rx.algebra);
  // the base-changed ring has the same variables as dst_l_, so the expansion
  // images are literally the coordinate images of q
  std::vector<Poly> images;
  for (const auto& img : expansion_images(rx)) {
    std::vector<Poly> vars;
    for (std::size_t i = 0; i < source->nvars(); ++i)
      vars.push_back(Poly::variable(source->ring(), i));
    images.push_back(img.substitute(source->ring(), vars));
  }
  return SchemeMorphism::make(source, rx.source, std::move(images));
}

UnitResult unit(const SchemePtr& y, const AlgebraPtr& l) {
  SchemePtr yl = base_change(y, l);
  RestrictionResult ryl = restrict_scheme(yl);
  const int d = l->degree();
  std::vector<Poly> images(ryl.result->nvars(), Poly());
  for (std::size_t u = 0; u < y->nvars(); ++u) {
    for (int j = 0; j < d; ++j) {
      images[ryl.var_map[u][j]] =
          j == 0 ? Poly::variable(y->ring(), u) : Poly::zero(y->ring());
    }
  }
  UnitResult out;
  out.morphism = SchemeMorphism::make(y, ryl.result, std::move(images));
  out.restricted_base_change = std::move(ryl);
  return out;
}

TriangleReport triangle_identities(const SchemePtr& x_over_l, const SchemePtr& y_over_k) {
  TriangleReport report;
  report.ok = true;

  // (a) R(counit_X) . unit_{R(X)} = id_{R(X)}
  RestrictionResult rx = restrict_scheme(x_over_l);
  SchemeMorphism q = counit(rx);
  RestrictionResult rbc = restrict_scheme(q.source());
  SchemeMorphism rq = restrict_morphism(q, rbc, rx);
  UnitResult u = unit(rx.result, rx.algebra);
  SchemeMorphism composite_a = rq.compose(u.morphism);
  for (std::size_t i = 0; i < composite_a.images().size(); ++i) {
    Poly diff = composite_a.images()[i] - Poly::variable(rx.result->ring(), i);
    if (!rx.result->gb().normal_form(diff).is_zero()) {
      report.ok = false;
      report.failures.push_back("R(counit) . unit != id at coordinate " +
                                rx.result->vars()[i]);
    }
    ++report.coordinates_checked;
  }

  // (b) counit_{Y_L} . (unit_Y)_L = id_{Y_L}
  UnitResult uy = unit(y_over_k, rx.algebra);
  SchemeMorphism bc_unit = base_change(uy.morphism, rx.algebra);
  SchemeMorphism qy = counit(uy.restricted_base_change);
  SchemeMorphism composite_b = qy.compose(bc_unit);
  SchemePtr yl = bc_unit.source();
  for (std::size_t i = 0; i < composite_b.images().size(); ++i) {
    Poly diff = composite_b.images()[i] - Poly::variable(yl->ring(), i);
    if (!yl->gb().normal_form(diff).is_zero()) {
      report.ok = false;
      report.failures.push_back("counit_L . base_change(unit) != id at coordinate " +
                                yl->vars()[i]);
    }
    ++report.coordinates_checked;
  }
  return report;
}

namespace {

void check_positional_isomorphism(ComparisonReport& report, const SchemePtr& a,
                                  const SchemePtr& b) {
  if (a->nvars() != b->nvars()) {
    report.ok = false;
    report.failures.push_back("variable counts differ: " + std::to_string(a->nvars()) + " vs " +
                              std::to_string(b->nvars()));
    return;
  }
  guarded(report, "comparison maps", [&] {
    std::vector<Poly> a_vars, b_vars;
    for (std::size_t i = 0; i < a->nvars(); ++i) a_vars.push_back(Poly::variable(a->ring(), i));
    for (std::size_t i = 0; i < b->nvars(); ++i) b_vars.push_back(Poly::variable(b->ring(), i));
    SchemeMorphism a_to_b = SchemeMorphism::make(a, b, a_vars);  // O(B) -> O(A) by position
    SchemeMorphism b_to_a = SchemeMorphism::make(b, a, b_vars);
    if (!b_to_a.compose(a_to_b).is_identity_mod_ideal() ||
        !a_to_b.compose(b_to_a).is_identity_mod_ideal()) {
      report.ok = false;
      report.failures.push_back("coordinate maps do not compose to the identity");
    }
  });
}

}  // namespace

ComparisonReport positional_isomorphism(const SchemePtr& a, const SchemePtr& b) {
  ComparisonReport report;
  report.ok = true;
  check_positional_isomorphism(report, a, b);
  return report;
}

ComparisonReport base_change_compat(const SchemePtr& x, const SchemePtr& t_i) {
  const bool affine_space = t_i->generators().empty();
  const bool open_of_affine = t_i->provenance().kind == Provenance::Kind::open &&
                              t_i->provenance().parent &&
                              t_i->provenance().parent->generators().empty();
  if (!affine_space && !open_of_affine)
    throw Error(ErrorKind::unsupported_base_change,
                "base change compatibility supports affine spaces and distinguished opens");
  if (!t_i->base()->is_trivial())
    throw Error(ErrorKind::unsupported_base_change, "T_i must be a scheme over the base field");

  ComparisonReport report;
  report.ok = true;

  RestrictionResult rx = restrict_scheme(x);
  SchemePtr til = base_change(t_i, rx.algebra);
  FiberProduct prod_l = product(x, til);
  // left factor expands, T_i's coordinates stay inert
  std::vector<bool> inert(prod_l.scheme->nvars(), false);
  for (std::size_t i = x->nvars(); i < prod_l.scheme->nvars(); ++i) inert[i] = true;
  RestrictionResult lhs = restrict_impl(prod_l.scheme, inert);

  FiberProduct rhs = product(rx.result, t_i);

  report.notes.push_back("lhs = " + lhs.result->describe());
  report.notes.push_back("rhs = " + rhs.scheme->describe());
  check_positional_isomorphism(report, lhs.result, rhs.scheme);
  return report;
}

ComparisonReport fiber_product_compat(const SchemeMorphism& f, const SchemeMorphism& g) {
  ComparisonReport report;
  report.ok = true;

  FiberProduct fp = fiber_product(f, g);
  RestrictionResult ra = restrict_scheme(fp.scheme);

  RestrictionResult rx = restrict_scheme(f.source());
  RestrictionResult ry = restrict_scheme(g.source());
  RestrictionResult rz = restrict_scheme(f.target());
  guarded(report, "restricted projections", [&] {
    SchemeMorphism rf = restrict_morphism(f, rx, rz);
    SchemeMorphism rg = restrict_morphism(g, ry, rz);
    FiberProduct rb = fiber_product(rf, rg);
    report.notes.push_back("R(X x_Z Y) = " + ra.result->describe());
    report.notes.push_back("R(X) x_{R(Z)} R(Y) = " + rb.scheme->describe());
    check_positional_isomorphism(report, ra.result, rb.scheme);
  });
  return report;
}

NormOpenReport restrict_open(const SchemePtr& x, const Poly& g) {
  NormOpenReport out;
  out.comparison.ok = true;
  out.rx = restrict_scheme(x);
  const RestrictionResult& rx = out.rx;
  const EtaleAlgebra& L = *rx.algebra;
  const int d = L.degree();

  // multiplication matrix of the expanded g on the basis 1, t, ..., t^(d-1)
  Poly ghat = rx.expand_to_l(g);
  std::vector<std::vector<Poly>> m(d, std::vector<Poly>(d, Poly::zero(rx.result->ring())));
  for (int j = 0; j < d; ++j) {
    Poly col = ghat.scaled(L.pow(L.gen(), j));
    auto comps = split_components(col, rx.result->ring());
    for (int i = 0; i < d; ++i) m[i][j] = comps[i];
  }
  out.norm = det(m);
  out.comparison.notes.push_back("N(g) = " + out.norm.to_string());

  OpenSubscheme dg = distinguished_open(x, g);
  RestrictionResult rdg = restrict_scheme(dg.scheme);
  out.restricted_open = rdg.result;
  OpenSubscheme w = distinguished_open(rx.result, out.norm);
  out.norm_open = w.scheme;

  guarded(out.comparison, "norm-open comparison", [&] {
    // R(D(g)) -> D(N(g)): x_{i,j} by position, y_inv to det of multiplication
    // by the expanded Rabinowitsch inverse
    const std::size_t yvar = x->nvars();  // position of y in D(g)
    Poly yhat = rdg.expand_to_l(Poly::variable(dg.scheme->ring(), yvar));
    std::vector<std::vector<Poly>> my(d, std::vector<Poly>(d, Poly::zero(rdg.result->ring())));
    for (int j = 0; j < d; ++j) {
      Poly col = yhat.scaled(L.pow(L.gen(), j));
      auto comps = split_components(col, rdg.result->ring());
      for (int i = 0; i < d; ++i) my[i][j] = comps[i];
    }
    std::vector<Poly> to_w_images;  // one per variable of D(N(g))
    for (std::size_t p = 0; p < rx.result->nvars(); ++p)
      to_w_images.push_back(Poly::variable(rdg.result->ring(), p));
    to_w_images.push_back(det(my));
    SchemeMorphism rdg_to_w = SchemeMorphism::make(rdg.result, w.scheme, to_w_images);

    // D(N(g)) -> R(D(g)): y_j to (adj M)_{j,0} * y_inv
    std::vector<std::size_t> into_w = identity_map(rx.result->nvars());
    Poly w_inv = Poly::variable(w.scheme->ring(), rx.result->nvars());
    std::vector<Poly> to_rdg_images(rdg.result->nvars(), Poly());
    for (std::size_t p = 0; p < rx.result->nvars(); ++p)
      to_rdg_images[p] = Poly::variable(w.scheme->ring(), p);
    for (int j = 0; j < d; ++j) {
      // cofactor expansion: adj(M)_{j,0} = (-1)^j * minor(M, drop row 0, col j)
      std::vector<std::vector<Poly>> sub;
      for (int r = 1; r < d; ++r) {
        std::vector<Poly> row;
        for (int c = 0; c < d; ++c)
          if (c != j) row.push_back(m[r][c]);
        sub.push_back(std::move(row));
      }
      Poly adj = sub.empty() ? Poly::from_int(rx.result->ring(), 1) : det(sub);
      if (j % 2 == 1) adj = -adj;
      to_rdg_images[rdg.var_map[yvar][j]] = reindex(adj, w.scheme->ring(), into_w) * w_inv;
    }
    SchemeMorphism w_to_rdg = SchemeMorphism::make(w.scheme, rdg.result, to_rdg_images);

    if (!w_to_rdg.compose(rdg_to_w).is_identity_mod_ideal() ||
        !rdg_to_w.compose(w_to_rdg).is_identity_mod_ideal()) {
      out.comparison.ok = false;
      out.comparison.failures.push_back("norm-open coordinate maps are not mutually inverse");
    }
  });
  return out;
}

TwistedScheme twist(const SchemePtr& x, const AlgElem& sigma_image) {
  const AlgebraPtr& L = x->base();
  std::vector<Poly> gens;
  for (const auto& g : x->generators()) {
    std::vector<Term> terms;
    for (const auto& t : g.terms())
      terms.push_back(Term{t.exps, apply_automorphism(*L, sigma_image, t.coeff)});
    gens.push_back(Poly::from_terms(x->ring(), std::move(terms)));
  }
  TwistedScheme out;
  out.source = x;
  out.sigma_image = sigma_image;
  out.result = AffineScheme::make(x->ring(), std::move(gens));
  return out;
}

std::vector<std::string> verify_tensor_split(const EtaleAlgebra& l, const GaloisGroup& g,
                                             const std::vector<TensorIdempotent>& es) {
  std::vector<std::string> failures;
  AlgOps ops{&l};
  uni::Poly<AlgOps> f_l;
  for (const auto& c : l.min_poly()) f_l.push_back(l.from_base(c));
  auto mul_mod = [&](const std::vector<AlgElem>& a, const std::vector<AlgElem>& b) {
    uni::Poly<AlgOps> pa(a), pb(b);
    uni::normalize(ops, pa);
    uni::normalize(ops, pb);
    auto prod = uni::mul(ops, pa, pb);
    auto [q, r] = uni::divmod(ops, prod, f_l);
    (void)q;
    r.resize(l.degree(), l.zero());
    return r;
  };
  auto is_zero = [&](const std::vector<AlgElem>& a) {
    for (const auto& c : a)
      if (!l.is_zero(c)) return false;
    return true;
  };

  // pairwise products vanish, squares reproduce, sum is 1
  std::vector<AlgElem> sum(l.degree(), l.zero());
  for (std::size_t s = 0; s < es.size(); ++s) {
    for (int j = 0; j < l.degree(); ++j) sum[j] = l.add(sum[j], es[s].coeffs[j]);
    auto sq = mul_mod(es[s].coeffs, es[s].coeffs);
    for (int j = 0; j < l.degree(); ++j)
      if (!l.eq(sq[j], es[s].coeffs[j])) {
        failures.push_back("idempotent " + std::to_string(s) + " fails e^2 = e");
        break;
      }
    for (std::size_t t = s + 1; t < es.size(); ++t)
      if (!is_zero(mul_mod(es[s].coeffs, es[t].coeffs)))
        failures.push_back("idempotents " + std::to_string(s) + "," + std::to_string(t) +
                           " are not orthogonal");
  }
  if (!(l.is_one(sum[0]) && std::all_of(sum.begin() + 1, sum.end(),
                                        [&](const AlgElem& c) { return l.is_zero(c); })))
    failures.push_back("idempotents do not sum to 1");

  // twisted diagonal relation for the algebra generator a = t (which
  // generates L over k, so the relation extends to all a)
  for (std::size_t s = 0; s < es.size(); ++s) {
    std::vector<AlgElem> u_minus_sigma(l.degree(), l.zero());
    u_minus_sigma[0] = l.neg(g.automorphisms[s]);
    if (l.degree() > 1) u_minus_sigma[1] = l.one();
    if (!is_zero(mul_mod(u_minus_sigma, es[s].coeffs)))
      failures.push_back("idempotent " + std::to_string(s) +
                         " fails the twisted diagonal relation");
  }
  return failures;
}

GaloisReport galois_decomposition(const SchemePtr& x) {
  GaloisReport out;
  out.comparison.ok = true;
  const AlgebraPtr& L = x->base();
  GaloisGroup G = galois_group(*L);
  out.group_order = G.automorphisms.size();
  auto es = tensor_split(*L, G);
  auto idem_failures = verify_tensor_split(*L, G, es);
  out.idempotents_ok = idem_failures.empty();
  for (const auto& f : idem_failures) {
    out.comparison.ok = false;
    out.comparison.failures.push_back(f);
  }
  {
    for (const auto& e : es) {
      std::ostringstream os;
      os << "e_" << e.sigma_index << " = ";
      for (int j = 0; j < L->degree(); ++j) {
        if (j) os << " + ";
        os << "(" << L->to_string(e.coeffs[j]) << ")*u^" << j;
      }
      out.idempotents.push_back(os.str());
    }
  }

  const int d = L->degree();
  RestrictionResult rx = restrict_scheme(x);
  out.base_changed = base_change(rx.result, L);

  // product of the twists, block s holding the variables of X^sigma_s
  std::vector<std::string> names;
  for (int s = 0; s < d; ++s)
    for (const auto& v : x->vars())
      names.push_back(fresh_var_name(v + "_g" + std::to_string(s), names));
  RingPtr P = PolyRing::make(L, names);
  std::vector<Poly> pgens;
  for (int s = 0; s < d; ++s) {
    TwistedScheme tw = twist(x, G.automorphisms[s]);
    out.twists.push_back(tw);
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i < x->nvars(); ++i) block.push_back(s * x->nvars() + i);
    for (const auto& g : tw.result->generators()) pgens.push_back(reindex(g, P, block));
  }
  out.product_of_twists = AffineScheme::make(P, std::move(pgens));

  guarded(out.comparison, "galois decomposition", [&] {
    // base_changed -> product: factor-s coordinate x_i^(s) pulls back to
    // sum_j sigma_s(t)^j x_{i,j}
    std::vector<Poly> to_p(out.product_of_twists->nvars(), Poly());
    for (int s = 0; s < d; ++s) {
      for (std::size_t i = 0; i < x->nvars(); ++i) {
        Poly img = Poly::zero(out.base_changed->ring());
        for (int j = 0; j < d; ++j) {
          AlgElem root_pow = L->pow(G.automorphisms[s], static_cast<std::uint64_t>(j));
          img = img +
                Poly::variable(out.base_changed->ring(), rx.var_map[i][j]).scaled(root_pow);
        }
        to_p[s * x->nvars() + i] = std::move(img);
      }
    }
    SchemeMorphism phi = SchemeMorphism::make(out.base_changed, out.product_of_twists, to_p);

    // product -> base_changed: x_{i,j} pulls back through the idempotent
    // coefficients, x_{i,j} = sum_s (e_s)_j x_i^(s)
    std::vector<Poly> to_b(out.base_changed->nvars(), Poly());
    for (std::size_t i = 0; i < x->nvars(); ++i) {
      for (int j = 0; j < d; ++j) {
        Poly img = Poly::zero(P);
        for (int s = 0; s < d; ++s)
          img = img + Poly::variable(P, s * x->nvars() + i).scaled(es[s].coeffs[j]);
        to_b[rx.var_map[i][j]] = std::move(img);
      }
    }
    SchemeMorphism psi = SchemeMorphism::make(out.product_of_twists, out.base_changed, to_b);

    if (!psi.compose(phi).is_identity_mod_ideal() || !phi.compose(psi).is_identity_mod_ideal()) {
      out.comparison.ok = false;
      out.comparison.failures.push_back("decomposition maps are not mutually inverse");
    }
  });
  return out;
}

AffineShadowReport affine_shadow(const SchemePtr& x, int n) {
  AffineShadowReport out;
  const AlgebraPtr& L = x->base();
  const int d = L->degree();

  std::vector<std::string> a_names;
  for (int i = 0; i < n; ++i)
    a_names.push_back(fresh_var_name("a" + std::to_string(i), x->vars()));
  SchemePtr an_l = AffineScheme::make(L, a_names, {});
  FiberProduct prod_l = product(x, an_l);
  RestrictionResult lhs = restrict_scheme(prod_l.scheme);
  out.lhs = lhs.result;

  RestrictionResult rx = restrict_scheme(x);
  std::vector<std::string> b_names;
  for (int i = 0; i < n * d; ++i)
    b_names.push_back(fresh_var_name("b" + std::to_string(i), rx.result->vars()));
  SchemePtr an_k = AffineScheme::make(EtaleAlgebra::trivial(L->base()), b_names, {});
  out.rhs = product(rx.result, an_k).scheme;

  out.lhs_vars = out.lhs->nvars();
  out.rhs_vars = out.rhs->nvars();
  out.lhs_gens = out.lhs->generators().size();
  out.rhs_gens = out.rhs->generators().size();
  if (out.lhs_vars != out.rhs_vars) {
    out.detail = "variable counts differ";
    return out;
  }
  if (out.lhs_gens != out.rhs_gens) {
    out.detail = "generator counts differ";
    return out;
  }
  auto id_map = identity_map(out.lhs_vars);
  for (std::size_t a = 0; a < out.lhs->generators().size(); ++a) {
    Poly moved = reindex(out.lhs->generators()[a], out.rhs->ring(), id_map);
    if (!moved.equals(out.rhs->generators()[a])) {
      out.detail = "generator " + std::to_string(a) + " differs";
      return out;
    }
  }
  out.ok = true;
  out.detail = "identical presentations up to variable names";
  return out;
}

}  // namespace weilkit
