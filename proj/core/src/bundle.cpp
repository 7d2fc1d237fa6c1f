#include "weilkit/bundle.hpp"

#include <algorithm>
#include <sstream>

namespace weilkit {

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

// rank of the evaluated projector at a rational point, over one flat field
std::size_t evaluated_rank(const EnumRing& ring, const std::vector<std::vector<Poly>>& m,
                           const std::vector<FlatField::Idx>& point) {
  const auto& f = *ring.components()[0].field;
  const std::size_t n = m.size();
  std::vector<std::vector<FlatField::Idx>> rows(n, std::vector<FlatField::Idx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = evaluate_at(ring, m[i][j], point).parts[0];
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pr = rank;
    while (pr < n && rows[pr][col] == 0) ++pr;
    if (pr == n) continue;
    std::swap(rows[rank], rows[pr]);
    FlatField::Idx inv = f.inv(rows[rank][col]);
    for (std::size_t c = 0; c < n; ++c) rows[rank][c] = f.mul(rows[rank][c], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      FlatField::Idx factor = rows[r][col];
      for (std::size_t c = 0; c < n; ++c)
        rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

BundlePresentation make_bundle(SchemePtr x, std::vector<std::vector<Poly>> projector,
                               std::size_t rank) {
  const std::size_t n = projector.size();
  for (const auto& row : projector) {
    if (row.size() != n) throw Error(ErrorKind::ring_mismatch, "projector is not square");
    for (const auto& e : row)
      if (!e.ring()->same(*x->ring()))
        throw Error(ErrorKind::ring_mismatch, "projector entry outside the coordinate ring");
  }
  if (rank > n) throw Error(ErrorKind::rank_mismatch, "rank exceeds ambient rank");

  // P^2 - P must vanish modulo the ideal
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Poly acc = Poly::zero(x->ring());
      for (std::size_t k = 0; k < n; ++k) acc = acc + projector[i][k] * projector[k][j];
      acc = acc - projector[i][j];
      if (!x->gb().normal_form(acc).is_zero())
        throw Error(ErrorKind::not_idempotent, "projector is not idempotent modulo the ideal",
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }

  // rank at every rational point of the smallest test field (finite base,
  // field coefficients only; skipped otherwise)
  if (x->base()->base().is_finite() && x->base()->is_field()) {
    TestAlgebra a = x->base()->is_trivial()
                        ? TestAlgebra::finite_field(x->base()->base().characteristic())
                        : TestAlgebra::etale_ring(x->base());
    EnumRing ring = EnumRing::over_algebra(x->base(), a);
    const std::uint64_t cap = global_options().point_budget;
    if (enumeration_cost(x, ring, cap) <= cap) {
      PointSet pts = enumerate_points(x, ring, a.label());
      for (const auto& pt : pts.points) {
        std::size_t r = evaluated_rank(ring, projector, pt);
        if (r != rank)
          throw Error(ErrorKind::rank_mismatch,
                      "projector has rank " + std::to_string(r) + " at a rational point, expected " +
                          std::to_string(rank));
      }
    }
  }

  BundlePresentation out;
  out.base_scheme = std::move(x);
  out.ambient_rank = n;
  out.rank = rank;
  out.projector = std::move(projector);
  return out;
}

TotalSpace total_space(const BundlePresentation& e) {
  const SchemePtr& x = e.base_scheme;
  std::vector<std::string> vars = x->vars();
  std::vector<std::size_t> fiber;
  for (std::size_t a = 0; a < e.ambient_rank; ++a) {
    std::string name = fresh_var_name("v_" + std::to_string(a + 1), vars);
    fiber.push_back(vars.size());
    vars.push_back(name);
  }
  RingPtr R = PolyRing::make(x->base(), vars);
  auto base_map = identity_map(x->nvars());
  std::vector<Poly> gens;
  for (const auto& g : x->generators()) gens.push_back(reindex(g, R, base_map));
  for (std::size_t a = 0; a < e.ambient_rank; ++a) {
    Poly row = Poly::variable(R, fiber[a]);
    for (std::size_t b = 0; b < e.ambient_rank; ++b)
      row = row - reindex(e.projector[a][b], R, base_map) * Poly::variable(R, fiber[b]);
    if (!row.is_zero()) gens.push_back(std::move(row));
  }
  SchemePtr total = AffineScheme::make(R, std::move(gens));

  std::vector<Poly> zero_images;
  for (std::size_t i = 0; i < x->nvars(); ++i) zero_images.push_back(Poly::variable(x->ring(), i));
  for (std::size_t a = 0; a < e.ambient_rank; ++a) zero_images.push_back(Poly::zero(x->ring()));
  std::vector<Poly> proj_images;
  for (std::size_t i = 0; i < x->nvars(); ++i) proj_images.push_back(Poly::variable(R, i));

  TotalSpace out;
  out.bundle = e;
  out.scheme = total;
  out.zero_section = SchemeMorphism::make(x, total, std::move(zero_images));
  out.projection = SchemeMorphism::make(total, x, std::move(proj_images));
  out.fiber_vars = fiber;
  if (!out.projection.compose(out.zero_section).is_identity_mod_ideal())
    throw Error(ErrorKind::internal, "zero section is not a section of the projection");
  return out;
}

std::vector<std::vector<Poly>> expansion_block(const RestrictionResult& rx, const Poly& p) {
  const EtaleAlgebra& L = *rx.algebra;
  const int d = L.degree();
  Poly hat = rx.expand_to_l(p);
  std::vector<std::vector<Poly>> block(d, std::vector<Poly>(d, Poly::zero(rx.result->ring())));
  // column j: coordinates of (expanded p) * t^j in the power basis
  for (int j = 0; j < d; ++j) {
    Poly col = hat.scaled(L.pow(L.gen(), static_cast<std::uint64_t>(j)));
    std::vector<std::vector<Term>> comps(d);
    for (const auto& t : col.terms())
      for (int m = 0; m < d; ++m) {
        if (L.base().is_zero(t.coeff[m])) continue;
        comps[m].push_back(Term{t.exps, rx.result->ring()->coeff->from_base(t.coeff[m])});
      }
    for (int m = 0; m < d; ++m)
      block[m][j] = Poly::from_terms(rx.result->ring(), std::move(comps[m]));
  }
  return block;
}

RestrictedBundle restrict_bundle(const BundlePresentation& e) {
  RestrictedBundle out;
  out.rx = restrict_scheme(e.base_scheme);
  const int d = out.rx.algebra->degree();
  const std::size_t nd = e.ambient_rank * static_cast<std::size_t>(d);

  std::vector<std::vector<Poly>> big(nd, std::vector<Poly>(nd, Poly::zero(out.rx.result->ring())));
  for (std::size_t a = 0; a < e.ambient_rank; ++a)
    for (std::size_t b = 0; b < e.ambient_rank; ++b) {
      auto block = expansion_block(out.rx, e.projector[a][b]);
      for (int m = 0; m < d; ++m)
        for (int j = 0; j < d; ++j) big[a * d + m][b * d + j] = block[m][j];
    }
  out.bundle = make_bundle(out.rx.result, std::move(big), e.rank * static_cast<std::size_t>(d));

  // total-space compatibility: R(total space of E) vs total space of R(E)
  TotalSpace over_l = total_space(e);
  out.rtotal = restrict_scheme(over_l.scheme);
  out.total = total_space(out.bundle);
  out.total_space_compat = positional_isomorphism(out.rtotal.result, out.total.scheme);
  return out;
}

ZeroSectionReport restrict_zero_section(const BundlePresentation& e) {
  ZeroSectionReport report;
  report.ok = true;
  RestrictedBundle rb = restrict_bundle(e);
  TotalSpace over_l = total_space(e);

  // R(s): R(X) -> R(total space)
  SchemeMorphism rs = restrict_morphism(over_l.zero_section, rb.rx, rb.rtotal);
  // zero section of the restricted bundle, then the positional identification
  std::vector<Poly> ident;
  for (std::size_t i = 0; i < rb.total.scheme->nvars(); ++i)
    ident.push_back(Poly::variable(rb.total.scheme->ring(), i));
  SchemeMorphism to_rtotal = SchemeMorphism::make(rb.total.scheme, rb.rtotal.result, ident);
  SchemeMorphism zs = to_rtotal.compose(rb.total.zero_section);

  for (std::size_t i = 0; i < rs.images().size(); ++i) {
    Poly diff = rs.images()[i] - zs.images()[i];
    if (!rb.rx.result->gb().normal_form(diff).is_zero()) {
      report.ok = false;
      report.failures.push_back("coordinate " + rb.rtotal.result->vars()[i]);
    }
    ++report.coordinates_checked;
  }
  return report;
}

NormalPresentation normal_presentation(const SchemePtr& z) {
  if (z->provenance().kind != Provenance::Kind::closed || !z->provenance().parent)
    throw Error(ErrorKind::not_complete_intersection,
                "normal data requires a closed subscheme with recorded equations");
  const SchemePtr& x = z->provenance().parent;
  const auto& hs = z->provenance().closed_extra;
  NormalPresentation out;
  out.codim = hs.size();

  // smoothness of ambient and subscheme at their computed dimensions
  auto sx = is_smooth(x, x->dimension());
  auto sz = is_smooth(z, z->dimension());
  if (!sx.smooth || !sz.smooth)
    throw Error(ErrorKind::not_complete_intersection, "smoothness certificates unavailable");

  // independence: no h_i lies in the ideal generated by the others + I_X
  for (std::size_t i = 0; i < hs.size(); ++i) {
    std::vector<Poly> others = x->generators();
    for (std::size_t j = 0; j < hs.size(); ++j)
      if (j != i) others.push_back(hs[j]);
    auto gb = GroebnerBasis::compute(Ideal::make(x->ring(), others));
    if (gb.normal_form(hs[i]).is_zero()) {
      out.complete_intersection = false;
      out.detail = "equation " + std::to_string(i) + " is redundant";
      throw Error(ErrorKind::not_complete_intersection, out.detail, hs[i].to_string());
    }
  }
  // dimension drop must match the number of equations
  if (x->dimension() - z->dimension() != static_cast<int>(hs.size()))
    throw Error(ErrorKind::not_complete_intersection,
                "codimension does not match the number of equations");

  out.complete_intersection = true;
  out.detail = "free of rank " + std::to_string(hs.size()) + " with basis the classes of the equations";
  std::vector<std::vector<Poly>> projector(hs.size(),
                                           std::vector<Poly>(hs.size(), Poly::zero(z->ring())));
  for (std::size_t i = 0; i < hs.size(); ++i) projector[i][i] = Poly::from_int(z->ring(), 1);
  out.normal = make_bundle(z, std::move(projector), hs.size());
  out.total = total_space(out.normal);
  return out;
}

NormalCompatReport normal_compat(const SchemePtr& z, const std::vector<TestAlgebra>& fields) {
  if (z->provenance().kind != Provenance::Kind::closed || !z->provenance().parent)
    throw Error(ErrorKind::not_complete_intersection,
                "normal comparison requires a closed subscheme with recorded equations");
  const SchemePtr& x = z->provenance().parent;
  const auto& hs = z->provenance().closed_extra;
  const std::size_t c = hs.size();
  const AlgebraPtr& L = x->base();
  const int d = L->degree();

  NormalCompatReport report;
  report.presentation.ok = true;

  RestrictionResult rxx = restrict_scheme(x);
  // R(Z) inside R(X), cut by the component polynomials of the h's
  std::vector<Poly> h_comps;
  for (const auto& h : hs)
    for (auto& comp : rxx.expand(h)) h_comps.push_back(std::move(comp));
  ClosedSubscheme rz = closed_subscheme(rxx.result, h_comps);

  // mode (a): presentation-level, complete intersections only
  bool ci = true;
  std::string ci_detail;
  try {
    NormalPresentation nz = normal_presentation(z);
    // R(Z) matches the restriction of Z
    RestrictionResult rz_direct = restrict_scheme(z);
    auto same = positional_isomorphism(rz.scheme, rz_direct.result);
    if (!same.ok) {
      report.presentation.ok = false;
      for (const auto& f : same.failures) report.presentation.failures.push_back(f);
    }
    // the cd component equations are independent over k
    for (std::size_t i = 0; i < h_comps.size(); ++i) {
      std::vector<Poly> others = rxx.result->generators();
      for (std::size_t j = 0; j < h_comps.size(); ++j)
        if (j != i) others.push_back(h_comps[j]);
      auto gb = GroebnerBasis::compute(Ideal::make(rxx.result->ring(), others));
      if (gb.normal_form(h_comps[i]).is_zero()) {
        report.presentation.ok = false;
        report.presentation.failures.push_back("restricted equation " + std::to_string(i) +
                                               " is redundant");
      }
    }
    // restricted normal bundle: free of rank c*d; its projector must be the
    // identity block matrix
    RestrictedBundle rn = restrict_bundle(nz.normal);
    bool identity = rn.bundle.ambient_rank == c * static_cast<std::size_t>(d);
    for (std::size_t i = 0; identity && i < rn.bundle.ambient_rank; ++i)
      for (std::size_t j = 0; identity && j < rn.bundle.ambient_rank; ++j) {
        Poly expect = i == j ? Poly::from_int(rn.bundle.base_scheme->ring(), 1)
                             : Poly::zero(rn.bundle.base_scheme->ring());
        Poly diff = rn.bundle.projector[i][j] - expect;
        if (!rn.bundle.base_scheme->gb().normal_form(diff).is_zero()) identity = false;
      }
    if (!identity) {
      report.presentation.ok = false;
      report.presentation.failures.push_back(
          "restricted normal projector is not the identity block");
    }
    // normal bundle of R(Z) in R(X): free of rank cd on R(Z); compare total
    // spaces through the canonical basis identification
    NormalPresentation nrz = normal_presentation(rz.scheme);
    if (nrz.normal.ambient_rank != c * static_cast<std::size_t>(d)) {
      report.presentation.ok = false;
      report.presentation.failures.push_back("normal rank of the restricted embedding is wrong");
    }
    // both total spaces are R(Z) x A^{cd}; the canonical map is the identity
    // on the (equation, basis-index) coordinates
    RestrictionResult rtn = restrict_scheme(nz.total.scheme);
    auto compat = positional_isomorphism(rtn.result, nrz.total.scheme);
    if (!compat.ok) {
      report.presentation.ok = false;
      for (const auto& f : compat.failures) report.presentation.failures.push_back(f);
    }
    report.presentation_checked = true;
    report.presentation.notes.push_back("complete intersection of codimension " +
                                        std::to_string(c));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::not_complete_intersection) {
      ci = false;
      ci_detail = e.what();
      report.presentation.notes.push_back(std::string("presentation mode skipped: ") + e.what());
    } else {
      throw;
    }
  }

  // mode (b): fiberwise counit-derivative bijection at rational points
  const std::uint64_t p = L->base().is_finite() ? L->base().characteristic() : 0;
  for (const auto& a : fields) {
    NormalCompatReport::Fiber fiber;
    fiber.field = a.label();
    if (!L->base().is_finite()) {
      fiber.detail = "skipped over QQ";
      fiber.ok = true;
      fiber.skipped = true;
      report.fiberwise.push_back(fiber);
      continue;
    }
    AlgebraPtr k = EtaleAlgebra::trivial(L->base());
    EnumRing left = EnumRing::over_algebra(k, a);
    EnumRing right = EnumRing::tensor_with(L, a);
    const auto& f = *left.components()[0].field;
    const std::uint32_t s = static_cast<std::uint32_t>(f.degree());

    if (enumeration_cost(rz.scheme, left, global_options().point_budget) >
        global_options().point_budget) {
      fiber.detail = "skipped (enumeration budget)";
      fiber.ok = true;
      fiber.skipped = true;
      report.fiberwise.push_back(fiber);
      continue;
    }
    PointSet zpts = enumerate_points(rz.scheme, left, a.label());
    fiber.points = zpts.count();
    fiber.ok = true;

    // jacobians
    auto jac_rx = jacobian(rxx.result->generators(), rxx.result->ring());
    auto jac_rz = jacobian(rz.scheme->generators(), rz.scheme->ring());
    std::vector<std::vector<Poly>> jac_h;  // over L, on X's ring
    for (const auto& h : hs) {
      std::vector<Poly> row;
      for (std::size_t i = 0; i < x->nvars(); ++i) row.push_back(h.derivative(i));
      jac_h.push_back(std::move(row));
    }

    const std::size_t nd = rxx.result->nvars();
    for (const auto& zp : zpts.points) {
      // tangent spaces over F as kernels
      auto eval_matrix = [&](const std::vector<std::vector<Poly>>& jac) {
        std::vector<std::vector<FlatField::Idx>> m;
        for (const auto& row : jac) {
          std::vector<FlatField::Idx> r;
          for (const auto& e : row) r.push_back(evaluate_at(left, e, zp).parts[0]);
          m.push_back(std::move(r));
        }
        return m;
      };
      auto kernel_basis = [&](std::vector<std::vector<FlatField::Idx>> m) {
        // returns a basis of the kernel in F^{nd}
        std::vector<std::size_t> pivots;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < nd && rank < m.size(); ++col) {
          std::size_t pr = rank;
          while (pr < m.size() && m[pr][col] == 0) ++pr;
          if (pr == m.size()) continue;
          std::swap(m[rank], m[pr]);
          FlatField::Idx inv = f.inv(m[rank][col]);
          for (std::size_t cc = 0; cc < nd; ++cc) m[rank][cc] = f.mul(m[rank][cc], inv);
          for (std::size_t rr = 0; rr < m.size(); ++rr) {
            if (rr == rank || m[rr][col] == 0) continue;
            FlatField::Idx factor = m[rr][col];
            for (std::size_t cc = 0; cc < nd; ++cc)
              m[rr][cc] = f.sub(m[rr][cc], f.mul(factor, m[rank][cc]));
          }
          pivots.push_back(col);
          ++rank;
        }
        std::vector<std::vector<FlatField::Idx>> basis;
        for (std::size_t col = 0; col < nd; ++col) {
          if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
          std::vector<FlatField::Idx> v(nd, 0);
          v[col] = 1;
          for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = f.neg(m[r][col]);
          basis.push_back(std::move(v));
        }
        return basis;
      };

      auto tx_basis = kernel_basis(eval_matrix(jac_rx));
      auto tz_basis = kernel_basis(eval_matrix(jac_rz));
      std::vector<FlatField::Idx> z_l = expand_point(rxx, left, right, zp);

      if (!ci) {
        // intrinsic comparison: the counit identifies T_z R(X)/T_z R(Z) with
        // the restriction of scalars of the L-side tangent quotient; check
        // the dimension bookkeeping and that T_z R(Z) lands in T Z over L
        std::size_t right_drop = 0;  // GF(p)-dimension of the L-side quotient
        for (std::size_t cc = 0; cc < right.components().size(); ++cc) {
          const auto& comp = right.components()[cc];
          auto comp_kernel_dim = [&](const std::vector<Poly>& gens_l) {
            std::vector<std::vector<FlatField::Idx>> m;
            for (const auto& g : gens_l) {
              std::vector<FlatField::Idx> row;
              for (std::size_t i = 0; i < x->nvars(); ++i)
                row.push_back(evaluate_at(right, g.derivative(i), z_l).parts[cc]);
              m.push_back(std::move(row));
            }
            // rank over the component field
            std::size_t rank = 0;
            const std::size_t ncols = x->nvars();
            for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
              std::size_t pr = rank;
              while (pr < m.size() && m[pr][col] == 0) ++pr;
              if (pr == m.size()) continue;
              std::swap(m[rank], m[pr]);
              FlatField::Idx inv = comp.field->inv(m[rank][col]);
              for (std::size_t c2 = 0; c2 < ncols; ++c2)
                m[rank][c2] = comp.field->mul(m[rank][c2], inv);
              for (std::size_t rr = 0; rr < m.size(); ++rr) {
                if (rr == rank || m[rr][col] == 0) continue;
                FlatField::Idx factor = m[rr][col];
                for (std::size_t c2 = 0; c2 < ncols; ++c2)
                  m[rr][c2] =
                      comp.field->sub(m[rr][c2], comp.field->mul(factor, m[rank][c2]));
              }
              ++rank;
            }
            return ncols - rank;
          };
          std::vector<Poly> zgens_l = x->generators();
          for (const auto& h : hs) zgens_l.push_back(h);
          std::size_t kx_l = comp_kernel_dim(x->generators());
          std::size_t kz_l = comp_kernel_dim(zgens_l);
          right_drop += (kx_l - kz_l) * comp.field->degree();
        }
        if ((tx_basis.size() - tz_basis.size()) * s != right_drop) {
          fiber.ok = false;
          fiber.detail = "tangent quotient dimensions disagree at a point";
          break;
        }
        // T_z R(Z) maps into the L-side tangent space of Z
        for (const auto& v : tz_basis) {
          std::vector<FlatField::Idx> v_l = expand_point(rxx, left, right, v);
          const std::size_t rcomp = right.components().size();
          for (const auto& h : hs) {
            for (std::size_t cc = 0; cc < rcomp && fiber.ok; ++cc) {
              const auto& comp = right.components()[cc];
              FlatField::Idx acc = 0;
              for (std::size_t i = 0; i < x->nvars(); ++i)
                acc = comp.field->add(
                    acc, comp.field->mul(evaluate_at(right, h.derivative(i), z_l).parts[cc],
                                         v_l[i * rcomp + cc]));
              if (acc != 0) {
                fiber.ok = false;
                fiber.detail = "tangent vector of R(Z) not tangent to Z over L";
              }
            }
            if (!fiber.ok) break;
          }
          if (!fiber.ok) break;
        }
        if (!fiber.ok) break;
        continue;
      }

      if (tx_basis.size() != tz_basis.size() + c * static_cast<std::size_t>(d)) {
        fiber.ok = false;
        fiber.detail = "tangent dimension drop differs from c*d at a point";
        break;
      }

      // theta: v in T_z R(X) -> digits over GF(p) of Jac_h(z~) . counit(v)
      auto theta_digits = [&](const std::vector<FlatField::Idx>& v) {
        std::vector<FlatField::Idx> v_l = expand_point(rxx, left, right, v);
        std::vector<std::uint64_t> digits;
        const std::size_t rcomp = right.components().size();
        for (std::size_t b = 0; b < c; ++b) {
          for (std::size_t cc = 0; cc < rcomp; ++cc) {
            const auto& comp = right.components()[cc];
            FlatField::Idx acc = 0;
            for (std::size_t i = 0; i < x->nvars(); ++i) {
              FlatField::Idx jv = evaluate_at(right, jac_h[b][i], z_l).parts[cc];
              acc = comp.field->add(acc, comp.field->mul(jv, v_l[i * rcomp + cc]));
            }
            // p-adic digits of the component value
            std::uint64_t val = acc;
            for (std::uint32_t dig = 0; dig < comp.field->degree(); ++dig) {
              digits.push_back(val % p);
              val /= p;
            }
          }
        }
        return digits;
      };

      // GF(p)-matrix of theta on a GF(p)-basis of T_z R(X)
      std::vector<std::vector<std::uint64_t>> rows;
      for (const auto& v : tx_basis) {
        for (std::uint32_t i = 0; i < s; ++i) {
          // multiply the F-basis vector by w^i to get a GF(p)-basis
          std::vector<FlatField::Idx> scaled(nd);
          FlatField::Idx wi = f.pow(f.degree() >= 2 ? static_cast<FlatField::Idx>(f.p()) : 1, i);
          for (std::size_t t = 0; t < nd; ++t) scaled[t] = f.mul(v[t], wi);
          rows.push_back(theta_digits(scaled));
        }
      }
      // rank over GF(p)
      std::size_t rank = 0;
      const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
      std::vector<std::vector<std::uint64_t>> m = rows;
      for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
        std::size_t pr = rank;
        while (pr < m.size() && m[pr][col] % p == 0) ++pr;
        if (pr == m.size()) continue;
        std::swap(m[rank], m[pr]);
        std::uint64_t inv = mod_inverse(m[rank][col] % p, p);
        for (std::size_t cc = 0; cc < ncols; ++cc) m[rank][cc] = (m[rank][cc] * inv) % p;
        for (std::size_t rr = 0; rr < m.size(); ++rr) {
          if (rr == rank) continue;
          std::uint64_t factor = m[rr][col] % p;
          if (!factor) continue;
          for (std::size_t cc = 0; cc < ncols; ++cc)
            m[rr][cc] = (m[rr][cc] + (p - factor) * m[rank][cc]) % p;
        }
        ++rank;
      }
      if (rank != c * static_cast<std::size_t>(d) * s) {
        fiber.ok = false;
        fiber.detail = "counit derivative does not have full normal rank at a point";
        break;
      }
      // T_z R(Z) must land in the kernel
      for (const auto& v : tz_basis) {
        auto digs = theta_digits(v);
        for (auto x_ : digs)
          if (x_ % p != 0) {
            fiber.ok = false;
            fiber.detail = "tangent vector of R(Z) not killed by the counit derivative";
            break;
          }
        if (!fiber.ok) break;
      }
      if (!fiber.ok) break;
    }
    if (fiber.ok && fiber.detail.empty())
      fiber.detail = "bijective at all " + std::to_string(fiber.points) + " points";
    report.fiberwise.push_back(fiber);
  }

  bool fibers_ok = std::all_of(report.fiberwise.begin(), report.fiberwise.end(),
                               [](const NormalCompatReport::Fiber& f) { return f.ok; });
  report.ok = fibers_ok && (!report.presentation_checked || report.presentation.ok);
  (void)ci_detail;
  return report;
}

}  // namespace weilkit
