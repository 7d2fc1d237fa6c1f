#include "weilkit/points.hpp"

#include <algorithm>
#include <sstream>

namespace weilkit {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::size_t e, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (acc > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    acc *= base;
  }
  return acc;
}

std::uint64_t budget_or_default(std::optional<std::uint64_t> budget) {
  return budget.value_or(global_options().point_budget);
}

}  // namespace

TestAlgebra TestAlgebra::finite_field(std::uint64_t p, std::uint32_t s) {
  if (!is_prime(p)) throw Error(ErrorKind::type_mismatch, "test field characteristic must be prime");
  TestAlgebra a;
  a.kind = Kind::finite_field;
  a.p = p;
  a.s = s;
  return a;
}

TestAlgebra TestAlgebra::dual_numbers(std::uint64_t p, std::uint32_t s) {
  TestAlgebra a = finite_field(p, s);
  a.kind = Kind::dual_numbers;
  return a;
}

TestAlgebra TestAlgebra::etale_ring(AlgebraPtr alg) {
  if (!alg->base().is_finite())
    throw Error(ErrorKind::budget_exceeded, "etale test algebras must be finite");
  TestAlgebra a;
  a.kind = Kind::etale_as_ring;
  a.p = alg->base().characteristic();
  a.s = static_cast<std::uint32_t>(alg->degree());
  a.algebra = std::move(alg);
  return a;
}

std::uint64_t TestAlgebra::element_count() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < s; ++i) q *= p;
  return kind == Kind::dual_numbers ? q * q : q;
}

std::string TestAlgebra::label() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < s; ++i) q *= p;
  switch (kind) {
    case Kind::finite_field: return "GF(" + std::to_string(q) + ")";
    case Kind::dual_numbers: return "GF(" + std::to_string(q) + ")[e]";
    case Kind::etale_as_ring: return algebra_label(*algebra);
  }
  return "?";
}

FlatField::FlatField(std::uint64_t p, std::uint32_t m) : p_(p), m_(m) {
  size_ = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    size_ *= p;
    if (size_ > (1u << 20))
      throw Error(ErrorKind::budget_exceeded, "finite field too large for enumeration");
  }
  BaseField k = BaseField::gf(p);
  alg_ = m == 1 ? EtaleAlgebra::trivial(k) : EtaleAlgebra::make(k, deterministic_irreducible(k, m));

  // discrete-log tables from a deterministically chosen primitive element
  exp_.clear();
  log_.assign(size_, 0);
  const std::uint64_t order_needed = size_ - 1;
  for (Idx cand = 1; cand < size_; ++cand) {
    std::vector<Idx> exps;
    exps.push_back(1);
    AlgElem g = decode(cand);
    AlgElem cur = g;
    while (true) {
      Idx ci = encode(cur);
      if (ci == 1) break;
      exps.push_back(ci);
      if (exps.size() > order_needed) break;
      cur = alg_->mul(cur, g);
    }
    if (exps.size() == order_needed) {
      exp_ = std::move(exps);
      break;
    }
  }
  if (exp_.size() != order_needed)
    throw Error(ErrorKind::internal, "no primitive element found");
  for (std::size_t i = 0; i < exp_.size(); ++i) log_[exp_[i]] = static_cast<Idx>(i);
}

FlatField::Idx FlatField::add(Idx a, Idx b) const {
  if (p_ == 2) return a ^ b;
  Idx out = 0, mult = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::uint64_t da = (a / mult) % p_, db = (b / mult) % p_;
    out += static_cast<Idx>(((da + db) % p_) * mult);
    mult *= static_cast<Idx>(p_);
  }
  return out;
}

FlatField::Idx FlatField::neg(Idx a) const {
  if (p_ == 2) return a;
  Idx out = 0, mult = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::uint64_t d = (a / mult) % p_;
    out += static_cast<Idx>(((p_ - d) % p_) * mult);
    mult *= static_cast<Idx>(p_);
  }
  return out;
}

FlatField::Idx FlatField::mul(Idx a, Idx b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (size_ - 1)];
}

FlatField::Idx FlatField::inv(Idx a) const {
  if (a == 0) throw Error(ErrorKind::not_invertible, "division by zero in a finite field");
  return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
}

FlatField::Idx FlatField::pow(Idx a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (size_ - 1))) % (size_ - 1)];
}

FlatField::Idx FlatField::encode(const AlgElem& a) const {
  Idx out = 0, mult = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += static_cast<Idx>(std::get<std::uint64_t>(a[i]) * mult);
    mult *= static_cast<Idx>(p_);
  }
  return out;
}

AlgElem FlatField::decode(Idx a) const {
  AlgElem out = alg_->zero();
  Idx mult = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out[i] = BaseElem{(a / mult) % p_};
    mult *= static_cast<Idx>(p_);
  }
  return out;
}

std::vector<FlatField::Idx> FlatField::roots(const std::vector<Idx>& poly) const {
  std::vector<Idx> out;
  for (Idx cand = 0; cand < size_; ++cand) {
    Idx acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = add(mul(acc, cand), poly[i]);
    if (acc == 0) out.push_back(cand);
  }
  return out;
}

namespace {

FlatField::Idx canonical_generator(const FlatField& f) {
  return f.degree() >= 2 ? static_cast<FlatField::Idx>(f.p()) : 0;
}

std::vector<FlatField::Idx> idx_powers(const FlatField& f, FlatField::Idx x, std::size_t n) {
  std::vector<FlatField::Idx> out(n);
  FlatField::Idx cur = 1;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = cur;
    cur = f.mul(cur, x);
  }
  return out;
}

struct Stage1 {
  std::shared_ptr<const FlatField> field;
  FlatField::Idx beta;  // image of the test algebra generator
};

std::vector<Stage1> build_stage1(const TestAlgebra& a) {
  std::vector<Stage1> out;
  if (a.kind == TestAlgebra::Kind::etale_as_ring) {
    BaseField k = a.algebra->base();
    auto triv = EtaleAlgebra::trivial(k);
    std::vector<AlgElem> f;
    for (const auto& c : a.algebra->min_poly()) f.push_back(triv->from_base(c));
    for (const auto& factor : factor_over_algebra_field(*triv, f)) {
      auto field = std::make_shared<FlatField>(a.p, static_cast<std::uint32_t>(factor.size() - 1));
      std::vector<FlatField::Idx> coeffs;
      for (const auto& c : factor)
        coeffs.push_back(field->from_residue(std::get<std::uint64_t>(c[0])));
      auto roots = field->roots(coeffs);
      if (roots.empty()) throw Error(ErrorKind::internal, "irreducible factor without a root");
      out.push_back(Stage1{field, roots[0]});
    }
  } else {
    auto field = std::make_shared<FlatField>(a.p, a.s);
    out.push_back(Stage1{field, canonical_generator(*field)});
  }
  return out;
}

}  // namespace

EnumRing EnumRing::over_algebra(const AlgebraPtr& coeff, const TestAlgebra& a) {
  if (!coeff->base().is_finite())
    throw Error(ErrorKind::budget_exceeded, "enumeration requires a finite base field");
  if (coeff->base().characteristic() != a.p)
    throw Error(ErrorKind::type_mismatch, "test algebra characteristic mismatch");
  if (a.kind == TestAlgebra::Kind::etale_as_ring && !coeff->is_trivial() &&
      !EtaleAlgebra::same(*coeff, *a.algebra))
    throw Error(ErrorKind::type_mismatch,
                "the etale test ring must match the scheme's coefficient algebra");

  EnumRing ring;
  ring.dual_ = a.kind == TestAlgebra::Kind::dual_numbers;
  const int d = coeff->degree();
  for (const auto& s1 : build_stage1(a)) {
    Component c;
    c.field = s1.field;
    c.stage1_index = ring.comps_.size();
    c.eta_powers = idx_powers(*s1.field, canonical_generator(*s1.field), s1.field->degree());
    if (coeff->is_trivial()) {
      c.rho_powers = {1};
    } else if (a.kind == TestAlgebra::Kind::etale_as_ring) {
      // identity structure map: t acts as the component root
      c.rho_powers = idx_powers(*s1.field, s1.beta, d);
    } else {
      // choose a root of the coefficient minimal polynomial
      std::vector<FlatField::Idx> f;
      for (const auto& cf : coeff->min_poly())
        f.push_back(s1.field->from_residue(std::get<std::uint64_t>(cf)));
      auto roots = s1.field->roots(f);
      if (roots.empty())
        throw Error(ErrorKind::type_mismatch,
                    a.label() + " is not an algebra over " + algebra_label(*coeff));
      c.rho_powers = idx_powers(*s1.field, roots[0], d);
    }
    ring.comps_.push_back(std::move(c));
  }
  return ring;
}

EnumRing EnumRing::tensor_with(const AlgebraPtr& coeff, const TestAlgebra& a) {
  if (!coeff->base().is_finite())
    throw Error(ErrorKind::budget_exceeded, "enumeration requires a finite base field");
  if (coeff->base().characteristic() != a.p)
    throw Error(ErrorKind::type_mismatch, "test algebra characteristic mismatch");
  if (coeff->is_trivial()) return over_algebra(coeff, a);

  EnumRing ring;
  ring.dual_ = a.kind == TestAlgebra::Kind::dual_numbers;
  const int d = coeff->degree();
  auto stage1 = build_stage1(a);
  for (std::size_t b = 0; b < stage1.size(); ++b) {
    const auto& s1 = stage1[b];
    // factor the coefficient minimal polynomial over this component
    std::vector<AlgElem> f;
    for (const auto& cf : coeff->min_poly()) f.push_back(s1.field->backing()->from_base(cf));
    for (const auto& factor : factor_over_algebra_field(*s1.field->backing(), f)) {
      const std::uint32_t e = static_cast<std::uint32_t>(factor.size() - 1);
      auto big = std::make_shared<FlatField>(a.p, s1.field->degree() * e);
      // embed the stage-1 field: first root of its modulus in the big field
      std::vector<FlatField::Idx> h;
      for (const auto& cf : s1.field->backing()->min_poly())
        h.push_back(big->from_residue(std::get<std::uint64_t>(cf)));
      auto etas = big->roots(h);
      if (etas.empty()) throw Error(ErrorKind::internal, "stage-1 field does not embed");
      auto eta_powers = idx_powers(*big, etas[0], s1.field->degree());
      // map the factor's coefficients through the embedding, then pick a root
      std::vector<FlatField::Idx> mapped;
      for (const auto& cf : factor) {
        FlatField::Idx acc = 0;
        for (std::uint32_t i = 0; i < s1.field->degree(); ++i) {
          std::uint64_t digit = std::get<std::uint64_t>(cf[i]);
          if (digit) acc = big->add(acc, big->mul(big->from_residue(digit), eta_powers[i]));
        }
        mapped.push_back(acc);
      }
      auto rhos = big->roots(mapped);
      if (rhos.empty()) throw Error(ErrorKind::internal, "factor without a root in its component");
      Component c;
      c.field = big;
      c.stage1_index = b;
      c.eta_powers = std::move(eta_powers);
      c.rho_powers = idx_powers(*big, rhos[0], d);
      ring.comps_.push_back(std::move(c));
    }
  }
  return ring;
}

std::uint64_t EnumRing::ring_size() const {
  std::uint64_t s = 1;
  for (const auto& c : comps_) s *= c.field->size();
  return dual_ ? s * s : s;
}

namespace {

struct CompiledPoly {
  struct CTerm {
    FlatField::Idx coeff;
    std::vector<std::pair<std::uint16_t, std::uint16_t>> factors;  // (var, exponent)
  };
  std::vector<CTerm> terms;

  FlatField::Idx eval(const FlatField& f, const FlatField::Idx* point) const {
    FlatField::Idx acc = 0;
    for (const auto& t : terms) {
      FlatField::Idx v = t.coeff;
      for (const auto& [var, e] : t.factors) {
        if (v == 0) break;
        v = f.mul(v, f.pow(point[var], e));
      }
      acc = f.add(acc, v);
    }
    return acc;
  }
};

FlatField::Idx map_coeff(const EnumRing::Component& c, const AlgElem& coeff) {
  FlatField::Idx acc = 0;
  for (std::size_t j = 0; j < coeff.size(); ++j) {
    std::uint64_t r = std::get<std::uint64_t>(coeff[j]);
    if (r)
      acc = c.field->add(acc, c.field->mul(c.field->from_residue(r), c.rho_powers[j]));
  }
  return acc;
}

CompiledPoly compile_poly(const EnumRing::Component& c, const Poly& p) {
  CompiledPoly out;
  for (const auto& t : p.terms()) {
    CompiledPoly::CTerm ct;
    ct.coeff = map_coeff(c, t.coeff);
    if (ct.coeff == 0) continue;
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      if (t.exps[v] > 0)
        ct.factors.emplace_back(static_cast<std::uint16_t>(v),
                                static_cast<std::uint16_t>(t.exps[v]));
    out.terms.push_back(std::move(ct));
  }
  return out;
}

// smallest index s such that every generator is jointly affine-linear in the
// variables [s, n): every term has total suffix degree <= 1
std::size_t linear_suffix_start(const std::vector<Poly>& gens, std::size_t nvars) {
  std::size_t start = 0;
  for (const auto& g : gens) {
    for (const auto& t : g.terms()) {
      std::uint32_t tail = 0;
      std::size_t s = nvars;
      while (s > start) {
        tail += t.exps[s - 1];
        if (tail > 1) break;
        --s;
      }
      start = std::max(start, s);
    }
  }
  return start;
}

// generators split as constant + sum coeff_v * x_v over the suffix block;
// the pieces only involve prefix variables
struct AffineGen {
  CompiledPoly constant;
  std::vector<CompiledPoly> coeffs;  // one per suffix variable
};

AffineGen compile_affine(const EnumRing::Component& comp, const Poly& g, std::size_t split,
                         std::size_t nvars) {
  AffineGen out;
  std::vector<Term> constant;
  std::vector<std::vector<Term>> linear(nvars - split);
  for (const auto& t : g.terms()) {
    std::size_t which = nvars;
    for (std::size_t v = split; v < nvars; ++v)
      if (t.exps[v] > 0) which = v;
    if (which == nvars) {
      constant.push_back(t);
    } else {
      Term reduced = t;
      reduced.exps[which] = 0;
      linear[which - split].push_back(std::move(reduced));
    }
  }
  auto compile_terms = [&](std::vector<Term> ts) {
    return compile_poly(comp, Poly::from_terms(g.ring(), std::move(ts)));
  };
  out.constant = compile_terms(std::move(constant));
  for (auto& ts : linear) out.coeffs.push_back(compile_terms(std::move(ts)));
  return out;
}

// solutions of an affine system A v = -c over a flat field: a particular
// solution plus a kernel basis, or nothing when inconsistent
struct AffineSolution {
  bool consistent = false;
  std::vector<FlatField::Idx> particular;
  std::vector<std::vector<FlatField::Idx>> kernel;
};

AffineSolution solve_affine(const FlatField& f, std::vector<std::vector<FlatField::Idx>> rows,
                            std::vector<FlatField::Idx> rhs, std::size_t nvars) {
  AffineSolution out;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nvars && rank < rows.size(); ++col) {
    std::size_t pr = rank;
    while (pr < rows.size() && rows[pr][col] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[rank], rows[pr]);
    std::swap(rhs[rank], rhs[pr]);
    FlatField::Idx inv = f.inv(rows[rank][col]);
    for (std::size_t c = 0; c < nvars; ++c) rows[rank][c] = f.mul(rows[rank][c], inv);
    rhs[rank] = f.mul(rhs[rank], inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      FlatField::Idx factor = rows[r][col];
      for (std::size_t c = 0; c < nvars; ++c)
        rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
      rhs[r] = f.sub(rhs[r], f.mul(factor, rhs[rank]));
    }
    pivots.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rhs[r] != 0) return out;  // inconsistent
  out.consistent = true;
  out.particular.assign(nvars, 0);
  for (std::size_t r = 0; r < rank; ++r) out.particular[pivots[r]] = rhs[r];
  for (std::size_t col = 0; col < nvars; ++col) {
    if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
    std::vector<FlatField::Idx> v(nvars, 0);
    v[col] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = f.neg(rows[r][col]);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// all solutions over one component: brute force over the prefix block, exact
// linear solve over the suffix block; output size is capped
std::vector<std::vector<FlatField::Idx>> component_solutions(
    const FlatField& f, std::size_t nvars, std::size_t split, const std::vector<Poly>& gens,
    const EnumRing::Component& comp, std::uint64_t out_cap) {
  std::vector<AffineGen> affine;
  for (const auto& g : gens) affine.push_back(compile_affine(comp, g, split, nvars));
  const std::size_t nsuffix = nvars - split;

  std::vector<std::vector<FlatField::Idx>> out;
  auto emit = [&](std::vector<FlatField::Idx> pt) {
    if (out.size() >= out_cap)
      throw Error(ErrorKind::budget_exceeded, "enumeration produced more points than the budget");
    out.push_back(std::move(pt));
  };

  std::vector<FlatField::Idx> prefix(split, 0);
  while (true) {
    // evaluate the affine system at this prefix
    std::vector<std::vector<FlatField::Idx>> rows;
    std::vector<FlatField::Idx> rhs;
    bool dead = false;
    for (const auto& g : affine) {
      std::vector<FlatField::Idx> row(nsuffix);
      bool all_zero = true;
      for (std::size_t v = 0; v < nsuffix; ++v) {
        row[v] = g.coeffs[v].eval(f, prefix.data());
        if (row[v] != 0) all_zero = false;
      }
      FlatField::Idx c = g.constant.eval(f, prefix.data());
      if (all_zero) {
        if (c != 0) {
          dead = true;
          break;
        }
        continue;  // identically satisfied at this prefix
      }
      rows.push_back(std::move(row));
      rhs.push_back(f.neg(c));
    }
    if (!dead) {
      if (nsuffix == 0) {
        emit(prefix);
      } else {
        AffineSolution sol = solve_affine(f, std::move(rows), std::move(rhs), nsuffix);
        if (sol.consistent) {
          // enumerate particular + span(kernel)
          std::vector<FlatField::Idx> pick(sol.kernel.size(), 0);
          while (true) {
            std::vector<FlatField::Idx> pt = prefix;
            pt.resize(nvars);
            for (std::size_t v = 0; v < nsuffix; ++v) pt[split + v] = sol.particular[v];
            for (std::size_t b = 0; b < sol.kernel.size(); ++b) {
              if (pick[b] == 0) continue;
              for (std::size_t v = 0; v < nsuffix; ++v)
                pt[split + v] = f.add(pt[split + v], f.mul(pick[b], sol.kernel[b][v]));
            }
            emit(std::move(pt));
            std::size_t b = sol.kernel.size();
            bool done = true;
            while (b-- > 0) {
              if (++pick[b] < f.size()) {
                done = false;
                break;
              }
              pick[b] = 0;
            }
            if (done) break;
          }
        }
      }
    }
    // next prefix assignment
    std::size_t v = split;
    bool done = true;
    while (v-- > 0) {
      if (++prefix[v] < f.size()) {
        done = false;
        break;
      }
      prefix[v] = 0;
    }
    if (done) break;
  }
  return out;
}

// kernel of the evaluated Jacobian at a closed point: all tangent vectors
std::vector<std::vector<FlatField::Idx>> tangent_vectors(
    const FlatField& f, std::size_t nvars, const std::vector<std::vector<CompiledPoly>>& jac,
    const std::vector<FlatField::Idx>& at) {
  // build the matrix rows
  std::vector<std::vector<FlatField::Idx>> m;
  for (const auto& row : jac) {
    std::vector<FlatField::Idx> r;
    for (const auto& entry : row) r.push_back(entry.eval(f, at.data()));
    m.push_back(std::move(r));
  }
  // gaussian elimination
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nvars && rank < m.size(); ++col) {
    std::size_t pr = rank;
    while (pr < m.size() && m[pr][col] == 0) ++pr;
    if (pr == m.size()) continue;
    std::swap(m[rank], m[pr]);
    FlatField::Idx piv_inv = f.inv(m[rank][col]);
    for (std::size_t cc = 0; cc < nvars; ++cc) m[rank][cc] = f.mul(m[rank][cc], piv_inv);
    for (std::size_t rr = 0; rr < m.size(); ++rr) {
      if (rr == rank || m[rr][col] == 0) continue;
      FlatField::Idx factor = m[rr][col];
      for (std::size_t cc = 0; cc < nvars; ++cc)
        m[rr][cc] = f.sub(m[rr][cc], f.mul(factor, m[rank][cc]));
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t col = 0; col < nvars; ++col)
    if (std::find(pivot_cols.begin(), pivot_cols.end(), col) == pivot_cols.end())
      free_cols.push_back(col);
  // enumerate assignments of the free coordinates
  std::vector<std::vector<FlatField::Idx>> out;
  std::vector<FlatField::Idx> free_vals(free_cols.size(), 0);
  while (true) {
    std::vector<FlatField::Idx> v(nvars, 0);
    for (std::size_t i = 0; i < free_cols.size(); ++i) v[free_cols[i]] = free_vals[i];
    for (std::size_t r = 0; r < rank; ++r) {
      FlatField::Idx acc = 0;
      for (std::size_t i = 0; i < free_cols.size(); ++i)
        acc = f.add(acc, f.mul(m[r][free_cols[i]], free_vals[i]));
      v[pivot_cols[r]] = f.neg(acc);
    }
    out.push_back(std::move(v));
    std::size_t i = free_cols.size();
    bool done = true;
    while (i-- > 0) {
      if (++free_vals[i] < f.size()) {
        done = false;
        break;
      }
      free_vals[i] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace

std::uint64_t enumeration_cost(const SchemePtr& x, const EnumRing& ring, std::uint64_t cap) {
  const std::size_t split = linear_suffix_start(x->generators(), x->nvars());
  std::uint64_t total = 0;
  for (const auto& comp : ring.components()) {
    std::uint64_t c = saturating_pow(comp.field->size(), split, cap);
    if (c > cap - std::min(cap, total)) return cap + 1;
    total += c;
  }
  return total;
}

PointSet enumerate_points(const SchemePtr& x, const EnumRing& ring, const std::string& label,
                          std::optional<std::uint64_t> budget) {
  const std::uint64_t cap = budget_or_default(budget);
  const std::size_t n = x->nvars();
  const std::size_t split = linear_suffix_start(x->generators(), n);
  if (enumeration_cost(x, ring, cap) > cap)
    throw Error(ErrorKind::budget_exceeded,
                "enumeration budget exceeded: |C|^" + std::to_string(split) +
                    " assignments > " + std::to_string(cap));

  // per-component solutions
  std::vector<std::vector<std::vector<FlatField::Idx>>> sols;  // [comp][solution][var or 2*var]
  for (const auto& comp : ring.components()) {
    auto closed = component_solutions(*comp.field, n, split, x->generators(), comp, cap);
    if (!ring.dual()) {
      sols.push_back(std::move(closed));
      continue;
    }
    std::vector<std::vector<CompiledPoly>> jac;
    for (const auto& g : x->generators()) {
      std::vector<CompiledPoly> row;
      for (std::size_t v = 0; v < n; ++v) row.push_back(compile_poly(comp, g.derivative(v)));
      jac.push_back(std::move(row));
    }
    std::vector<std::vector<FlatField::Idx>> pairs;
    for (const auto& pt : closed) {
      for (auto& tv : tangent_vectors(*comp.field, n, jac, pt)) {
        if (pairs.size() >= cap)
          throw Error(ErrorKind::budget_exceeded,
                      "enumeration produced more tangent points than the budget");
        std::vector<FlatField::Idx> pair = pt;
        pair.insert(pair.end(), tv.begin(), tv.end());
        pairs.push_back(std::move(pair));
      }
    }
    sols.push_back(std::move(pairs));
  }

  // cartesian product across components, flattened var-major
  PointSet ps;
  ps.scheme = x;
  ps.algebra_label = label;
  ps.ring_size = ring.ring_size();
  const std::size_t ncomp = ring.components().size();
  const std::size_t width = ring.dual() ? 2 : 1;
  for (const auto& s : sols)
    if (s.empty()) return ps;  // no points in some factor: no points at all
  std::vector<std::size_t> pick(ncomp, 0);
  while (true) {
    if (ps.points.size() >= cap)
      throw Error(ErrorKind::budget_exceeded,
                  "enumeration produced more points than the budget");
    std::vector<FlatField::Idx> point(n * ncomp * width);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t c = 0; c < ncomp; ++c) {
        point[(v * ncomp + c) * width] = sols[c][pick[c]][v];
        if (ring.dual()) point[(v * ncomp + c) * width + 1] = sols[c][pick[c]][n + v];
      }
    ps.points.push_back(std::move(point));
    std::size_t c = ncomp;
    bool done = true;
    while (c-- > 0) {
      if (++pick[c] < sols[c].size()) {
        done = false;
        break;
      }
      pick[c] = 0;
    }
    if (done) break;
  }
  std::sort(ps.points.begin(), ps.points.end());
  ps.points.erase(std::unique(ps.points.begin(), ps.points.end()), ps.points.end());
  return ps;
}

PointSet enumerate_points(const SchemePtr& x, const TestAlgebra& a,
                          std::optional<std::uint64_t> budget) {
  EnumRing ring = EnumRing::over_algebra(x->base(), a);
  return enumerate_points(x, ring, a.label(), budget);
}

PointSet tangent_points(const SchemePtr& x, std::uint64_t p, std::uint32_t s,
                        std::optional<std::uint64_t> budget) {
  return enumerate_points(x, TestAlgebra::dual_numbers(p, s), budget);
}

RingValue evaluate_at(const EnumRing& ring, const Poly& p,
                      const std::vector<FlatField::Idx>& point) {
  const std::size_t ncomp = ring.components().size();
  const std::size_t width = ring.dual() ? 2 : 1;
  const std::size_t n = point.size() / (ncomp * width);
  RingValue out;
  for (std::size_t c = 0; c < ncomp; ++c) {
    const auto& comp = ring.components()[c];
    CompiledPoly cp = compile_poly(comp, p);
    std::vector<FlatField::Idx> closed(n);
    for (std::size_t v = 0; v < n; ++v) closed[v] = point[(v * ncomp + c) * width];
    out.parts.push_back(cp.eval(*comp.field, closed.data()));
    if (ring.dual()) {
      // tangent part: sum_v dP/dx_v (closed) * tangent_v
      FlatField::Idx acc = 0;
      for (std::size_t v = 0; v < n; ++v) {
        FlatField::Idx tv = point[(v * ncomp + c) * width + 1];
        if (tv == 0) continue;
        CompiledPoly dv = compile_poly(comp, p.derivative(v));
        acc = comp.field->add(acc, comp.field->mul(dv.eval(*comp.field, closed.data()), tv));
      }
      out.parts.push_back(acc);
    }
  }
  return out;
}

bool value_is_unit(const EnumRing& ring, const RingValue& v) {
  const std::size_t width = ring.dual() ? 2 : 1;
  for (std::size_t c = 0; c < ring.components().size(); ++c)
    if (v.parts[c * width] == 0) return false;  // closed part must be nonzero in every factor
  return true;
}

bool value_is_zero(const EnumRing& ring, const RingValue& v) {
  (void)ring;
  for (auto x : v.parts)
    if (x != 0) return false;
  return true;
}

namespace {

// embedding of a stage-1 value into a tensor component via eta
FlatField::Idx embed_value(const EnumRing::Component& comp, std::uint64_t p,
                           FlatField::Idx value) {
  FlatField::Idx out = 0;
  std::uint64_t v = value;
  for (std::size_t i = 0; i < comp.eta_powers.size(); ++i) {
    std::uint64_t digit = v % p;
    v /= p;
    if (digit)
      out = comp.field->add(
          out, comp.field->mul(comp.field->from_residue(digit), comp.eta_powers[i]));
  }
  return out;
}

}  // namespace

std::vector<FlatField::Idx> expand_point(const RestrictionResult& rx, const EnumRing& left,
                                         const EnumRing& right,
                                         const std::vector<FlatField::Idx>& lp) {
  const std::size_t n = rx.source->nvars();
  const int d = rx.algebra->degree();
  const std::uint64_t p = rx.algebra->base().characteristic();
  if (left.dual() != right.dual())
    throw Error(ErrorKind::internal, "expansion map between rings of different kinds");
  const std::size_t w = left.dual() ? 2 : 1;
  const std::size_t lcomp = left.components().size();
  const std::size_t rcomp = right.components().size();
  std::vector<FlatField::Idx> rp(n * rcomp * w, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < rcomp; ++c) {
      const auto& comp = right.components()[c];
      const std::size_t b = comp.stage1_index;
      for (std::size_t part = 0; part < w; ++part) {
        FlatField::Idx acc = 0;
        for (int j = 0; j < d; ++j) {
          std::size_t lvar = rx.var_map[i][j];
          FlatField::Idx lval = lp[(lvar * lcomp + b) * w + part];
          if (lval == 0) continue;
          FlatField::Idx emb = embed_value(comp, p, lval);
          acc = comp.field->add(acc, comp.field->mul(emb, comp.rho_powers[j]));
        }
        rp[(i * rcomp + c) * w + part] = acc;
      }
    }
  }
  return rp;
}

AdjunctionReport adjunction_bijection(const RestrictionResult& rx, const TestAlgebra& a,
                                      std::optional<std::uint64_t> budget) {
  AdjunctionReport report;
  report.algebra = a.label();

  AlgebraPtr k = EtaleAlgebra::trivial(rx.algebra->base());
  EnumRing left_ring = EnumRing::over_algebra(k, a);
  EnumRing right_ring = EnumRing::tensor_with(rx.algebra, a);

  PointSet left = enumerate_points(rx.result, left_ring, a.label(), budget);
  PointSet right = enumerate_points(rx.source, right_ring, a.label() + " (x) L", budget);
  report.left_count = left.count();
  report.right_count = right.count();

  std::vector<std::vector<FlatField::Idx>> mapped;
  for (const auto& lp : left.points)
    mapped.push_back(expand_point(rx, left_ring, right_ring, lp));

  // every mapped point must be a genuine point of the right side
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    if (!std::binary_search(right.points.begin(), right.points.end(), mapped[i])) {
      report.ok = false;
      report.witness = "image of a left point is not an (A (x) L)-point of X";
      return report;
    }
  }
  std::sort(mapped.begin(), mapped.end());
  if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end()) {
    report.ok = false;
    report.witness = "expansion coordinate map is not injective";
    return report;
  }
  report.ok = report.left_count == report.right_count;
  if (!report.ok) report.witness = "point counts differ";
  return report;
}

GaloisCountReport galois_count_check(const GaloisReport& g, const RestrictionResult& rx) {
  GaloisCountReport out;
  if (!rx.algebra->base().is_finite()) {
    out.ok = true;
    out.detail = "point-count check skipped over QQ";
    return out;
  }
  TestAlgebra ell = TestAlgebra::etale_ring(rx.algebra);
  out.left = enumerate_points(rx.result, ell).count();
  std::uint64_t prod = 1;
  for (const auto& tw : g.twists) {
    std::uint64_t c = enumerate_points(tw.result, ell).count();
    out.right.push_back(c);
    prod *= c;
  }
  out.ok = out.left == prod;
  out.detail = out.ok ? "|R(X)(L)| matches the product over twists"
                      : "|R(X)(L)| differs from the product over twists";
  return out;
}

NormOpenPointReport norm_open_point_check(const NormOpenReport& n, const Poly& g,
                                          const TestAlgebra& a) {
  NormOpenPointReport out;
  const RestrictionResult& rx = n.rx;
  AlgebraPtr k = EtaleAlgebra::trivial(rx.algebra->base());
  EnumRing left_ring = EnumRing::over_algebra(k, a);
  EnumRing right_ring = EnumRing::tensor_with(rx.algebra, a);
  PointSet left = enumerate_points(rx.result, left_ring, a.label());

  for (const auto& lp : left.points) {
    RingValue nval = evaluate_at(left_ring, n.norm, lp);
    // map to the L-point and evaluate g there
    std::vector<FlatField::Idx> rp = expand_point(rx, left_ring, right_ring, lp);
    RingValue gval = evaluate_at(right_ring, g, rp);
    bool norm_zero = value_is_zero(left_ring, nval);
    bool g_nonunit = !value_is_unit(right_ring, gval);
    if (norm_zero != g_nonunit) {
      out.ok = false;
      out.detail = "norm vanishing disagrees with g being a non-unit at a point";
      return out;
    }
    ++out.points_checked;
  }
  out.ok = true;
  out.detail = "norm locus matches the non-vanishing locus of g";
  return out;
}

}  // namespace weilkit
