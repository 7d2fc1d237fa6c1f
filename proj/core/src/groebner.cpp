#include "weilkit/groebner.hpp"

#include <algorithm>

namespace weilkit {

namespace {

// polynomials inside the engine are term lists sorted strictly descending
// under the active order
using TermList = std::vector<Term>;

TermList negate(const PolyRing& R, TermList t) {
  for (auto& x : t) x.coeff = R.coeff->neg(x.coeff);
  return t;
}

TermList mul_monomial(const PolyRing& R, const TermList& p, const Term& m) {
  TermList out;
  out.reserve(p.size());
  for (const auto& t : p) {
    AlgElem c = R.coeff->mul(t.coeff, m.coeff);
    if (!R.coeff->is_zero(c)) out.push_back(Term{exps_add(t.exps, m.exps), std::move(c)});
  }
  return out;
}

/// Full division remainder of `work` by `basis`; deterministic divisor
/// choice (first match in basis order).
TermList reduce_full(const PolyRing& R, const MonomialOrder& ord, TermList work,
                     const std::vector<TermList>& basis) {
  const EtaleAlgebra& A = *R.coeff;
  TermList remainder;
  while (!work.empty()) {
    const Term& lead = work.front();
    const TermList* divisor = nullptr;
    for (const auto& b : basis) {
      if (!b.empty() && exps_divides(b.front().exps, lead.exps)) {
        divisor = &b;
        break;
      }
    }
    if (divisor == nullptr) {
      remainder.push_back(lead);
      work.erase(work.begin());
      continue;
    }
    Term factor{exps_sub(lead.exps, divisor->front().exps),
                A.mul(lead.coeff, A.inv(divisor->front().coeff))};
    TermList sub = negate(R, mul_monomial(R, *divisor, factor));
    work = merge_add(R, ord, work, sub);
  }
  return remainder;
}

TermList s_polynomial(const PolyRing& R, const MonomialOrder& ord, const TermList& f,
                      const TermList& g) {
  const EtaleAlgebra& A = *R.coeff;
  Exps lcm = exps_lcm(f.front().exps, g.front().exps);
  Term mf{exps_sub(lcm, f.front().exps), A.inv(f.front().coeff)};
  Term mg{exps_sub(lcm, g.front().exps), A.neg(A.inv(g.front().coeff))};
  return merge_add(R, ord, mul_monomial(R, f, mf), mul_monomial(R, g, mg));
}

struct Pair {
  std::size_t i, j;
  Exps lcm;
  std::uint32_t deg;
};

}  // namespace

GroebnerBasis GroebnerBasis::compute(Ideal ideal, MonomialOrder order,
                                     std::optional<int> degree_cap) {
  const int cap = degree_cap.value_or(global_options().gb_degree_cap);
  const PolyRing& R = *ideal.ring;
  const EtaleAlgebra& A = *R.coeff;

  GroebnerBasis out;
  out.order_ = order;

  std::vector<TermList> G;
  for (const auto& g : ideal.gens) {
    if (!g.ring()->same(R)) throw Error(ErrorKind::ring_mismatch, "generator in wrong ring");
    if (g.is_zero()) continue;
    G.push_back(sort_terms(R, order, g.terms()));
  }

  std::vector<Pair> pending;
  auto push_pair = [&](std::size_t i, std::size_t j) {
    Exps l = exps_lcm(G[i].front().exps, G[j].front().exps);
    std::uint32_t d = exps_degree(l);
    pending.push_back(Pair{i, j, std::move(l), d});
  };
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) push_pair(i, j);

  auto in_pending = [&](std::size_t a, std::size_t b) {
    for (const auto& p : pending)
      if ((p.i == a && p.j == b) || (p.i == b && p.j == a)) return true;
    return false;
  };

  while (!pending.empty()) {
    // normal selection: minimal (degree, lcm, i, j)
    std::size_t best = 0;
    for (std::size_t k = 1; k < pending.size(); ++k) {
      const Pair& a = pending[k];
      const Pair& b = pending[best];
      if (a.deg != b.deg) {
        if (a.deg < b.deg) best = k;
        continue;
      }
      int c = order.cmp(a.lcm, b.lcm);
      if (c != 0) {
        if (c < 0) best = k;
        continue;
      }
      if (a.i != b.i ? a.i < b.i : a.j < b.j) best = k;
    }
    Pair pair = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));

    const Exps& lmi = G[pair.i].front().exps;
    const Exps& lmj = G[pair.j].front().exps;

    // product criterion: coprime leading monomials
    if (pair.lcm == exps_add(lmi, lmj)) continue;

    // chain criterion: some k with LM_k | lcm and both mixed pairs already handled
    bool skip = false;
    for (std::size_t k = 0; k < G.size() && !skip; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (!exps_divides(G[k].front().exps, pair.lcm)) continue;
      if (!in_pending(pair.i, k) && !in_pending(pair.j, k)) skip = true;
    }
    if (skip) continue;

    if (static_cast<int>(pair.deg) > cap)
      throw Error(ErrorKind::degree_budget_exceeded,
                  "S-polynomial degree " + std::to_string(pair.deg) + " exceeds cap " +
                      std::to_string(cap));

    TermList s = s_polynomial(R, order, G[pair.i], G[pair.j]);
    TermList r = reduce_full(R, order, std::move(s), G);
    if (r.empty()) continue;
    G.push_back(std::move(r));
    for (std::size_t i = 0; i + 1 < G.size(); ++i) push_pair(i, G.size() - 1);
  }

  // minimalize: keep only leading monomials not divisible by another kept one
  std::vector<std::size_t> idx(G.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return order.cmp(G[a].front().exps, G[b].front().exps) < 0;
  });
  std::vector<TermList> minimal;
  for (std::size_t id : idx) {
    bool divisible = false;
    for (const auto& kept : minimal)
      if (exps_divides(kept.front().exps, G[id].front().exps)) {
        divisible = true;
        break;
      }
    if (!divisible) minimal.push_back(G[id]);
  }

  // interreduce tails until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<TermList> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      TermList r = reduce_full(R, order, minimal[i], others);
      if (r.size() != minimal[i].size() ||
          !std::equal(r.begin(), r.end(), minimal[i].begin(), [&](const Term& a, const Term& b) {
            return a.exps == b.exps && A.eq(a.coeff, b.coeff);
          })) {
        minimal[i] = std::move(r);
        changed = true;
      }
    }
    // drop any zeros produced (cannot normally happen after minimalization)
    minimal.erase(std::remove_if(minimal.begin(), minimal.end(),
                                 [](const TermList& t) { return t.empty(); }),
                  minimal.end());
  }

  // monic, sorted ascending by leading monomial
  for (auto& g : minimal) {
    AlgElem inv = A.inv(g.front().coeff);
    for (auto& t : g) t.coeff = A.mul(t.coeff, inv);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const TermList& a, const TermList& b) {
    return order.cmp(a.front().exps, b.front().exps) < 0;
  });

  out.ideal_ = std::move(ideal);
  out.basis_.reserve(minimal.size());
  for (auto& g : minimal) out.basis_.push_back(Poly::from_terms(out.ideal_.ring, std::move(g)));
  return out;
}

Poly GroebnerBasis::normal_form(const Poly& p) const {
  if (!p.ring()->same(*ideal_.ring))
    throw Error(ErrorKind::ring_mismatch, "normal form of polynomial from another ring");
  const PolyRing& R = *ideal_.ring;
  std::vector<TermList> basis;
  basis.reserve(basis_.size());
  for (const auto& b : basis_) basis.push_back(sort_terms(R, order_, b.terms()));
  TermList r = reduce_full(R, order_, sort_terms(R, order_, p.terms()), basis);
  return Poly::from_terms(ideal_.ring, std::move(r));
}

bool GroebnerBasis::is_unit() const {
  return basis_.size() == 1 && basis_[0].is_constant() && !basis_[0].is_zero();
}

int GroebnerBasis::krull_dimension() const {
  if (dim_.has_value()) return *dim_;
  if (order_.kind != MonomialOrder::Kind::grevlex)
    throw Error(ErrorKind::internal, "krull dimension requires a grevlex basis");
  if (is_unit()) {
    dim_ = -1;
    return -1;
  }
  const std::size_t n = ideal_.ring->nvars();
  if (n > 24) throw Error(ErrorKind::budget_exceeded, "dimension computation over too many variables");
  std::vector<std::uint32_t> supports;
  supports.reserve(basis_.size());
  for (const auto& b : basis_) {
    std::uint32_t mask = 0;
    const Exps& e = b.terms().front().exps;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] > 0) mask |= (1u << i);
    supports.push_back(mask);
  }
  int best = 0;
  const std::uint32_t limit = static_cast<std::uint32_t>(1u << n);
  for (std::uint32_t set = 0; set < limit; ++set) {
    bool independent = true;
    for (std::uint32_t s : supports) {
      if ((s & ~set) == 0) {  // support contained in the candidate set
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(set));
    if (best == static_cast<int>(n)) break;
  }
  dim_ = best;
  return best;
}

bool is_unit_ideal(const Ideal& ideal) {
  return GroebnerBasis::compute(ideal).is_unit();
}

}  // namespace weilkit
