#include "weilkit/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace weilkit {

RingPtr PolyRing::make(AlgebraPtr coeff, std::vector<std::string> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw Error(ErrorKind::ring_mismatch, "duplicate variable name: " + vars[i]);
  auto r = std::make_shared<PolyRing>();
  r->coeff = std::move(coeff);
  r->vars = std::move(vars);
  return r;
}

int PolyRing::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

bool PolyRing::same(const PolyRing& o) const {
  return EtaleAlgebra::same(*coeff, *o.coeff) && vars == o.vars;
}

std::uint32_t exps_degree(const Exps& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool exps_divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps exps_lcm(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Exps exps_sub(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Exps exps_add(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

namespace {

// grevlex on the index range [lo, hi)
int grevlex_range_cmp(const Exps& a, const Exps& b, std::size_t lo, std::size_t hi) {
  std::uint32_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::cmp(const Exps& a, const Exps& b) const {
  if (kind == Kind::grevlex) return grevlex_range_cmp(a, b, 0, a.size());
  int c = grevlex_range_cmp(a, b, 0, std::min(split, a.size()));
  if (c != 0) return c;
  return grevlex_range_cmp(a, b, std::min(split, a.size()), a.size());
}

std::vector<Term> sort_terms(const PolyRing& ring, const MonomialOrder& ord,
                             std::vector<Term> terms) {
  const EtaleAlgebra& A = *ring.coeff;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& x, const Term& y) { return ord.cmp(x.exps, y.exps) > 0; });
  // combine equal monomials, drop zeros
  std::vector<Term> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff = A.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(std::move(t));
    }
    if (!out.empty() && A.is_zero(out.back().coeff)) out.pop_back();
  }
  return out;
}

std::vector<Term> merge_add(const PolyRing& ring, const MonomialOrder& ord,
                            const std::vector<Term>& a, const std::vector<Term>& b) {
  const EtaleAlgebra& A = *ring.coeff;
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = ord.cmp(a[i].exps, b[j].exps);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      AlgElem s = A.add(a[i].coeff, b[j].coeff);
      if (!A.is_zero(s)) out.push_back(Term{a[i].exps, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

Poly Poly::zero(RingPtr ring) {
  Poly p;
  p.ring_ = std::move(ring);
  return p;
}

Poly Poly::constant(RingPtr ring, AlgElem c) {
  Poly p;
  p.ring_ = std::move(ring);
  if (!p.ring_->coeff->is_zero(c))
    p.terms_.push_back(Term{Exps(p.ring_->nvars(), 0), std::move(c)});
  return p;
}

Poly Poly::from_int(RingPtr ring, long long v) {
  AlgElem c = ring->coeff->from_int(v);
  return constant(std::move(ring), std::move(c));
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  Poly p;
  p.ring_ = std::move(ring);
  Exps e(p.ring_->nvars(), 0);
  e.at(index) = 1;
  p.terms_.push_back(Term{std::move(e), p.ring_->coeff->one()});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly p;
  p.ring_ = std::move(ring);
  for (const auto& t : terms)
    if (t.exps.size() != p.ring_->nvars())
      throw Error(ErrorKind::ring_mismatch, "exponent vector length mismatch");
  p.terms_ = sort_terms(*p.ring_, MonomialOrder::grevlex(), std::move(terms));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exps_degree(terms_[0].exps) == 0);
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, exps_degree(t.exps));
  return d;
}

Poly Poly::operator+(const Poly& o) const {
  if (!ring_->same(*o.ring_)) throw Error(ErrorKind::ring_mismatch, "polynomial ring mismatch");
  Poly out;
  out.ring_ = ring_;
  out.terms_ = merge_add(*ring_, MonomialOrder::grevlex(), terms_, o.terms_);
  return out;
}

Poly Poly::operator-() const {
  Poly out;
  out.ring_ = ring_;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff = ring_->coeff->neg(t.coeff);
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const AlgElem& c) const {
  const EtaleAlgebra& A = *ring_->coeff;
  if (A.is_zero(c)) return zero(ring_);
  Poly out;
  out.ring_ = ring_;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    AlgElem p = A.mul(t.coeff, c);
    if (!A.is_zero(p)) out.terms_.push_back(Term{t.exps, std::move(p)});
  }
  return out;
}

Poly Poly::mul_monomial(const Term& t) const {
  const EtaleAlgebra& A = *ring_->coeff;
  Poly out;
  out.ring_ = ring_;
  out.terms_.reserve(terms_.size());
  for (const auto& s : terms_) {
    AlgElem c = A.mul(s.coeff, t.coeff);
    if (!A.is_zero(c)) out.terms_.push_back(Term{exps_add(s.exps, t.exps), std::move(c)});
  }
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  if (!ring_->same(*o.ring_)) throw Error(ErrorKind::ring_mismatch, "polynomial ring mismatch");
  Poly acc = zero(ring_);
  for (const auto& t : o.terms_) acc = acc + mul_monomial(t);
  return acc;
}

bool Poly::equals(const Poly& o) const {
  if (!ring_->same(*o.ring_) || terms_.size() != o.terms_.size()) return false;
  const EtaleAlgebra& A = *ring_->coeff;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exps != o.terms_[i].exps) return false;
    if (!A.eq(terms_[i].coeff, o.terms_[i].coeff)) return false;
  }
  return true;
}

Poly Poly::derivative(std::size_t var) const {
  const EtaleAlgebra& A = *ring_->coeff;
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    AlgElem c = A.mul(t.coeff, A.from_int(t.exps[var]));
    if (A.is_zero(c)) continue;
    Exps e = t.exps;
    e[var] -= 1;
    out.push_back(Term{std::move(e), std::move(c)});
  }
  return from_terms(ring_, std::move(out));
}

Poly Poly::substitute(const RingPtr& target, const std::vector<Poly>& images,
                      const std::function<AlgElem(const AlgElem&)>& coeff_map) const {
  if (images.size() != ring_->nvars())
    throw Error(ErrorKind::ring_mismatch, "substitution image count mismatch");
  Poly acc = Poly::zero(target);
  for (const auto& t : terms_) {
    Poly term_val = Poly::constant(target, coeff_map(t.coeff));
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (std::uint32_t e = 0; e < t.exps[i]; ++e) term_val = term_val * images[i];
    }
    acc = acc + term_val;
  }
  return acc;
}

Poly Poly::substitute(const RingPtr& target, const std::vector<Poly>& images) const {
  return substitute(target, images, [](const AlgElem& c) { return c; });
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  const EtaleAlgebra& A = *ring_->coeff;
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->vars[i];
      if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
    }
    std::string c = A.to_string(t.coeff);
    bool needs_parens = c.find(' ') != std::string::npos;
    std::string piece;
    if (mono.empty()) {
      piece = needs_parens ? "(" + c + ")" : c;
    } else if (!needs_parens && c == "1") {
      piece = mono;
    } else if (!needs_parens && c == "-1") {
      piece = "-" + mono;
    } else if (needs_parens) {
      piece = "(" + c + ")*" + mono;
    } else {
      piece = c + "*" + mono;
    }
    if (first) {
      os << piece;
      first = false;
    } else if (piece.size() > 1 && piece[0] == '-') {
      os << " - " << piece.substr(1);
    } else {
      os << " + " << piece;
    }
  }
  return os.str();
}

Ideal Ideal::make(RingPtr ring, std::vector<Poly> gens) {
  for (const auto& g : gens)
    if (!g.ring()->same(*ring)) throw Error(ErrorKind::ring_mismatch, "generator in wrong ring");
  return Ideal{std::move(ring), std::move(gens)};
}

Poly reindex(const Poly& p, const RingPtr& target, const std::vector<std::size_t>& var_map) {
  std::vector<Term> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Exps e(target->nvars(), 0);
    for (std::size_t i = 0; i < t.exps.size(); ++i) e[var_map[i]] = t.exps[i];
    terms.push_back(Term{std::move(e), t.coeff});
  }
  return Poly::from_terms(target, std::move(terms));
}

std::vector<std::vector<Poly>> jacobian(const std::vector<Poly>& gens, const RingPtr& ring) {
  std::vector<std::vector<Poly>> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    std::vector<Poly> row;
    row.reserve(ring->nvars());
    for (std::size_t i = 0; i < ring->nvars(); ++i) row.push_back(g.derivative(i));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

Poly det_rec(const std::vector<std::vector<Poly>>& m, std::vector<std::size_t> rows,
             std::vector<std::size_t> cols, const RingPtr& ring) {
  const std::size_t n = rows.size();
  if (n == 0) return Poly::from_int(ring, 1);
  if (n == 1) return m[rows[0]][cols[0]];
  // expand along the row with the most zero entries
  std::size_t best = 0, best_zeros = 0;
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t z = 0;
    for (std::size_t c = 0; c < n; ++c)
      if (m[rows[r]][cols[c]].is_zero()) ++z;
    if (z >= best_zeros) {
      best = r;
      best_zeros = z;
    }
  }
  Poly acc = Poly::zero(ring);
  std::vector<std::size_t> sub_rows;
  for (std::size_t r = 0; r < n; ++r)
    if (r != best) sub_rows.push_back(rows[r]);
  for (std::size_t c = 0; c < n; ++c) {
    const Poly& entry = m[rows[best]][cols[c]];
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t cc = 0; cc < n; ++cc)
      if (cc != c) sub_cols.push_back(cols[cc]);
    Poly cof = entry * det_rec(m, sub_rows, sub_cols, ring);
    if ((best + c) % 2 == 1) cof = -cof;
    acc = acc + cof;
  }
  return acc;
}

void combinations(std::size_t n, std::size_t k,
                  const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] + (k - i) < n) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace

Poly det(const std::vector<std::vector<Poly>>& m) {
  if (m.empty()) throw Error(ErrorKind::internal, "det of empty matrix needs a ring");
  const RingPtr& ring = m[0][0].ring();
  std::vector<std::size_t> rows(m.size()), cols(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) rows[i] = cols[i] = i;
  return det_rec(m, rows, cols, ring);
}

std::vector<Poly> minors(const std::vector<std::vector<Poly>>& m, std::size_t size) {
  std::vector<Poly> out;
  if (m.empty() || size == 0) return out;
  const std::size_t nrows = m.size(), ncols = m[0].size();
  if (size > nrows || size > ncols) return out;
  const RingPtr& ring = m[0][0].ring();
  combinations(nrows, size, [&](const std::vector<std::size_t>& rows) {
    combinations(ncols, size, [&](const std::vector<std::size_t>& cols) {
      out.push_back(det_rec(m, rows, cols, ring));
    });
  });
  return out;
}

}  // namespace weilkit
