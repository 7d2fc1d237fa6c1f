#include "weilkit/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace weilkit {

namespace {

// determinant over a base field by Gaussian elimination with pivoting
BaseElem det_over_field(const BaseField& F, std::vector<std::vector<BaseElem>> m) {
  const std::size_t n = m.size();
  BaseElem det = F.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && F.is_zero(m[pivot][col])) ++pivot;
    if (pivot == n) return F.zero();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = F.neg(det);
    }
    det = F.mul(det, m[col][col]);
    BaseElem inv = F.inv(m[col][col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      if (F.is_zero(m[row][col])) continue;
      BaseElem factor = F.mul(m[row][col], inv);
      for (std::size_t j = col; j < n; ++j)
        m[row][j] = F.sub(m[row][j], F.mul(factor, m[col][j]));
    }
  }
  return det;
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  mpz_class num = x.get_num(), den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

std::string coeff_string(const BaseField& F, const BaseElem& c) { return F.to_string(c); }

}  // namespace

EtaleAlgebra::EtaleAlgebra(BaseField base, std::vector<BaseElem> f)
    : base_(base), min_poly_(std::move(f)) {
  degree_ = static_cast<int>(min_poly_.size()) - 1;
  BaseOps ops{&base_};
  // separability: gcd(f, f') is a nonzero constant
  auto fp = uni::derivative(ops, min_poly_);
  auto g = uni::gcd(ops, min_poly_, fp);
  if (uni::degree(g) != 0)
    throw Error(ErrorKind::not_separable,
                "minimal polynomial is not separable (gcd(f, f') has positive degree)");
  // reduction table: t^(d+i) for i = 0..d-2 in the power basis
  std::vector<BaseElem> cur(degree_, base_.zero());
  for (int j = 0; j < degree_; ++j) cur[j] = base_.neg(min_poly_[j]);  // t^d
  for (int i = 0; i < degree_ - 1; ++i) {
    reduction_table_.push_back(cur);
    // multiply by t and reduce, for the next row
    std::vector<BaseElem> next(degree_, base_.zero());
    for (int j = 0; j + 1 < degree_; ++j) next[j + 1] = cur[j];
    BaseElem top = cur[degree_ - 1];
    if (!base_.is_zero(top)) {
      const auto& row0 = reduction_table_.front();  // t^d
      for (int j = 0; j < degree_; ++j)
        next[j] = base_.add(next[j], base_.mul(top, row0[j]));
    }
    cur = std::move(next);
  }
}

AlgebraPtr EtaleAlgebra::make(BaseField base, std::vector<BaseElem> f) {
  if (f.size() < 2) throw Error(ErrorKind::not_monic, "minimal polynomial must have degree >= 1");
  if (!base.is_one(f.back()))
    throw Error(ErrorKind::not_monic, "minimal polynomial must be monic");
  return AlgebraPtr(new EtaleAlgebra(base, std::move(f)));
}

AlgebraPtr EtaleAlgebra::trivial(BaseField base) {
  std::vector<BaseElem> f{base.zero(), base.one()};  // t
  return AlgebraPtr(new EtaleAlgebra(base, std::move(f)));
}

bool EtaleAlgebra::same(const EtaleAlgebra& a, const EtaleAlgebra& b) {
  if (a.base_ != b.base_ || a.degree_ != b.degree_) return false;
  for (std::size_t i = 0; i < a.min_poly_.size(); ++i)
    if (!a.base_.eq(a.min_poly_[i], b.min_poly_[i])) return false;
  return true;
}

AlgElem EtaleAlgebra::one() const {
  AlgElem e = zero();
  e[0] = base_.one();
  return e;
}

AlgElem EtaleAlgebra::gen() const {
  if (degree_ == 1) {
    // t reduces to -c0
    AlgElem e = zero();
    e[0] = base_.neg(min_poly_[0]);
    return e;
  }
  AlgElem e = zero();
  e[1] = base_.one();
  return e;
}

AlgElem EtaleAlgebra::from_base(const BaseElem& c) const {
  AlgElem e = zero();
  e[0] = c;
  return e;
}

AlgElem EtaleAlgebra::from_coords(std::vector<BaseElem> coords) const {
  if (static_cast<int>(coords.size()) > degree_)
    throw Error(ErrorKind::ring_mismatch, "coordinate vector longer than algebra degree");
  coords.resize(degree_, base_.zero());
  return coords;
}

AlgElem EtaleAlgebra::add(const AlgElem& a, const AlgElem& b) const {
  AlgElem out(degree_);
  for (int i = 0; i < degree_; ++i) out[i] = base_.add(a[i], b[i]);
  return out;
}

AlgElem EtaleAlgebra::sub(const AlgElem& a, const AlgElem& b) const {
  AlgElem out(degree_);
  for (int i = 0; i < degree_; ++i) out[i] = base_.sub(a[i], b[i]);
  return out;
}

AlgElem EtaleAlgebra::neg(const AlgElem& a) const {
  AlgElem out(degree_);
  for (int i = 0; i < degree_; ++i) out[i] = base_.neg(a[i]);
  return out;
}

AlgElem EtaleAlgebra::mul(const AlgElem& a, const AlgElem& b) const {
  if (degree_ == 1) return {base_.mul(a[0], b[0])};
  // raw product of degree <= 2d-2, then reduce the high part
  std::vector<BaseElem> raw(2 * degree_ - 1, base_.zero());
  for (int i = 0; i < degree_; ++i) {
    if (base_.is_zero(a[i])) continue;
    for (int j = 0; j < degree_; ++j) {
      if (base_.is_zero(b[j])) continue;
      raw[i + j] = base_.add(raw[i + j], base_.mul(a[i], b[j]));
    }
  }
  AlgElem out(raw.begin(), raw.begin() + degree_);
  for (int i = 0; i + 1 < degree_; ++i) {
    const BaseElem& c = raw[degree_ + i];
    if (base_.is_zero(c)) continue;
    const auto& row = reduction_table_[i];
    for (int j = 0; j < degree_; ++j) out[j] = base_.add(out[j], base_.mul(c, row[j]));
  }
  return out;
}

AlgElem EtaleAlgebra::inv(const AlgElem& a) const {
  if (is_zero(a)) throw Error(ErrorKind::not_invertible, "zero is not invertible");
  BaseOps ops{&base_};
  uni::Poly<BaseOps> rep(a.begin(), a.end());
  uni::normalize(ops, rep);
  auto [g, s, t] = uni::ext_gcd(ops, rep, min_poly_);
  if (uni::degree(g) != 0) {
    // g is a proper common factor: f = g * (f/g) exhibits a as a zero divisor
    auto [cofactor, rem] = uni::divmod(ops, min_poly_, g);
    (void)rem;
    std::ostringstream w;
    w << "zero divisor; gcd with modulus has degree " << uni::degree(g);
    AlgElem cof = zero();
    for (std::size_t i = 0; i < cofactor.size() && i < static_cast<std::size_t>(degree_); ++i)
      cof[i] = cofactor[i];
    w << ", annihilated by " << to_string(cof);
    throw Error(ErrorKind::not_invertible, "element is not a unit", w.str());
  }
  AlgElem out = zero();
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i];
  return out;
}

AlgElem EtaleAlgebra::pow(const AlgElem& a, std::uint64_t e) const {
  AlgElem acc = one(), b = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, b);
    b = mul(b, b);
    e >>= 1;
  }
  return acc;
}

bool EtaleAlgebra::is_zero(const AlgElem& a) const {
  for (const auto& c : a)
    if (!base_.is_zero(c)) return false;
  return true;
}

bool EtaleAlgebra::is_one(const AlgElem& a) const {
  if (!base_.is_one(a[0])) return false;
  for (int i = 1; i < degree_; ++i)
    if (!base_.is_zero(a[i])) return false;
  return true;
}

bool EtaleAlgebra::is_unit(const AlgElem& a) const {
  if (is_zero(a)) return false;
  BaseOps ops{&base_};
  uni::Poly<BaseOps> rep(a.begin(), a.end());
  uni::normalize(ops, rep);
  auto g = uni::gcd(ops, rep, min_poly_);
  return uni::degree(g) == 0;
}

bool EtaleAlgebra::eq(const AlgElem& a, const AlgElem& b) const {
  for (int i = 0; i < degree_; ++i)
    if (!base_.eq(a[i], b[i])) return false;
  return true;
}

int EtaleAlgebra::cmp(const AlgElem& a, const AlgElem& b) const {
  for (int i = degree_ - 1; i >= 0; --i) {
    int c = base_.cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::vector<std::vector<BaseElem>> EtaleAlgebra::mult_matrix(const AlgElem& a) const {
  std::vector<std::vector<BaseElem>> m(degree_, std::vector<BaseElem>(degree_, base_.zero()));
  AlgElem cur = a;
  for (int j = 0; j < degree_; ++j) {
    for (int i = 0; i < degree_; ++i) m[i][j] = cur[i];
    if (j + 1 < degree_) cur = mul(cur, gen());
  }
  return m;
}

BaseElem EtaleAlgebra::norm(const AlgElem& a) const { return det_over_field(base_, mult_matrix(a)); }

BaseElem EtaleAlgebra::trace(const AlgElem& a) const {
  auto m = mult_matrix(a);
  BaseElem tr = base_.zero();
  for (int i = 0; i < degree_; ++i) tr = base_.add(tr, m[i][i]);
  return tr;
}

AlgElem EtaleAlgebra::substitute_gen(const AlgElem& a, const AlgElem& x) const {
  AlgElem acc = zero();
  for (int i = degree_ - 1; i >= 0; --i) acc = add(mul(acc, x), from_base(a[i]));
  return acc;
}

std::uint64_t EtaleAlgebra::size() const {
  if (!base_.is_finite())
    throw Error(ErrorKind::budget_exceeded, "algebra over QQ is infinite");
  std::uint64_t s = 1;
  for (int i = 0; i < degree_; ++i) s *= base_.characteristic();
  return s;
}

std::vector<AlgElem> EtaleAlgebra::elements() const {
  std::uint64_t n = size();
  std::uint64_t q = base_.characteristic();
  std::vector<AlgElem> out;
  out.reserve(n);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    AlgElem e = zero();
    std::uint64_t rest = idx;
    for (int j = 0; j < degree_; ++j) {
      e[j] = BaseElem{rest % q};
      rest /= q;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string EtaleAlgebra::to_string(const AlgElem& a) const {
  std::ostringstream os;
  bool first = true;
  for (int j = degree_ - 1; j >= 0; --j) {
    if (base_.is_zero(a[j])) continue;
    std::string c = coeff_string(base_, a[j]);
    bool negative = !c.empty() && c[0] == '-';
    if (first) {
      if (negative) {
        os << "-";
        c = c.substr(1);
      }
      first = false;
    } else {
      os << (negative ? " - " : " + ");
      if (negative) c = c.substr(1);
    }
    if (j == 0) {
      os << c;
    } else {
      if (c != "1") os << c << "*";
      os << gen_name;
      if (j > 1) os << "^" << j;
    }
  }
  if (first) os << "0";
  return os.str();
}

bool EtaleAlgebra::is_field() const {
  if (is_field_.has_value()) return *is_field_;
  bool result;
  if (degree_ == 1) {
    result = true;
  } else if (base_.is_finite()) {
    result = is_irreducible_over_finite(base_, min_poly_);
  } else {
    // QQ: rational-root test, complete for degree <= 3
    if (degree_ > 3)
      throw Error(ErrorKind::search_exhausted,
                  "irreducibility over QQ implemented only up to degree 3");
    // clear denominators to a primitive integer polynomial
    mpz_class lcm_den(1);
    for (const auto& c : min_poly_) {
      const Rational& q = std::get<Rational>(c);
      mpz_class d = q.get_den();
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<mpz_class> zc;
    for (const auto& c : min_poly_) {
      Rational scaled = std::get<Rational>(c) * Rational(lcm_den);
      zc.push_back(scaled.get_num());
    }
    mpz_class a0 = zc.front(), an = zc.back();
    result = true;
    if (a0 == 0) {
      result = false;  // t divides f
    } else {
      // candidate roots n/d: n | a0, d | an
      auto divisors = [](mpz_class v) {
        std::vector<mpz_class> out;
        v = abs(v);
        mpz_class bound(static_cast<unsigned long>(global_options().height_bound));
        for (mpz_class i = 1; i * i <= v; ++i) {
          if (v % i == 0) {
            out.push_back(i);
            out.push_back(v / i);
          }
          if (i > bound)
            throw Error(ErrorKind::search_exhausted, "divisor search exceeds the height bound");
        }
        return out;
      };
      for (const auto& n : divisors(a0)) {
        if (!result) break;
        for (const auto& d : divisors(an)) {
          for (int sign = 0; sign < 2; ++sign) {
            Rational cand(sign == 0 ? n : -n, d);
            cand.canonicalize();
            BaseOps ops{&base_};
            uni::Poly<BaseOps> f(min_poly_.begin(), min_poly_.end());
            if (base_.is_zero(uni::eval(ops, f, BaseElem{cand}))) {
              result = false;
              break;
            }
          }
          if (!result) break;
        }
      }
    }
  }
  is_field_ = result;
  return result;
}

AlgElem apply_automorphism(const EtaleAlgebra& L, const AlgElem& sigma_image, const AlgElem& a) {
  return L.substitute_gen(a, sigma_image);
}

namespace {

GaloisGroup assemble_group(const EtaleAlgebra& L, std::vector<AlgElem> roots) {
  const int d = L.degree();
  if (static_cast<int>(roots.size()) != d) {
    throw Error(ErrorKind::not_galois,
                "found " + std::to_string(roots.size()) + " roots of f in L, expected " +
                    std::to_string(d));
  }
  // identity first, the rest in deterministic coordinate order
  AlgElem t = L.gen();
  std::stable_sort(roots.begin(), roots.end(), [&](const AlgElem& a, const AlgElem& b) {
    bool ia = L.eq(a, t), ib = L.eq(b, t);
    if (ia != ib) return ia;
    return L.cmp(a, b) < 0;
  });
  GaloisGroup G;
  G.automorphisms = std::move(roots);
  G.identity_index = 0;
  const auto find_index = [&](const AlgElem& x) -> std::size_t {
    for (std::size_t i = 0; i < G.automorphisms.size(); ++i)
      if (L.eq(G.automorphisms[i], x)) return i;
    throw Error(ErrorKind::internal, "automorphism set not closed under composition");
  };
  G.composition.assign(d, std::vector<std::size_t>(d));
  G.inverse.assign(d, 0);
  for (int i = 0; i < d; ++i) {
    bool has_inverse = false;
    for (int j = 0; j < d; ++j) {
      AlgElem comp = apply_automorphism(L, G.automorphisms[i], G.automorphisms[j]);
      std::size_t k = find_index(comp);
      G.composition[i][j] = k;
      if (k == G.identity_index) {
        G.inverse[i] = j;
        has_inverse = true;
      }
    }
    if (!has_inverse) throw Error(ErrorKind::internal, "automorphism without inverse");
  }
  return G;
}

}  // namespace

GaloisGroup galois_group(const EtaleAlgebra& L) {
  if (!L.is_field())
    throw Error(ErrorKind::not_galois, "minimal polynomial is reducible: L is not a field");
  const int d = L.degree();
  if (d == 1) return assemble_group(L, {L.gen()});

  if (L.base().is_finite()) {
    // exhaustive root search over all q^d elements
    std::vector<AlgElem> roots;
    for (const auto& a : L.elements()) {
      AlgElem v = L.zero();
      // f(a), with f's base coefficients embedded
      for (int i = d; i >= 0; --i) v = L.add(L.mul(v, a), L.from_base(L.min_poly()[i]));
      if (L.is_zero(v)) roots.push_back(a);
    }
    return assemble_group(L, std::move(roots));
  }

  // QQ: exact constructions for degree 2 and 3
  if (d == 2) {
    const BaseElem& b = L.min_poly()[1];
    AlgElem other = L.sub(L.neg(L.from_base(b)), L.gen());
    return assemble_group(L, {L.gen(), other});
  }
  if (d == 3) {
    // disc(t^3 + p t^2 + q t + r)
    Rational p = std::get<Rational>(L.min_poly()[2]);
    Rational q = std::get<Rational>(L.min_poly()[1]);
    Rational r = std::get<Rational>(L.min_poly()[0]);
    Rational disc = 18 * p * q * r - 4 * p * p * p * r + p * p * q * q - 4 * q * q * q - 27 * r * r;
    auto delta = rational_sqrt(disc);
    if (!delta.has_value())
      throw Error(ErrorKind::not_galois, "cubic discriminant is not a rational square",
                  "disc = " + Rational(disc).get_str());
    // f / (X - t) = X^2 + (t + p) X + (t^2 + p t + q); sqrt of its discriminant is delta / f'(t)
    AlgElem t = L.gen();
    AlgElem g1 = L.add(t, L.from_base(BaseElem{p}));
    AlgElem fp = L.add(L.add(L.mul(L.from_int(3), L.mul(t, t)), L.mul(L.from_base(BaseElem{2 * p}), t)),
                       L.from_base(BaseElem{q}));
    AlgElem sq = L.mul(L.from_base(BaseElem{*delta}), L.inv(fp));
    AlgElem half = L.from_base(BaseElem{Rational(1, 2)});
    AlgElem r2 = L.mul(half, L.sub(sq, g1));
    AlgElem r3 = L.mul(half, L.sub(L.neg(sq), g1));
    // verify both really are roots
    for (const AlgElem& cand : {r2, r3}) {
      AlgElem v = L.zero();
      for (int i = d; i >= 0; --i) v = L.add(L.mul(v, cand), L.from_base(L.min_poly()[i]));
      if (!L.is_zero(v))
        throw Error(ErrorKind::internal, "cubic root formula produced a non-root");
    }
    return assemble_group(L, {t, r2, r3});
  }
  throw Error(ErrorKind::search_exhausted,
              "exact root search over QQ implemented up to degree 3 only");
}

std::vector<TensorIdempotent> tensor_split(const EtaleAlgebra& L, const GaloisGroup& G) {
  const int d = L.degree();
  AlgOps ops{&L};
  // f with coefficients embedded into L, as the modulus in u
  uni::Poly<AlgOps> f_L;
  for (const auto& c : L.min_poly()) f_L.push_back(L.from_base(c));

  std::vector<TensorIdempotent> out;
  for (std::size_t s = 0; s < G.automorphisms.size(); ++s) {
    const AlgElem& rs = G.automorphisms[s];
    uni::Poly<AlgOps> num{L.one()};
    AlgElem den = L.one();
    for (std::size_t tau = 0; tau < G.automorphisms.size(); ++tau) {
      if (tau == s) continue;
      const AlgElem& rt = G.automorphisms[tau];
      uni::Poly<AlgOps> lin{L.neg(rt), L.one()};  // u - r_tau
      num = uni::mul(ops, num, lin);
      den = L.mul(den, L.sub(rs, rt));
    }
    num = uni::scale(ops, num, L.inv(den));
    auto [q, rem] = uni::divmod(ops, num, f_L);
    (void)q;
    TensorIdempotent e;
    e.sigma_index = s;
    e.coeffs.assign(d, L.zero());
    for (std::size_t i = 0; i < rem.size(); ++i) e.coeffs[i] = rem[i];
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<BaseElem> deterministic_irreducible(const BaseField& k, int degree) {
  if (!k.is_finite())
    throw Error(ErrorKind::type_mismatch, "deterministic irreducible requires a finite field");
  if (degree == 1) return {k.zero(), k.one()};  // t
  const std::uint64_t p = k.characteristic();
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<BaseElem> f(degree + 1, k.zero());
    std::uint64_t rest = idx;
    for (int j = 0; j < degree; ++j) {
      f[j] = BaseElem{rest % p};
      rest /= p;
    }
    f[degree] = k.one();
    if (is_irreducible_over_finite(k, f)) return f;
  }
  throw Error(ErrorKind::internal, "no irreducible polynomial found");  // unreachable
}

bool is_irreducible_over_finite(const BaseField& k, const std::vector<BaseElem>& f) {
  BaseOps ops{&k};
  const int d = static_cast<int>(f.size()) - 1;
  if (d <= 0) return false;
  if (d == 1) return true;
  const std::uint64_t p = k.characteristic();
  for (int e = 1; 2 * e <= d; ++e) {
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      uni::Poly<BaseOps> cand(e + 1, k.zero());
      std::uint64_t rest = idx;
      for (int j = 0; j < e; ++j) {
        cand[j] = BaseElem{rest % p};
        rest /= p;
      }
      cand[e] = k.one();
      auto [q, r] = uni::divmod(ops, f, cand);
      (void)q;
      if (r.empty()) return false;
    }
  }
  return true;
}

std::vector<std::vector<AlgElem>> factor_over_algebra_field(const EtaleAlgebra& F,
                                                            const std::vector<AlgElem>& f) {
  if (!F.is_field())
    throw Error(ErrorKind::type_mismatch, "factorization requires field coefficients");
  AlgOps ops{&F};
  auto elems = F.elements();
  uni::Poly<AlgOps> g(f);
  uni::normalize(ops, g);
  g = uni::monic(ops, g);
  std::vector<std::vector<AlgElem>> factors;
  while (uni::degree(g) > 0) {
    bool split = false;
    for (int e = 1; 2 * e <= uni::degree(g) && !split; ++e) {
      // monic candidates of degree e, counter order over coordinates
      std::vector<std::size_t> digits(e, 0);
      while (true) {
        uni::Poly<AlgOps> cand;
        for (int j = 0; j < e; ++j) cand.push_back(elems[digits[j]]);
        cand.push_back(F.one());
        auto [q, r] = uni::divmod(ops, g, cand);
        if (r.empty()) {
          factors.push_back(cand);
          g = q;
          split = true;
          break;
        }
        // increment
        int pos = 0;
        while (pos < e) {
          if (++digits[pos] < elems.size()) break;
          digits[pos] = 0;
          ++pos;
        }
        if (pos == e) break;
      }
    }
    if (!split) {
      factors.push_back(g);
      break;
    }
  }
  std::sort(factors.begin(), factors.end(),
            [&](const std::vector<AlgElem>& a, const std::vector<AlgElem>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              for (std::size_t i = a.size(); i-- > 0;) {
                int c = F.cmp(a[i], b[i]);
                if (c != 0) return c < 0;
              }
              return false;
            });
  return factors;
}

}  // namespace weilkit
