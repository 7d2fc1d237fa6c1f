#include "weilkit/numeric.hpp"

#include <sstream>

namespace weilkit {

Options& global_options() {
  static Options opts;
  return opts;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_monic: return "NotMonic";
    case ErrorKind::not_separable: return "NotSeparable";
    case ErrorKind::not_invertible: return "NotInvertible";
    case ErrorKind::not_galois: return "NotGalois";
    case ErrorKind::search_exhausted: return "SearchExhausted";
    case ErrorKind::ring_mismatch: return "RingMismatch";
    case ErrorKind::degree_budget_exceeded: return "DegreeBudgetExceeded";
    case ErrorKind::not_well_defined: return "NotWellDefined";
    case ErrorKind::unsupported_base_change: return "UnsupportedBaseChange";
    case ErrorKind::no_relative_presentation: return "NoRelativePresentation";
    case ErrorKind::not_idempotent: return "NotIdempotent";
    case ErrorKind::rank_mismatch: return "RankMismatch";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::not_local_algebra: return "NotLocalAlgebra";
    case ErrorKind::non_local_tensor: return "NonLocalTensor";
    case ErrorKind::not_complete_intersection: return "NotCompleteIntersection";
    case ErrorKind::name_error: return "NameError";
    case ErrorKind::syntax_error: return "SyntaxError";
    case ErrorKind::type_mismatch: return "TypeMismatch";
    case ErrorKind::internal: return "InternalError";
  }
  return "UnknownError";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // extended Euclid; a in [1, p)
  long long t = 0, newt = 1;
  long long r = static_cast<long long>(p), newr = static_cast<long long>(a % p);
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw Error(ErrorKind::not_invertible, "element has no inverse mod p");
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

BaseField BaseField::gf(std::uint64_t p) {
  if (!is_prime(p))
    throw Error(ErrorKind::type_mismatch, "GF(" + std::to_string(p) + "): characteristic must be prime");
  if (p >= (1ull << 31))
    throw Error(ErrorKind::type_mismatch, "GF(p) supports p < 2^31");
  return BaseField(Kind::prime_field, p);
}

BaseElem BaseField::zero() const {
  if (kind_ == Kind::prime_field) return std::uint64_t{0};
  return Rational(0);
}

BaseElem BaseField::one() const {
  if (kind_ == Kind::prime_field) return std::uint64_t{1};
  return Rational(1);
}

BaseElem BaseField::from_int(long long v) const {
  if (kind_ == Kind::prime_field) {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return static_cast<std::uint64_t>(m);
  }
  return Rational(static_cast<long>(v));
}

BaseElem BaseField::from_rational(const Rational& value) const {
  if (kind_ == Kind::rationals) {
    Rational c = value;
    c.canonicalize();
    return c;
  }
  // num/den mod p
  mpz_class num = value.get_num(), den = value.get_den();
  mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class nr = num % pz, dr = den % pz;
  if (nr < 0) nr += pz;
  if (dr < 0) dr += pz;
  std::uint64_t n = nr.get_ui(), d = dr.get_ui();
  if (d == 0)
    throw Error(ErrorKind::not_invertible, "rational has denominator divisible by p");
  return mul(BaseElem{n}, BaseElem{mod_inverse(d, p_)});
}

BaseElem BaseField::add(const BaseElem& a, const BaseElem& b) const {
  if (kind_ == Kind::prime_field) return (r(a) + r(b)) % p_;
  return Rational(q(a) + q(b));
}

BaseElem BaseField::sub(const BaseElem& a, const BaseElem& b) const {
  if (kind_ == Kind::prime_field) return (r(a) + p_ - r(b)) % p_;
  return Rational(q(a) - q(b));
}

BaseElem BaseField::neg(const BaseElem& a) const {
  if (kind_ == Kind::prime_field) return r(a) == 0 ? std::uint64_t{0} : p_ - r(a);
  return Rational(-q(a));
}

BaseElem BaseField::mul(const BaseElem& a, const BaseElem& b) const {
  if (kind_ == Kind::prime_field)
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(r(a)) * r(b)) % p_);
  return Rational(q(a) * q(b));
}

BaseElem BaseField::inv(const BaseElem& a) const {
  if (is_zero(a)) throw Error(ErrorKind::not_invertible, "division by zero");
  if (kind_ == Kind::prime_field) return mod_inverse(r(a), p_);
  return Rational(1 / q(a));
}

BaseElem BaseField::pow(const BaseElem& a, std::uint64_t e) const {
  BaseElem acc = one(), base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

bool BaseField::is_zero(const BaseElem& a) const {
  if (kind_ == Kind::prime_field) return r(a) == 0;
  return sgn(q(a)) == 0;
}

bool BaseField::is_one(const BaseElem& a) const {
  if (kind_ == Kind::prime_field) return r(a) == 1;
  return q(a) == 1;
}

bool BaseField::eq(const BaseElem& a, const BaseElem& b) const {
  if (kind_ == Kind::prime_field) return r(a) == r(b);
  return q(a) == q(b);
}

int BaseField::cmp(const BaseElem& a, const BaseElem& b) const {
  if (kind_ == Kind::prime_field) {
    if (r(a) < r(b)) return -1;
    if (r(a) > r(b)) return 1;
    return 0;
  }
  return ::cmp(q(a), q(b));
}

std::string BaseField::to_string(const BaseElem& a) const {
  if (kind_ == Kind::prime_field) return std::to_string(r(a));
  std::ostringstream os;
  os << q(a);
  return os.str();
}

std::vector<BaseElem> BaseField::elements() const {
  if (kind_ != Kind::prime_field)
    throw Error(ErrorKind::budget_exceeded, "cannot enumerate an infinite field");
  std::vector<BaseElem> out;
  out.reserve(p_);
  for (std::uint64_t i = 0; i < p_; ++i) out.emplace_back(i);
  return out;
}

}  // namespace weilkit
