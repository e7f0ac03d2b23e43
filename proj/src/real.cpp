#include "sunflower/real.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

#include <mpfr.h>

namespace sunflower {

namespace {

constexpr unsigned kStartBits = 64;
constexpr unsigned kMaxBits = 16384;
constexpr unsigned kGuardBits = 16;

// RAII holder for an mpfr_t.
struct Mpfr {
  mpfr_t v;
  explicit Mpfr(unsigned bits) { mpfr_init2(v, static_cast<mpfr_prec_t>(bits)); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

Rational to_rational(const Mpfr& f) {
  Rational out;
  mpfr_get_q(out.backend().data(), f.v);
  return out;
}

Rational round_rational(const Rational& q, unsigned bits, mpfr_rnd_t mode) {
  Mpfr f(bits);
  mpfr_set_q(f.v, q.backend().data(), mode);
  return to_rational(f);
}

Interval outward(const Interval& in, unsigned bits) {
  return {round_rational(in.lo, bits, MPFR_RNDD), round_rational(in.hi, bits, MPFR_RNDU)};
}

Rational rational_pow(const Rational& q, unsigned long e) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer num = boost::multiprecision::pow(Integer(numerator(q)), static_cast<unsigned>(e));
  Integer den = boost::multiprecision::pow(Integer(denominator(q)), static_cast<unsigned>(e));
  return Rational(num, den);
}

Interval mul(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

bool contains_zero(const Interval& i) { return i.lo <= 0 && i.hi >= 0; }

// Evaluates an mpfr monotone increasing function on an enclosure.
template <class Fn>
Interval monotone(const Interval& x, unsigned bits, Fn fn) {
  Mpfr lo(bits), hi(bits), out_lo(bits), out_hi(bits);
  mpfr_set_q(lo.v, x.lo.backend().data(), MPFR_RNDD);
  mpfr_set_q(hi.v, x.hi.backend().data(), MPFR_RNDU);
  fn(out_lo.v, lo.v, MPFR_RNDD);
  fn(out_hi.v, hi.v, MPFR_RNDU);
  return {to_rational(out_lo), to_rational(out_hi)};
}

}  // namespace

struct Real::Node {
  std::function<Interval(unsigned)> enclose;
  std::mutex mutex;
  std::map<unsigned, Interval> cache;
};

Real Real::from_enclosure(std::function<Interval(unsigned)> enclose) {
  Real r;
  r.exact_.reset();
  r.node_ = std::make_shared<Node>();
  r.node_->enclose = std::move(enclose);
  return r;
}

const Rational& Real::exact() const {
  if (!exact_) throw std::logic_error("Real::exact called on an inexact value");
  return *exact_;
}

Interval Real::enclose(unsigned bits) const {
  if (exact_) return {*exact_, *exact_};
  std::lock_guard<std::mutex> lock(node_->mutex);
  auto it = node_->cache.find(bits);
  if (it != node_->cache.end()) return it->second;
  Interval i = node_->enclose(bits);
  node_->cache.emplace(bits, i);
  return i;
}

double Real::to_double() const {
  if (exact_) return exact_->convert_to<double>();
  Interval i = enclose(kStartBits);
  return ((i.lo + i.hi) / 2).convert_to<double>();
}

std::string Real::to_string(int digits) const {
  if (exact_) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Integer num = numerator(*exact_);
    Integer den = denominator(*exact_);
    if (den == 1) return num.str();
    std::string s = num.str() + "/" + den.str();
    if (s.size() <= 48) return s;
  }
  return to_decimal(*this, digits);
}

Real operator+(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(a.exact() + b.exact());
  return Real::from_enclosure([a, b](unsigned bits) {
    Interval x = a.enclose(bits + kGuardBits), y = b.enclose(bits + kGuardBits);
    return outward({x.lo + y.lo, x.hi + y.hi}, bits + kGuardBits);
  });
}

Real operator-(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(a.exact() - b.exact());
  return Real::from_enclosure([a, b](unsigned bits) {
    Interval x = a.enclose(bits + kGuardBits), y = b.enclose(bits + kGuardBits);
    return outward({x.lo - y.hi, x.hi - y.lo}, bits + kGuardBits);
  });
}

Real operator*(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(a.exact() * b.exact());
  return Real::from_enclosure([a, b](unsigned bits) {
    return outward(mul(a.enclose(bits + kGuardBits), b.enclose(bits + kGuardBits)),
                   bits + kGuardBits);
  });
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_exact() && b.exact() == 0) throw std::domain_error("division by zero");
  if (a.is_exact() && b.is_exact()) return Real(a.exact() / b.exact());
  return Real::from_enclosure([a, b](unsigned bits) {
    for (unsigned w = bits; w <= kMaxBits; w *= 2) {
      Interval y = b.enclose(w + kGuardBits);
      if (contains_zero(y)) continue;
      Interval inv{Rational(1) / y.hi, Rational(1) / y.lo};
      return outward(mul(a.enclose(w + kGuardBits), inv), w + kGuardBits);
    }
    throw PrecisionError("divisor cannot be separated from zero");
  });
}

Real pow(const Real& base, long exponent) {
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  if (base.is_exact()) {
    if (exponent < 0 && base.exact() == 0) throw std::domain_error("zero to a negative power");
    Rational p = rational_pow(base.exact(), e);
    return exponent < 0 ? Real(Rational(1) / p) : Real(p);
  }
  return Real::from_enclosure([base, exponent, e](unsigned bits) {
    unsigned extra = kGuardBits;
    for (unsigned long t = e; t > 0; t >>= 1) ++extra;
    Interval x = base.enclose(bits + extra);
    if (x.lo <= 0) throw std::domain_error("inexact power requires a positive base");
    Interval p = outward({rational_pow(x.lo, e), rational_pow(x.hi, e)}, bits + extra);
    if (exponent < 0) p = outward({Rational(1) / p.hi, Rational(1) / p.lo}, bits + extra);
    return p;
  });
}

Real exp(const Real& x) {
  if (x.is_exact() && x.exact() == 0) return Real(1);
  return Real::from_enclosure([x](unsigned bits) {
    return monotone(x.enclose(bits + kGuardBits), bits + kGuardBits,
                    [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t m) { mpfr_exp(r, a, m); });
  });
}

Real log(const Real& x) {
  if (x.is_exact()) {
    if (x.exact() <= 0) throw std::domain_error("log of a nonpositive value");
    if (x.exact() == 1) return Real(0);
  }
  return Real::from_enclosure([x](unsigned bits) {
    Interval i = x.enclose(bits + kGuardBits);
    if (i.lo <= 0) throw std::domain_error("log argument not separated from zero");
    return monotone(i, bits + kGuardBits,
                    [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t m) { mpfr_log(r, a, m); });
  });
}

int compare(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) {
    const int c = a.exact().compare(b.exact());
    return (c > 0) - (c < 0);
  }
  for (unsigned bits = kStartBits; bits <= kMaxBits; bits *= 2) {
    Interval x = a.enclose(bits), y = b.enclose(bits);
    if (x.hi < y.lo) return -1;
    if (x.lo > y.hi) return 1;
  }
  throw PrecisionError("comparison undecided at " + std::to_string(kMaxBits) + " bits");
}

Integer floor(const Rational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer num = numerator(x), den = denominator(x);
  Integer q = num / den;
  if (q * den != num && num < 0) q -= 1;
  return q;
}

Integer ceil(const Rational& x) { return -floor(Rational(-x)); }

Integer floor(const Real& x) {
  if (x.is_exact()) return floor(x.exact());
  for (unsigned bits = kStartBits; bits <= kMaxBits; bits *= 2) {
    Interval i = x.enclose(bits);
    Integer lo = floor(i.lo), hi = floor(i.hi);
    if (lo == hi) return lo;
  }
  throw PrecisionError("floor undecided");
}

Integer ceil(const Real& x) {
  if (x.is_exact()) return ceil(x.exact());
  for (unsigned bits = kStartBits; bits <= kMaxBits; bits *= 2) {
    Interval i = x.enclose(bits);
    Integer lo = ceil(i.lo), hi = ceil(i.hi);
    if (lo == hi) return lo;
  }
  throw PrecisionError("ceil undecided");
}

namespace {

std::string format_sci(const Rational& q, int digits, unsigned bits) {
  Mpfr f(bits);
  mpfr_set_q(f.v, q.backend().data(), MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, f.v);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

std::string to_decimal(const Real& x, int digits) {
  digits = std::max(digits, 1);
  std::string last;
  for (unsigned bits = kStartBits * 2; bits <= kMaxBits; bits *= 2) {
    Interval i = x.enclose(bits);
    std::string lo = format_sci(i.lo, digits, bits), hi = format_sci(i.hi, digits, bits);
    if (lo == hi) return lo;
    last = format_sci((i.lo + i.hi) / 2, digits, bits);
  }
  return last;
}

Rational parse_rational(const std::string& text) {
  auto fail = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) throw fail();
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw fail();
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw fail();
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw fail();
    // Leading zeros would select octal in the GMP parser.
    std::size_t first = start;
    while (first + 1 < s.size() && s[first] == '0') ++first;
    const Integer magnitude(s.substr(first));
    return s[0] == '-' ? Integer(-magnitude) : magnitude;
  };
  if (slash != std::string::npos) {
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw fail();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  std::string mantissa = text;
  long exponent = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = text.substr(0, epos);
    exponent = static_cast<long>(parse_int(text.substr(epos + 1)).convert_to<long>());
  }
  auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    std::string frac = mantissa.substr(dot + 1);
    mantissa = mantissa.substr(0, dot) + frac;
    exponent -= static_cast<long>(frac.size());
    if (mantissa == "-" || mantissa == "+" || mantissa.empty()) throw fail();
  }
  Rational value(parse_int(mantissa));
  Rational scale(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent)));
  return exponent < 0 ? Rational(value / scale) : Rational(value * scale);
}

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace sunflower
