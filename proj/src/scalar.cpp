#include "eqposet/scalar.hpp"

#include <algorithm>
#include <sstream>

#include "eqposet/error.hpp"

namespace eqp {

namespace fp {

u32 add(u32 a, u32 b, u32 p) {
  u32 s = a + b;
  return s >= p ? s - p : s;
}
u32 sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
u32 mul(u32 a, u32 b, u32 p) { return static_cast<u32>((u64)a * b % p); }

u32 pow(u32 a, u64 e, u32 p) {
  u64 r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 inv(u32 a, u32 p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(p) + ")");
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return reduce(t, p);
}

u32 reduce(long long v, u32 p) {
  long long r = v % (long long)p;
  return static_cast<u32>(r < 0 ? r + p : r);
}

bool is_prime(u32 n) {
  if (n < 2) return false;
  for (u32 d = 2; (u64)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly add(const FpPoly& a, const FpPoly& b, u32 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = fp::add(r[i], b[i], p);
  trim(r);
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, u32 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = fp::sub(r[i], b[i], p);
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, u32 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = fp::add(r[i + j], fp::mul(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

FpPoly scale(const FpPoly& a, u32 c, u32 p) {
  FpPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = fp::mul(a[i], c, p);
  trim(r);
  return r;
}

void divmod(const FpPoly& a, const FpPoly& b, u32 p, FpPoly& q, FpPoly& r) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  u32 lead_inv = fp::inv(b.back(), p);
  while (r.size() >= b.size() && !r.empty()) {
    size_t shift = r.size() - b.size();
    u32 c = fp::mul(r.back(), lead_inv, p);
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) r[shift + j] = fp::sub(r[shift + j], fp::mul(c, b[j], p), p);
    trim(r);
  }
  trim(q);
}

FpPoly gcd(FpPoly a, FpPoly b, u32 p) {
  while (!b.empty()) {
    FpPoly q, r;
    divmod(a, b, p, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(a, fp::inv(a.back(), p), p);
  return a;
}

}  // namespace fp

Scalar Scalar::constant(u32 p, long long v) {
  Scalar s;
  s.p_ = p;
  s.c_ = fp::reduce(v, p);
  return s;
}

Scalar Scalar::variable(u32 p) { return from_reduced(p, FpPoly{0, 1}, FpPoly{1}); }

Scalar Scalar::from_reduced(u32 p, FpPoly num, FpPoly den) {
  Scalar s;
  s.p_ = p;
  if (num.empty()) return s;
  if (den.size() == 1 && num.size() == 1) {
    s.c_ = num[0];
    return s;
  }
  s.f_ = std::make_shared<const Frac>(Frac{std::move(num), std::move(den)});
  return s;
}

Scalar Scalar::fraction(u32 p, FpPoly num, FpPoly den) {
  fp::trim(num);
  fp::trim(den);
  if (den.empty()) throw DivisionByZero("fraction with zero denominator");
  if (num.empty()) {
    Scalar z;
    z.p_ = p;
    return z;
  }
  FpPoly g = fp::gcd(num, den, p);
  if (g.size() > 1) {
    FpPoly q, r;
    fp::divmod(num, g, p, q, r);
    num = q;
    fp::divmod(den, g, p, q, r);
    den = q;
  }
  u32 li = fp::inv(den.back(), p);
  return from_reduced(p, fp::scale(num, li, p), fp::scale(den, li, p));
}

FpPoly Scalar::numerator() const {
  if (f_) return f_->num;
  if (c_ == 0) return {};
  return {c_};
}

FpPoly Scalar::denominator() const {
  if (f_) return f_->den;
  return {1};
}

static u32 common_char(const Scalar& a, const Scalar& b) {
  u32 pa = a.characteristic(), pb = b.characteristic();
  if (pa && pb && pa != pb) throw Error("mixing scalars of characteristic " + std::to_string(pa) + " and " + std::to_string(pb));
  return pa ? pa : pb;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  u32 p = common_char(a, b);
  if (!a.f_ && !b.f_) {
    Scalar s;
    s.p_ = p;
    s.c_ = p ? fp::add(a.c_, b.c_, p) : 0;
    return s;
  }
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  FpPoly an = a.numerator(), ad = a.denominator(), bn = b.numerator(), bd = b.denominator();
  if (ad == bd) return Scalar::fraction(p, fp::add(an, bn, p), ad);
  return Scalar::fraction(p, fp::add(fp::mul(an, bd, p), fp::mul(bn, ad, p), p), fp::mul(ad, bd, p));
}

Scalar Scalar::operator-() const {
  if (!f_) {
    Scalar s = *this;
    s.c_ = p_ ? fp::sub(0, c_, p_) : 0;
    return s;
  }
  return from_reduced(p_, fp::scale(f_->num, p_ - 1, p_), f_->den);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  u32 p = common_char(a, b);
  if (!a.f_ && !b.f_) {
    Scalar s;
    s.p_ = p;
    s.c_ = p ? fp::mul(a.c_, b.c_, p) : 0;
    return s;
  }
  if (a.is_zero() || b.is_zero()) {
    Scalar z;
    z.p_ = p;
    return z;
  }
  if (!a.f_) return Scalar::from_reduced(p, fp::scale(b.f_->num, a.c_, p), b.f_->den);
  if (!b.f_) return Scalar::from_reduced(p, fp::scale(a.f_->num, b.c_, p), a.f_->den);
  return Scalar::fraction(p, fp::mul(a.f_->num, b.f_->num, p), fp::mul(a.f_->den, b.f_->den, p));
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (!f_) return constant(p_, fp::inv(c_, p_));
  return fraction(p_, f_->den, f_->num);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

Scalar Scalar::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r = constant(p_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.p_ != b.p_ || a.c_ != b.c_) return false;
  if (!a.f_ || !b.f_) return !a.f_ && !b.f_;
  return a.f_->num == b.f_->num && a.f_->den == b.f_->den;
}

bool Scalar::less(const Scalar& a, const Scalar& b) {
  FpPoly an = a.numerator(), bn = b.numerator(), ad = a.denominator(), bd = b.denominator();
  if (ad.size() != bd.size()) return ad.size() < bd.size();
  if (ad != bd) return std::lexicographical_compare(ad.rbegin(), ad.rend(), bd.rbegin(), bd.rend());
  if (an.size() != bn.size()) return an.size() < bn.size();
  return std::lexicographical_compare(an.rbegin(), an.rend(), bn.rbegin(), bn.rend());
}

std::string poly_str(const FpPoly& a, char var) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = fp::degree(a); i >= 0; --i) {
    if (!a[i]) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || a[i] != 1) os << a[i];
    if (i > 0) {
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

std::string Scalar::str() const {
  if (!f_) return std::to_string(c_);
  std::string n = poly_str(f_->num, 's');
  if (f_->den.size() == 1) return n;
  return "(" + n + ")/(" + poly_str(f_->den, 's') + ")";
}

}  // namespace eqp
