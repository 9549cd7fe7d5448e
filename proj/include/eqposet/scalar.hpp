#pragma once

// Base-field scalars: elements of GF(p) or of the rational function field
// GF(p)(s).  A single type covers both so that the linear algebra kernel is
// written once.  Constants take a fast path with no heap allocation.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace eqp {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Dense polynomial over GF(p), coefficients from low to high degree, no
// trailing zeros (the zero polynomial is empty).
using FpPoly = std::vector<u32>;

namespace fp {

u32 add(u32 a, u32 b, u32 p);
u32 sub(u32 a, u32 b, u32 p);
u32 mul(u32 a, u32 b, u32 p);
u32 inv(u32 a, u32 p);
u32 pow(u32 a, u64 e, u32 p);
u32 reduce(long long v, u32 p);
bool is_prime(u32 n);

void trim(FpPoly& a);
int degree(const FpPoly& a);
FpPoly add(const FpPoly& a, const FpPoly& b, u32 p);
FpPoly sub(const FpPoly& a, const FpPoly& b, u32 p);
FpPoly mul(const FpPoly& a, const FpPoly& b, u32 p);
FpPoly scale(const FpPoly& a, u32 c, u32 p);
void divmod(const FpPoly& a, const FpPoly& b, u32 p, FpPoly& q, FpPoly& r);
FpPoly gcd(FpPoly a, FpPoly b, u32 p);

}  // namespace fp

class Scalar {
 public:
  // The default value is a zero compatible with every characteristic.
  Scalar() = default;

  static Scalar constant(u32 p, long long v);
  // num/den, reduced to lowest terms with a monic denominator.
  static Scalar fraction(u32 p, FpPoly num, FpPoly den);
  // The transcendental s of GF(p)(s).
  static Scalar variable(u32 p);

  u32 characteristic() const { return p_; }
  bool is_zero() const { return !f_ && c_ == 0; }
  bool is_one() const { return !f_ && c_ == 1; }
  bool is_constant() const { return !f_; }
  u32 constant_value() const { return c_; }

  FpPoly numerator() const;
  FpPoly denominator() const;

  Scalar inv() const;
  Scalar pow(long long e) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Text form: a residue like "2" or a fraction like "(s^2+1)/(s+2)".
  std::string str() const;
  // Total order used only for canonical sorting.
  static bool less(const Scalar& a, const Scalar& b);

 private:
  struct Frac {
    FpPoly num, den;
  };
  static Scalar from_reduced(u32 p, FpPoly num, FpPoly den);

  u32 p_ = 0;
  u32 c_ = 0;
  std::shared_ptr<const Frac> f_;
};

std::string poly_str(const FpPoly& a, char var);

}  // namespace eqp
