#pragma once

// The field tower F ⊆ G = F(ξ) with ξ^p = q, its extra operator (a Galois
// generator σ or the derivation δ), and the matrix realization Θ of the
// opposite endomorphism algebra.
//
// Concrete instances:
//   separable:   F = GF(q0), G = GF(q0^p), q a non-p-th-power residue.
//   inseparable: F = GF(p)(s), G = GF(p)(u), ξ = u, q = s.

#include <random>
#include <string>
#include <vector>

#include "eqposet/matrix.hpp"

namespace eqp {

enum class TowerCase { separable, inseparable };

struct TowerConfig {
  u32 p = 2;
  TowerCase kind = TowerCase::separable;
  u32 q0 = 3;  // separable only
  u32 q = 2;   // separable only

  friend bool operator==(const TowerConfig&, const TowerConfig&) = default;
};

// c_0 + c_1 ξ + ... + c_{p-1} ξ^{p-1}.
struct ExtElement {
  std::vector<Scalar> c;

  bool is_zero() const;
  friend bool operator==(const ExtElement& a, const ExtElement& b) { return a.c == b.c; }
  friend bool operator!=(const ExtElement& a, const ExtElement& b) { return !(a == b); }
};

using Rng = std::mt19937_64;

class Tower {
 public:
  explicit Tower(const TowerConfig& cfg);

  const TowerConfig& config() const { return cfg_; }
  u32 p() const { return cfg_.p; }
  // Characteristic of F.
  u32 ch() const { return ch_; }
  bool separable() const { return cfg_.kind == TowerCase::separable; }
  // |F| for finite F, 0 otherwise.
  u64 base_size() const { return separable() ? cfg_.q0 : 0; }
  // ζ with σ(ξ) = ζξ (separable only).
  const Scalar& zeta() const { return zeta_; }

  Scalar base(long long v) const { return Scalar::constant(ch_, v); }
  Scalar s() const;
  const Scalar& q() const { return q_; }

  ExtElement zero() const;
  ExtElement one() const { return embed(base(1)); }
  ExtElement xi() const { return xi_pow(1); }
  ExtElement xi_pow(unsigned i) const;
  ExtElement embed(const Scalar& f) const;
  bool in_base(const ExtElement& a) const;

  ExtElement add(const ExtElement& a, const ExtElement& b) const;
  ExtElement sub(const ExtElement& a, const ExtElement& b) const;
  ExtElement neg(const ExtElement& a) const;
  ExtElement scale(const Scalar& f, const ExtElement& a) const;
  ExtElement mul(const ExtElement& a, const ExtElement& b) const;
  ExtElement inv(const ExtElement& a) const;
  ExtElement div(const ExtElement& a, const ExtElement& b) const { return mul(a, inv(b)); }
  ExtElement pow(const ExtElement& a, u64 e) const;

  ExtElement delta(const ExtElement& a) const;
  ExtElement sigma(const ExtElement& a) const;
  // δ or σ according to the case.
  ExtElement vartheta(const ExtElement& a) const;
  ExtElement vartheta_pow(const ExtElement& a, unsigned k) const;
  Scalar re(const ExtElement& a) const { return a.c[0]; }

  // Θ(f): row i holds the coordinates of f(ξ^i).
  Matrix theta_mul(const ExtElement& a) const;
  Matrix theta_vartheta() const;
  Matrix coords(const ExtElement& a) const;
  ExtElement from_row(const Matrix& m, size_t row = 0) const;

  std::string str(const ExtElement& a) const;
  std::string str(const Scalar& f) const { return f.str(); }
  // Element syntax: polynomial expressions in x (= ξ) and s with + - * ^ and
  // parentheses; '/' has the lowest precedence inside a group, so
  // "(s/s^2+1)*x" reads s/(s^2+1) times ξ.
  ExtElement parse(const std::string& text) const;
  Scalar parse_base(const std::string& text) const;

  Scalar random_base(Rng& rng, bool nonzero = false) const;
  ExtElement random(Rng& rng, bool nonzero = false) const;

 private:
  TowerConfig cfg_;
  u32 ch_;
  Scalar q_;
  Scalar zeta_;
};

std::string to_string(TowerCase k);

}  // namespace eqp
