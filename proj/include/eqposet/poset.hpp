#pragma once

// Finite posets whose relations carry degrees 1..p, and the cyclic-group
// variant where each relation carries a subset of Z_n.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqposet/tower.hpp"

namespace eqp {

struct Relation {
  std::string x, y;
  int degree;
};

class EquippedPoset {
 public:
  EquippedPoset() = default;
  explicit EquippedPoset(u32 p) : p_(p) {}

  // Closes the generating relations: every implied pair receives the largest
  // degree min(l+m-1, p) forced by any factorization, iterated to a fixed
  // point.  Explicitly listed pairs keep their degree.  Throws AxiomViolation
  // when the result is not a valid equipment.
  static EquippedPoset from_generators(u32 p, const std::vector<std::pair<std::string, int>>& points,
                                       const std::vector<Relation>& rels);

  u32 p() const { return p_; }
  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<size_t> find(const std::string& n) const;
  size_t index(const std::string& n) const;

  // Degree of x <= y, or 0 when x and y are not comparable in that order.
  int degree(size_t x, size_t y) const { return deg_[x][y]; }
  bool leq(size_t x, size_t y) const { return deg_[x][y] > 0; }
  bool less(size_t x, size_t y) const { return x != y && deg_[x][y] > 0; }
  bool strong(size_t x) const { return deg_[x][x] == static_cast<int>(p_) && p_ > 1; }
  bool weak(size_t x) const { return deg_[x][x] == 1; }

  size_t add_point(const std::string& n, int self_degree);
  void set_degree(size_t x, size_t y, int ell) { deg_[x][y] = ell; }

  // Empty iff the poset is a valid p-equipped poset.
  std::vector<std::string> validate() const;

  enum class Extend { max, min, both };
  // Adds "m" (maximum) and/or "0" (minimum) with strong relations.  The
  // minimum is placed first and the maximum last.
  EquippedPoset extend(Extend which) const;

  std::optional<size_t> max_point() const { return find("m"); }
  std::optional<size_t> min_point() const { return find("0"); }

  // Points sorted so that x < y implies x comes first.
  std::vector<size_t> linear_extension() const;

  friend bool operator==(const EquippedPoset& a, const EquippedPoset& b) {
    return a.p_ == b.p_ && a.names_ == b.names_ && a.deg_ == b.deg_;
  }

  std::string str() const;

 private:
  u32 p_ = 2;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> deg_;
};

// Cyclic-group equipment: Δ_{xy} ⊆ Z_n for every x <= y.
struct GeneralizedEquipment {
  u32 n = 1;
  std::map<std::pair<size_t, size_t>, std::set<u32>> delta;
};

// Empty iff Δ_{xy} + Δ_{yz} ⊆ Δ_{xz} on every chain and every Δ is nonempty.
// Only the order of P is used.
std::vector<std::string> validate_generalized(const EquippedPoset& order, const GeneralizedEquipment& g);

// Degree l becomes the subset {0, ..., l-1} of Z_p.
GeneralizedEquipment to_generalized(const EquippedPoset& P);

struct PosetFile {
  EquippedPoset poset;
  std::optional<TowerConfig> tower;
  std::optional<GeneralizedEquipment> gamma;
};

// Line format: "p <prime>", "case separable <q0> <q>" | "case inseparable",
// "point <name> <1|p>", "rel <x> <y> <l>"; the generalized form uses
// "gamma <n>" and "rel <x> <y> {i,j,...}".  '#' starts a comment.
PosetFile parse_poset(const std::string& text);
PosetFile load_poset(const std::string& path);
std::string format_poset(const EquippedPoset& P, const std::optional<TowerConfig>& tower);

// Random valid poset on n points; retries until the closure validates.
EquippedPoset random_poset(Rng& rng, size_t n, u32 p, double edge_prob = 0.4, double strong_prob = 0.3);

}  // namespace eqp
