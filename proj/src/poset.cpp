#include "eqposet/poset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "eqposet/error.hpp"
#include "text.hpp"

namespace eqp {

std::optional<size_t> EquippedPoset::find(const std::string& n) const {
  auto it = std::find(names_.begin(), names_.end(), n);
  if (it == names_.end()) return std::nullopt;
  return static_cast<size_t>(it - names_.begin());
}

size_t EquippedPoset::index(const std::string& n) const {
  auto i = find(n);
  if (!i) throw Error("unknown point '" + n + "'");
  return *i;
}

size_t EquippedPoset::add_point(const std::string& n, int self_degree) {
  if (find(n)) throw NameClash("point '" + n + "' already exists");
  names_.push_back(n);
  for (auto& row : deg_) row.push_back(0);
  deg_.emplace_back(names_.size(), 0);
  size_t i = names_.size() - 1;
  deg_[i][i] = self_degree;
  return i;
}

static int forced(int l, int m, u32 p) { return std::min(l + m - 1, static_cast<int>(p)); }

EquippedPoset EquippedPoset::from_generators(u32 p, const std::vector<std::pair<std::string, int>>& points,
                                             const std::vector<Relation>& rels) {
  EquippedPoset P(p);
  for (const auto& [n, d] : points) P.add_point(n, d);
  size_t n = P.size();
  std::vector<std::vector<bool>> fixed(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) fixed[i][i] = true;
  for (const auto& r : rels) {
    size_t x = P.index(r.x), y = P.index(r.y);
    if (r.degree < 1 || r.degree > static_cast<int>(p))
      throw AxiomViolation("degree " + std::to_string(r.degree) + " of " + r.x + " <= " + r.y + " outside 1.." + std::to_string(p));
    if (x == y) throw AxiomViolation("self relation of " + r.x + " must be given on its point line");
    P.deg_[x][y] = r.degree;
    fixed[x][y] = true;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y) {
        if (!P.deg_[x][y]) continue;
        for (size_t z = 0; z < n; ++z) {
          if (!P.deg_[y][z]) continue;
          int f = forced(P.deg_[x][y], P.deg_[y][z], p);
          if (fixed[x][z]) continue;
          if (P.deg_[x][z] < f) {
            P.deg_[x][z] = f;
            changed = true;
          }
        }
      }
  }
  auto report = P.validate();
  if (!report.empty()) throw AxiomViolation(report.front());
  return P;
}

std::vector<std::string> EquippedPoset::validate() const {
  std::vector<std::string> out;
  size_t n = size();
  int pp = static_cast<int>(p_);
  for (size_t x = 0; x < n; ++x) {
    int s = deg_[x][x];
    if (s != 1 && s != pp) out.push_back("point " + names_[x] + " has self-degree " + std::to_string(s) + ", expected 1 or " + std::to_string(p_));
    for (size_t y = 0; y < n; ++y) {
      if (deg_[x][y] < 0 || deg_[x][y] > pp) out.push_back("degree of " + names_[x] + " <= " + names_[y] + " outside 0.." + std::to_string(p_));
      if (x != y && deg_[x][y] && deg_[y][x]) out.push_back("cycle between " + names_[x] + " and " + names_[y]);
    }
  }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!deg_[x][y]) continue;
      for (size_t z = 0; z < n; ++z) {
        if (!deg_[y][z]) continue;
        int l = deg_[x][y], m = deg_[y][z], d = deg_[x][z];
        if (!d) {
          out.push_back("missing transitive relation " + names_[x] + " <= " + names_[z]);
          continue;
        }
        if (d < forced(l, m, p_))
          out.push_back("chain " + names_[x] + " <=^" + std::to_string(l) + " " + names_[y] + " <=^" + std::to_string(m) + " " + names_[z] +
                        " needs " + names_[x] + " <=^n " + names_[z] + " with n >= min(l+m-1, p) = " + std::to_string(forced(l, m, p_)) +
                        ", found " + std::to_string(d));
      }
    }
  // composition with a strong point is strong
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      if (x != y && deg_[x][y] && (strong(x) || strong(y)) && deg_[x][y] != pp)
        out.push_back("relation " + names_[x] + " <= " + names_[y] + " touches a strong point but has degree " + std::to_string(deg_[x][y]));
  return out;
}

EquippedPoset EquippedPoset::extend(Extend which) const {
  int pp = static_cast<int>(p_);
  bool add_min = which != Extend::max, add_max = which != Extend::min;
  if (add_min && find("0")) throw NameClash("point '0' already exists");
  if (add_max && find("m")) throw NameClash("point 'm' already exists");
  EquippedPoset R(p_);
  size_t off = add_min ? 1 : 0;
  if (add_min) R.add_point("0", pp);
  for (const auto& n : names_) R.add_point(n, 1);
  for (size_t x = 0; x < size(); ++x)
    for (size_t y = 0; y < size(); ++y) R.deg_[x + off][y + off] = deg_[x][y];
  if (add_max) R.add_point("m", pp);
  size_t N = R.size();
  for (size_t x = 0; x < N; ++x) {
    if (add_min && x != 0) R.deg_[0][x] = pp;
    if (add_max && x != N - 1) R.deg_[x][N - 1] = pp;
  }
  return R;
}

std::vector<size_t> EquippedPoset::linear_extension() const {
  std::vector<size_t> order(size());
  for (size_t i = 0; i < size(); ++i) order[i] = i;
  // number of points below gives a valid linear extension
  std::vector<size_t> below(size(), 0);
  for (size_t x = 0; x < size(); ++x)
    for (size_t y = 0; y < size(); ++y)
      if (less(y, x)) ++below[x];
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return below[a] < below[b]; });
  return order;
}

std::string EquippedPoset::str() const {
  std::ostringstream os;
  os << "p=" << p_ << " points:";
  for (size_t i = 0; i < size(); ++i) os << ' ' << names_[i] << (strong(i) ? "(strong)" : "");
  os << " rels:";
  for (size_t x = 0; x < size(); ++x)
    for (size_t y = 0; y < size(); ++y)
      if (less(x, y)) os << ' ' << names_[x] << "<" << deg_[x][y] << " " << names_[y];
  return os.str();
}

std::vector<std::string> validate_generalized(const EquippedPoset& order, const GeneralizedEquipment& g) {
  std::vector<std::string> out;
  size_t n = order.size();
  auto get = [&](size_t x, size_t y) -> const std::set<u32>* {
    auto it = g.delta.find({x, y});
    return it == g.delta.end() ? nullptr : &it->second;
  };
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!order.leq(x, y)) continue;
      const auto* d = get(x, y);
      if (!d || d->empty()) out.push_back("empty subset for " + order.name(x) + " <= " + order.name(y));
    }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!order.leq(x, y)) continue;
      for (size_t z = 0; z < n; ++z) {
        if (!order.leq(y, z)) continue;
        const auto *a = get(x, y), *b = get(y, z), *c = get(x, z);
        if (!a || !b) continue;
        for (u32 i : *a)
          for (u32 j : *b) {
            u32 k = (i + j) % g.n;
            if (!c || !c->count(k)) {
              out.push_back("chain " + order.name(x) + " <= " + order.name(y) + " <= " + order.name(z) + ": " + std::to_string(i) + "+" +
                            std::to_string(j) + " = " + std::to_string(k) + " missing from the subset of " + order.name(x) + " <= " + order.name(z));
              goto next_chain;
            }
          }
      next_chain:;
      }
    }
  return out;
}

GeneralizedEquipment to_generalized(const EquippedPoset& P) {
  GeneralizedEquipment g;
  g.n = P.p();
  for (size_t x = 0; x < P.size(); ++x)
    for (size_t y = 0; y < P.size(); ++y) {
      if (!P.leq(x, y)) continue;
      std::set<u32> s;
      for (int i = 0; i < P.degree(x, y); ++i) s.insert(static_cast<u32>(i));
      g.delta[{x, y}] = s;
    }
  return g;
}

namespace {

using text::split_ws;
using text::to_int;

std::set<u32> parse_set(const std::string& s, int line, u32 n) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw SyntaxError(line, "subset like {0,1} expected, found '" + s + "'");
  std::set<u32> out;
  std::string body = s.substr(1, s.size() - 2);
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    long long v = to_int(tok, line);
    if (v < 0 || (n && v >= (long long)n)) throw SyntaxError(line, "exponent " + tok + " outside Z_" + std::to_string(n));
    out.insert(static_cast<u32>(v));
  }
  return out;
}

}  // namespace

PosetFile parse_poset(const std::string& text) {
  PosetFile out;
  std::optional<u32> p;
  std::optional<u32> gamma_n;
  std::vector<std::pair<std::string, int>> points;
  std::vector<std::string> point_self_text;
  std::vector<Relation> rels;
  std::vector<int> rel_lines;
  std::vector<std::tuple<std::string, std::string, std::set<u32>, int>> grels;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto w = split_ws(raw);
    if (w.empty()) continue;
    const std::string& kw = w[0];
    if (kw == "p") {
      if (w.size() != 2) throw SyntaxError(line, "usage: p <prime>");
      long long v = to_int(w[1], line);
      if (v < 2 || !fp::is_prime(static_cast<u32>(v))) throw SyntaxError(line, "p must be prime");
      p = static_cast<u32>(v);
    } else if (kw == "case") {
      TowerConfig cfg;
      if (w.size() == 4 && w[1] == "separable") {
        cfg.kind = TowerCase::separable;
        cfg.q0 = static_cast<u32>(to_int(w[2], line));
        cfg.q = static_cast<u32>(to_int(w[3], line));
      } else if (w.size() == 2 && w[1] == "inseparable") {
        cfg.kind = TowerCase::inseparable;
      } else {
        throw SyntaxError(line, "usage: case separable <q0> <q> | case inseparable");
      }
      out.tower = cfg;
    } else if (kw == "gamma") {
      if (w.size() != 2) throw SyntaxError(line, "usage: gamma <n>");
      long long v = to_int(w[1], line);
      if (v < 1) throw SyntaxError(line, "group order must be positive");
      gamma_n = static_cast<u32>(v);
    } else if (kw == "point") {
      if (w.size() != 2 && w.size() != 3) throw SyntaxError(line, "usage: point <name> <1|p>");
      if (w[1].find_first_of("{},") != std::string::npos) throw SyntaxError(line, "bad point name '" + w[1] + "'");
      for (const auto& q : points)
        if (q.first == w[1]) throw SyntaxError(line, "duplicate point '" + w[1] + "'");
      points.emplace_back(w[1], 1);
      point_self_text.push_back(w.size() == 3 ? w[2] : "1");
    } else if (kw == "rel") {
      if (w.size() != 4) throw SyntaxError(line, "usage: rel <x> <y> <degree>");
      if (w[3].front() == '{')
        grels.emplace_back(w[1], w[2], parse_set(w[3], line, gamma_n.value_or(0)), line);
      else {
        rels.push_back({w[1], w[2], static_cast<int>(to_int(w[3], line))});
        rel_lines.push_back(line);
      }
      auto known = [&](const std::string& nm) {
        return std::any_of(points.begin(), points.end(), [&](const auto& q) { return q.first == nm; });
      };
      if (!known(w[1]) || !known(w[2])) throw SyntaxError(line, "relation mentions an undeclared point");
    } else {
      throw SyntaxError(line, "unknown keyword '" + kw + "'");
    }
  }
  if (gamma_n) {
    // generalized equipment: order from the relations, subsets closed under sums
    if (!rels.empty()) throw SyntaxError(1, "degree relations are not allowed in a gamma file");
    std::vector<Relation> order_rels;
    for (auto& [x, y, s, l] : grels) order_rels.push_back({x, y, 1});
    for (auto& q : points) q.second = 1;
    EquippedPoset order = EquippedPoset::from_generators(2, points, order_rels);
    GeneralizedEquipment g;
    g.n = *gamma_n;
    for (size_t x = 0; x < order.size(); ++x) g.delta[{x, x}] = {0};
    for (auto& [x, y, s, l] : grels) g.delta[{order.index(x), order.index(y)}] = s;
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t x = 0; x < order.size(); ++x)
        for (size_t y = 0; y < order.size(); ++y) {
          if (!order.less(x, y)) continue;
          for (size_t z = 0; z < order.size(); ++z) {
            if (!order.less(y, z)) continue;
            auto& c = g.delta[{x, z}];
            if (std::any_of(grels.begin(), grels.end(), [&](const auto& r) {
                  return order.index(std::get<0>(r)) == x && order.index(std::get<1>(r)) == z;
                }))
              continue;
            for (u32 i : g.delta[{x, y}])
              for (u32 j : g.delta[{y, z}]) changed |= c.insert((i + j) % g.n).second;
          }
        }
    }
    out.poset = order;
    out.gamma = g;
    auto rep = validate_generalized(order, g);
    if (!rep.empty()) throw AxiomViolation(rep.front());
    return out;
  }
  if (!grels.empty()) throw SyntaxError(std::get<3>(grels.front()), "subset relation without a gamma line");
  if (!p) throw SyntaxError(line, "missing 'p <prime>' line");
  for (size_t i = 0; i < points.size(); ++i) {
    const std::string& t = point_self_text[i];
    if (t == "p")
      points[i].second = static_cast<int>(*p);
    else
      points[i].second = static_cast<int>(to_int(t, 0));
  }
  if (out.tower) out.tower->p = *p;
  try {
    out.poset = EquippedPoset::from_generators(*p, points, rels);
  } catch (const AxiomViolation&) {
    // blame the first relation line whose addition breaks the axioms
    for (size_t k = 0; k < rels.size(); ++k) {
      try {
        EquippedPoset::from_generators(*p, points, {rels.begin(), rels.begin() + static_cast<std::ptrdiff_t>(k) + 1});
      } catch (const AxiomViolation& e) {
        throw AxiomViolation("line " + std::to_string(rel_lines[k]) + ": " + e.what());
      }
    }
    throw;
  }
  return out;
}

PosetFile load_poset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_poset(ss.str());
}

std::string format_poset(const EquippedPoset& P, const std::optional<TowerConfig>& tower) {
  std::ostringstream os;
  os << "p " << P.p() << "\n";
  if (tower) {
    if (tower->kind == TowerCase::separable)
      os << "case separable " << tower->q0 << " " << tower->q << "\n";
    else
      os << "case inseparable\n";
  }
  for (size_t i = 0; i < P.size(); ++i) os << "point " << P.name(i) << " " << P.degree(i, i) << "\n";
  for (size_t x = 0; x < P.size(); ++x)
    for (size_t y = 0; y < P.size(); ++y)
      if (P.less(x, y)) os << "rel " << P.name(x) << " " << P.name(y) << " " << P.degree(x, y) << "\n";
  return os.str();
}

EquippedPoset random_poset(Rng& rng, size_t n, u32 p, double edge_prob, double strong_prob) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    std::vector<std::pair<std::string, int>> pts;
    for (size_t i = 0; i < n; ++i) pts.emplace_back("a" + std::to_string(i + 1), U(rng) < strong_prob ? static_cast<int>(p) : 1);
    std::vector<Relation> rels;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (U(rng) < edge_prob) {
          int d = (pts[i].second > 1 || pts[j].second > 1) ? static_cast<int>(p) : 1 + static_cast<int>(rng() % p);
          rels.push_back({pts[i].first, pts[j].first, d});
        }
    try {
      return EquippedPoset::from_generators(p, pts, rels);
    } catch (const AxiomViolation&) {
    }
  }
}

}  // namespace eqp
