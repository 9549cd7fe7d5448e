#include <filesystem>
#include <fstream>
#include <functional>

#include "doctest.h"
#include "eqposet/error.hpp"
#include "eqposet/io.hpp"

using namespace eqp;

namespace {

// A scratch directory holding one poset file per tower.
struct Scratch {
  std::filesystem::path dir;
  Scratch() {
    dir = std::filesystem::temp_directory_path() / "eqposet_io_test";
    std::filesystem::create_directories(dir);
  }
  std::string poset(const std::string& name, const EquippedPoset& P, const TowerConfig& cfg) {
    std::ofstream(dir / name) << format_poset(P, cfg);
    return name;
  }
  std::string path() const { return dir.string(); }
};

int error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const SyntaxError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("representation files round-trip") {
  Scratch s;
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    TowerConfig cfg = trial % 3 == 0   ? TowerConfig{2, TowerCase::inseparable, 0, 0}
                      : trial % 3 == 1 ? TowerConfig{2, TowerCase::separable, 3, 2}
                                       : TowerConfig{3, TowerCase::separable, 7, 3};
    Tower t(cfg);
    auto P = random_poset(rng, 1 + rng() % 3, t.p());
    std::string name = s.poset("p" + std::to_string(trial) + ".poset", P, cfg);
    RepKind kind = trial % 2 ? RepKind::rep : RepKind::corep;
    auto R = random_rep(kind, P, t, rng() % 3, rng);
    auto back = parse_rep(format_rep(R, name), s.path()).rep;
    REQUIRE(back.sub.size() == R.sub.size());
    CHECK(back.n == R.n);
    CHECK(back.r == R.r);
    for (size_t x = 0; x < R.sub.size(); ++x) CHECK(la::same_space(back.sub[x], R.sub[x]));
    CHECK(validate(back).empty());
  }
}

TEST_CASE("module and matrix representation files round-trip") {
  Scratch s;
  Rng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    TowerConfig cfg = trial % 2 ? TowerConfig{2, TowerCase::separable, 3, 2} : TowerConfig{2, TowerCase::inseparable, 0, 0};
    Tower t(cfg);
    auto P = random_poset(rng, 1 + rng() % 2, 2);
    std::string name = s.poset("m" + std::to_string(trial) + ".poset", P, cfg);
    RepKind kind = trial % 4 < 2 ? RepKind::rep : RepKind::corep;
    ModuleSpec spec{kind, kind == RepKind::rep, trial % 3 == 0};
    auto B = system_for(kind, P, t, spec.with_zero, spec.moritized);
    auto U = functor_u(random_rep(kind, P, t, 1 + rng() % 2, rng), B.system, B.algebra);
    auto mf = parse_module(format_module(U.module, spec, name), s.path());
    CHECK(mf.module == U.module);
    CHECK(mf.spec.with_zero == spec.with_zero);
    CHECK(mf.module.check().empty());

    MatrixProblem mp(kind, P, t);
    std::vector<size_t> d;
    for (size_t x = 0; x < mp.stripes(); ++x) d.push_back(rng() % 3);
    auto M = random_matrix_rep(mp, rng() % 3, d, rng);
    CHECK(parse_matrep(format_matrep(mp, M, name), s.path()).rep == M);
  }
}

TEST_CASE("file errors carry the offending line") {
  Scratch s;
  EquippedPoset P(2);
  P.add_point("a", 1);
  std::string name = s.poset("one.poset", P, TowerConfig{2, TowerCase::separable, 3, 2});
  std::string dir = s.path();
  CHECK(error_line([&] { parse_rep("corep over " + name + "\nV 1\nsub a\n1 2\n", dir); }) == 4);
  CHECK(error_line([&] { parse_rep("corep over " + name + "\nV 1\nsub b\n", dir); }) == 3);
  CHECK(error_line([&] { parse_rep("corep over " + name + "\n# comment\nV 1\nr\n", dir); }) == 4);
  CHECK(error_line([&] { parse_rep("corep over missing.poset\n", dir); }) == 1);
  CHECK(error_line([&] { parse_matrep("matrep corep over " + name + "\ndim 0 1\ndim a 1\nstripe a\nq\n", dir); }) == 5);
  CHECK(error_line([&] { parse_module("module over " + name + "\nsystem corep extend sideways\n", dir); }) == 2);
  std::ofstream(s.dir / "bad.poset") << "p 2\ncase separable 3 2\npoint a 1\npoint b 1\npoint c 1\nrel a b 2\nrel b c 2\nrel a c 1\n";
  try {
    load_poset((s.dir / "bad.poset").string());
    FAIL("expected an axiom violation");
  } catch (const AxiomViolation& e) {
    CHECK(std::string(e.what()).rfind("line 8: ", 0) == 0);
  }
}
