// Batch front end: parse files, run validations and constructions, decide
// equivalence of matrix representations, run the acceptance suites.
//
// Exit codes: 0 ok, 1 negative answer, 2 unknown, 3 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eqposet/acceptance.hpp"
#include "eqposet/ditalgebra.hpp"
#include "eqposet/error.hpp"
#include "eqposet/io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace eqp;

namespace {

enum Exit { kOk = 0, kNo = 1, kUnknown = 2, kInput = 3 };

// Raised for bad input; the message already names the file.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered key: value pairs.  A repeated key becomes a JSON array; a value
// with newlines is printed as an indented block.
class Report {
 public:
  void add(const std::string& key, const std::string& value) { e_.emplace_back(key, value); }
  void add(const std::string& key, size_t value) { add(key, std::to_string(value)); }
  void flag(const std::string& key, bool value) { add(key, value ? "yes" : "no"); }

  std::string text() const {
    std::ostringstream os;
    for (const auto& [k, v] : e_) {
      if (v.find('\n') == std::string::npos) {
        os << k << ": " << v << "\n";
        continue;
      }
      os << k << ":\n";
      std::istringstream is(v);
      std::string line;
      while (std::getline(is, line)) os << "  " << line << "\n";
    }
    return os.str();
  }

  std::string json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e_) {
      if (!j.contains(k)) {
        j[k] = v;
      } else {
        if (!j[k].is_array()) j[k] = nlohmann::ordered_json::array({j[k]});
        j[k].push_back(v);
      }
    }
    return j.dump(2) + "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> e_;
};

template <class F>
auto loading(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string dir_of(const std::string& path) { return fs::path(path).parent_path().string(); }

// The poset path as seen from the directory of 'output'.
std::string rebase(const std::string& written, const std::string& input, const std::string& output) {
  fs::path p(written);
  if (p.is_relative()) p = fs::path(dir_of(input)) / p;
  fs::path from = fs::absolute(output).parent_path();
  return fs::absolute(p).lexically_normal().lexically_relative(from.lexically_normal()).generic_string();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << body;
}

std::string first_keyword(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string w;
    if (is >> w) return w;
  }
  return "";
}

std::string tower_str(const TowerConfig& c) {
  return c.kind == TowerCase::separable ? "separable " + std::to_string(c.q0) + " " + std::to_string(c.q) : "inseparable";
}

std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& n : v) s += (s.empty() ? "" : " ") + n;
  return s;
}

// ---- subcommands; each fills the report and returns the exit code

int rep_check(const std::string& path, Report& r) {
  RepFile f = loading(path, [&] { return load_rep(path); });
  const Representation& R = f.rep;
  r.add("file", path);
  r.add("kind", to_string(R.kind));
  r.add("poset", f.poset.path);
  r.add("points", R.poset.size());
  r.add("G-dimension", R.n);
  size_t p = R.tower.p();
  for (size_t x = 0; x < R.poset.size(); ++x)
    r.add("dim V_" + R.poset.name(x), R.kind == RepKind::rep ? std::to_string(R.sub[x].rows() / p) + " over G"
                                                              : std::to_string(R.sub[x].rows()) + " over F");
  auto bad = validate(R);
  r.flag("valid", bad.empty());
  for (const auto& b : bad) r.add("violation", b);
  return bad.empty() ? kOk : kNo;
}

int validate_cmd(const std::string& path, Report& r) {
  std::string kw = first_keyword(path);
  if (kw == "rep" || kw == "corep") return rep_check(path, r);
  if (kw == "module") {
    ModuleFile f = loading(path, [&] { return load_module(path); });
    r.add("file", path);
    r.add("kind", "module");
    r.add("poset", f.poset.path);
    r.add("dim", f.module.dim());
    auto bad = f.module.check();
    r.flag("valid", bad.empty());
    for (const auto& b : bad) r.add("violation", b);
    return bad.empty() ? kOk : kNo;
  }
  if (kw == "matrep") {
    MatrepFile f = loading(path, [&] { return load_matrep(path); });
    MatrixProblem mp(f.rep.mode, f.poset.poset, f.poset.tower);
    r.add("file", path);
    r.add("kind", "matrep " + to_string(f.rep.mode));
    r.add("poset", f.poset.path);
    r.add("stripes", mp.stripes());
    auto bad = validate(mp, f.rep);
    r.flag("valid", bad.empty());
    for (const auto& b : bad) r.add("violation", b);
    return bad.empty() ? kOk : kNo;
  }
  PosetFile f = loading(path, [&] { return load_poset(path); });
  r.add("file", path);
  r.add("kind", f.gamma ? "generalized poset" : "poset");
  r.add("p", std::to_string(f.poset.p()));
  r.add("tower", f.tower ? tower_str(*f.tower) : "none");
  r.add("points", join_names(f.poset.names()));
  std::vector<std::string> strong;
  size_t rels = 0;
  for (size_t x = 0; x < f.poset.size(); ++x) {
    if (f.poset.strong(x)) strong.push_back(f.poset.name(x));
    for (size_t y = 0; y < f.poset.size(); ++y) rels += f.poset.less(x, y);
  }
  r.add("strong points", strong.empty() ? "none" : join_names(strong));
  r.add("relations", rels);
  r.flag("valid", true);
  return kOk;
}

PosetRef poset_with_tower(const std::string& path) {
  return loading(path, [&] {
    PosetFile f = load_poset(path);
    if (f.gamma) throw Error("generalized equipment is not supported here");
    if (!f.tower) throw Error("no 'case' line; a tower is needed");
    return PosetRef{path, f.poset, Tower(*f.tower)};
  });
}

int algebra_cmd(const std::string& path, const std::string& system, const std::string& extend, bool moritized, Report& r) {
  PosetRef pr = poset_with_tower(path);
  bool both = extend == "both";
  EquippedPoset E = pr.poset.extend(both ? EquippedPoset::Extend::both : EquippedPoset::Extend::max);
  MultSystem S = system == "Q" ? build_Q(E, pr.tower) : build_T(E, pr.tower);
  if (moritized) S = moritize(S);
  AlgebraPtr A = IncidenceAlgebra::from_system(S);
  r.add("poset", path);
  r.add("system", system);
  r.add("extend", extend);
  r.flag("moritized", moritized);
  std::vector<std::string> names;
  for (size_t i = 0; i < A->points(); ++i) names.push_back(A->name(i));
  r.add("points", join_names(names));
  r.add("dim", A->dim());
  for (size_t i = 0; i < A->points(); ++i) r.add("dim e_" + A->name(i) + "L", mod::projective(A, i).dim());
  auto adm = S.check_admissible();
  r.flag("admissible", adm.empty());
  for (const auto& a : adm) r.add("admissibility failure", a);
  size_t m = *A->find("m");
  auto flags = peak_checks(A, m, both ? A->find("0") : std::nullopt);
  r.flag("right peak", flags.right_peak);
  if (both) r.flag("left peak", flags.left_peak);
  r.flag("1-Gorenstein", one_gorenstein(A));
  return kOk;
}

Representation valid_rep(const std::string& path, RepFile& f) {
  f = loading(path, [&] { return load_rep(path); });
  auto bad = validate(f.rep);
  if (!bad.empty()) throw InputError(path + ": invalid " + to_string(f.rep.kind) + ": " + bad.front());
  return f.rep;
}

int u_cmd(const std::string& path, const std::string& out, const std::string& extend, bool moritized, Report& r) {
  RepFile f;
  Representation R = valid_rep(path, f);
  ModuleSpec spec{R.kind, moritized && R.kind == RepKind::rep, extend == "both"};
  auto B = system_for(R.kind, R.poset, R.tower, spec.with_zero, spec.moritized);
  UModule U = functor_u(R, B.system, B.algebra);
  write_file(out, format_module(U.module, spec, rebase(f.poset.path, path, out)));
  r.add("input", path);
  r.add("output", out);
  r.add("system", std::string(R.kind == RepKind::corep ? "Q" : "T") + (spec.moritized ? " moritized" : ""));
  r.add("extend", extend);
  for (size_t i = 0; i < B.algebra->points(); ++i) r.add("dim " + B.algebra->name(i), U.module.dim(i));
  r.add("dim", U.module.dim());
  return kOk;
}

int extract_cmd(const std::string& path, const std::string& out, Report& r) {
  RepFile f;
  Representation R = valid_rep(path, f);
  MatrixProblem mp(R.kind, R.poset, R.tower);
  MatrixRep M = extract_matrix_rep(mp, R);
  write_file(out, format_matrep(mp, M, rebase(f.poset.path, path, out)));
  r.add("input", path);
  r.add("output", out);
  r.add("mode", to_string(M.mode));
  r.add("dim 0", M.d0);
  for (size_t x = 0; x < mp.stripes(); ++x) r.add("dim " + mp.stripe_name(x), M.d[x]);
  return kOk;
}

int equiv_cmd(const std::string& a, const std::string& b, u64 budget, u64 seed, const std::string& out, Report& r) {
  MatrepFile fa = loading(a, [&] { return load_matrep(a); });
  MatrepFile fb = loading(b, [&] { return load_matrep(b); });
  if (fa.rep.mode != fb.rep.mode) throw InputError(b + ": mode " + to_string(fb.rep.mode) + " differs from " + to_string(fa.rep.mode));
  if (!(fa.poset.poset == fb.poset.poset) || !(fa.poset.tower.config() == fb.poset.tower.config()))
    throw InputError(b + ": poset or tower differs from that of " + a);
  MatrixProblem mp(fa.rep.mode, fa.poset.poset, fa.poset.tower);
  for (const auto* f : {&fa, &fb}) {
    auto bad = validate(mp, f->rep);
    if (!bad.empty()) throw InputError((f == &fa ? a : b) + ": " + bad.front());
  }
  EquivResult res = is_equivalent(mp, fa.rep, fb.rep, budget, seed);
  std::string answer = res.answer == mod::Answer::yes ? "YES" : res.answer == mod::Answer::no ? "NO" : "UNKNOWN";
  r.add("answer", answer);
  if (res.answer == mod::Answer::yes && res.witness) {
    r.add("maps", b + " -> " + a);
    r.flag("witness verified", apply_transform(mp, *res.witness, fb.rep) == fa.rep);
    std::string w = format_transform(mp, *res.witness, out.empty() ? fa.poset.path : rebase(fa.poset.path, a, out));
    if (out.empty()) {
      r.add("witness", w);
    } else {
      write_file(out, w);
      r.add("witness", out);
    }
  }
  if (!res.certificate.empty()) r.add("certificate", res.certificate);
  return res.answer == mod::Answer::yes ? kOk : res.answer == mod::Answer::no ? kNo : kUnknown;
}

int dit_verify(const std::string& path, Report& r) {
  PosetRef pr = poset_with_tower(path);
  bool ok = true;
  auto verdict = [&](const std::string& key, const std::vector<std::string>& failures) {
    r.add(key, failures.empty() ? "ok" : failures.front());
    ok = ok && failures.empty();
  };
  auto both = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  r.add("poset", path);
  auto B = dit::poset_biquiver(pr.tower.ch(), pr.poset);
  r.add("biquiver generators", B.generators());
  verdict("biquiver d^2", both(B.validate(), B.d_squared_failures()));
  for (RepKind kind : {RepKind::corep, RepKind::rep}) {
    std::string k = to_string(kind);
    auto A = system_for(kind, pr.poset, pr.tower, true, true).algebra;
    auto H = dit::hom_dual(A);
    r.add("hom dual (" + k + ") generators", H.dit.generators());
    verdict("hom dual (" + k + ") d^2", both(H.dit.validate(), H.dit.d_squared_failures()));
    std::vector<std::string> coassoc;
    for (size_t g = 0; g < H.star.gen_count(); ++g) {
      dit::Element m = dit::mu(H, H.star.gen(g));
      if (!(dit::mu_left(H, m) == dit::mu_right(H, m))) coassoc.push_back("fails on generator " + std::to_string(g));
    }
    verdict("hom dual (" + k + ") coassociativity", coassoc);
    auto Dz = dit::drozd(A);
    r.add("drozd (" + k + ") generators", Dz.dit.generators());
    verdict("drozd (" + k + ") d^2", both(Dz.dit.validate(), Dz.dit.d_squared_failures()));
    auto E = dit::restrict_idempotent(Dz, *A->find("0"));
    verdict("corner (" + k + ") d^2", both(E.dit.validate(), E.dit.d_squared_failures()));
  }
  r.flag("all ok", ok);
  return ok ? kOk : kNo;
}

int selftest(u64 seed, const std::vector<int>& suites, bool json, std::string& out) {
  std::vector<acceptance::SuiteResult> results;
  std::vector<int> ids = suites;
  if (ids.empty())
    for (int k = 1; k <= acceptance::kSuites; ++k) ids.push_back(k);
  bool all = true;
  for (int id : ids) {
    results.push_back(acceptance::run_suite(id, seed));
    all = all && results.back().pass();
  }
  if (!json) {
    out = acceptance::selftest_report(results, seed);
  } else {
    nlohmann::ordered_json j;
    j["seed"] = std::to_string(seed);
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& s : results) {
      nlohmann::ordered_json e;
      e["suite"] = std::to_string(s.id);
      e["title"] = s.title;
      e["instances"] = std::to_string(s.instances);
      e["checks"] = std::to_string(s.checks);
      e["failures"] = std::to_string(s.failures);
      if (!s.notes.empty()) e["failure"] = s.notes;
      e["result"] = s.pass() ? "pass" : "fail";
      j["suites"].push_back(e);
    }
    j["overall"] = all ? "pass" : "fail";
    out = j.dump(2) + "\n";
  }
  return all ? kOk : kNo;
}

// EQPOSET_THREADS caps the worker count; every command runs one worker.
void check_thread_cap() {
  const char* v = std::getenv("EQPOSET_THREADS");
  if (!v) return;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (end == v || *end || n < 1) throw InputError("EQPOSET_THREADS must be a positive integer, found '" + std::string(v) + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equipped posets: validation, algebras, representations and matrix problems"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output with the same keys");

  std::string file, file2, out, system = "T", extend = "max";
  bool moritize = false;
  u64 budget = 200000, seed = 1;
  std::vector<int> suites;

  auto* validate = app.add_subcommand("validate", "Check a poset, rep, module or matrep file");
  validate->add_option("file", file)->required();
  auto* algebra = app.add_subcommand("algebra", "Build the incidence algebra of a poset and report its properties");
  algebra->add_option("poset", file)->required();
  algebra->add_flag("--moritize", moritize, "Moritize the system");
  algebra->add_option("--extend", extend, "Extension points: max or both")->check(CLI::IsMember({"max", "both"}));
  algebra->add_option("--system", system, "Q or T")->check(CLI::IsMember({"Q", "T"}));
  auto* repcheck = app.add_subcommand("rep-check", "Validate a representation file");
  repcheck->add_option("rep", file)->required();
  auto* u = app.add_subcommand("u", "Write the module u(R)");
  u->add_option("rep", file)->required();
  u->add_option("-o", out, "Output module file")->required();
  u->add_flag("--moritize", moritize, "Use the moritized system (representations)");
  u->add_option("--extend", extend, "Extension points: max or both")->check(CLI::IsMember({"max", "both"}));
  auto* extract = app.add_subcommand("extract", "Write the matrix representation of R");
  extract->add_option("rep", file)->required();
  extract->add_option("-o", out, "Output matrep file")->required();
  auto* equiv = app.add_subcommand("equiv", "Decide whether two matrix representations are equivalent");
  equiv->add_option("A", file)->required();
  equiv->add_option("B", file2)->required();
  equiv->add_option("--budget", budget, "Candidate budget of the search");
  equiv->add_option("--seed", seed, "Seed of the randomized search");
  equiv->add_option("-o", out, "Write the witness transformation here");
  auto* ditv = app.add_subcommand("dit-verify", "Check d^2 = 0 for the ditalgebras of a poset");
  ditv->add_option("poset", file)->required();
  auto* self = app.add_subcommand("selftest", "Run the acceptance suites");
  self->add_option("--seed", seed, "Seed of the suites");
  self->add_option("--suite", suites, "Run only these suites")->check(CLI::Range(1, acceptance::kSuites));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  Report r;
  int code = kOk;
  try {
    check_thread_cap();
    if (*validate) code = validate_cmd(file, r);
    if (*algebra) code = algebra_cmd(file, system, extend, moritize, r);
    if (*repcheck) code = rep_check(file, r);
    if (*u) code = u_cmd(file, out, extend, moritize, r);
    if (*extract) code = extract_cmd(file, out, r);
    if (*equiv) code = equiv_cmd(file, file2, budget, seed, out, r);
    if (*ditv) code = dit_verify(file, r);
    if (*self) {
      std::string text;
      code = selftest(seed, suites, json, text);
      std::cout << text;
      return code;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return kInput;
  }
  std::cout << (json ? r.json() : r.text());
  return code;
}
