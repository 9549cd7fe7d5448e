#pragma once

// Line-oriented text files for representations, modules, matrix
// representations and transformations.  Each file names its poset file on the
// header line; a relative poset path is resolved against the directory of the
// file that mentions it.  '#' starts a comment.  Scalars of F use the base
// syntax of the tower, elements of G the extension syntax.

#include <string>

#include "eqposet/matrix_problem.hpp"

namespace eqp {

// The poset file behind a header, with its tower.
struct PosetRef {
  std::string path;  // as written in the header
  EquippedPoset poset;
  Tower tower{TowerConfig{}};
};
PosetRef load_poset_ref(const std::string& path, const std::string& base_dir, int line);

// "rep|corep over <poset>", "V <n>", an optional "r" line followed by pn rows
// of pn scalars (default: the standard operator), then "sub <x>" followed by
// rows of n elements of G.  The rows span V_x over F for corepresentations
// and over G for representations.  Points without a sub block get V_x = 0.
// The object is not validated.
struct RepFile {
  PosetRef poset;
  Representation rep;
};
RepFile parse_rep(const std::string& text, const std::string& base_dir);
RepFile load_rep(const std::string& path);
std::string format_rep(const Representation& R, const std::string& poset_path);

// "module over <poset>", "system corep|rep [moritized] extend max|both",
// "dim <point> <d>" and "act <i> <j> <k>" followed by d_i rows of d_j
// scalars: the action of the k-th basis element of e_iΛe_j.  Missing act
// blocks are zero.
struct ModuleSpec {
  RepKind kind = RepKind::corep;
  bool moritized = false;
  bool with_zero = false;
};
struct ModuleFile {
  PosetRef poset;
  ModuleSpec spec;
  LambdaModule module;
};
ModuleFile parse_module(const std::string& text, const std::string& base_dir);
ModuleFile load_module(const std::string& path);
std::string format_module(const LambdaModule& M, const ModuleSpec& spec, const std::string& poset_path);

// "matrep <mode> over <poset>", "dim 0 <d0>" and "dim <x> <d_x>" for every
// stripe, then "stripe <x>" followed by d0 rows of d_x elements of G.
struct MatrepFile {
  PosetRef poset;
  MatrixRep rep;
};
MatrepFile parse_matrep(const std::string& text, const std::string& base_dir);
MatrepFile load_matrep(const std::string& path);
std::string format_matrep(const MatrixProblem& mp, const MatrixRep& M, const std::string& poset_path);

// "transform <mode> over <poset>", "t0", "tx <x>" and "cross <y> <x> <i>",
// each followed by its rows.
std::string format_transform(const MatrixProblem& mp, const Transformation& T, const std::string& poset_path);

}  // namespace eqp
