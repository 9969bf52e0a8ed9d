#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirackit/compat.hpp"

namespace dirackit::dsl {

using Json = nlohmann::json;

// expression AST; '^' is wedge on fields and integer power on scalars
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, ImagUnit, Name, CoordVec, Diff, Neg, Add, Sub, Mul, Div, Wedge };

  Kind kind;
  Rational value;    // Number
  std::string name;  // Name, CoordVec
  ExprPtr lhs, rhs;  // Neg uses lhs only; Diff wraps its argument in lhs
  int line = 0, col = 0;
};

bool sameExpr(const ExprPtr& a, const ExprPtr& b);

struct ManifoldDecl {
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  bool complexField = false;

  bool operator==(const ManifoldDecl& o) const {
    return name == o.name && dim == o.dim && coords == o.coords && complexField == o.complexField;
  }
};

struct Binding {
  std::string kind;  // vectorfield oneform twoform bivector endo section frame map
  std::string name;
  ExprPtr expr;                      // single-expression kinds
  std::vector<ExprPtr> list;         // frame elements or map components
  std::string mapSrc, mapTgt;        // map only
  int line = 0, col = 0;

  bool operator==(const Binding& o) const;
};

struct Command {
  std::string op;
  std::vector<std::string> args;
  std::vector<std::vector<Rational>> points;  // tuples after "at"
  int line = 0, col = 0;

  bool operator==(const Command& o) const {
    return op == o.op && args == o.args && points == o.points;
  }
};

struct Document {
  std::vector<ManifoldDecl> manifolds;
  std::vector<Binding> bindings;
  std::vector<Command> commands;

  bool operator==(const Document& o) const {
    return manifolds == o.manifolds && bindings == o.bindings && commands == o.commands;
  }
};

// SyntaxError messages carry "line:col"
Document parseDocument(const std::string& text);

// canonical pretty-print; parseDocument(renderDocument(d)) == d
std::string renderDocument(const Document& d);
std::string renderCommand(const Command& c);

// one report object per command; keys are canonically sorted by the writer
Json executeCommand(const Document& d, const Command& cmd);

// {"reports": [...]}; execution stops at the first thrown error
Json executeDocument(const Document& d);

bool allAssertionsHold(const Json& run);
std::string renderText(const Json& run);

}  // namespace dirackit::dsl
