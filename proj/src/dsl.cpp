#include "dirackit/dsl.hpp"

#include <cctype>
#include <sstream>

namespace dirackit::dsl {

namespace {

// ---------------------------------------------------------------- tokenizer

struct Tok {
  enum class K { Ident, Int, Sym, End };
  K k = K::End;
  std::string s;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Tok& peek() const { return tok_; }

  Tok take() {
    Tok t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = Tok{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.k = Tok::K::End;
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_.k = Tok::K::Ident;
      tok_.s = text_.substr(start, pos_ - start);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_.k = Tok::K::Int;
      tok_.s = text_.substr(start, pos_ - start);
    } else {
      tok_.k = Tok::K::Sym;
      if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        tok_.s = "->";
        pos_ += 2;
      } else {
        tok_.s = std::string(1, c);
        ++pos_;
      }
    }
    col_ += static_cast<int>(pos_ - (tok_.k == Tok::K::End ? pos_ : 0));
    col_ = tok_.col + static_cast<int>(tok_.s.size());
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Tok tok_;
};

[[noreturn]] void fail(const Tok& t, const std::string& msg) {
  std::ostringstream os;
  os << t.line << ":" << t.col << ": " << msg;
  if (t.k != Tok::K::End) os << " (got '" << t.s << "')";
  throw SyntaxError(os.str());
}

// ------------------------------------------------------------------ parser

const std::vector<std::string> kBindingKinds = {
    "vectorfield", "oneform", "twoform", "bivector", "endo", "section", "frame", "map"};

const std::vector<std::string> kCommands = {
    "check-dirac", "star",       "costar",      "concur",           "pair-torsion",
    "pomega",      "transverse", "gcs",         "involutive",       "probe-smooth",
    "probe-pushforward",         "normal-form", "eval-at"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  Document document() {
    Document d;
    while (lx_.peek().k != Tok::K::End) {
      Tok t = lx_.peek();
      if (t.k != Tok::K::Ident) fail(t, "expected statement keyword");
      if (t.s == "manifold") {
        d.manifolds.push_back(manifold());
      } else if (contains(kBindingKinds, t.s)) {
        d.bindings.push_back(binding());
      } else {
        d.commands.push_back(command());
      }
    }
    return d;
  }

 private:
  Tok expect(Tok::K k, const std::string& what) {
    if (lx_.peek().k != k) fail(lx_.peek(), "expected " + what);
    return lx_.take();
  }

  void expectSym(const std::string& s) {
    if (lx_.peek().k != Tok::K::Sym || lx_.peek().s != s)
      fail(lx_.peek(), "expected '" + s + "'");
    lx_.take();
  }

  bool peekSym(const std::string& s) {
    return lx_.peek().k == Tok::K::Sym && lx_.peek().s == s;
  }

  ManifoldDecl manifold() {
    lx_.take();  // manifold
    ManifoldDecl m;
    m.name = expect(Tok::K::Ident, "manifold name").s;
    if (expect(Tok::K::Ident, "'dim'").s != "dim") fail(lx_.peek(), "expected 'dim'");
    m.dim = std::stoi(expect(Tok::K::Int, "dimension").s);
    if (expect(Tok::K::Ident, "'coords'").s != "coords") fail(lx_.peek(), "expected 'coords'");
    while (lx_.peek().k == Tok::K::Ident && lx_.peek().s != "field") {
      m.coords.push_back(lx_.take().s);
    }
    if (lx_.peek().k == Tok::K::Ident && lx_.peek().s == "field") {
      lx_.take();
      Tok f = expect(Tok::K::Ident, "'real' or 'complex'");
      if (f.s == "complex") {
        m.complexField = true;
      } else if (f.s != "real") {
        fail(f, "expected 'real' or 'complex'");
      }
    }
    if (static_cast<int>(m.coords.size()) != m.dim)
      fail(lx_.peek(), "coordinate count differs from dim");
    expectSym(";");
    return m;
  }

  Binding binding() {
    Tok kind = lx_.take();
    Binding b;
    b.kind = kind.s;
    b.line = kind.line;
    b.col = kind.col;
    b.name = expect(Tok::K::Ident, "binding name").s;
    if (b.kind == "map") {
      expectSym(":");
      b.mapSrc = expect(Tok::K::Ident, "source manifold").s;
      expectSym("->");
      b.mapTgt = expect(Tok::K::Ident, "target manifold").s;
      expectSym("=");
      expectSym("(");
      b.list.push_back(expr());
      while (peekSym(",")) {
        lx_.take();
        b.list.push_back(expr());
      }
      expectSym(")");
    } else if (b.kind == "frame") {
      expectSym("=");
      expectSym("[");
      b.list.push_back(expr());
      while (peekSym(",")) {
        lx_.take();
        b.list.push_back(expr());
      }
      expectSym("]");
    } else {
      expectSym("=");
      b.expr = expr();
    }
    expectSym(";");
    return b;
  }

  Command command() {
    Tok t = lx_.take();
    Command c;
    c.line = t.line;
    c.col = t.col;
    c.op = t.s;
    // hyphenated command names arrive as IDENT '-' IDENT
    while (peekSym("-") && !contains(kCommands, c.op)) {
      lx_.take();
      c.op += "-" + expect(Tok::K::Ident, "command name").s;
    }
    if (!contains(kCommands, c.op)) fail(t, "unknown command '" + c.op + "'");
    while (lx_.peek().k == Tok::K::Ident && lx_.peek().s != "at") c.args.push_back(lx_.take().s);
    if (lx_.peek().k == Tok::K::Ident && lx_.peek().s == "at") {
      lx_.take();
      do {
        expectSym("(");
        std::vector<Rational> pt;
        pt.push_back(signedRational());
        while (peekSym(",")) {
          lx_.take();
          pt.push_back(signedRational());
        }
        expectSym(")");
        c.points.push_back(std::move(pt));
      } while (peekSym("("));
    }
    expectSym(";");
    return c;
  }

  Rational signedRational() {
    bool neg = false;
    if (peekSym("-")) {
      lx_.take();
      neg = true;
    }
    Rational n(expect(Tok::K::Int, "number").s);
    if (peekSym("/")) {
      lx_.take();
      Rational den(expect(Tok::K::Int, "denominator").s);
      if (den == 0) fail(lx_.peek(), "zero denominator");
      n /= den;
    }
    return neg ? Rational(-n) : n;
  }

  ExprPtr mk(Expr e) {
    e.line = lx_.peek().line;
    e.col = lx_.peek().col;
    return std::make_shared<Expr>(std::move(e));
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (peekSym("+") || peekSym("-")) {
      bool plus = lx_.take().s == "+";
      ExprPtr r = term();
      Expr n;
      n.kind = plus ? Expr::Kind::Add : Expr::Kind::Sub;
      n.lhs = e;
      n.rhs = r;
      e = mk(std::move(n));
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (peekSym("*") || peekSym("/")) {
      bool mul = lx_.take().s == "*";
      ExprPtr r = factor();
      Expr n;
      n.kind = mul ? Expr::Kind::Mul : Expr::Kind::Div;
      n.lhs = e;
      n.rhs = r;
      e = mk(std::move(n));
    }
    return e;
  }

  ExprPtr factor() {
    ExprPtr e = unary();
    while (peekSym("^")) {
      lx_.take();
      ExprPtr r = unary();
      Expr n;
      n.kind = Expr::Kind::Wedge;
      n.lhs = e;
      n.rhs = r;
      e = mk(std::move(n));
    }
    return e;
  }

  ExprPtr unary() {
    if (peekSym("-")) {
      lx_.take();
      Expr n;
      n.kind = Expr::Kind::Neg;
      n.lhs = unary();
      return mk(std::move(n));
    }
    return atom();
  }

  ExprPtr atom() {
    Tok t = lx_.peek();
    if (t.k == Tok::K::Int) {
      lx_.take();
      Expr n;
      n.kind = Expr::Kind::Number;
      n.value = Rational(t.s);
      return mk(std::move(n));
    }
    if (peekSym("@")) {
      lx_.take();
      Expr n;
      n.kind = Expr::Kind::CoordVec;
      n.name = expect(Tok::K::Ident, "coordinate name").s;
      return mk(std::move(n));
    }
    if (peekSym("(")) {
      lx_.take();
      ExprPtr e = expr();
      expectSym(")");
      return e;
    }
    if (t.k == Tok::K::Ident) {
      lx_.take();
      if (t.s == "i") {
        Expr n;
        n.kind = Expr::Kind::ImagUnit;
        return mk(std::move(n));
      }
      if (t.s == "d" && peekSym("(")) {
        lx_.take();
        Expr n;
        n.kind = Expr::Kind::Diff;
        n.lhs = expr();
        expectSym(")");
        return mk(std::move(n));
      }
      Expr n;
      n.kind = Expr::Kind::Name;
      n.name = t.s;
      return mk(std::move(n));
    }
    fail(t, "expected expression atom");
  }

  Lexer lx_;
};

// ---------------------------------------------------------------- renderer

int precOf(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Wedge:
      return 3;
    default:
      return 9;
  }
}

std::string opOf(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
      return "+";
    case Expr::Kind::Sub:
      return "-";
    case Expr::Kind::Mul:
      return "*";
    case Expr::Kind::Div:
      return "/";
    default:
      return "^";
  }
}

std::string renderExpr(const ExprPtr& e, int parent) {
  switch (e->kind) {
    case Expr::Kind::Number:
      return e->value.str();
    case Expr::Kind::ImagUnit:
      return "i";
    case Expr::Kind::Name:
      return e->name;
    case Expr::Kind::CoordVec:
      return "@" + e->name;
    case Expr::Kind::Diff:
      return "d(" + renderExpr(e->lhs, 0) + ")";
    case Expr::Kind::Neg: {
      std::string inner = renderExpr(e->lhs, 9);
      if (precOf(e->lhs->kind) < 9) inner = "(" + inner + ")";
      return "-" + inner;
    }
    default: {
      int p = precOf(e->kind);
      std::string s =
          renderExpr(e->lhs, p) + " " + opOf(e->kind) + " " + renderExpr(e->rhs, p + 1);
      if (p < parent) s = "(" + s + ")";
      return s;
    }
  }
}

}  // namespace

bool sameExpr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Number:
      return a->value == b->value;
    case Expr::Kind::ImagUnit:
      return true;
    case Expr::Kind::Name:
    case Expr::Kind::CoordVec:
      return a->name == b->name;
    case Expr::Kind::Diff:
    case Expr::Kind::Neg:
      return sameExpr(a->lhs, b->lhs);
    default:
      return sameExpr(a->lhs, b->lhs) && sameExpr(a->rhs, b->rhs);
  }
}

bool Binding::operator==(const Binding& o) const {
  if (kind != o.kind || name != o.name || mapSrc != o.mapSrc || mapTgt != o.mapTgt) return false;
  if (!sameExpr(expr, o.expr)) return false;
  if (list.size() != o.list.size()) return false;
  for (size_t i = 0; i < list.size(); ++i)
    if (!sameExpr(list[i], o.list[i])) return false;
  return true;
}

Document parseDocument(const std::string& text) { return Parser(text).document(); }

std::string renderCommand(const Command& c) {
  std::string s = c.op;
  for (const auto& a : c.args) s += " " + a;
  if (!c.points.empty()) {
    s += " at";
    for (const auto& pt : c.points) {
      s += " (";
      for (size_t i = 0; i < pt.size(); ++i) s += (i ? ", " : "") + pt[i].str();
      s += ")";
    }
  }
  return s + ";";
}

std::string renderDocument(const Document& d) {
  std::ostringstream os;
  for (const auto& m : d.manifolds) {
    os << "manifold " << m.name << " dim " << m.dim << " coords";
    for (const auto& c : m.coords) os << " " << c;
    if (m.complexField) os << " field complex";
    os << ";\n";
  }
  for (const auto& b : d.bindings) {
    os << b.kind << " " << b.name;
    if (b.kind == "map") {
      os << " : " << b.mapSrc << " -> " << b.mapTgt << " = (";
      for (size_t i = 0; i < b.list.size(); ++i)
        os << (i ? ", " : "") << renderExpr(b.list[i], 0);
      os << ")";
    } else if (b.kind == "frame") {
      os << " = [";
      for (size_t i = 0; i < b.list.size(); ++i)
        os << (i ? ", " : "") << renderExpr(b.list[i], 0);
      os << "]";
    } else {
      os << " = " << renderExpr(b.expr, 0);
    }
    os << ";\n";
  }
  for (const auto& c : d.commands) os << renderCommand(c) << "\n";
  return os.str();
}

// --------------------------------------------------------------- evaluator

namespace {

struct TypedValue {
  enum class T { Scalar, Vec, Form, Two, Biv, Endo, Sec, Three };
  T t = T::Scalar;
  RatFn f;
  VecField v;
  OneForm w;
  TwoForm tf;
  Bivector bv;
  Endo en;
  GenSec sec;
  ThreeTensor three;
  bool threeIsForm = false;
  ChartPtr chart;  // null for chart-free scalars
};

ChartPtr unifyChart(const ChartPtr& a, const ChartPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (!sameChart(a, b)) throw ChartMismatch("expression mixes charts");
  return a;
}

std::string typeName(TypedValue::T t) {
  switch (t) {
    case TypedValue::T::Scalar: return "scalar";
    case TypedValue::T::Vec: return "vectorfield";
    case TypedValue::T::Form: return "oneform";
    case TypedValue::T::Two: return "twoform";
    case TypedValue::T::Biv: return "bivector";
    case TypedValue::T::Endo: return "endo";
    case TypedValue::T::Sec: return "section";
    default: return "threetensor";
  }
}

struct Env {
  std::vector<ChartPtr> charts;
  std::map<std::string, std::pair<ChartPtr, int>> coordOf;
  std::map<std::string, TypedValue> values;
  std::map<std::string, LagFrame> frames;
  std::map<std::string, PolyMap> maps;
};

GenSec toSec(const TypedValue& a) {
  switch (a.t) {
    case TypedValue::T::Sec:
      return a.sec;
    case TypedValue::T::Vec:
      return vecSec(a.v);
    case TypedValue::T::Form:
      return formSec(a.w);
    default:
      throw ArityError("value of type " + typeName(a.t) + " is not a section");
  }
}

TypedValue negValue(const TypedValue& a);

TypedValue addValues(const TypedValue& a, const TypedValue& b) {
  using T = TypedValue::T;
  auto secLike = [](T t) { return t == T::Sec || t == T::Vec || t == T::Form; };
  TypedValue r;
  r.chart = unifyChart(a.chart, b.chart);
  if (a.t == b.t) {
    r.t = a.t;
    switch (a.t) {
      case T::Scalar:
        r.f = a.f + b.f;
        return r;
      case T::Vec:
        r.v = add(a.v, b.v);
        return r;
      case T::Form:
        r.w = add(a.w, b.w);
        return r;
      case T::Two:
        r.tf = add(a.tf, b.tf);
        return r;
      case T::Biv:
        r.bv = add(a.bv, b.bv);
        return r;
      case T::Endo:
        requireSameChart(a.en.chart, b.en.chart);
        r.en = Endo{a.en.chart, a.en.m + b.en.m};
        return r;
      case T::Sec:
        r.sec = add(a.sec, b.sec);
        return r;
      case T::Three:
        if (a.threeIsForm != b.threeIsForm)
          throw ArityError("cannot add a three-form to a three-vector");
        r.three = add(a.three, b.three);
        r.threeIsForm = a.threeIsForm;
        return r;
    }
  }
  if (secLike(a.t) && secLike(b.t)) {
    r.t = T::Sec;
    r.sec = add(toSec(a), toSec(b));
    return r;
  }
  throw ArityError("cannot add " + typeName(a.t) + " and " + typeName(b.t));
}

TypedValue scaleValue(const RatFn& f, const TypedValue& a) {
  using T = TypedValue::T;
  TypedValue r = a;
  switch (a.t) {
    case T::Scalar:
      r.f = f * a.f;
      return r;
    case T::Vec:
      r.v = scale(f, a.v);
      return r;
    case T::Form:
      r.w = scale(f, a.w);
      return r;
    case T::Two:
      r.tf = scale(f, a.tf);
      return r;
    case T::Biv:
      r.bv = scale(f, a.bv);
      return r;
    case T::Endo: {
      MatF m = a.en.m;
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = f * m(i, j);
      r.en = Endo{a.en.chart, m};
      return r;
    }
    case T::Sec:
      r.sec = scale(f, a.sec);
      return r;
    case T::Three:
      r.three = scale(f, a.three);
      return r;
  }
  throw ArityError("unreachable");
}

TypedValue negValue(const TypedValue& a) { return scaleValue(RatFn(-1), a); }

TypedValue mulValues(const TypedValue& a, const TypedValue& b) {
  using T = TypedValue::T;
  if (a.t == T::Scalar && b.t == T::Scalar) {
    TypedValue r;
    r.t = T::Scalar;
    r.f = a.f * b.f;
    r.chart = unifyChart(a.chart, b.chart);
    return r;
  }
  if (a.t == T::Scalar) {
    TypedValue r = scaleValue(a.f, b);
    r.chart = unifyChart(a.chart, b.chart);
    return r;
  }
  if (b.t == T::Scalar) return mulValues(b, a);
  if (a.t == T::Vec && b.t == T::Form) {
    // dyad u (x) xi, acting on vectors as u * xi(v)
    TypedValue r;
    r.t = T::Endo;
    r.chart = unifyChart(a.chart, b.chart);
    r.en = Endo{r.chart, a.v.c * b.w.c.transpose()};
    return r;
  }
  throw ArityError("cannot multiply " + typeName(a.t) + " and " + typeName(b.t));
}

TypedValue divValues(const TypedValue& a, const TypedValue& b) {
  if (b.t != TypedValue::T::Scalar)
    throw ArityError("division requires a scalar divisor");
  if (b.f.isZero()) throw DivisionByZero("division by zero in expression");
  TypedValue r = scaleValue(b.f.inverse(), a);
  r.chart = unifyChart(a.chart, b.chart);
  return r;
}

TypedValue wedgeValues(const TypedValue& a, const TypedValue& b) {
  using T = TypedValue::T;
  TypedValue r;
  r.chart = unifyChart(a.chart, b.chart);
  if (a.t == T::Scalar && b.t == T::Scalar) {
    if (!b.f.isConstant()) throw ArityError("power exponent must be a constant integer");
    Scalar c = b.f.constantValue();
    if (!c.im().is_zero() || denominator(c.re()) != 1)
      throw ArityError("power exponent must be a constant integer");
    r.t = T::Scalar;
    r.f = a.f.pow(static_cast<int>(numerator(c.re())));
    return r;
  }
  if (a.t == T::Vec && b.t == T::Vec) {
    r.t = T::Biv;
    r.bv = wedge(a.v, b.v);
    return r;
  }
  if (a.t == T::Form && b.t == T::Form) {
    r.t = T::Two;
    r.tf = wedge(a.w, b.w);
    return r;
  }
  if (a.t == T::Biv && b.t == T::Vec) {
    r.t = T::Three;
    r.three = wedge(a.bv, b.v);
    r.threeIsForm = false;
    return r;
  }
  if (a.t == T::Vec && b.t == T::Biv) return wedgeValues(b, a);
  if (a.t == T::Two && b.t == T::Form) {
    r.t = T::Three;
    r.three = wedge(a.tf, b.w);
    r.threeIsForm = true;
    return r;
  }
  if (a.t == T::Form && b.t == T::Two) return wedgeValues(b, a);
  throw ArityError("cannot wedge " + typeName(a.t) + " and " + typeName(b.t));
}

TypedValue evalExpr(const Env& env, const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Number: {
      TypedValue r;
      r.f = RatFn(MultiPoly::constant(Scalar(e->value), 0));
      return r;
    }
    case K::ImagUnit: {
      TypedValue r;
      r.f = RatFn(MultiPoly::constant(Scalar::i(), 0));
      return r;
    }
    case K::Name: {
      auto v = env.values.find(e->name);
      if (v != env.values.end()) return v->second;
      auto c = env.coordOf.find(e->name);
      if (c != env.coordOf.end()) {
        TypedValue r;
        r.chart = c->second.first;
        r.f = RatFn::variable(c->second.second, r.chart->dim());
        return r;
      }
      throw UnknownName("unknown name '" + e->name + "'");
    }
    case K::CoordVec: {
      auto c = env.coordOf.find(e->name);
      if (c == env.coordOf.end()) throw UnknownName("unknown coordinate '" + e->name + "'");
      TypedValue r;
      r.t = TypedValue::T::Vec;
      r.chart = c->second.first;
      r.v = coordVec(r.chart, c->second.second);
      return r;
    }
    case K::Diff: {
      TypedValue a = evalExpr(env, e->lhs);
      TypedValue r;
      r.chart = a.chart;
      if (a.t == TypedValue::T::Scalar) {
        if (!a.chart) throw ArityError("d of a chart-free constant");
        r.t = TypedValue::T::Form;
        r.w = d(a.f, a.chart);
        return r;
      }
      if (a.t == TypedValue::T::Form) {
        r.t = TypedValue::T::Two;
        r.tf = d(a.w);
        return r;
      }
      throw ArityError("d applies to scalars and one-forms");
    }
    case K::Neg:
      return negValue(evalExpr(env, e->lhs));
    case K::Add:
      return addValues(evalExpr(env, e->lhs), evalExpr(env, e->rhs));
    case K::Sub:
      return addValues(evalExpr(env, e->lhs), negValue(evalExpr(env, e->rhs)));
    case K::Mul:
      return mulValues(evalExpr(env, e->lhs), evalExpr(env, e->rhs));
    case K::Div:
      return divValues(evalExpr(env, e->lhs), evalExpr(env, e->rhs));
    default:
      return wedgeValues(evalExpr(env, e->lhs), evalExpr(env, e->rhs));
  }
}

MultiPoly toPolynomial(const TypedValue& a, int nvars) {
  if (a.t != TypedValue::T::Scalar) throw ArityError("map components must be scalar");
  if (!a.f.isPolynomial()) throw ArityError("map components must be polynomial");
  MultiPoly p = a.f.num() + MultiPoly(nvars);
  return p;
}

Env buildEnv(const Document& doc) {
  Env env;
  std::map<std::string, ChartPtr> chartOf;
  for (const auto& m : doc.manifolds) {
    if (chartOf.count(m.name)) throw ArityError("duplicate manifold '" + m.name + "'");
    ChartPtr c = makeChart(m.name, m.coords, m.complexField);
    env.charts.push_back(c);
    chartOf[m.name] = c;
    for (int i = 0; i < c->dim(); ++i) {
      if (env.coordOf.count(m.coords[i]))
        throw ArityError("duplicate coordinate '" + m.coords[i] + "'");
      env.coordOf[m.coords[i]] = {c, i};
    }
  }
  for (const auto& b : doc.bindings) {
    if (env.values.count(b.name) || env.frames.count(b.name) || env.maps.count(b.name))
      throw ArityError("duplicate name '" + b.name + "'");
    if (b.kind == "frame") {
      if (b.list.size() == 1) {
        // a lone bivector or two-form names its graph
        TypedValue v = evalExpr(env, b.list[0]);
        if (v.t == TypedValue::T::Biv) {
          env.frames.emplace(b.name, graphOf(v.bv));
          continue;
        }
        if (v.t == TypedValue::T::Two) {
          env.frames.emplace(b.name, graphOf(v.tf));
          continue;
        }
      }
      std::vector<GenSec> secs;
      for (const auto& e : b.list) secs.push_back(toSec(evalExpr(env, e)));
      env.frames.emplace(b.name, frameFromSections(secs));
      continue;
    }
    if (b.kind == "map") {
      auto src = chartOf.find(b.mapSrc), tgt = chartOf.find(b.mapTgt);
      if (src == chartOf.end()) throw UnknownName("unknown manifold '" + b.mapSrc + "'");
      if (tgt == chartOf.end()) throw UnknownName("unknown manifold '" + b.mapTgt + "'");
      if (static_cast<int>(b.list.size()) != tgt->second->dim())
        throw ArityError("map component count differs from target dimension");
      PolyMap p;
      p.src = src->second;
      p.tgt = tgt->second;
      for (const auto& e : b.list) {
        TypedValue v = evalExpr(env, e);
        if (v.chart && !sameChart(v.chart, p.src))
          throw ChartMismatch("map component uses non-source coordinates");
        p.comps.push_back(toPolynomial(v, p.src->dim()));
      }
      env.maps.emplace(b.name, std::move(p));
      continue;
    }
    TypedValue v = evalExpr(env, b.expr);
    using T = TypedValue::T;
    auto want = [&](T t) {
      if (v.t != t)
        throw ArityError("binding '" + b.name + "' declared " + b.kind + " but evaluates to " +
                         typeName(v.t));
    };
    if (b.kind == "vectorfield") want(T::Vec);
    else if (b.kind == "oneform") want(T::Form);
    else if (b.kind == "twoform") want(T::Two);
    else if (b.kind == "bivector") want(T::Biv);
    else if (b.kind == "endo") want(T::Endo);
    else if (b.kind == "section") {
      GenSec s = toSec(v);
      v.t = T::Sec;
      v.sec = s;
    }
    env.values.emplace(b.name, std::move(v));
  }
  return env;
}

const TypedValue& lookup(const Env& env, const std::string& name) {
  auto it = env.values.find(name);
  if (it == env.values.end()) throw UnknownName("unknown name '" + name + "'");
  return it->second;
}

LagFrame getFrame(const Env& env, const std::string& name) {
  auto f = env.frames.find(name);
  if (f != env.frames.end()) return f->second;
  auto v = env.values.find(name);
  if (v != env.values.end()) {
    if (v->second.t == TypedValue::T::Biv) return graphOf(v->second.bv);
    if (v->second.t == TypedValue::T::Two) return graphOf(v->second.tf);
    throw ArityError("'" + name + "' does not denote a Lagrangian family");
  }
  if ((name == "TM" || name == "TstarM") && env.charts.size() == 1)
    return name == "TM" ? fullTangentFrame(env.charts[0]) : fullCotangentFrame(env.charts[0]);
  throw UnknownName("unknown name '" + name + "'");
}

const Bivector& getBivector(const Env& env, const std::string& name) {
  const TypedValue& v = lookup(env, name);
  if (v.t != TypedValue::T::Biv) throw ArityError("'" + name + "' is not a bivector");
  return v.bv;
}

const TwoForm& getTwoForm(const Env& env, const std::string& name) {
  const TypedValue& v = lookup(env, name);
  if (v.t != TypedValue::T::Two) throw ArityError("'" + name + "' is not a two-form");
  return v.tf;
}

const OneForm& getOneForm(const Env& env, const std::string& name) {
  const TypedValue& v = lookup(env, name);
  if (v.t != TypedValue::T::Form) throw ArityError("'" + name + "' is not a one-form");
  return v.w;
}

const Endo& getEndo(const Env& env, const std::string& name) {
  const TypedValue& v = lookup(env, name);
  if (v.t != TypedValue::T::Endo) throw ArityError("'" + name + "' is not an endomorphism");
  return v.en;
}

const VecField& getVec(const Env& env, const std::string& name) {
  const TypedValue& v = lookup(env, name);
  if (v.t != TypedValue::T::Vec) throw ArityError("'" + name + "' is not a vector field");
  return v.v;
}

const PolyMap& getMap(const Env& env, const std::string& name) {
  auto it = env.maps.find(name);
  if (it == env.maps.end()) throw UnknownName("unknown map '" + name + "'");
  return it->second;
}

std::vector<Scalar> toPoint(const std::vector<Rational>& pt) {
  std::vector<Scalar> out;
  for (const auto& r : pt) out.emplace_back(r);
  return out;
}

void needArgs(const Command& c, size_t n) {
  if (c.args.size() != n)
    throw ArityError("command '" + c.op + "' takes " + std::to_string(n) + " arguments");
}

void needPoints(const Command& c, size_t atLeast) {
  if (c.points.size() < atLeast)
    throw ArityError("command '" + c.op + "' needs " + std::to_string(atLeast) + " point tuple(s)");
}

// ------------------------------------------------------------ JSON helpers

Json matrixJson(const MatQ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json pointJson(const std::vector<Scalar>& pt) {
  Json a = Json::array();
  for (const auto& s : pt) a.push_back(s.str());
  return a;
}

Json witnessJson(const CourantWitness& w) {
  Json j;
  j["i"] = w.i;
  j["j"] = w.j;
  j["k"] = w.k;
  j["value"] = w.value.str();
  return j;
}

Json statsJson(const FiberStats& s) {
  Json j;
  j["parity"] = s.parity;
  j["prT"] = s.prTRank;
  j["prTstar"] = s.prTstarRank;
  return j;
}

std::string locusString(const MultiPoly& locus, const ChartPtr& chart) {
  if (locus.isZero() || locus.isConstant()) return "1";
  return locus.monic().str(chart->coords);
}

Json runCommand(const Env& env, const Command& cmd) {
  Json j;
  j["command"] = renderCommand(cmd);
  j["inputs"] = cmd.args;
  j["op"] = cmd.op;
  Json verdicts;
  bool ok = true;

  if (cmd.op == "check-dirac") {
    needArgs(cmd, 1);
    LagFrame f = getFrame(env, cmd.args[0]);
    FrameValidation val = validateFrame(f);
    InvolutivityReport inv = isInvolutive(f);
    verdicts["genericRankFull"] = val.genericRankFull;
    verdicts["involutive"] = inv.involutive;
    verdicts["isotropic"] = val.isotropic;
    j["ranks"] = Json{{"generic", val.genericRank}};
    if (inv.witness) j["witness"] = witnessJson(*inv.witness);
    ok = val.ok() && inv.involutive;
  } else if (cmd.op == "star" || cmd.op == "costar") {
    needArgs(cmd, 2);
    LagFrame l = getFrame(env, cmd.args[0]), r = getFrame(env, cmd.args[1]);
    MultiPoly locus;
    LagFrame p = cmd.op == "star" ? starSym(l, r, &locus) : costarSym(l, r, &locus);
    j["frame"] = frameStrings(p);
    j["locus"] = locusString(locus, p.chart);
    j["ranks"] = Json{{"generic", validateFrame(p).genericRank}};
    verdicts["lagrangian"] = validateFrame(p).ok();
    ok = validateFrame(p).ok();
  } else if (cmd.op == "concur") {
    needArgs(cmd, 2);
    ConcurReport rep = concurWeak(getFrame(env, cmd.args[0]), getFrame(env, cmd.args[1]));
    verdicts["concur"] = rep.concur;
    j["frame"] = frameStrings(rep.product);
    if (rep.witness) j["witness"] = witnessJson(*rep.witness);
    ok = rep.concur;
  } else if (cmd.op == "pair-torsion") {
    needArgs(cmd, 2);
    TorsionReport rep = torsionSuite(getFrame(env, cmd.args[0]), getFrame(env, cmd.args[1]));
    verdicts["vanishesOnFamily"] = rep.vanishesOnFamily;
    j["tupleCount"] = rep.tupleCount;
    Json nz = Json::array();
    for (const auto& v : rep.nonzeroValues) nz.push_back(v.str());
    j["nonzeroValues"] = nz;
    ok = rep.vanishesOnFamily;
  } else if (cmd.op == "pomega") {
    needArgs(cmd, 2);
    POmegaReport rep = pOmegaSuite(getBivector(env, cmd.args[0]), getTwoForm(env, cmd.args[1]));
    verdicts["agree"] = rep.agree;
    verdicts["closedComposite"] = rep.closedComposite;
    verdicts["complementary"] = rep.complementary;
    verdicts["concur"] = rep.concur;
    ok = rep.agree;
  } else if (cmd.op == "transverse") {
    needArgs(cmd, 2);
    const TypedValue& a = lookup(env, cmd.args[0]);
    if (a.t == TypedValue::T::Biv) {
      TransversePoissonReport rep =
          transverseCompose(getBivector(env, cmd.args[0]), getBivector(env, cmd.args[1]));
      j["composed"] = str(rep.composed);
      j["connecting"] = str(rep.connecting);
      verdicts["composedPoisson"] = rep.composedPoisson;
      verdicts["graphMatch"] = rep.graphMatch;
      ok = rep.composedPoisson && rep.graphMatch;
    } else {
      TransverseTwoFormReport rep =
          transverseCompose(getTwoForm(env, cmd.args[0]), getTwoForm(env, cmd.args[1]));
      j["composed"] = str(rep.composed);
      j["connecting"] = str(rep.connecting);
      verdicts["agree"] = rep.agree;
      verdicts["closed"] = rep.closed;
      verdicts["concur"] = rep.concur;
      ok = rep.agree;
    }
  } else if (cmd.op == "gcs") {
    needArgs(cmd, 3);
    GCSData g{getEndo(env, cmd.args[0]), getBivector(env, cmd.args[1]),
              getTwoForm(env, cmd.args[2])};
    GCSReport rep = gcsValidate(g);
    verdicts["c1"] = rep.c1;
    verdicts["c2"] = rep.c2;
    verdicts["c3"] = rep.c3;
    verdicts["c4"] = rep.c4;
    verdicts["omegaIntertwine"] = rep.omegaIntertwine;
    verdicts["piIntertwine"] = rep.piIntertwine;
    verdicts["squareIdentity"] = rep.squareIdentity;
    verdicts["valid"] = rep.valid();
    ok = rep.valid();
    if (rep.valid()) {
      GCSConjReport cj = gcsConjProducts(g);
      Json conj;
      conj["agree"] = cj.agree;
      conj["concur"] = cj.concur;
      conj["costarMatches"] = cj.costarMatches;
      conj["domegaZero"] = cj.domegaZero;
      conj["omegaNStructure"] = cj.omegaNStructure;
      conj["pnStructure"] = cj.pnStructure;
      conj["starMatches"] = cj.starMatches;
      j["conjugateProducts"] = conj;
      ok = ok && cj.starMatches && cj.costarMatches && cj.agree;
    }
  } else if (cmd.op == "involutive") {
    if (cmd.args.empty()) throw ArityError("command 'involutive' needs generators");
    std::vector<VecField> gens;
    for (const auto& a : cmd.args) gens.push_back(getVec(env, a));
    InvolutiveReport rep = involutiveStructureSuite(gens);
    verdicts["concur"] = rep.concur;
    verdicts["involutive"] = rep.involutive;
    j["ranks"] = Json{{"intersection", rep.intersectionRank}, {"type", rep.typeRank}};
    ok = rep.involutive;
  } else if (cmd.op == "probe-smooth") {
    needArgs(cmd, 3);
    needPoints(cmd, 1);
    if (cmd.args[2] != "star" && cmd.args[2] != "costar")
      throw ArityError("probe-smooth mode must be star or costar");
    SmoothnessReport rep =
        smoothnessProbe(getFrame(env, cmd.args[0]), getFrame(env, cmd.args[1]),
                        cmd.args[2] == "star", toPoint(cmd.points[0]));
    verdicts["match"] = rep.match;
    j["generic"] = matrixJson(rep.genericSpan);
    j["pointwise"] = matrixJson(rep.pointwise.basis());
    j["stats"] = statsJson(rep.stats);
    ok = rep.match;
  } else if (cmd.op == "probe-pushforward") {
    needArgs(cmd, 2);
    needPoints(cmd, 1);
    std::vector<std::vector<Scalar>> pts;
    for (const auto& p : cmd.points) pts.push_back(toPoint(p));
    PushforwardReport rep =
        pushforwardProbe(getMap(env, cmd.args[0]), getFrame(env, cmd.args[1]), pts);
    verdicts["invariantOnSamples"] = rep.invariantOnSamples;
    Json samples = Json::array();
    for (const auto& s : rep.samples) {
      Json e;
      e["fiber"] = matrixJson(s.fiber.basis());
      e["image"] = pointJson(s.image);
      e["source"] = pointJson(s.source);
      samples.push_back(std::move(e));
    }
    j["samples"] = samples;
    ok = rep.invariantOnSamples;
  } else if (cmd.op == "normal-form") {
    needArgs(cmd, 4);
    bool verdict = normalFormVerify(getFrame(env, cmd.args[0]), getOneForm(env, cmd.args[1]),
                                    getMap(env, cmd.args[2]), getBivector(env, cmd.args[3]));
    verdicts["normalForm"] = verdict;
    ok = verdict;
  } else if (cmd.op == "eval-at") {
    needArgs(cmd, 1);
    needPoints(cmd, 1);
    LagFrame f = getFrame(env, cmd.args[0]);
    LagSubspace fiber = evaluateFrame(f, toPoint(cmd.points[0]));
    j["fiber"] = matrixJson(fiber.basis());
    j["stats"] = statsJson(fiberStatsPt(fiber));
    verdicts["lagrangian"] = fiber.isLagrangian();
    ok = fiber.isLagrangian();
  } else {
    throw ArityError("unknown command '" + cmd.op + "'");
  }

  j["assert"] = ok;
  j["verdicts"] = verdicts;
  return j;
}

}  // namespace

Json executeCommand(const Document& d, const Command& cmd) {
  Env env = buildEnv(d);
  return runCommand(env, cmd);
}

Json executeDocument(const Document& d) {
  Env env = buildEnv(d);
  Json run;
  Json reports = Json::array();
  for (const auto& c : d.commands) reports.push_back(runCommand(env, c));
  run["reports"] = reports;
  return run;
}

bool allAssertionsHold(const Json& run) {
  for (const auto& r : run.at("reports"))
    if (!r.at("assert").get<bool>()) return false;
  return true;
}

std::string renderText(const Json& run) {
  std::ostringstream os;
  for (const auto& r : run.at("reports")) {
    os << r.at("command").get<std::string>() << " -> "
       << (r.at("assert").get<bool>() ? "pass" : "fail");
    if (r.contains("verdicts")) {
      for (auto it = r.at("verdicts").begin(); it != r.at("verdicts").end(); ++it)
        os << " " << it.key() << "=" << (it.value().get<bool>() ? "true" : "false");
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace dirackit::dsl
