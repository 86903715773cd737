#include <ainv/errors.hpp>
#include <ainv/program.hpp>

#include <cctype>
#include <utility>

namespace ainv {

namespace {

enum class Tok { ident, number, symbol, relation, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t s = 0; s < k; ++s, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col, start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        advance(1);
      out.push_back({Tok::ident, std::string(src.substr(start, i - start)), l, cl});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
      out.push_back({Tok::number, std::string(src.substr(start, i - start)), l, cl});
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      advance(2);
      out.push_back({Tok::symbol, "->", l, cl});
    } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
      advance(2);
      out.push_back({Tok::symbol, ":=", l, cl});
    } else if (c == '/' && i + 1 < src.size() && src[i + 1] == '\\') {
      advance(2);
      out.push_back({Tok::symbol, "/\\", l, cl});
    } else if (c == '<' || c == '>' || c == '=' || c == '!') {
      while (i < src.size() &&
             (src[i] == '<' || src[i] == '>' || src[i] == '=' || src[i] == '!'))
        advance(1);
      out.push_back({Tok::relation, std::string(src.substr(start, i - start)), l, cl});
    } else if (std::string_view(";:,(){}+-*/?").find(c) != std::string_view::npos) {
      advance(1);
      out.push_back({Tok::symbol, std::string(1, c), l, cl});
    } else {
      throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Program program() {
    while (!at_end()) statement();
    Program p(vars_.value_or(0), sort_, nodes_);
    for (auto& [node, lit] : inits_) p.set_init(node, std::move(lit));
    for (auto& e : edges_) p.add_edge(std::move(e));
    return p;
  }

  Literal standalone_literal(std::size_t n, Sort sort) {
    vars_ = n;
    sort_ = sort;
    Literal lit = literal();
    expect_end();
    return lit;
  }

  std::pair<std::size_t, Literal> node_literal(const Program& prog) {
    vars_ = prog.vars();
    sort_ = prog.sort();
    const Token& name = expect_ident();
    auto q = prog.node_index(name.text);
    if (!q) fail(name, "unknown node '" + name.text + "'");
    expect_symbol(":");
    Literal lit = literal();
    expect_end();
    return {*q, std::move(lit)};
  }

private:
  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw ParseError(t.line, t.col, what);
  }

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::end) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_symbol(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::symbol && peek(k).text == s;
  }
  bool is_keyword(std::string_view s) const {
    return peek().kind == Tok::ident && peek().text == s;
  }
  bool accept_symbol(std::string_view s) {
    if (!is_symbol(s)) return false;
    ++pos_;
    return true;
  }
  bool accept_keyword(std::string_view s) {
    if (!is_keyword(s)) return false;
    ++pos_;
    return true;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail(peek(), "expected '" + std::string(s) + "'");
  }
  const Token& expect_ident() {
    if (peek().kind != Tok::ident) fail(peek(), "expected identifier");
    return next();
  }
  void expect_end() {
    if (!at_end()) fail(peek(), "unexpected trailing input");
  }

  std::size_t require_vars(const Token& at) {
    if (!vars_) fail(at, "'vars' must be declared first");
    return *vars_;
  }

  std::size_t node_ref(const Token& t) {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i] == t.text) return i;
    fail(t, "unknown node '" + t.text + "'");
  }

  void statement() {
    const Token& kw = expect_ident();
    if (kw.text == "vars") {
      if (vars_) fail(kw, "duplicate 'vars'");
      const Token& n = next();
      if (n.kind != Tok::number) fail(n, "expected variable count");
      vars_ = std::stoul(n.text);
    } else if (kw.text == "sort") {
      const Token& s = expect_ident();
      if (s.text == "int")
        sort_ = Sort::integer;
      else if (s.text == "rat")
        sort_ = Sort::rational;
      else
        fail(s, "unknown sort '" + s.text + "'");
    } else if (kw.text == "nodes") {
      if (nodes_declared_) fail(kw, "duplicate 'nodes'");
      nodes_declared_ = true;
      while (peek().kind == Tok::ident) {
        const Token& t = next();
        for (const auto& n : nodes_)
          if (n == t.text) fail(t, "duplicate node '" + t.text + "'");
        nodes_.push_back(t.text);
      }
    } else if (kw.text == "init") {
      require_vars(kw);
      const std::size_t q = node_ref(expect_ident());
      for (const auto& [node, lit] : inits_)
        if (node == q) fail(kw, "duplicate init for node '" + nodes_[q] + "'");
      expect_symbol(":");
      inits_.emplace_back(q, literal());
    } else if (kw.text == "edge") {
      require_vars(kw);
      Edge e;
      e.source = node_ref(expect_ident());
      expect_symbol("->");
      e.target = node_ref(expect_ident());
      if (accept_symbol(":")) e.steps = label();
      edges_.push_back(std::move(e));
    } else {
      fail(kw, "unknown statement '" + kw.text + "'");
    }
    expect_symbol(";");
  }

  // Numbers and affine expressions ------------------------------------------

  Rational number() {
    const Token& t = next();
    if (t.kind != Tok::number) fail(t, "expected number");
    Rational q(Integer(t.text), 1);
    if (is_symbol("/") && peek(1).kind == Tok::number) {
      next();
      const Token& d = next();
      Integer den(d.text);
      if (den == 0) fail(d, "division by zero");
      if (sort_ == Sort::integer) fail(t, "fractional constant in an integer program");
      q = Rational(Integer(t.text), den);
      q.canonicalize();
    }
    return q;
  }

  Rational signed_number() {
    if (accept_symbol("-")) return -number();
    accept_symbol("+");
    return number();
  }

  std::optional<std::size_t> variable_index(const Token& t) const {
    if (t.kind != Tok::ident || t.text.size() < 2 || t.text[0] != 'x') return std::nullopt;
    for (std::size_t i = 1; i < t.text.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) return std::nullopt;
    return std::stoul(t.text.substr(1));
  }

  std::size_t variable(const Token& t) {
    auto idx = variable_index(t);
    if (!idx) fail(t, "expected variable, found '" + t.text + "'");
    if (*idx < 1 || *idx > *vars_) fail(t, "unknown variable '" + t.text + "'");
    return *idx - 1;
  }

  void term(LinExpr& e, const Rational& sign) {
    if (peek().kind == Tok::number) {
      const Token& at = peek();
      Rational c = number();
      const bool adjacent = peek().kind == Tok::ident && peek().line == at.line &&
                            variable_index(peek()).has_value();
      if (accept_symbol("*") || adjacent) {
        e.coeffs[variable(next())] += sign * c;
      } else {
        e.constant += sign * c;
      }
    } else if (peek().kind == Tok::ident) {
      e.coeffs[variable(next())] += sign;
    } else {
      fail(peek(), "expected term");
    }
  }

  LinExpr affine() {
    LinExpr e = LinExpr::zero(*vars_);
    Rational sign = 1;
    if (accept_symbol("-"))
      sign = -1;
    else
      accept_symbol("+");
    term(e, sign);
    for (;;) {
      if (accept_symbol("+"))
        term(e, 1);
      else if (accept_symbol("-"))
        term(e, -1);
      else
        break;
    }
    return e;
  }

  Relation relation() {
    const Token& t = next();
    if (t.kind != Tok::relation) fail(t, "expected relation");
    if (t.text == "=") return Relation::eq;
    if (t.text == "!=") return Relation::ne;
    if (t.text == "<") return Relation::lt;
    if (t.text == "<=") return Relation::le;
    if (t.text == ">") return Relation::gt;
    if (t.text == ">=") return Relation::ge;
    fail(t, "unknown relation symbol '" + t.text + "'");
  }

  Constraint atom() {
    const Token& at = peek();
    LinExpr lhs = affine();
    Relation rel = relation();
    LinExpr rhs = affine();
    for (std::size_t i = 0; i < lhs.coeffs.size(); ++i) lhs.coeffs[i] -= rhs.coeffs[i];
    lhs.constant -= rhs.constant;
    if (sort_ == Sort::rational && rel != Relation::eq && rel != Relation::ne)
      fail(at, "inequality guards are not supported in rational programs");
    return {std::move(lhs), rel};
  }

  // Edge labels ---------------------------------------------------------------

  std::vector<TransferFunction> label() {
    std::vector<TransferFunction> steps;
    const std::size_t n = *vars_;
    std::optional<ParallelAssign> group;
    std::vector<NondetAssign> nondets;
    std::vector<bool> assigned(n, false);
    auto flush = [&] {
      if (group && !group->is_identity()) steps.emplace_back(std::move(*group));
      for (auto& nd : nondets) steps.emplace_back(nd);
      group.reset();
      nondets.clear();
      assigned.assign(n, false);
    };
    do {
      if (accept_keyword("skip")) continue;
      if (accept_keyword("assume")) {
        flush();
        steps.emplace_back(guard());
        continue;
      }
      const Token& vt = next();
      const std::size_t j = variable(vt);
      if (assigned[j]) fail(vt, "variable '" + vt.text + "' assigned twice on one edge");
      assigned[j] = true;
      expect_symbol(":=");
      if (!group) group = ParallelAssign::identity(n);
      if (accept_symbol("?"))
        nondets.push_back({j});
      else
        group->rows[j] = affine();
    } while (accept_symbol(","));
    flush();
    return steps;
  }

  Guard guard() {
    Guard g;
    g.atoms.push_back(atom());
    std::optional<Junction> mode;
    for (;;) {
      const Token& t = peek();
      Junction j;
      if (accept_keyword("and"))
        j = Junction::conj;
      else if (accept_keyword("or"))
        j = Junction::disj;
      else
        break;
      if (mode && *mode != j) fail(t, "cannot mix 'and' and 'or' in one guard");
      mode = j;
      accept_keyword("assume");
      g.atoms.push_back(atom());
    }
    g.junction = mode.value_or(Junction::conj);
    return g;
  }

  // Literals ------------------------------------------------------------------

  Rational value_for_sort() {
    const Token& t = peek();
    Rational v = signed_number();
    if (sort_ == Sort::integer && !is_integral(v)) fail(t, "non-integer value");
    return v;
  }

  Point point() {
    const Token& open = peek();
    expect_symbol("(");
    Point p;
    if (!is_symbol(")")) {
      do p.push_back(value_for_sort());
      while (accept_symbol(","));
    }
    expect_symbol(")");
    if (p.size() != *vars_) fail(open, "arity mismatch: expected " + std::to_string(*vars_) + " values");
    return p;
  }

  Literal literal() {
    if (accept_keyword("top")) return TopLiteral{};
    if (accept_keyword("bot")) return BotLiteral{};
    if (is_symbol("(")) {
      const Token& open = next();
      TupleLiteral t;
      if (!is_symbol(")")) {
        do {
          if (accept_keyword("top"))
            t.slots.emplace_back(std::nullopt);
          else
            t.slots.emplace_back(value_for_sort());
        } while (accept_symbol(","));
      }
      expect_symbol(")");
      if (t.slots.size() != *vars_)
        fail(open, "arity mismatch: expected " + std::to_string(*vars_) + " values");
      return t;
    }
    if (accept_symbol("{")) {
      PointsLiteral pl;
      if (!is_symbol("}")) {
        do pl.points.push_back(point());
        while (accept_symbol(";"));
      }
      expect_symbol("}");
      return pl;
    }
    EqualitiesLiteral eqs;
    do {
      Constraint c = atom();
      if (c.rel != Relation::eq) fail(peek(), "only equalities are allowed in literals");
      eqs.rows.push_back(std::move(c.expr));
    } while (accept_symbol("/\\") || accept_keyword("and"));
    return eqs;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::optional<std::size_t> vars_;
  Sort sort_ = Sort::integer;
  bool nodes_declared_ = false;
  std::vector<std::string> nodes_;
  std::vector<std::pair<std::size_t, Literal>> inits_;
  std::vector<Edge> edges_;
};

} // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Literal parse_literal(std::string_view text, std::size_t n, Sort sort) {
  return Parser(text).standalone_literal(n, sort);
}

std::pair<std::size_t, Literal> parse_node_literal(std::string_view text,
                                                   const Program& program) {
  return Parser(text).node_literal(program);
}

} // namespace ainv
