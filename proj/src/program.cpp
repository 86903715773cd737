#include <ainv/errors.hpp>
#include <ainv/program.hpp>

#include <stdexcept>
#include <utility>

namespace ainv {

LinExpr LinExpr::variable(std::size_t n, std::size_t j) {
  LinExpr e = zero(n);
  e.coeffs.at(j) = 1;
  return e;
}

bool LinExpr::is_constant() const {
  for (const auto& c : coeffs)
    if (c != 0) return false;
  return true;
}

Rational LinExpr::eval(const Point& p) const {
  Rational v = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) v += coeffs[i] * p.at(i);
  return v;
}

Relation negate(Relation r) {
  switch (r) {
  case Relation::eq: return Relation::ne;
  case Relation::ne: return Relation::eq;
  case Relation::lt: return Relation::ge;
  case Relation::le: return Relation::gt;
  case Relation::gt: return Relation::le;
  case Relation::ge: return Relation::lt;
  }
  return r;
}

bool holds(const Rational& v, Relation r) {
  switch (r) {
  case Relation::eq: return v == 0;
  case Relation::ne: return v != 0;
  case Relation::lt: return v < 0;
  case Relation::le: return v <= 0;
  case Relation::gt: return v > 0;
  case Relation::ge: return v >= 0;
  }
  return false;
}

std::string_view to_string(Relation r) {
  switch (r) {
  case Relation::eq: return "=";
  case Relation::ne: return "!=";
  case Relation::lt: return "<";
  case Relation::le: return "<=";
  case Relation::gt: return ">";
  case Relation::ge: return ">=";
  }
  return "?";
}

ParallelAssign ParallelAssign::identity(std::size_t n) {
  ParallelAssign a;
  for (std::size_t j = 0; j < n; ++j) a.rows.push_back(LinExpr::variable(n, j));
  return a;
}

bool ParallelAssign::is_identity() const {
  for (std::size_t j = 0; j < rows.size(); ++j)
    if (!(rows[j] == LinExpr::variable(rows.size(), j))) return false;
  return true;
}

Program::Program(std::size_t vars, Sort sort, std::vector<std::string> nodes)
    : vars_(vars), sort_(sort), nodes_(std::move(nodes)), init_(nodes_.size()) {}

std::optional<std::size_t> Program::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == name) return i;
  return std::nullopt;
}

std::size_t Program::require_node(std::string_view name) const {
  if (auto i = node_index(name)) return *i;
  throw std::invalid_argument("unknown node " + std::string(name));
}

namespace {

void check_dim(const LinExpr& e, std::size_t n) {
  if (e.dim() != n) throw std::invalid_argument("expression arity mismatch");
}

void check_transfer(const TransferFunction& t, std::size_t n) {
  std::visit(
      [n](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ParallelAssign>) {
          if (x.rows.size() != n)
            throw std::invalid_argument("assignment arity mismatch");
          for (const auto& r : x.rows) check_dim(r, n);
        } else if constexpr (std::is_same_v<T, NondetAssign>) {
          if (x.target >= n) throw std::invalid_argument("unknown variable");
        } else if constexpr (std::is_same_v<T, Guard>) {
          for (const auto& a : x.atoms) check_dim(a.expr, n);
        }
      },
      t);
}

} // namespace

void Program::add_edge(Edge e) {
  if (e.source >= nodes_.size() || e.target >= nodes_.size())
    throw std::invalid_argument("unknown node");
  for (const auto& t : e.steps) check_transfer(t, vars_);
  edges_.push_back(std::move(e));
}

void Program::set_init(std::size_t node, Literal lit) {
  init_.at(node) = std::move(lit);
}

std::vector<Edge> post_edges_into(const Program& p, std::size_t target) {
  std::vector<Edge> out;
  for (const auto& e : p.edges())
    if (e.target == target) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string var_name(std::size_t j) { return "x" + std::to_string(j + 1); }

} // namespace

std::string to_string(const LinExpr& e) {
  std::string out;
  auto emit = [&](const Rational& c, const std::string& var) {
    Rational mag = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (var.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += var;
    else
      out += mag.get_str() + "*" + var;
  };
  for (std::size_t i = 0; i < e.coeffs.size(); ++i)
    if (e.coeffs[i] != 0) emit(e.coeffs[i], var_name(i));
  if (e.constant != 0 || out.empty()) {
    if (out.empty() && e.constant == 0) return "0";
    emit(e.constant, "");
  }
  return out;
}

namespace {

std::string guard_string(const Guard& g) {
  std::string out = "assume ";
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    if (i) out += g.junction == Junction::conj ? " and " : " or ";
    out += to_string(g.atoms[i].expr) + " " + std::string(to_string(g.atoms[i].rel)) +
           " 0";
  }
  return out;
}

} // namespace

std::string to_string(const TransferFunction& t) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return "skip";
        } else if constexpr (std::is_same_v<T, ParallelAssign>) {
          std::string out;
          for (std::size_t j = 0; j < x.rows.size(); ++j) {
            if (x.rows[j] == LinExpr::variable(x.rows.size(), j)) continue;
            if (!out.empty()) out += ", ";
            out += var_name(j) + " := " + to_string(x.rows[j]);
          }
          return out.empty() ? "skip" : out;
        } else if constexpr (std::is_same_v<T, NondetAssign>) {
          return var_name(x.target) + " := ?";
        } else {
          return guard_string(x);
        }
      },
      t);
}

std::string to_string(const Literal& lit) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TopLiteral>) {
          return "top";
        } else if constexpr (std::is_same_v<T, BotLiteral>) {
          return "bot";
        } else if constexpr (std::is_same_v<T, TupleLiteral>) {
          std::string out = "(";
          for (std::size_t i = 0; i < x.slots.size(); ++i) {
            if (i) out += ", ";
            out += x.slots[i] ? x.slots[i]->get_str() : "top";
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, PointsLiteral>) {
          std::string out = "{";
          for (std::size_t i = 0; i < x.points.size(); ++i) {
            if (i) out += "; ";
            out += "(";
            for (std::size_t k = 0; k < x.points[i].size(); ++k) {
              if (k) out += ", ";
              out += x.points[i][k].get_str();
            }
            out += ")";
          }
          return out + "}";
        } else {
          std::string out;
          for (std::size_t i = 0; i < x.rows.size(); ++i) {
            if (i) out += " /\\ ";
            out += to_string(x.rows[i]) + " = 0";
          }
          return out.empty() ? "top" : out;
        }
      },
      lit);
}

std::string print_program(const Program& p) {
  std::string out;
  out += "vars " + std::to_string(p.vars()) + ";\n";
  out += std::string("sort ") + (p.sort() == Sort::integer ? "int" : "rat") + ";\n";
  out += "nodes";
  for (const auto& n : p.nodes()) out += " " + n;
  out += ";\n";
  for (std::size_t q = 0; q < p.node_count(); ++q)
    if (p.init()[q]) out += "init " + p.nodes()[q] + ": " + to_string(*p.init()[q]) + ";\n";
  for (const auto& e : p.edges()) {
    out += "edge " + p.nodes()[e.source] + " -> " + p.nodes()[e.target] + " : ";
    if (e.steps.empty()) out += "skip";
    for (std::size_t i = 0; i < e.steps.size(); ++i) {
      if (i) out += ", ";
      out += to_string(e.steps[i]);
    }
    out += ";\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Collecting semantics on finite sets

PointSet apply_transfer_concrete(const TransferFunction& t, const PointSet& points,
                                 const std::vector<Rational>& witnesses) {
  return std::visit(
      [&](const auto& x) -> PointSet {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return points;
        } else if constexpr (std::is_same_v<T, ParallelAssign>) {
          PointSet out;
          for (const auto& p : points) {
            Point q(p.size());
            for (std::size_t j = 0; j < x.rows.size(); ++j) q[j] = x.rows[j].eval(p);
            out.insert(std::move(q));
          }
          return out;
        } else if constexpr (std::is_same_v<T, NondetAssign>) {
          PointSet out;
          for (const auto& p : points)
            for (const auto& w : witnesses) {
              Point q = p;
              q.at(x.target) = w;
              out.insert(std::move(q));
            }
          return out;
        } else {
          PointSet out;
          for (const auto& p : points) {
            bool keep = x.junction == Junction::conj;
            for (const auto& a : x.atoms) {
              const bool h = holds(a.expr.eval(p), a.rel);
              if (x.junction == Junction::conj && !h) keep = false;
              if (x.junction == Junction::disj && h) keep = true;
            }
            if (keep) out.insert(p);
          }
          return out;
        }
      },
      t);
}

PointSet apply_edge_concrete(const Edge& e, const PointSet& points,
                             const std::vector<Rational>& witnesses) {
  PointSet cur = points;
  for (const auto& t : e.steps) cur = apply_transfer_concrete(t, cur, witnesses);
  return cur;
}

} // namespace ainv
