#include "bcn/set_expr.hpp"

#include <algorithm>
#include <cctype>

namespace bcn {

struct SetExpr::Node {
  enum class Kind { True, False, Atom, Not, And, Or };
  Kind kind;
  // Atom:
  std::string var;
  std::string value;
  bool negated = false;  // true for !=
  // Not/And/Or:
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = SetExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (text.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      col += static_cast<int>(tok.size());
      return true;
    }
    return false;
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return text.substr(pos, tok.size()) == tok;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_')) {
      ++pos;
      ++col;
    }
    if (start == pos) {
      throw ParseError("expected identifier", line, col);
    }
    return std::string(text.substr(start, pos - start));
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

struct Parser {
  Lexer lex;

  NodePtr expr() {
    NodePtr left = term();
    while (lex.eat("||")) {
      NodePtr right = term();
      left = std::make_shared<Node>(Node{Node::Kind::Or, "", "", false,
                                         std::move(left), std::move(right)});
    }
    return left;
  }

  NodePtr term() {
    NodePtr left = unary();
    while (lex.eat("&&")) {
      NodePtr right = unary();
      left = std::make_shared<Node>(Node{Node::Kind::And, "", "", false,
                                         std::move(left), std::move(right)});
    }
    return left;
  }

  NodePtr unary() {
    if (lex.eat("!")) {
      NodePtr inner = unary();
      return std::make_shared<Node>(
          Node{Node::Kind::Not, "", "", false, std::move(inner), nullptr});
    }
    if (lex.eat("(")) {
      NodePtr inner = expr();
      if (!lex.eat(")")) {
        throw ParseError("expected ')'", lex.line, lex.col);
      }
      return inner;
    }
    std::string name = lex.ident();
    if (name == "true") {
      return std::make_shared<Node>(
          Node{Node::Kind::True, "", "", false, nullptr, nullptr});
    }
    if (name == "false") {
      return std::make_shared<Node>(
          Node{Node::Kind::False, "", "", false, nullptr, nullptr});
    }
    bool negated;
    if (lex.eat("==")) {
      negated = false;
    } else if (lex.eat("!=")) {
      negated = true;
    } else {
      throw ParseError("expected '==' or '!=' after '" + name + "'", lex.line,
                       lex.col);
    }
    std::string value = lex.ident();
    return std::make_shared<Node>(Node{Node::Kind::Atom, std::move(name),
                                       std::move(value), negated, nullptr,
                                       nullptr});
  }
};

bool eval_node(const Node& node, const StateSpace& space,
               std::span<const Index> positions) {
  switch (node.kind) {
    case Node::Kind::True:
      return true;
    case Node::Kind::False:
      return false;
    case Node::Kind::Atom: {
      const std::size_t vpos = space.variable_position(node.var);
      const Index want = space.variables()[vpos].value_index(node.value);
      const bool eq = positions[vpos] == want;
      return node.negated ? !eq : eq;
    }
    case Node::Kind::Not:
      return !eval_node(*node.lhs, space, positions);
    case Node::Kind::And:
      return eval_node(*node.lhs, space, positions) &&
             eval_node(*node.rhs, space, positions);
    case Node::Kind::Or:
      return eval_node(*node.lhs, space, positions) ||
             eval_node(*node.rhs, space, positions);
  }
  return false;
}

void validate_node(const Node& node, const StateSpace& space) {
  switch (node.kind) {
    case Node::Kind::Atom: {
      const std::size_t vpos = space.variable_position(node.var);
      space.variables()[vpos].value_index(node.value);
      break;
    }
    case Node::Kind::Not:
      validate_node(*node.lhs, space);
      break;
    case Node::Kind::And:
    case Node::Kind::Or:
      validate_node(*node.lhs, space);
      validate_node(*node.rhs, space);
      break;
    default:
      break;
  }
}

void print_node(const Node& node, std::string& out) {
  switch (node.kind) {
    case Node::Kind::True:
      out += "true";
      break;
    case Node::Kind::False:
      out += "false";
      break;
    case Node::Kind::Atom:
      out += node.var;
      out += node.negated ? " != " : " == ";
      out += node.value;
      break;
    case Node::Kind::Not:
      out += "!(";
      print_node(*node.lhs, out);
      out += ")";
      break;
    case Node::Kind::And:
      out += "(";
      print_node(*node.lhs, out);
      out += " && ";
      print_node(*node.rhs, out);
      out += ")";
      break;
    case Node::Kind::Or:
      out += "(";
      print_node(*node.lhs, out);
      out += " || ";
      print_node(*node.rhs, out);
      out += ")";
      break;
  }
}

}  // namespace

SetExpr SetExpr::parse(std::string_view text) {
  Parser parser{Lexer{text}};
  NodePtr root = parser.expr();
  if (!parser.lex.done()) {
    throw ParseError("unexpected trailing input", parser.lex.line,
                     parser.lex.col);
  }
  return SetExpr(std::move(root));
}

std::string SetExpr::to_string() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

bool SetExpr::eval(const StateSpace& space,
                   std::span<const Index> positions) const {
  return eval_node(*root_, space, positions);
}

void SetExpr::validate(const StateSpace& space) const {
  validate_node(*root_, space);
}

StateSet::StateSet(Index space_dim, std::vector<Index> sorted_indices)
    : space_dim_(space_dim),
      indices_(std::move(sorted_indices)),
      mask_(static_cast<std::size_t>(space_dim), 0) {
  for (const Index i : indices_) {
    if (i < 1 || i > space_dim_) {
      throw DomainError("set member " + std::to_string(i) +
                        " out of range [1, " + std::to_string(space_dim_) +
                        "]");
    }
    mask_[static_cast<std::size_t>(i - 1)] = 1;
  }
  if (!std::is_sorted(indices_.begin(), indices_.end())) {
    std::sort(indices_.begin(), indices_.end());
  }
}

StateSet state_set(const StateSpace& space, const SetExpr& predicate) {
  predicate.validate(space);
  std::vector<Index> members;
  std::vector<Index> positions(space.variables().size(), 1);
  // Odometer enumeration avoids a full decode per state.
  for (Index state = 1; state <= space.dim(); ++state) {
    if (predicate.eval(space, positions)) {
      members.push_back(state);
    }
    for (std::size_t i = positions.size(); i-- > 0;) {
      if (positions[i] < space.variables()[i].cardinality()) {
        ++positions[i];
        break;
      }
      positions[i] = 1;
    }
  }
  return {space.dim(), std::move(members)};
}

}  // namespace bcn
