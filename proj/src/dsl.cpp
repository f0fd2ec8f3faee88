#include "bcn/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "bcn/parallel.hpp"

namespace bcn::dsl {

namespace {

enum class Tok {
  Ident,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Colon,
  Comma,
  Semi,
  Arrow,
  EqEq,
  NotEq,
  AndAnd,
  OrOr,
  Bang,
  End,
};

struct Token {
  Tok type;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  const auto push = [&](Tok t, std::string s, int width) {
    out.push_back({t, std::move(s), line, col});
    col += width;
    i += static_cast<std::size_t>(width);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        ++i;
      }
      const int width = static_cast<int>(i - start);
      out.push_back(
          {Tok::Ident, std::string(text.substr(start, i - start)), line, col});
      col += width;
      continue;
    }
    switch (c) {
      case '{': push(Tok::LBrace, "{", 1); break;
      case '}': push(Tok::RBrace, "}", 1); break;
      case '(': push(Tok::LParen, "(", 1); break;
      case ')': push(Tok::RParen, ")", 1); break;
      case ':': push(Tok::Colon, ":", 1); break;
      case ',': push(Tok::Comma, ",", 1); break;
      case ';': push(Tok::Semi, ";", 1); break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, "->", 2);
        } else {
          throw ParseError("unexpected character '-'", line, col);
        }
        break;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Tok::EqEq, "==", 2);
        } else {
          throw ParseError("unexpected character '='", line, col);
        }
        break;
      case '!':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Tok::NotEq, "!=", 2);
        } else {
          push(Tok::Bang, "!", 1);
        }
        break;
      case '&':
        if (i + 1 < text.size() && text[i + 1] == '&') {
          push(Tok::AndAnd, "&&", 2);
        } else {
          throw ParseError("unexpected character '&'", line, col);
        }
        break;
      case '|':
        if (i + 1 < text.size() && text[i + 1] == '|') {
          push(Tok::OrOr, "||", 2);
        } else {
          throw ParseError("unexpected character '|'", line, col);
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  ModelAst run() {
    ModelAst ast;
    expect_keyword("model");
    ast.name = expect_ident("model name");
    expect(Tok::LBrace, "'{'");
    while (is_decl_start()) {
      ast.decls.push_back(parse_decl());
      register_decl(ast.decls.back());
    }
    while (peek().type == Tok::Ident &&
           (peek().text == "update" || peek().text == "output")) {
      ast.blocks.push_back(parse_block(ast));
    }
    expect(Tok::RBrace, "'}'");
    expect(Tok::End, "end of input");
    check_block_coverage(ast);
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.col);
  }

  const Token& expect(Tok type, const std::string& what) {
    if (peek().type != type) {
      fail("expected " + what + ", got '" + describe(peek()) + "'", peek());
    }
    return toks_[pos_++];
  }

  void expect_keyword(const std::string& kw) {
    if (peek().type != Tok::Ident || peek().text != kw) {
      fail("expected '" + kw + "'", peek());
    }
    ++pos_;
  }

  std::string expect_ident(const std::string& what) {
    const Token& t = expect(Tok::Ident, what);
    return t.text;
  }

  static std::string describe(const Token& t) {
    return t.type == Tok::End ? "<end of input>" : t.text;
  }

  bool is_decl_start() const {
    if (peek().type != Tok::Ident) return false;
    const std::string& kw = peek().text;
    if (kw == "input" || kw == "state") return true;
    // 'output' starts a declaration when a ':' follows the name, and an
    // output block when a '{' follows.
    return kw == "output" && peek(2).type == Tok::Colon;
  }

  void register_decl(const VarDecl& decl) {
    if (by_name_.count(decl.name) != 0) {
      fail("duplicate variable name '" + decl.name + "'", toks_[pos_ - 1]);
    }
    by_name_[decl.name] = decl;
    order_[decl.name] = order_.size();
  }

  VarDecl parse_decl() {
    VarDecl decl;
    const Token& kw = next();
    decl.pos = {kw.line, kw.col};
    decl.kind = kw.text == "input"   ? VarKind::Input
                : kw.text == "state" ? VarKind::State
                                     : VarKind::Output;
    decl.name = expect_ident("variable name");
    expect(Tok::Colon, "':'");
    expect(Tok::LBrace, "'{'");
    decl.values.push_back(expect_ident("value label"));
    while (peek().type == Tok::Comma) {
      ++pos_;
      decl.values.push_back(expect_ident("value label"));
    }
    expect(Tok::RBrace, "'}'");
    for (std::size_t i = 0; i < decl.values.size(); ++i) {
      for (std::size_t j = i + 1; j < decl.values.size(); ++j) {
        if (decl.values[i] == decl.values[j]) {
          fail("duplicate value label '" + decl.values[i] + "'",
               toks_[pos_ - 1]);
        }
      }
    }
    if (peek().type == Tok::Ident && peek().text == "init") {
      const Token& init_tok = next();
      if (decl.kind != VarKind::State) {
        fail("only state variables take an init clause", init_tok);
      }
      decl.init = expect_ident("initial value");
      if (std::find(decl.values.begin(), decl.values.end(), *decl.init) ==
          decl.values.end()) {
        fail("initial value '" + *decl.init + "' is not a value of '" +
                 decl.name + "'",
             toks_[pos_ - 1]);
      }
    }
    return decl;
  }

  const VarDecl& lookup(const std::string& name, const Token& at) const {
    const auto it = by_name_.find(name);
    if (it == by_name_.end()) {
      fail("undeclared variable '" + name + "'", at);
    }
    return it->second;
  }

  void check_value(const VarDecl& var, const std::string& value,
                   const Token& at) const {
    if (std::find(var.values.begin(), var.values.end(), value) ==
        var.values.end()) {
      fail("'" + value + "' is not a value of variable '" + var.name + "'",
           at);
    }
  }

  // Staged next() may only look at state variables declared strictly
  // before the block's target.
  void check_next_ref(const VarDecl& target, const std::string& name,
                      const Token& at) const {
    const VarDecl& src = lookup(name, at);
    if (src.kind != VarKind::State) {
      fail("next() requires a state variable, '" + name + "' is not one", at);
    }
    if (order_.at(name) >= order_.at(target.name)) {
      fail("next(" + name + ") refers to a variable not declared before '" +
               target.name + "'",
           at);
    }
  }

  GuardPtr parse_guard(const Block& block, const VarDecl& target) {
    GuardPtr left = parse_guard_term(block, target);
    while (peek().type == Tok::OrOr) {
      ++pos_;
      GuardPtr right = parse_guard_term(block, target);
      auto node = std::make_shared<GuardExpr>();
      node->kind = GuardExpr::Kind::Or;
      node->lhs = std::move(left);
      node->rhs = std::move(right);
      left = std::move(node);
    }
    return left;
  }

  GuardPtr parse_guard_term(const Block& block, const VarDecl& target) {
    GuardPtr left = parse_guard_unary(block, target);
    while (peek().type == Tok::AndAnd) {
      ++pos_;
      GuardPtr right = parse_guard_unary(block, target);
      auto node = std::make_shared<GuardExpr>();
      node->kind = GuardExpr::Kind::And;
      node->lhs = std::move(left);
      node->rhs = std::move(right);
      left = std::move(node);
    }
    return left;
  }

  GuardPtr parse_guard_unary(const Block& block, const VarDecl& target) {
    if (peek().type == Tok::Bang) {
      ++pos_;
      auto node = std::make_shared<GuardExpr>();
      node->kind = GuardExpr::Kind::Not;
      node->lhs = parse_guard_unary(block, target);
      return node;
    }
    if (peek().type == Tok::LParen) {
      ++pos_;
      GuardPtr inner = parse_guard(block, target);
      expect(Tok::RParen, "')'");
      return inner;
    }
    auto node = std::make_shared<GuardExpr>();
    node->kind = GuardExpr::Kind::Atom;
    const Token& name_tok = peek();
    std::string name = expect_ident("variable or next()");
    if (name == "next") {
      if (!block.is_update) {
        fail("next() is only allowed in update blocks", name_tok);
      }
      expect(Tok::LParen, "'('");
      const Token& var_tok = peek();
      node->var = expect_ident("variable name");
      expect(Tok::RParen, "')'");
      check_next_ref(target, node->var, var_tok);
      node->next = true;
    } else {
      const VarDecl& var = lookup(name, name_tok);
      if (var.kind == VarKind::Output) {
        fail("output variable '" + name + "' cannot appear in a guard",
             name_tok);
      }
      node->var = std::move(name);
    }
    if (peek().type == Tok::EqEq) {
      node->negated = false;
    } else if (peek().type == Tok::NotEq) {
      node->negated = true;
    } else {
      fail("expected '==' or '!='", peek());
    }
    ++pos_;
    const Token& val_tok = peek();
    node->value = expect_ident("value label");
    check_value(lookup(node->var, val_tok), node->value, val_tok);
    return node;
  }

  Result parse_result(const Block& block, const VarDecl& target) {
    Result result;
    const Token& tok = peek();
    std::string name = expect_ident("result");
    if (name == "next") {
      if (!block.is_update) {
        fail("next() is only allowed in update blocks", tok);
      }
      expect(Tok::LParen, "'('");
      const Token& var_tok = peek();
      result.kind = Result::Kind::Next;
      result.name = expect_ident("variable name");
      expect(Tok::RParen, "')'");
      check_next_ref(target, result.name, var_tok);
      if (lookup(result.name, var_tok).values != target.values) {
        fail("next(" + result.name + ") has a different value domain than '" +
                 target.name + "'",
             var_tok);
      }
      return result;
    }
    // A bare identifier is a value of the target's domain when possible,
    // otherwise a copy of an identically-valued variable.
    if (std::find(target.values.begin(), target.values.end(), name) !=
        target.values.end()) {
      result.kind = Result::Kind::Literal;
      result.name = std::move(name);
      return result;
    }
    const auto it = by_name_.find(name);
    if (it == by_name_.end()) {
      fail("'" + name + "' is neither a value of '" + target.name +
               "' nor a declared variable",
           tok);
    }
    if (it->second.kind == VarKind::Output) {
      fail("output variable '" + name + "' cannot be read", tok);
    }
    if (it->second.values != target.values) {
      fail("variable '" + name + "' has a different value domain than '" +
               target.name + "'",
           tok);
    }
    result.kind = Result::Kind::Copy;
    result.name = std::move(name);
    return result;
  }

  Block parse_block(const ModelAst& ast) {
    Block block;
    const Token& kw = next();
    block.pos = {kw.line, kw.col};
    block.is_update = kw.text == "update";
    const Token& name_tok = peek();
    block.var = expect_ident("variable name");
    const VarDecl& target = lookup(block.var, name_tok);
    if (block.is_update && target.kind != VarKind::State) {
      fail("update block target '" + block.var + "' is not a state variable",
           name_tok);
    }
    if (!block.is_update && target.kind != VarKind::Output) {
      fail("output block target '" + block.var + "' is not an output variable",
           name_tok);
    }
    for (const Block& other : ast.blocks) {
      if (other.var == block.var) {
        fail("variable '" + block.var + "' already has a block", name_tok);
      }
    }
    expect(Tok::LBrace, "'{'");
    bool saw_default = false;
    while (!saw_default) {
      const Token& rule_tok = peek();
      if (rule_tok.type == Tok::RBrace) {
        fail("block for '" + block.var + "' is missing a default rule",
             rule_tok);
      }
      if (rule_tok.type != Tok::Ident ||
          (rule_tok.text != "case" && rule_tok.text != "default")) {
        fail("expected 'case' or 'default'", rule_tok);
      }
      ++pos_;
      Rule rule;
      rule.pos = {rule_tok.line, rule_tok.col};
      if (rule_tok.text == "case") {
        rule.guard = parse_guard(block, target);
      } else {
        saw_default = true;
      }
      expect(Tok::Arrow, "'->'");
      rule.result = parse_result(block, target);
      expect(Tok::Semi, "';'");
      if (saw_default) {
        block.default_result = rule.result;
      } else {
        block.cases.push_back(std::move(rule));
      }
    }
    expect(Tok::RBrace, "'}'");
    return block;
  }

  void check_block_coverage(const ModelAst& ast) const {
    for (const VarDecl& decl : ast.decls) {
      if (decl.kind == VarKind::Input) continue;
      const bool want_update = decl.kind == VarKind::State;
      const bool found =
          std::any_of(ast.blocks.begin(), ast.blocks.end(),
                      [&](const Block& b) {
                        return b.var == decl.name && b.is_update == want_update;
                      });
      if (!found) {
        throw ParseError(std::string(want_update ? "state" : "output") +
                             " variable '" + decl.name + "' has no " +
                             (want_update ? "update" : "output") + " block",
                         decl.pos.line, decl.pos.column);
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, VarDecl> by_name_;
  std::map<std::string, std::size_t> order_;
};

bool guard_equal(const GuardPtr& a, const GuardPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case GuardExpr::Kind::Atom:
      return a->next == b->next && a->var == b->var && a->value == b->value &&
             a->negated == b->negated;
    case GuardExpr::Kind::Not:
      return guard_equal(a->lhs, b->lhs);
    case GuardExpr::Kind::And:
    case GuardExpr::Kind::Or:
      return guard_equal(a->lhs, b->lhs) && guard_equal(a->rhs, b->rhs);
  }
  return false;
}

void print_guard(const GuardExpr& g, std::string& out) {
  switch (g.kind) {
    case GuardExpr::Kind::Atom:
      if (g.next) {
        out += "next(" + g.var + ")";
      } else {
        out += g.var;
      }
      out += g.negated ? " != " : " == ";
      out += g.value;
      break;
    case GuardExpr::Kind::Not:
      out += "!(";
      print_guard(*g.lhs, out);
      out += ")";
      break;
    case GuardExpr::Kind::And:
      out += "(";
      print_guard(*g.lhs, out);
      out += " && ";
      print_guard(*g.rhs, out);
      out += ")";
      break;
    case GuardExpr::Kind::Or:
      out += "(";
      print_guard(*g.lhs, out);
      out += " || ";
      print_guard(*g.rhs, out);
      out += ")";
      break;
  }
}

void print_result(const Result& r, std::string& out) {
  if (r.kind == Result::Kind::Next) {
    out += "next(" + r.name + ")";
  } else {
    out += r.name;
  }
}

StateSpace space_of(const ModelAst& ast, VarKind kind) {
  std::vector<VariableSpec> vars;
  for (const VarDecl& decl : ast.decls) {
    if (decl.kind == kind) {
      vars.push_back({decl.name, decl.values});
    }
  }
  return StateSpace(std::move(vars));
}

bool guard_reads_input(const GuardExpr& g, const StateSpace& inputs) {
  switch (g.kind) {
    case GuardExpr::Kind::Atom:
      return !g.next && inputs.has_variable(g.var);
    case GuardExpr::Kind::Not:
      return guard_reads_input(*g.lhs, inputs);
    default:
      return guard_reads_input(*g.lhs, inputs) ||
             guard_reads_input(*g.rhs, inputs);
  }
}

}  // namespace

std::vector<VarDecl> ModelAst::decls_of(VarKind kind) const {
  std::vector<VarDecl> out;
  for (const VarDecl& d : decls) {
    if (d.kind == kind) out.push_back(d);
  }
  return out;
}

bool ast_equal(const ModelAst& a, const ModelAst& b) {
  if (a.name != b.name || a.decls.size() != b.decls.size() ||
      a.blocks.size() != b.blocks.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const VarDecl& x = a.decls[i];
    const VarDecl& y = b.decls[i];
    if (x.kind != y.kind || x.name != y.name || x.values != y.values ||
        x.init != y.init) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const Block& x = a.blocks[i];
    const Block& y = b.blocks[i];
    if (x.is_update != y.is_update || x.var != y.var ||
        x.cases.size() != y.cases.size() ||
        x.default_result.kind != y.default_result.kind ||
        x.default_result.name != y.default_result.name) {
      return false;
    }
    for (std::size_t j = 0; j < x.cases.size(); ++j) {
      if (x.cases[j].result.kind != y.cases[j].result.kind ||
          x.cases[j].result.name != y.cases[j].result.name ||
          !guard_equal(x.cases[j].guard, y.cases[j].guard)) {
        return false;
      }
    }
  }
  return true;
}

ModelAst parse(std::string_view text) { return Parser(text).run(); }

std::string pretty_print(const ModelAst& ast) {
  std::string out = "model " + ast.name + " {\n";
  for (const VarDecl& decl : ast.decls) {
    out += "  ";
    out += decl.kind == VarKind::Input   ? "input "
           : decl.kind == VarKind::State ? "state "
                                         : "output ";
    out += decl.name + " : { ";
    for (std::size_t i = 0; i < decl.values.size(); ++i) {
      if (i) out += ", ";
      out += decl.values[i];
    }
    out += " }";
    if (decl.init) out += " init " + *decl.init;
    out += "\n";
  }
  for (const Block& block : ast.blocks) {
    out += "\n  ";
    out += block.is_update ? "update " : "output ";
    out += block.var + " {\n";
    for (const Rule& rule : block.cases) {
      out += "    case ";
      print_guard(*rule.guard, out);
      out += " -> ";
      print_result(rule.result, out);
      out += ";\n";
    }
    out += "    default -> ";
    print_result(block.default_result, out);
    out += ";\n  }\n";
  }
  out += "}\n";
  return out;
}

struct Evaluator::RGuard {
  GuardExpr::Kind kind;
  bool next = false;
  bool is_input = false;
  std::size_t slot = 0;
  Index value = 0;
  bool negated = false;
  std::shared_ptr<const RGuard> lhs;
  std::shared_ptr<const RGuard> rhs;
};

Evaluator::Evaluator(const ModelAst& ast)
    : ast_(&ast),
      input_space_(space_of(ast, VarKind::Input)),
      state_space_(space_of(ast, VarKind::State)),
      output_space_(space_of(ast, VarKind::Output)) {
  const auto resolve_slot = [&](const std::string& name, bool allow_input)
      -> std::pair<bool, std::size_t> {
    if (allow_input && input_space_.has_variable(name)) {
      return {true, input_space_.variable_position(name)};
    }
    return {false, state_space_.variable_position(name)};
  };

  std::function<std::shared_ptr<const RGuard>(const GuardExpr&)> resolve_guard =
      [&](const GuardExpr& g) -> std::shared_ptr<const RGuard> {
    auto node = std::make_shared<RGuard>();
    node->kind = g.kind;
    switch (g.kind) {
      case GuardExpr::Kind::Atom: {
        node->next = g.next;
        node->negated = g.negated;
        const auto [is_input, slot] = resolve_slot(g.var, !g.next);
        node->is_input = is_input;
        node->slot = slot;
        const VariableSpec& var = is_input ? input_space_.variables()[slot]
                                           : state_space_.variables()[slot];
        node->value = var.value_index(g.value);
        break;
      }
      case GuardExpr::Kind::Not:
        node->lhs = resolve_guard(*g.lhs);
        break;
      default:
        node->lhs = resolve_guard(*g.lhs);
        node->rhs = resolve_guard(*g.rhs);
        break;
    }
    return node;
  };

  const auto resolve_result = [&](const Result& r,
                                  const VariableSpec& target) -> RResult {
    RResult out;
    out.kind = r.kind;
    switch (r.kind) {
      case Result::Kind::Literal:
        out.literal_pos = target.value_index(r.name);
        break;
      case Result::Kind::Copy: {
        const auto [is_input, slot] = resolve_slot(r.name, true);
        out.src_is_input = is_input;
        out.src_slot = slot;
        break;
      }
      case Result::Kind::Next:
        out.src_slot = state_space_.variable_position(r.name);
        break;
    }
    return out;
  };

  const auto resolve_block = [&](const Block& block) -> RBlock {
    RBlock out;
    const StateSpace& target_space =
        block.is_update ? state_space_ : output_space_;
    out.target_slot = target_space.variable_position(block.var);
    const VariableSpec& target = target_space.variables()[out.target_slot];
    for (const Rule& rule : block.cases) {
      out.rules.push_back(
          {resolve_guard(*rule.guard), resolve_result(rule.result, target)});
    }
    out.rules.push_back({nullptr, resolve_result(block.default_result, target)});
    return out;
  };

  // One resolved block per state variable, in declaration order; likewise
  // for outputs.
  update_blocks_.resize(state_space_.variables().size());
  output_blocks_.resize(output_space_.variables().size());
  for (const Block& block : ast.blocks) {
    RBlock resolved = resolve_block(block);
    const std::size_t slot = resolved.target_slot;
    if (block.is_update) {
      update_blocks_[slot] = std::move(resolved);
    } else {
      output_blocks_[slot] = std::move(resolved);
      if (!output_depends_on_input_) {
        for (const Rule& rule : block.cases) {
          if (guard_reads_input(*rule.guard, input_space_)) {
            output_depends_on_input_ = true;
          }
        }
        const auto reads_input = [&](const Result& r) {
          return r.kind == Result::Kind::Copy &&
                 input_space_.has_variable(r.name);
        };
        for (const Rule& rule : block.cases) {
          if (reads_input(rule.result)) output_depends_on_input_ = true;
        }
        if (reads_input(block.default_result)) output_depends_on_input_ = true;
      }
    }
  }
}

bool Evaluator::eval_guard(const RGuard& g, std::span<const Index> input_pos,
                           std::span<const Index> state_pos,
                           std::span<const Index> next_pos) const {
  switch (g.kind) {
    case GuardExpr::Kind::Atom: {
      const Index actual = g.next          ? next_pos[g.slot]
                           : g.is_input    ? input_pos[g.slot]
                                           : state_pos[g.slot];
      return (actual == g.value) != g.negated;
    }
    case GuardExpr::Kind::Not:
      return !eval_guard(*g.lhs, input_pos, state_pos, next_pos);
    case GuardExpr::Kind::And:
      return eval_guard(*g.lhs, input_pos, state_pos, next_pos) &&
             eval_guard(*g.rhs, input_pos, state_pos, next_pos);
    case GuardExpr::Kind::Or:
      return eval_guard(*g.lhs, input_pos, state_pos, next_pos) ||
             eval_guard(*g.rhs, input_pos, state_pos, next_pos);
  }
  return false;
}

Index Evaluator::apply_result(const RResult& r,
                              std::span<const Index> input_pos,
                              std::span<const Index> state_pos,
                              std::span<const Index> next_pos) const {
  switch (r.kind) {
    case Result::Kind::Literal:
      return r.literal_pos;
    case Result::Kind::Copy:
      return r.src_is_input ? input_pos[r.src_slot] : state_pos[r.src_slot];
    case Result::Kind::Next:
      return next_pos[r.src_slot];
  }
  return 0;
}

void Evaluator::step(std::span<const Index> input_pos,
                     std::span<const Index> state_pos,
                     std::vector<Index>& next_state_pos,
                     std::vector<Index>& output_pos) const {
  next_state_pos.assign(update_blocks_.size(), 0);
  for (const RBlock& block : update_blocks_) {
    for (const RRule& rule : block.rules) {
      if (!rule.guard ||
          eval_guard(*rule.guard, input_pos, state_pos, next_state_pos)) {
        next_state_pos[block.target_slot] =
            apply_result(rule.result, input_pos, state_pos, next_state_pos);
        break;
      }
    }
  }
  output_pos.assign(output_blocks_.size(), 0);
  for (const RBlock& block : output_blocks_) {
    for (const RRule& rule : block.rules) {
      if (!rule.guard || eval_guard(*rule.guard, input_pos, state_pos, {})) {
        output_pos[block.target_slot] =
            apply_result(rule.result, input_pos, state_pos, {});
        break;
      }
    }
  }
}

std::vector<Index> Evaluator::initial_state() const {
  std::vector<Index> positions;
  for (const VarDecl& decl : ast_->decls) {
    if (decl.kind != VarKind::State) continue;
    if (!decl.init) {
      throw DomainError("state variable '" + decl.name +
                        "' has no declared initial value");
    }
    positions.push_back(VariableSpec{decl.name, decl.values}.value_index(
        *decl.init));
  }
  return positions;
}

Bcn compile(const ModelAst& ast, int threads) {
  const Evaluator ev(ast);
  const Index n = ev.state_space().dim();
  const Index m = ev.input_space().dim();
  const bool dep = ev.output_depends_on_input();

  const std::size_t n_in = ev.input_space().variables().size();
  const std::size_t n_st = ev.state_space().variables().size();

  std::vector<Index> trans(static_cast<std::size_t>(checked_mul(n, m)));
  std::vector<Index> outs(static_cast<std::size_t>(dep ? n * m : n));

  parallel_for(
      0, n * m,
      [&](Index lo, Index hi) {
        // Odometer over the concatenated (input, state) radices: combined
        // column c+1 is exactly the input-major (u, x) pair encoding.
        std::vector<Index> input_pos =
            ev.input_space().decode_positions(lo / n + 1);
        std::vector<Index> state_pos =
            ev.state_space().decode_positions(lo % n + 1);
        std::vector<Index> next_pos;
        std::vector<Index> out_pos;
        for (Index c = lo; c < hi; ++c) {
          ev.step(input_pos, state_pos, next_pos, out_pos);
          trans[static_cast<std::size_t>(c)] =
              ev.state_space().encode_positions(next_pos);
          if (dep) {
            outs[static_cast<std::size_t>(c)] =
                ev.output_space().encode_positions(out_pos);
          } else if (c < n) {
            outs[static_cast<std::size_t>(c)] =
                ev.output_space().encode_positions(out_pos);
          }
          // Advance the odometer: state digits first, carrying into input.
          bool carry = true;
          for (std::size_t i = n_st; carry && i-- > 0;) {
            const Index card =
                ev.state_space().variables()[i].cardinality();
            if (state_pos[i] < card) {
              ++state_pos[i];
              carry = false;
            } else {
              state_pos[i] = 1;
            }
          }
          for (std::size_t i = n_in; carry && i-- > 0;) {
            const Index card =
                ev.input_space().variables()[i].cardinality();
            if (input_pos[i] < card) {
              ++input_pos[i];
              carry = false;
            } else {
              input_pos[i] = 1;
            }
          }
        }
      },
      threads);

  return make_bcn(ast.name, ev.input_space(), ev.state_space(),
                  ev.output_space(), LogicalMatrix(n, std::move(trans)),
                  LogicalMatrix(ev.output_space().dim(), std::move(outs)), dep);
}

}  // namespace bcn::dsl
