#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcn/network.hpp"

namespace bcn::dsl {

struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class VarKind { Input, State, Output };

struct VarDecl {
  VarKind kind;
  std::string name;
  std::vector<std::string> values;
  std::optional<std::string> init;  // state variables only
  SourcePos pos;
};

/// Guard expression tree. Atoms compare a variable (optionally its staged
/// next-value) against a value label.
struct GuardExpr {
  enum class Kind { Atom, Not, And, Or };
  Kind kind = Kind::Atom;
  bool next = false;
  std::string var;
  std::string value;
  bool negated = false;  // != instead of ==
  std::shared_ptr<const GuardExpr> lhs;
  std::shared_ptr<const GuardExpr> rhs;
};

using GuardPtr = std::shared_ptr<const GuardExpr>;

struct Result {
  enum class Kind { Literal, Copy, Next };
  Kind kind = Kind::Literal;
  std::string name;  // value label (Literal) or variable name (Copy/Next)
};

struct Rule {
  GuardPtr guard;  // null only for the default rule
  Result result;
  SourcePos pos;
};

struct Block {
  bool is_update = true;  // update vs output block
  std::string var;
  std::vector<Rule> cases;  // in source order, first match wins
  Result default_result;
  SourcePos pos;
};

struct ModelAst {
  std::string name;
  std::vector<VarDecl> decls;
  std::vector<Block> blocks;

  std::vector<VarDecl> decls_of(VarKind kind) const;
};

/// Structural equality, ignoring source positions.
bool ast_equal(const ModelAst& a, const ModelAst& b);

/// Parses and fully resolves a model source. Throws ParseError with
/// line/column on syntax errors, undeclared names, forward next()
/// references, or missing defaults.
ModelAst parse(std::string_view text);

/// Canonical source text; parse(pretty_print(ast)) is structurally equal
/// to ast.
std::string pretty_print(const ModelAst& ast);

/// Direct rule evaluation over a validated AST; the independent semantic
/// reference the compiled matrices are checked against.
class Evaluator {
 public:
  explicit Evaluator(const ModelAst& ast);

  const StateSpace& input_space() const { return input_space_; }
  const StateSpace& state_space() const { return state_space_; }
  const StateSpace& output_space() const { return output_space_; }
  bool output_depends_on_input() const { return output_depends_on_input_; }

  /// One synchronous update over 1-based per-variable positions. Update
  /// blocks run in state declaration order so staged next() reads are
  /// already available; outputs are computed from the pre-update state.
  void step(std::span<const Index> input_pos, std::span<const Index> state_pos,
            std::vector<Index>& next_state_pos,
            std::vector<Index>& output_pos) const;

  /// Declared initial state positions; throws DomainError if any state
  /// variable lacks an init clause.
  std::vector<Index> initial_state() const;

 private:
  struct RGuard;
  struct RResult {
    Result::Kind kind;
    Index literal_pos = 0;  // Literal
    bool src_is_input = false;
    std::size_t src_slot = 0;  // Copy/Next
  };
  struct RRule {
    std::shared_ptr<const RGuard> guard;  // null for default
    RResult result;
  };
  struct RBlock {
    std::size_t target_slot;
    std::vector<RRule> rules;  // cases followed by the default
  };

  bool eval_guard(const RGuard& g, std::span<const Index> input_pos,
                  std::span<const Index> state_pos,
                  std::span<const Index> next_pos) const;
  Index apply_result(const RResult& r, std::span<const Index> input_pos,
                     std::span<const Index> state_pos,
                     std::span<const Index> next_pos) const;

  const ModelAst* ast_;
  StateSpace input_space_;
  StateSpace state_space_;
  StateSpace output_space_;
  bool output_depends_on_input_ = false;
  std::vector<RBlock> update_blocks_;  // state declaration order
  std::vector<RBlock> output_blocks_;  // output declaration order
};

/// Exhaustive enumeration of the rule semantics into transition and output
/// matrices. `threads` <= 0 uses the process default.
Bcn compile(const ModelAst& ast, int threads = 0);

}  // namespace bcn::dsl
