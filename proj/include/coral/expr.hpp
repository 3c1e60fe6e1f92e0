#ifndef CORAL_EXPR_HPP
#define CORAL_EXPR_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace coral {

class Variable;

enum class ExprOp {
  Var, Const, Set,
  Neg, Abs, Add, Sub, Mul, Min, Max, Dist,
  Lt, Le, Ge, Gt, Eq, Ne,
  Not, And, Or, Xor, Iff, Imp, If, In,
};

const char* exprOpName(ExprOp op);
bool exprOpIsRelational(ExprOp op);  // yields a 0/1 truth value

struct ExprNode {
  ExprOp op;
  long long value = 0;            // Const
  Variable* var = nullptr;        // Var
  int scopePos = -1;              // Var: position in the owning constraint's scope
  std::vector<std::unique_ptr<ExprNode>> kids;

  explicit ExprNode(ExprOp op) : op(op) {}
  static std::unique_ptr<ExprNode> constant(long long v);
  static std::unique_ptr<ExprNode> variable(Variable* x);

  bool isConst() const { return op == ExprOp::Const; }
  bool isVar() const { return op == ExprOp::Var; }
};

struct ExprError : std::runtime_error {
  explicit ExprError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses the functional syntax used inside intension elements, e.g.
// "eq(add(x,y),z)". The resolver maps identifiers to variables and must throw
// ExprError for unknown names.
std::unique_ptr<ExprNode> parseExpression(
    const std::string& text,
    const std::function<Variable*(const std::string&)>& resolve);

// Canonical functional text; parse(print(e)) reproduces the tree.
std::string printExpression(const ExprNode& e);

// Evaluates under an assignment of the distinct variables of the tree
// (valueOf is indexed by ExprNode::scopePos). Relational/logical operators
// yield 0/1; any nonzero operand counts as true.
long long evalExpression(const ExprNode& e, const std::vector<int>& valueOf);

// Collects the distinct variables in first-occurrence order and annotates
// every Var leaf with its position in that list.
std::vector<Variable*> indexExpressionScope(ExprNode& e);

// Conservative [lo,hi] by interval arithmetic over current domains.
std::pair<long long, long long> exprBounds(const ExprNode& e);

std::unique_ptr<ExprNode> cloneExpression(const ExprNode& e);

}  // namespace coral

#endif
