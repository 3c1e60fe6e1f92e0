#include "coral/expr.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

#include "coral/variable.hpp"

namespace coral {

namespace {

struct OpInfo {
  ExprOp op;
  const char* name;
  int minArity;
  int maxArity;  // -1 = unbounded
};

const OpInfo kOps[] = {
    {ExprOp::Neg, "neg", 1, 1},   {ExprOp::Abs, "abs", 1, 1},
    {ExprOp::Add, "add", 2, -1},  {ExprOp::Sub, "sub", 2, 2},
    {ExprOp::Mul, "mul", 2, -1},  {ExprOp::Min, "min", 2, -1},
    {ExprOp::Max, "max", 2, -1},  {ExprOp::Dist, "dist", 2, 2},
    {ExprOp::Lt, "lt", 2, 2},     {ExprOp::Le, "le", 2, 2},
    {ExprOp::Ge, "ge", 2, 2},     {ExprOp::Gt, "gt", 2, 2},
    {ExprOp::Eq, "eq", 2, -1},    {ExprOp::Ne, "ne", 2, 2},
    {ExprOp::Not, "not", 1, 1},   {ExprOp::And, "and", 2, -1},
    {ExprOp::Or, "or", 2, -1},    {ExprOp::Xor, "xor", 2, -1},
    {ExprOp::Iff, "iff", 2, -1},  {ExprOp::Imp, "imp", 2, 2},
    {ExprOp::If, "if", 3, 3},     {ExprOp::In, "in", 2, 2},
    {ExprOp::Set, "set", 0, -1},
};

const OpInfo* opByName(const std::string& n) {
  for (const auto& i : kOps)
    if (n == i.name) return &i;
  return nullptr;
}

const OpInfo* opInfo(ExprOp op) {
  for (const auto& i : kOps)
    if (op == i.op) return &i;
  return nullptr;
}

class Parser {
 public:
  Parser(const std::string& text,
         const std::function<Variable*(const std::string&)>& resolve)
      : s_(text), resolve_(resolve) {}

  std::unique_ptr<ExprNode> run() {
    auto e = parseNode();
    skipWs();
    if (pos_ != s_.size()) fail("trailing characters after expression");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ExprError(msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skipWs() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::unique_ptr<ExprNode> parseNode() {
    skipWs();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return parseInt();
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
      fail("unexpected character");
    std::string ident = parseIdent();
    skipWs();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      const OpInfo* info = opByName(ident);
      if (!info) fail("unknown operator \"" + ident + "\"");
      ++pos_;  // '('
      auto node = std::make_unique<ExprNode>(info->op);
      skipWs();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          node->kids.push_back(parseNode());
          skipWs();
          if (pos_ >= s_.size()) fail("missing ')'");
          if (s_[pos_] == ',') { ++pos_; continue; }
          if (s_[pos_] == ')') { ++pos_; break; }
          fail("expected ',' or ')'");
        }
      }
      int n = static_cast<int>(node->kids.size());
      if (n < info->minArity || (info->maxArity != -1 && n > info->maxArity))
        fail(std::string("operator \"") + info->name + "\" applied to " +
             std::to_string(n) + " operand(s)");
      if (info->op == ExprOp::In) {
        if (node->kids[1]->op != ExprOp::Set)
          fail("second operand of \"in\" must be a set");
        for (auto& k : node->kids[1]->kids)
          if (!k->isConst()) fail("set literals may only contain integers");
      }
      return node;
    }
    Variable* x = resolve_(ident);
    if (!x) fail("unknown identifier \"" + ident + "\"");
    return ExprNode::variable(x);
  }

  std::unique_ptr<ExprNode> parseInt() {
    size_t start = pos_;
    if (s_[pos_] == '-') ++pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("malformed integer");
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return ExprNode::constant(std::stoll(s_.substr(start, pos_ - start)));
  }

  std::string parseIdent() {
    size_t start = pos_;
    auto cont = [&](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '[' || c == ']';
    };
    while (pos_ < s_.size() && cont(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  const std::string& s_;
  const std::function<Variable*(const std::string&)>& resolve_;
  size_t pos_ = 0;
};

void collectScope(ExprNode& e, std::vector<Variable*>& scope) {
  if (e.isVar()) {
    for (size_t i = 0; i < scope.size(); ++i)
      if (scope[i] == e.var) {
        e.scopePos = static_cast<int>(i);
        return;
      }
    e.scopePos = static_cast<int>(scope.size());
    scope.push_back(e.var);
    return;
  }
  for (auto& k : e.kids) collectScope(*k, scope);
}

}  // namespace

const char* exprOpName(ExprOp op) {
  if (op == ExprOp::Var) return "<var>";
  if (op == ExprOp::Const) return "<const>";
  const OpInfo* i = opInfo(op);
  return i ? i->name : "?";
}

bool exprOpIsRelational(ExprOp op) {
  switch (op) {
    case ExprOp::Lt: case ExprOp::Le: case ExprOp::Ge: case ExprOp::Gt:
    case ExprOp::Eq: case ExprOp::Ne: case ExprOp::Not: case ExprOp::And:
    case ExprOp::Or: case ExprOp::Xor: case ExprOp::Iff: case ExprOp::Imp:
    case ExprOp::In:
      return true;
    default:
      return false;
  }
}

std::unique_ptr<ExprNode> ExprNode::constant(long long v) {
  auto e = std::make_unique<ExprNode>(ExprOp::Const);
  e->value = v;
  return e;
}

std::unique_ptr<ExprNode> ExprNode::variable(Variable* x) {
  auto e = std::make_unique<ExprNode>(ExprOp::Var);
  e->var = x;
  return e;
}

std::unique_ptr<ExprNode> parseExpression(
    const std::string& text,
    const std::function<Variable*(const std::string&)>& resolve) {
  return Parser(text, resolve).run();
}

std::string printExpression(const ExprNode& e) {
  switch (e.op) {
    case ExprOp::Const: return std::to_string(e.value);
    case ExprOp::Var: return e.var->name;
    default: {
      std::string out = exprOpName(e.op);
      out += '(';
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ',';
        out += printExpression(*e.kids[i]);
      }
      out += ')';
      return out;
    }
  }
}

long long evalExpression(const ExprNode& e, const std::vector<int>& valueOf) {
  auto ev = [&](size_t i) { return evalExpression(*e.kids[i], valueOf); };
  switch (e.op) {
    case ExprOp::Const: return e.value;
    case ExprOp::Var: return valueOf[e.scopePos];
    case ExprOp::Neg: return -ev(0);
    case ExprOp::Abs: { long long v = ev(0); return v < 0 ? -v : v; }
    case ExprOp::Add: { long long s = 0; for (size_t i = 0; i < e.kids.size(); ++i) s += ev(i); return s; }
    case ExprOp::Sub: return ev(0) - ev(1);
    case ExprOp::Mul: { long long p = 1; for (size_t i = 0; i < e.kids.size(); ++i) p *= ev(i); return p; }
    case ExprOp::Min: { long long m = ev(0); for (size_t i = 1; i < e.kids.size(); ++i) m = std::min(m, ev(i)); return m; }
    case ExprOp::Max: { long long m = ev(0); for (size_t i = 1; i < e.kids.size(); ++i) m = std::max(m, ev(i)); return m; }
    case ExprOp::Dist: { long long d = ev(0) - ev(1); return d < 0 ? -d : d; }
    case ExprOp::Lt: return ev(0) < ev(1);
    case ExprOp::Le: return ev(0) <= ev(1);
    case ExprOp::Ge: return ev(0) >= ev(1);
    case ExprOp::Gt: return ev(0) > ev(1);
    case ExprOp::Eq: {
      long long v = ev(0);
      for (size_t i = 1; i < e.kids.size(); ++i)
        if (ev(i) != v) return 0;
      return 1;
    }
    case ExprOp::Ne: return ev(0) != ev(1);
    case ExprOp::Not: return ev(0) == 0;
    case ExprOp::And: { for (size_t i = 0; i < e.kids.size(); ++i) if (ev(i) == 0) return 0; return 1; }
    case ExprOp::Or: { for (size_t i = 0; i < e.kids.size(); ++i) if (ev(i) != 0) return 1; return 0; }
    case ExprOp::Xor: { long long p = 0; for (size_t i = 0; i < e.kids.size(); ++i) p ^= (ev(i) != 0); return p; }
    case ExprOp::Iff: {
      bool b = ev(0) != 0;
      for (size_t i = 1; i < e.kids.size(); ++i)
        if ((ev(i) != 0) != b) return 0;
      return 1;
    }
    case ExprOp::Imp: return ev(0) == 0 || ev(1) != 0;
    case ExprOp::If: return ev(0) != 0 ? ev(1) : ev(2);
    case ExprOp::In: {
      long long v = ev(0);
      for (auto& k : e.kids[1]->kids)
        if (k->value == v) return 1;
      return 0;
    }
    case ExprOp::Set: throw ExprError("set literal evaluated outside \"in\"");
  }
  return 0;
}

std::vector<Variable*> indexExpressionScope(ExprNode& e) {
  std::vector<Variable*> scope;
  collectScope(e, scope);
  return scope;
}

std::pair<long long, long long> exprBounds(const ExprNode& e) {
  using P = std::pair<long long, long long>;
  auto b = [&](size_t i) { return exprBounds(*e.kids[i]); };
  switch (e.op) {
    case ExprOp::Const: return {e.value, e.value};
    case ExprOp::Var: return {e.var->dom.firstValue(), e.var->dom.lastValue()};
    case ExprOp::Neg: { P a = b(0); return {-a.second, -a.first}; }
    case ExprOp::Abs: {
      P a = b(0);
      if (a.first >= 0) return a;
      if (a.second <= 0) return {-a.second, -a.first};
      return {0, std::max(-a.first, a.second)};
    }
    case ExprOp::Add: {
      long long lo = 0, hi = 0;
      for (size_t i = 0; i < e.kids.size(); ++i) { P a = b(i); lo += a.first; hi += a.second; }
      return {lo, hi};
    }
    case ExprOp::Sub: { P a = b(0), c = b(1); return {a.first - c.second, a.second - c.first}; }
    case ExprOp::Mul: {
      P acc = b(0);
      for (size_t i = 1; i < e.kids.size(); ++i) {
        P c = b(i);
        long long cands[] = {acc.first * c.first, acc.first * c.second,
                             acc.second * c.first, acc.second * c.second};
        acc = {*std::min_element(std::begin(cands), std::end(cands)),
               *std::max_element(std::begin(cands), std::end(cands))};
      }
      return acc;
    }
    case ExprOp::Min: {
      P acc = b(0);
      for (size_t i = 1; i < e.kids.size(); ++i) {
        P c = b(i);
        acc = {std::min(acc.first, c.first), std::min(acc.second, c.second)};
      }
      return acc;
    }
    case ExprOp::Max: {
      P acc = b(0);
      for (size_t i = 1; i < e.kids.size(); ++i) {
        P c = b(i);
        acc = {std::max(acc.first, c.first), std::max(acc.second, c.second)};
      }
      return acc;
    }
    case ExprOp::Dist: {
      P a = b(0), c = b(1);
      long long lo = a.first - c.second, hi = a.second - c.first;  // bounds of a-c
      if (lo >= 0) return {lo, hi};
      if (hi <= 0) return {-hi, -lo};
      return {0, std::max(-lo, hi)};
    }
    case ExprOp::If: {
      P t = b(1), f = b(2);
      return {std::min(t.first, f.first), std::max(t.second, f.second)};
    }
    default:
      return {0, 1};  // relational operators
  }
}

std::unique_ptr<ExprNode> cloneExpression(const ExprNode& e) {
  auto out = std::make_unique<ExprNode>(e.op);
  out->value = e.value;
  out->var = e.var;
  out->scopePos = e.scopePos;
  for (auto& k : e.kids) out->kids.push_back(cloneExpression(*k));
  return out;
}

}  // namespace coral
