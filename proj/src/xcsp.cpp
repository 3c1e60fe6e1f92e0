#include "coral/xcsp.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <map>
#include <set>

#include "coral/expr.hpp"
#include "coral/globals.hpp"
#include "coral/intension.hpp"
#include "coral/objective.hpp"

namespace coral {

namespace {

[[noreturn]] void fail(const XmlNode& n, const std::string& msg) {
  throw ParseError(n.line, n.col, "<" + n.tag + ">: " + msg);
}

std::string trimCopy(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> splitWs(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

// Whitespace split, but keeps parenthesized expressions together so that
// "add(x, 1) y" yields two items.
std::vector<std::string> tokenizeItems(const std::string& s) {
  std::vector<std::string> toks = splitWs(s);
  std::vector<std::string> out;
  int depth = 0;
  for (auto& t : toks) {
    if (depth > 0) {
      out.back() += t;
    } else {
      out.push_back(t);
    }
    depth = 0;
    for (char c : out.back()) {
      if (c == '(') ++depth;
      else if (c == ')') --depth;
    }
    depth = std::max(depth, 0);
  }
  return out;
}

bool parseLL(const std::string& s, long long* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

bool cmpFromWord(const std::string& w, CmpOp* out) {
  if (w == "lt") *out = CmpOp::Lt;
  else if (w == "le") *out = CmpOp::Le;
  else if (w == "ge") *out = CmpOp::Ge;
  else if (w == "gt") *out = CmpOp::Gt;
  else if (w == "eq") *out = CmpOp::Eq;
  else if (w == "ne") *out = CmpOp::Ne;
  else return false;
  return true;
}

// Domain text: whitespace-separated integers and "a..b" ranges.
struct DomainSpec {
  bool isRange = false;
  int lo = 0, hi = 0;
  std::vector<int> values;
};

int checkedInt(long long v, const XmlNode& at) {
  if (v <= INT_MIN || v > INT_MAX) fail(at, "value " + std::to_string(v) + " out of range");
  return static_cast<int>(v);
}

bool parseRangeToken(const std::string& t, long long* lo, long long* hi) {
  size_t dots = t.find("..");
  if (dots == std::string::npos) return false;
  return parseLL(t.substr(0, dots), lo) && parseLL(t.substr(dots + 2), hi);
}

DomainSpec parseDomainText(const std::string& text, const XmlNode& at) {
  DomainSpec d;
  std::vector<std::string> toks = splitWs(text);
  if (toks.empty()) fail(at, "empty domain");
  long long lo, hi;
  if (toks.size() == 1 && parseRangeToken(toks[0], &lo, &hi)) {
    if (lo > hi) fail(at, "empty range " + toks[0]);
    d.isRange = true;
    d.lo = checkedInt(lo, at);
    d.hi = checkedInt(hi, at);
    return d;
  }
  for (auto& t : toks) {
    if (parseRangeToken(t, &lo, &hi)) {
      if (lo > hi) fail(at, "empty range " + t);
      for (long long v = lo; v <= hi; ++v) d.values.push_back(checkedInt(v, at));
    } else if (parseLL(t, &lo)) {
      d.values.push_back(checkedInt(lo, at));
    } else {
      fail(at, "malformed domain token '" + t + "'");
    }
  }
  std::sort(d.values.begin(), d.values.end());
  for (size_t i = 1; i < d.values.size(); ++i)
    if (d.values[i] == d.values[i - 1])
      fail(at, "duplicate domain value " + std::to_string(d.values[i]));
  return d;
}

void requireAttrs(const XmlNode& n, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : n.attrs) {
    (void)v;
    bool ok = (k == "id" || k == "class" || k == "note");
    for (const char* a : allowed)
      if (k == a) ok = true;
    if (!ok) fail(n, "unsupported attribute '" + k + "'");
  }
}

// ---------------------------------------------------------------- parsing --

void substPlaceholders(XmlNode& n, const std::vector<std::string>& args) {
  for (int i = static_cast<int>(args.size()) - 1; i >= 0; --i) {
    const std::string ph = "%" + std::to_string(i);
    size_t pos = 0;
    while ((pos = n.text.find(ph, pos)) != std::string::npos) {
      n.text.replace(pos, ph.size(), args[i]);
      pos += args[i].size();
    }
  }
  if (n.text.find('%') != std::string::npos)
    fail(n, "unsubstituted group placeholder in '" + n.text + "'");
  for (auto& k : n.kids) substPlaceholders(k, args);
}

void walkConstraints(const XmlNode& n, InstanceDoc& doc) {
  for (const auto& kid : n.kids) {
    if (kid.tag == "block") {
      walkConstraints(kid, doc);
    } else if (kid.tag == "group") {
      if (kid.kids.empty()) fail(kid, "empty group");
      const XmlNode& tmpl = kid.kids.front();
      if (tmpl.tag == "args") fail(kid, "group without a constraint template");
      bool any = false;
      for (size_t i = 1; i < kid.kids.size(); ++i) {
        const XmlNode& a = kid.kids[i];
        if (a.tag != "args") fail(a, "expected <args> in group");
        XmlNode inst = tmpl;
        substPlaceholders(inst, splitWs(a.text));
        doc.ctrs.push_back(std::move(inst));
        any = true;
      }
      if (!any) fail(kid, "group without <args>");
    } else {
      doc.ctrs.push_back(kid);
    }
  }
}

void parseVariables(const XmlNode& n, InstanceDoc& doc) {
  for (const auto& kid : n.kids) {
    if (kid.tag == "var") {
      requireAttrs(kid, {});
      const std::string* id = kid.attr("id");
      if (!id) fail(kid, "missing id");
      if (!kid.kids.empty()) fail(kid, "structured domains are not supported");
      doc.vars.push_back({*id, kid.text, {}, kid.line});
    } else if (kid.tag == "array") {
      requireAttrs(kid, {"size"});
      const std::string* id = kid.attr("id");
      const std::string* size = kid.attr("size");
      if (!id) fail(kid, "missing id");
      if (!size) fail(kid, "missing size");
      if (!kid.kids.empty())
        fail(kid, "per-cell <domain> declarations are not supported");
      std::vector<int> sizes;
      size_t p = 0;
      while (p < size->size()) {
        if ((*size)[p] != '[') fail(kid, "malformed size '" + *size + "'");
        size_t close = size->find(']', p);
        if (close == std::string::npos) fail(kid, "malformed size '" + *size + "'");
        long long v;
        if (!parseLL(size->substr(p + 1, close - p - 1), &v) || v <= 0)
          fail(kid, "malformed size '" + *size + "'");
        sizes.push_back(checkedInt(v, kid));
        p = close + 1;
      }
      if (sizes.empty() || sizes.size() > 2)
        fail(kid, "only 1- and 2-dimensional arrays are supported");
      doc.vars.push_back({*id, kid.text, sizes, kid.line});
    } else {
      fail(kid, "unsupported variable declaration");
    }
  }
}

}  // namespace

InstanceDoc parseInstance(const std::string& xmlText) {
  XmlNode root = parseXml(xmlText);
  if (root.tag != "instance") fail(root, "root element must be <instance>");
  requireAttrs(root, {"format", "type"});
  InstanceDoc doc;
  if (const std::string* t = root.attr("type")) {
    if (*t == "COP") doc.cop = true;
    else if (*t != "CSP") fail(root, "unsupported instance type '" + *t + "'");
  }
  for (const auto& kid : root.kids) {
    if (kid.tag == "variables") {
      parseVariables(kid, doc);
    } else if (kid.tag == "constraints") {
      walkConstraints(kid, doc);
    } else if (kid.tag == "objectives") {
      for (const auto& ob : kid.kids) {
        if (ob.tag != "minimize" && ob.tag != "maximize")
          fail(ob, "unsupported objective element");
        if (doc.hasObjective) fail(ob, "only one objective is supported");
        doc.hasObjective = true;
        doc.objective = ob;
      }
      if (!doc.hasObjective) fail(kid, "empty objectives");
    } else {
      fail(kid, "unsupported element");
    }
  }
  return doc;
}

std::string printInstance(const InstanceDoc& doc) {
  XmlNode inst;
  inst.tag = "instance";
  inst.attrs = {{"format", "XCSP3"}, {"type", doc.cop ? "COP" : "CSP"}};
  XmlNode vars;
  vars.tag = "variables";
  for (const auto& d : doc.vars) {
    XmlNode v;
    v.tag = d.sizes.empty() ? "var" : "array";
    v.attrs.emplace_back("id", d.id);
    if (!d.sizes.empty()) {
      std::string s;
      for (int k : d.sizes) s += "[" + std::to_string(k) + "]";
      v.attrs.emplace_back("size", s);
    }
    v.text = d.domainText;
    vars.kids.push_back(std::move(v));
  }
  inst.kids.push_back(std::move(vars));
  XmlNode cs;
  cs.tag = "constraints";
  cs.kids = doc.ctrs;
  inst.kids.push_back(std::move(cs));
  if (doc.hasObjective) {
    XmlNode obj;
    obj.tag = "objectives";
    obj.kids.push_back(doc.objective);
    inst.kids.push_back(std::move(obj));
  }
  return printXml(inst);
}

// ---------------------------------------------------------------- building --

namespace {

class Builder {
 public:
  Builder(Problem& pb, const BuildOptions& opts) : pb_(pb), opts_(opts) {}

  long long dropped = 0;

  void declare(const std::vector<VarDecl>& decls) {
    for (const auto& d : decls) {
      XmlNode at;
      at.tag = d.sizes.empty() ? "var" : "array";
      at.line = d.line;
      if (byName_.count(d.id) || arrays_.count(d.id))
        fail(at, "duplicate id '" + d.id + "'");
      DomainSpec ds = parseDomainText(d.domainText, at);
      if (d.sizes.empty()) {
        byName_[d.id] = &addVar(d.id, ds);
        continue;
      }
      ArrayInfo info;
      info.sizes = d.sizes;
      int total = 1;
      for (int s : d.sizes) total *= s;
      for (int k = 0; k < total; ++k) {
        std::string name = d.id;
        if (d.sizes.size() == 1) {
          name += "[" + std::to_string(k) + "]";
        } else {
          name += "[" + std::to_string(k / d.sizes[1]) + "]" +
                  "[" + std::to_string(k % d.sizes[1]) + "]";
        }
        Variable& v = addVar(name, ds);
        byName_[name] = &v;
        info.cells.push_back(&v);
      }
      arrays_[d.id] = std::move(info);
    }
  }

  void buildCtr(const XmlNode& n) {
    requireAttrs(n, {});
    if (n.tag == "extension") buildExtension(n);
    else if (n.tag == "intension") buildIntension(n);
    else if (n.tag == "allDifferent") buildAllDifferent(n);
    else if (n.tag == "allEqual") buildAllEqual(n);
    else if (n.tag == "ordered") buildOrdered(n);
    else if (n.tag == "lex") buildLex(n);
    else if (n.tag == "precedence") buildPrecedence(n);
    else if (n.tag == "sum") buildSum(n);
    else if (n.tag == "count") buildCount(n);
    else if (n.tag == "nValues") buildNValues(n);
    else if (n.tag == "minimum") buildMinimum(n);
    else if (n.tag == "maximum") buildMaximum(n);
    else if (n.tag == "element") buildElement(n);
    else if (n.tag == "channel") buildChannel(n);
    else fail(n, "unsupported constraint");
  }

  void buildObjective(const XmlNode& n) {
    requireAttrs(n, {"type"});
    bool minimize = n.tag == "minimize";
    std::string type = "expression";
    if (const std::string* t = n.attr("type")) type = *t;
    ObjectiveConstraint* obj = nullptr;
    if (type == "expression") {
      allowKids(n, {});
      if (n.text.find('(') != std::string::npos)
        fail(n, "objective expressions beyond a single variable are not supported");
      std::vector<Variable*> vars = varsOf(n, n.text);
      if (vars.size() != 1) fail(n, "objective expression must be a single variable");
      obj = &pb_.post<ObjectiveVar>(vars[0], minimize);
    } else if (type == "sum") {
      allowKids(n, {"list", "coeffs"});
      std::vector<Variable*> vars = listVars(n);
      std::vector<long long> coeffs = coeffsOf(n, vars.size());
      obj = &pb_.post<ObjectiveSum>(vars, coeffs, minimize);
    } else if (type == "minimum") {
      obj = &pb_.post<ObjectiveMin>(listVars(n), minimize);
    } else if (type == "maximum") {
      obj = &pb_.post<ObjectiveMax>(listVars(n), minimize);
    } else if (type == "nValues") {
      obj = &pb_.post<ObjectiveNValues>(listVars(n), minimize);
    } else {
      fail(n, "unsupported objective type '" + type + "'");
    }
    pb_.objective = obj;
  }

 private:
  struct ArrayInfo {
    std::vector<int> sizes;
    std::vector<Variable*> cells;
  };

  // Unknown children must be rejected, not skipped: ignoring, say, a
  // <lengths> element would silently change the constraint's meaning.
  void allowKids(const XmlNode& n, std::initializer_list<const char*> allowed) {
    for (const auto& kid : n.kids) {
      bool ok = false;
      for (const char* a : allowed)
        if (kid.tag == a) ok = true;
      if (!ok) fail(kid, "unsupported inside <" + n.tag + ">");
    }
  }

  Variable& addVar(const std::string& name, const DomainSpec& ds) {
    return ds.isRange ? pb_.addVariable(name, ds.lo, ds.hi)
                      : pb_.addVariable(name, ds.values);
  }

  Variable* lookup(const std::string& name) {
    auto it = byName_.find(name);
    return it == byName_.end() ? nullptr : it->second;
  }

  // A variable reference: a scalar id, an array cell, or an array slice
  // (x[], x[i] on a matrix, x[i][]); slices expand row-major.
  void expandRef(const std::string& tok, const XmlNode& at,
                 std::vector<Variable*>* out) {
    size_t b = tok.find('[');
    if (b == std::string::npos) {
      if (Variable* v = lookup(tok)) {
        out->push_back(v);
        return;
      }
      if (arrays_.count(tok))
        fail(at, "array '" + tok + "' referenced without brackets (use " + tok + "[])");
      fail(at, "unknown variable '" + tok + "'");
    }
    std::string base = tok.substr(0, b);
    auto it = arrays_.find(base);
    if (it == arrays_.end()) fail(at, "unknown array '" + base + "'");
    const ArrayInfo& info = it->second;
    std::vector<std::string> groups;
    size_t p = b;
    while (p < tok.size()) {
      if (tok[p] != '[') fail(at, "malformed reference '" + tok + "'");
      size_t close = tok.find(']', p);
      if (close == std::string::npos) fail(at, "malformed reference '" + tok + "'");
      groups.push_back(tok.substr(p + 1, close - p - 1));
      p = close + 1;
    }
    if (groups.size() > info.sizes.size())
      fail(at, "too many subscripts in '" + tok + "'");
    // Fixed index per dimension, or -1 for the full range.
    std::vector<int> sel(info.sizes.size(), -1);
    for (size_t d = 0; d < groups.size(); ++d) {
      if (groups[d].empty()) continue;
      long long v;
      if (!parseLL(groups[d], &v) || v < 0 || v >= info.sizes[d])
        fail(at, "subscript out of range in '" + tok + "'");
      sel[d] = static_cast<int>(v);
    }
    if (info.sizes.size() == 1) {
      if (sel[0] >= 0) out->push_back(info.cells[sel[0]]);
      else for (Variable* v : info.cells) out->push_back(v);
      return;
    }
    int rows = info.sizes[0], cols = info.sizes[1];
    for (int i = 0; i < rows; ++i) {
      if (sel[0] >= 0 && i != sel[0]) continue;
      for (int j = 0; j < cols; ++j) {
        if (sel[1] >= 0 && j != sel[1]) continue;
        out->push_back(info.cells[i * cols + j]);
      }
    }
  }

  std::vector<Variable*> varsOf(const XmlNode& at, const std::string& text) {
    std::vector<Variable*> out;
    for (const auto& t : splitWs(text)) expandRef(t, at, &out);
    if (out.empty()) fail(at, "empty variable list");
    return out;
  }

  // <list> child if present, else the element's own text.
  std::vector<Variable*> listVars(const XmlNode& n) {
    const XmlNode* list = n.child("list");
    if (list) {
      requireAttrs(*list, {"startIndex"});
      return varsOf(*list, list->text);
    }
    return varsOf(n, n.text);
  }

  std::vector<long long> intsOf(const XmlNode& at, const std::string& text) {
    std::vector<long long> out;
    for (const auto& t : splitWs(text)) {
      long long v;
      if (!parseLL(t, &v)) fail(at, "expected an integer, got '" + t + "'");
      out.push_back(v);
    }
    return out;
  }

  std::vector<long long> coeffsOf(const XmlNode& n, size_t arity) {
    const XmlNode* co = n.child("coeffs");
    if (!co) return std::vector<long long>(arity, 1);
    std::vector<long long> coeffs = intsOf(*co, co->text);
    if (coeffs.size() != arity)
      fail(*co, "coefficient count does not match the list");
    return coeffs;
  }

  int startIndexOf(const XmlNode& list) {
    const std::string* s = list.attr("startIndex");
    if (!s) return 0;
    long long v;
    if (!parseLL(*s, &v)) fail(list, "malformed startIndex '" + *s + "'");
    return checkedInt(v, list);
  }

  Condition conditionOf(const XmlNode& n) {
    const XmlNode* c = n.child("condition");
    if (!c) fail(n, "missing <condition>");
    std::string t = trimCopy(c->text);
    if (t.size() < 3 || t.front() != '(' || t.back() != ')')
      fail(*c, "malformed condition '" + t + "'");
    std::string inner = t.substr(1, t.size() - 2);
    size_t comma = inner.find(',');
    if (comma == std::string::npos) fail(*c, "malformed condition '" + t + "'");
    std::string opw = trimCopy(inner.substr(0, comma));
    std::string operand = trimCopy(inner.substr(comma + 1));
    Condition cond;
    if (!cmpFromWord(opw, &cond.op))
      fail(*c, "unsupported condition operator '" + opw + "'");
    long long k;
    if (parseLL(operand, &k)) {
      cond.var = nullptr;
      cond.k = k;
    } else {
      std::vector<Variable*> vs;
      expandRef(operand, *c, &vs);
      if (vs.size() != 1) fail(*c, "condition operand must be a single variable");
      cond.var = vs[0];
      cond.k = 0;
    }
    return cond;
  }

  std::unique_ptr<ExprNode> exprOf(const XmlNode& at, const std::string& text) {
    try {
      return parseExpression(text, [this, &at](const std::string& name) {
        if (Variable* v = lookup(name)) return v;
        fail(at, "unknown variable '" + name + "' in expression");
      });
    } catch (const ExprError& e) {
      fail(at, std::string("bad expression: ") + e.what());
    }
  }

  void applyName(Constraint* c, const XmlNode& n) {
    if (c == nullptr) return;
    if (const std::string* id = n.attr("id")) c->name = *id;
  }

  // Expression items (anything with parentheses) become fresh auxiliary
  // variables tied to the expression by an equality.
  Variable* itemVar(const std::string& tok, const XmlNode& at) {
    if (tok.find('(') == std::string::npos) {
      std::vector<Variable*> vs;
      expandRef(tok, at, &vs);
      if (vs.size() != 1)
        fail(at, "'" + tok + "' expands to several variables; expected one");
      return vs[0];
    }
    std::unique_ptr<ExprNode> tree = exprOf(at, tok);
    if (tree->isVar()) return tree->var;
    auto [lo, hi] = exprBounds(*tree);
    if (hi - lo > 1000000) fail(at, "expression range too large in '" + tok + "'");
    std::string name;
    do {
      name = "_aux" + std::to_string(auxCount_++);
    } while (byName_.count(name));
    Variable& aux = pb_.addVariable(name, checkedInt(lo, at), checkedInt(hi, at));
    byName_[name] = &aux;
    auto eq = std::make_unique<ExprNode>(ExprOp::Eq);
    eq->kids.push_back(ExprNode::variable(&aux));
    eq->kids.push_back(std::move(tree));
    postIntension(pb_, std::move(eq));
    return &aux;
  }

  std::vector<Variable*> itemVars(const XmlNode& n) {
    const XmlNode* list = n.child("list");
    const XmlNode& at = list ? *list : n;
    std::vector<Variable*> out;
    for (const auto& t : tokenizeItems(list ? list->text : n.text)) {
      if (t.find('(') == std::string::npos)
        expandRef(t, at, &out);  // plain refs may be whole-array slices
      else
        out.push_back(itemVar(t, at));
    }
    if (out.empty()) fail(at, "empty variable list");
    return out;
  }

  // ---- constraint elements ----

  void buildExtension(const XmlNode& n) {
    allowKids(n, {"list", "supports", "conflicts"});
    const XmlNode* list = n.child("list");
    if (!list) fail(n, "missing <list>");
    std::vector<Variable*> vars = varsOf(*list, list->text);
    const XmlNode* sup = n.child("supports");
    const XmlNode* con = n.child("conflicts");
    if (sup && con) fail(n, "both <supports> and <conflicts>");
    if (!sup && !con) fail(n, "missing <supports> or <conflicts>");
    bool positive = sup != nullptr;
    const XmlNode& body = positive ? *sup : *con;
    int arity = static_cast<int>(vars.size());

    std::vector<std::vector<int>> rows;
    if (arity == 1) {
      for (const auto& t : splitWs(body.text)) {
        long long lo, hi;
        if (parseRangeToken(t, &lo, &hi)) {
          for (long long v = lo; v <= hi; ++v) rows.push_back({checkedInt(v, body)});
        } else if (parseLL(t, &lo)) {
          rows.push_back({checkedInt(lo, body)});
        } else {
          fail(body, "malformed value '" + t + "'");
        }
      }
    } else {
      rows = parseTuples(body, arity);
    }

    if (rows.empty()) {
      if (positive) pb_.triviallyFalse = true;  // no allowed tuple
      return;  // empty conflict set: tautology
    }
    int d = 0;
    auto table = std::make_shared<Table>(Table::fromValues(vars, rows, positive, &d));
    dropped += d;
    if (table->rows.empty()) {
      if (positive) pb_.triviallyFalse = true;
      return;
    }
    if (!positive && table->starred) fail(n, "starred conflict tables are not supported");
    Constraint& c = postTableConstraint(pb_, vars, table, opts_.table);
    applyName(&c, n);
  }

  std::vector<std::vector<int>> parseTuples(const XmlNode& body, int arity) {
    std::vector<std::vector<int>> rows;
    const std::string& s = body.text;
    size_t i = 0;
    auto skip = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip();
    while (i < s.size()) {
      if (s[i] != '(') fail(body, "expected '(' in tuple list");
      ++i;
      std::vector<int> row;
      bool overflow = false;
      while (true) {
        skip();
        size_t b = i;
        while (i < s.size() && s[i] != ',' && s[i] != ')') ++i;
        if (i >= s.size()) fail(body, "unterminated tuple");
        std::string t = trimCopy(s.substr(b, i - b));
        if (t == "*") {
          row.push_back(Table::kStar);
        } else {
          long long v;
          if (!parseLL(t, &v)) fail(body, "malformed tuple value '" + t + "'");
          if (v <= INT_MIN || v > INT_MAX) overflow = true;  // no universe holds it
          else row.push_back(static_cast<int>(v));
        }
        if (s[i] == ')') {
          ++i;
          break;
        }
        ++i;  // over ','
      }
      if (overflow) {
        ++dropped;
      } else {
        if (static_cast<int>(row.size()) != arity)
          fail(body, "tuple arity " + std::to_string(row.size()) + " does not match the list");
        rows.push_back(std::move(row));
      }
      skip();
    }
    return rows;
  }

  void buildIntension(const XmlNode& n) {
    allowKids(n, {"function"});
    std::string text = n.text;
    if (const XmlNode* f = n.child("function")) text = f->text;
    if (trimCopy(text).empty()) fail(n, "empty intension");
    applyName(postIntension(pb_, exprOf(n, text)), n);
  }

  void buildAllDifferent(const XmlNode& n) {
    allowKids(n, {"list"});
    std::vector<Variable*> vars = itemVars(n);
    if (vars.size() < 2) return;  // trivially true
    applyName(&pb_.post<AllDifferentConstraint>(vars), n);
  }

  void buildAllEqual(const XmlNode& n) {
    allowKids(n, {"list"});
    std::vector<Variable*> vars = itemVars(n);
    if (vars.size() < 2) return;
    applyName(&pb_.post<AllEqualConstraint>(vars), n);
  }

  CmpOp orderOp(const XmlNode& n, bool allowWords) {
    const XmlNode* op = n.child("operator");
    if (!op) fail(n, "missing <operator>");
    std::string w = trimCopy(op->text);
    CmpOp out;
    if (cmpFromWord(w, &out)) {
      if (out == CmpOp::Eq || out == CmpOp::Ne)
        fail(*op, "unsupported order operator '" + w + "'");
      return out;
    }
    if (allowWords) {
      if (w == "increasing") return CmpOp::Le;
      if (w == "strictlyIncreasing") return CmpOp::Lt;
      if (w == "decreasing") return CmpOp::Ge;
      if (w == "strictlyDecreasing") return CmpOp::Gt;
    }
    fail(*op, "unsupported order operator '" + w + "'");
  }

  void buildOrdered(const XmlNode& n) {
    allowKids(n, {"list", "operator"});
    std::vector<Variable*> vars = listVars(n);
    CmpOp op = orderOp(n, true);
    if (vars.size() < 2) return;
    applyName(&pb_.post<OrderedConstraint>(vars, op), n);
  }

  void buildLex(const XmlNode& n) {
    allowKids(n, {"list", "operator"});
    auto lists = n.children("list");
    if (lists.size() < 2) fail(n, "lex needs at least two <list>s");
    CmpOp op = orderOp(n, false);
    std::vector<std::vector<Variable*>> seqs;
    for (const XmlNode* l : lists) {
      seqs.push_back(varsOf(*l, l->text));
      if (seqs.back().size() != seqs.front().size())
        fail(*l, "lex lists must have equal length");
    }
    for (size_t i = 0; i + 1 < seqs.size(); ++i) {
      Constraint& c = pb_.post<LexConstraint>(seqs[i], seqs[i + 1], op);
      if (i == 0) applyName(&c, n);
    }
  }

  void buildPrecedence(const XmlNode& n) {
    allowKids(n, {"list", "values"});
    std::vector<Variable*> vars = listVars(n);
    const XmlNode* vn = n.child("values");
    if (!vn) fail(n, "missing <values>");
    std::vector<long long> raw = intsOf(*vn, vn->text);
    std::vector<int> values;
    for (long long v : raw) values.push_back(checkedInt(v, *vn));
    if (values.size() < 2) return;
    applyName(&pb_.post<PrecedenceConstraint>(vars, values), n);
  }

  void buildSum(const XmlNode& n) {
    allowKids(n, {"list", "coeffs", "condition"});
    std::vector<Variable*> vars = listVars(n);
    std::vector<long long> coeffs = coeffsOf(n, vars.size());
    applyName(&pb_.post<SumConstraint>(vars, coeffs, conditionOf(n)), n);
  }

  void buildCount(const XmlNode& n) {
    allowKids(n, {"list", "values", "condition"});
    std::vector<Variable*> vars = listVars(n);
    const XmlNode* vn = n.child("values");
    if (!vn) fail(n, "missing <values>");
    std::vector<int> values;
    for (long long v : intsOf(*vn, vn->text)) values.push_back(checkedInt(v, *vn));
    if (values.empty()) fail(*vn, "empty values");
    Condition cond = conditionOf(n);
    if (cond.var != nullptr)
      fail(n, "count supports constant conditions only");
    applyName(&pb_.post<CountConstraint>(vars, values, cond.op, cond.k), n);
  }

  void buildNValues(const XmlNode& n) {
    if (n.child("except")) fail(n, "nValues with <except> is not supported");
    allowKids(n, {"list", "condition"});
    applyName(&pb_.post<NValuesConstraint>(listVars(n), conditionOf(n)), n);
  }

  void buildMinimum(const XmlNode& n) {
    allowKids(n, {"list", "condition"});
    applyName(&pb_.post<MinimumConstraint>(listVars(n), conditionOf(n)), n);
  }

  void buildMaximum(const XmlNode& n) {
    allowKids(n, {"list", "condition"});
    applyName(&pb_.post<MaximumConstraint>(listVars(n), conditionOf(n)), n);
  }

  void buildElement(const XmlNode& n) {
    allowKids(n, {"list", "index", "value"});
    const XmlNode* list = n.child("list");
    if (!list) fail(n, "missing <list>");
    requireAttrs(*list, {"startIndex"});
    std::vector<Variable*> vars = varsOf(*list, list->text);
    int start = startIndexOf(*list);
    const XmlNode* in = n.child("index");
    if (!in) fail(n, "missing <index>");
    std::vector<Variable*> ivs;
    expandRef(trimCopy(in->text), *in, &ivs);
    if (ivs.size() != 1) fail(*in, "index must be a single variable");
    const XmlNode* vn = n.child("value");
    if (!vn) fail(n, "missing <value>");
    std::string vt = trimCopy(vn->text);
    long long k;
    Constraint* c;
    if (parseLL(vt, &k)) {
      c = &pb_.post<ElementConstraint>(vars, ivs[0], nullptr, k, start);
    } else {
      std::vector<Variable*> vvs;
      expandRef(vt, *vn, &vvs);
      if (vvs.size() != 1) fail(*vn, "value must be a variable or an integer");
      c = &pb_.post<ElementConstraint>(vars, ivs[0], vvs[0], 0, start);
    }
    applyName(c, n);
  }

  void buildChannel(const XmlNode& n) {
    allowKids(n, {"list"});
    auto lists = n.children("list");
    std::vector<Variable*> xs, ys;
    int sx = 0, sy = 0;
    if (lists.empty()) {
      xs = varsOf(n, n.text);
    } else {
      requireAttrs(*lists[0], {"startIndex"});
      xs = varsOf(*lists[0], lists[0]->text);
      sx = startIndexOf(*lists[0]);
      if (lists.size() == 2) {
        requireAttrs(*lists[1], {"startIndex"});
        ys = varsOf(*lists[1], lists[1]->text);
        sy = startIndexOf(*lists[1]);
      } else if (lists.size() > 2) {
        fail(n, "channel takes one or two <list>s");
      }
    }
    if (ys.empty()) sy = sx;
    applyName(&pb_.post<ChannelConstraint>(xs, sx, ys, sy), n);
  }

  Problem& pb_;
  const BuildOptions& opts_;
  std::map<std::string, Variable*> byName_;
  std::map<std::string, ArrayInfo> arrays_;
  int auxCount_ = 0;
};

}  // namespace

BuiltInstance buildProblem(const InstanceDoc& doc, const BuildOptions& opts) {
  BuiltInstance out;
  out.problem = std::make_unique<Problem>();
  Builder b(*out.problem, opts);
  b.declare(doc.vars);
  for (const auto& n : doc.ctrs) b.buildCtr(n);
  if (doc.hasObjective) b.buildObjective(doc.objective);
  out.droppedRows = b.dropped;
  return out;
}

}  // namespace coral
