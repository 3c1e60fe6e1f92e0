#include "coral/heuristics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace coral {

const char* varhName(VarhKind k) {
  switch (k) {
    case VarhKind::Input: return "Input";
    case VarhKind::Dom: return "Dom";
    case VarhKind::DDegOnDom: return "DDegOnDom";
    case VarhKind::Wdeg: return "Wdeg";
    case VarhKind::WdegOnDom: return "WdegOnDom";
    case VarhKind::VarWeight: return "VarWeight";
    case VarhKind::Rand: return "Rand";
  }
  return "?";
}

const char* valhName(ValhKind k) {
  switch (k) {
    case ValhKind::First: return "First";
    case ValhKind::Last: return "Last";
    case ValhKind::Rand: return "Rand";
    case ValhKind::Bivs: return "Bivs";
  }
  return "?";
}

const char* weightModeName(WeightMode m) {
  switch (m) {
    case WeightMode::Unit: return "unit";
    case WeightMode::Cacd: return "cacd";
    case WeightMode::Chs: return "chs";
  }
  return "?";
}

namespace {

// Names are matched case-insensitively with '/' dropped, so "WdegOnDom",
// "wdegondom" and "wdeg/dom" all agree.
std::string foldName(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != '/') t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return t;
}

}  // namespace

bool varhFromName(const std::string& name, VarhKind* out) {
  std::string s = foldName(name);
  if (s == "input" || s == "lexico") *out = VarhKind::Input;
  else if (s == "dom") *out = VarhKind::Dom;
  else if (s == "ddegondom" || s == "ddegdom") *out = VarhKind::DDegOnDom;
  else if (s == "wdeg") *out = VarhKind::Wdeg;
  else if (s == "wdegondom" || s == "wdegdom") *out = VarhKind::WdegOnDom;
  else if (s == "varweight") *out = VarhKind::VarWeight;
  else if (s == "rand") *out = VarhKind::Rand;
  else return false;
  return true;
}

bool valhFromName(const std::string& name, ValhKind* out) {
  std::string s = foldName(name);
  if (s == "first") *out = ValhKind::First;
  else if (s == "last") *out = ValhKind::Last;
  else if (s == "rand") *out = ValhKind::Rand;
  else if (s == "bivs") *out = ValhKind::Bivs;
  else return false;
  return true;
}

bool weightModeFromName(const std::string& name, WeightMode* out) {
  std::string s = foldName(name);
  if (s == "unit") *out = WeightMode::Unit;
  else if (s == "cacd") *out = WeightMode::Cacd;
  else if (s == "chs") *out = WeightMode::Chs;
  else return false;
  return true;
}

void WeightStore::whenWipeout(Constraint* c, Variable& x) {
  vweight_[x.id] += 1.0;
  if (c == nullptr) return;  // nogood or decision wipeout: no constraint at fault
  switch (mode_) {
    case WeightMode::Unit:
      cweight_[c->id] += 1.0;
      break;
    case WeightMode::Cacd: {
      int fut = std::max(1, c->futvars());
      int dsz = std::max(1, x.dom.size());
      cweight_[c->id] += 1.0 / (static_cast<double>(fut) * dsz);
      break;
    }
    case WeightMode::Chs: {
      double r = 1.0 / static_cast<double>(conflicts_ - last_[c->id] + 1);
      q_[c->id] += alpha_ * (r - q_[c->id]);
      ++conflicts_;
      last_[c->id] = conflicts_;
      alpha_ = std::max(0.06, alpha_ - 1e-6);
      break;
    }
  }
}

namespace {

// Number of constraints on x that still have at least two future variables.
int dynamicDegree(const Variable& x) {
  int d = 0;
  for (const Constraint* c : x.ctrs)
    if (c->enabled && c->futvars() >= 2) ++d;
  return d;
}

double weightedDegree(const Variable& x, const WeightStore& w) {
  double s = 0.0;
  for (const Constraint* c : x.ctrs)
    if (c->enabled && c->futvars() >= 2) s += w.constraintScore(*c);
  return s;
}

}  // namespace

double varhScore(VarhKind k, const Variable& x, const WeightStore& w) {
  switch (k) {
    case VarhKind::Input:
      return -static_cast<double>(x.id);
    case VarhKind::Dom:
      return -static_cast<double>(x.dom.size());
    case VarhKind::DDegOnDom:
      return -static_cast<double>(x.dom.size()) / (1.0 + dynamicDegree(x));
    case VarhKind::Wdeg:
      return weightedDegree(x, w);
    case VarhKind::WdegOnDom: {
      double s = weightedDegree(x, w);
      if (s <= 0.0) return -std::numeric_limits<double>::infinity();
      return -static_cast<double>(x.dom.size()) / s;
    }
    case VarhKind::VarWeight:
      return w.variableWeight(x);
    case VarhKind::Rand:
      return 0.0;
  }
  return 0.0;
}

}  // namespace coral
