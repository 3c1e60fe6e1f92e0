#include "coral/options.hpp"

#include <cstdlib>

namespace coral {

bool OptionTable::parse(const std::vector<std::string>& args, std::string* err) {
  for (const auto& a : args) {
    if (a.size() < 2 || a[0] != '-') {
      *err = "malformed option '" + a + "' (expected -name or -name=value)";
      return false;
    }
    size_t eq = a.find('=');
    std::string name = a.substr(1, eq == std::string::npos ? std::string::npos : eq - 1);
    std::string value = eq == std::string::npos ? "1" : a.substr(eq + 1);
    if (values_.find(name) == values_.end()) {
      *err = "unknown option '-" + name + "'";
      return false;
    }
    values_[name] = value;
    set_.insert(name);
  }
  return true;
}

std::string OptionTable::listing() const {
  std::string out;
  for (const auto& d : defs_) {
    std::string head = "  -" + d.name;
    if (!d.def.empty()) head += " (default: " + d.def + ")";
    while (head.size() < 34) head.push_back(' ');
    out += head + d.help + "\n";
  }
  return out;
}

bool parseDuration(const std::string& text, long long* ms) {
  if (text.empty()) return false;
  std::string num = text;
  long long scale = 1;
  if (num.back() == 's') {
    num.pop_back();
    scale = 1000;
  }
  if (num.empty()) return false;
  char* end = nullptr;
  long long v = std::strtoll(num.c_str(), &end, 10);
  if (end != num.c_str() + num.size() || v < 0) return false;
  *ms = v * scale;
  return true;
}

}  // namespace coral
