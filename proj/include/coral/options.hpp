#ifndef CORAL_OPTIONS_HPP
#define CORAL_OPTIONS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace coral {

// Single-dash options: "-name=value" sets a value, bare "-name" sets "1".
class OptionTable {
 public:
  void add(const std::string& name, const std::string& def, const std::string& help) {
    defs_.push_back({name, def, help});
    values_[name] = def;
  }

  // False on an unknown option or malformed argument; *err explains.
  bool parse(const std::vector<std::string>& args, std::string* err);

  const std::string& get(const std::string& name) const { return values_.at(name); }
  bool getBool(const std::string& name) const {
    const std::string& v = get(name);
    return v == "1" || v == "true" || v == "yes";
  }
  bool wasSet(const std::string& name) const { return set_.count(name) > 0; }

  std::string listing() const;

 private:
  struct Def {
    std::string name, def, help;
  };
  std::vector<Def> defs_;
  std::map<std::string, std::string> values_;
  std::set<std::string> set_;
};

// "250" -> 250 ms, "10s" -> 10000 ms. False on malformed or negative input.
bool parseDuration(const std::string& text, long long* ms);

}  // namespace coral

#endif
