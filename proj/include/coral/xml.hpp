#ifndef CORAL_XML_HPP
#define CORAL_XML_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coral {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
};

// One XML element. Our documents never mix meaningful text with child
// elements, so each node carries its attributes, its children, and the
// concatenation of its direct character data.
struct XmlNode {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlNode> kids;
  std::string text;
  int line = 0, col = 0;

  const std::string* attr(const std::string& name) const {
    for (const auto& [k, v] : attrs)
      if (k == name) return &v;
    return nullptr;
  }
  const XmlNode* child(const std::string& t) const {
    for (const auto& k : kids)
      if (k.tag == t) return &k;
    return nullptr;
  }
  std::vector<const XmlNode*> children(const std::string& t) const {
    std::vector<const XmlNode*> out;
    for (const auto& k : kids)
      if (k.tag == t) out.push_back(&k);
    return out;
  }
};

// Namespace-free XML with the five predefined entities, comments and an
// XML declaration; no DTD, no CDATA, no processing instructions beyond the
// declaration. Throws ParseError with position on malformed input.
XmlNode parseXml(const std::string& text);

// Serializes an element tree back to indented XML (entity-escaped).
std::string printXml(const XmlNode& root);

}  // namespace coral

#endif
