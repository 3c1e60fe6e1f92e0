#include "coral/xml.hpp"

#include <cctype>

namespace coral {

namespace {

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  XmlNode parseDocument() {
    skipMisc();
    if (eof()) fail("expected a root element");
    XmlNode root = parseElement();
    skipMisc();
    if (!eof()) fail("content after the root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, col_, msg);
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  bool startsWith(const char* p) const { return s_.compare(pos_, std::char_traits<char>::length(p), p) == 0; }

  char get() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void advance(size_t n) {
    while (n-- > 0 && !eof()) get();
  }

  void skipSpace() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }

  // Whitespace, comments, and the <?xml ...?> declaration.
  void skipMisc() {
    while (true) {
      skipSpace();
      if (startsWith("<!--")) {
        advance(4);
        size_t end = s_.find("-->", pos_);
        if (end == std::string::npos) fail("unterminated comment");
        advance(end + 3 - pos_);
      } else if (startsWith("<?")) {
        size_t end = s_.find("?>", pos_);
        if (end == std::string::npos) fail("unterminated declaration");
        advance(end + 2 - pos_);
      } else if (startsWith("<!DOCTYPE")) {
        fail("DTDs are not supported");
      } else {
        return;
      }
    }
  }

  static bool nameChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.' || c == ':';
  }

  std::string parseName() {
    if (eof() || !nameChar(peek())) fail("expected a name");
    std::string n;
    while (!eof() && nameChar(peek())) n.push_back(get());
    return n;
  }

  std::string decodeEntity() {
    // Called on '&'.
    size_t semi = s_.find(';', pos_);
    if (semi == std::string::npos || semi - pos_ > 6) fail("malformed entity");
    std::string name = s_.substr(pos_ + 1, semi - pos_ - 1);
    advance(semi + 1 - pos_);
    if (name == "lt") return "<";
    if (name == "gt") return ">";
    if (name == "amp") return "&";
    if (name == "apos") return "'";
    if (name == "quot") return "\"";
    fail("unknown entity &" + name + ";");
  }

  std::string parseAttrValue() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected a quoted attribute value");
    char q = get();
    std::string v;
    while (!eof() && peek() != q) {
      if (peek() == '&') v += decodeEntity();
      else if (peek() == '<') fail("'<' inside an attribute value");
      else v.push_back(get());
    }
    if (eof()) fail("unterminated attribute value");
    get();
    return v;
  }

  XmlNode parseElement() {
    // Called on '<'.
    int ln = line_, cl = col_;
    get();
    XmlNode node;
    node.line = ln;
    node.col = cl;
    node.tag = parseName();
    while (true) {
      skipSpace();
      if (eof()) fail("unterminated tag <" + node.tag + ">");
      if (peek() == '/') {
        get();
        if (eof() || peek() != '>') fail("malformed empty-element tag");
        get();
        trim(node.text);
        return node;
      }
      if (peek() == '>') {
        get();
        break;
      }
      std::string an = parseName();
      skipSpace();
      if (eof() || peek() != '=') fail("expected '=' after attribute " + an);
      get();
      skipSpace();
      node.attrs.emplace_back(an, parseAttrValue());
    }
    // Content.
    while (true) {
      if (eof()) fail("unterminated element <" + node.tag + ">");
      if (peek() == '<') {
        if (startsWith("<!--")) {
          advance(4);
          size_t end = s_.find("-->", pos_);
          if (end == std::string::npos) fail("unterminated comment");
          advance(end + 3 - pos_);
          continue;
        }
        if (startsWith("</")) {
          advance(2);
          std::string closing = parseName();
          if (closing != node.tag)
            fail("mismatched closing tag </" + closing + "> for <" + node.tag + ">");
          skipSpace();
          if (eof() || peek() != '>') fail("malformed closing tag");
          get();
          trim(node.text);
          return node;
        }
        node.kids.push_back(parseElement());
      } else if (peek() == '&') {
        node.text += decodeEntity();
      } else {
        node.text.push_back(get());
      }
    }
  }

  static void trim(std::string& t) {
    size_t b = t.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
      t.clear();
      return;
    }
    size_t e = t.find_last_not_of(" \t\r\n");
    t = t.substr(b, e - b + 1);
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

void escapeInto(std::string& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
}

void printNode(std::string& out, const XmlNode& n, int depth) {
  out.append(2 * depth, ' ');
  out += '<';
  out += n.tag;
  for (const auto& [k, v] : n.attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    escapeInto(out, v);
    out += '"';
  }
  if (n.kids.empty() && n.text.empty()) {
    out += "/>\n";
    return;
  }
  out += '>';
  if (n.kids.empty()) {
    escapeInto(out, n.text);
  } else {
    out += '\n';
    for (const auto& k : n.kids) printNode(out, k, depth + 1);
    if (!n.text.empty()) {
      out.append(2 * (depth + 1), ' ');
      escapeInto(out, n.text);
      out += '\n';
    }
    out.append(2 * depth, ' ');
  }
  out += "</";
  out += n.tag;
  out += ">\n";
}

}  // namespace

XmlNode parseXml(const std::string& text) { return Reader(text).parseDocument(); }

std::string printXml(const XmlNode& root) {
  std::string out;
  printNode(out, root, 0);
  return out;
}

}  // namespace coral
