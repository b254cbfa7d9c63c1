#include "bifib/sexpr.hpp"

#include <cctype>
#include <sstream>

#include "bifib/errors.hpp"

namespace bifib {

const Sexpr& Sexpr::at(size_t i) const {
  if (is_atom || i >= items.size()) fail(ErrorKind::Parse, "s-expression index out of range");
  return items[i];
}

const std::string& Sexpr::head() const {
  if (is_atom) return atom;
  if (items.empty() || !items[0].is_atom) fail(ErrorKind::Parse, "expected head symbol");
  return items[0].atom;
}

std::string Sexpr::dump() const {
  if (is_atom) return atom;
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out << ' ';
    out << items[i].dump();
  }
  out << ')';
  return out.str();
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == ';') {  // comment to end of line
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
};

Sexpr parse_one(Cursor& c) {
  c.skip_ws();
  if (c.i >= c.s.size()) fail(ErrorKind::Parse, "unexpected end of input");
  if (c.s[c.i] == '(') {
    ++c.i;
    std::vector<Sexpr> items;
    while (true) {
      c.skip_ws();
      if (c.i >= c.s.size()) fail(ErrorKind::Parse, "unclosed '('");
      if (c.s[c.i] == ')') {
        ++c.i;
        break;
      }
      items.push_back(parse_one(c));
    }
    return Sexpr::list(std::move(items));
  }
  if (c.s[c.i] == ')') fail(ErrorKind::Parse, "unexpected ')'");
  size_t start = c.i;
  while (c.i < c.s.size() && !std::isspace(static_cast<unsigned char>(c.s[c.i])) &&
         c.s[c.i] != '(' && c.s[c.i] != ')' && c.s[c.i] != ';')
    ++c.i;
  return Sexpr::sym(c.s.substr(start, c.i - start));
}

}  // namespace

Sexpr parse_sexpr(const std::string& text) {
  Cursor c{text};
  Sexpr e = parse_one(c);
  if (!c.done()) fail(ErrorKind::Parse, "trailing input after s-expression");
  return e;
}

}  // namespace bifib
