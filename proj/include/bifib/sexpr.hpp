#pragma once

#include <memory>
#include <string>
#include <vector>

namespace bifib {

// Minimal S-expression reader/writer used for formula and derivation syntax.
struct Sexpr {
  bool is_atom = true;
  std::string atom;
  std::vector<Sexpr> items;

  static Sexpr sym(std::string s) {
    Sexpr e;
    e.is_atom = true;
    e.atom = std::move(s);
    return e;
  }
  static Sexpr list(std::vector<Sexpr> xs) {
    Sexpr e;
    e.is_atom = false;
    e.items = std::move(xs);
    return e;
  }

  const Sexpr& at(size_t i) const;
  size_t size() const { return items.size(); }
  const std::string& head() const;

  std::string dump() const;
};

Sexpr parse_sexpr(const std::string& text);

}  // namespace bifib
