#include "bifib/zigzag.hpp"

#include <algorithm>
#include <sstream>

namespace bifib {

Arrow cell_top(const Context& ctx, const GenCell& c) {
  switch (c.kind) {
    case GenCell::Kind::PushL: return ctx.C().compose(c.a, c.b);
    case GenCell::Kind::PushR: return c.a;
    case GenCell::Kind::PullL: return c.b;
    case GenCell::Kind::PullR: return ctx.C().compose(c.a, c.b);
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

Arrow cell_bottom(const Context& ctx, const GenCell& c) {
  switch (c.kind) {
    case GenCell::Kind::PushL: return c.b;
    case GenCell::Kind::PushR: return ctx.C().compose(c.a, c.b);
    case GenCell::Kind::PullL: return ctx.C().compose(c.a, c.b);
    case GenCell::Kind::PullR: return c.a;
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

Arrow stack_bottom(const Context& ctx, const Stack& s) {
  return s.cells.empty() ? s.top : cell_bottom(ctx, s.cells.back());
}

void validate_stack(const Context& ctx, const Stack& s) {
  Arrow cur = s.top;
  for (const GenCell& c : s.cells) {
    if (cell_top(ctx, c) != cur)
      fail(ErrorKind::BoundaryMismatch, "adjacent cells do not compose");
    cur = cell_bottom(ctx, c);
  }
}

FormulaPtr stack_left_boundary(const Context& idc, const Stack& s) {
  FormulaPtr z = mk_atom(idc, s.top.dom);
  for (const GenCell& c : s.cells) {
    if (c.kind == GenCell::Kind::PushL) z = mk_push(idc, c.a, z);
    if (c.kind == GenCell::Kind::PullL) z = mk_pull(idc, c.a, z);
  }
  return z;
}

FormulaPtr stack_right_boundary(const Context& idc, const Stack& s) {
  FormulaPtr z = mk_atom(idc, s.top.cod);
  for (const GenCell& c : s.cells) {
    if (c.kind == GenCell::Kind::PushR) z = mk_push(idc, c.b, z);
    if (c.kind == GenCell::Kind::PullR) z = mk_pull(idc, c.b, z);
  }
  return z;
}

std::pair<Arrow, Stack> decompose(const Context& ctx, const DerivPtr& d) {
  // Walk from the root to the axiom; the root constructor is the bottom cell.
  std::vector<GenCell> rev;
  DerivPtr cur = d;
  while (cur->kind != Deriv::Kind::Ax) {
    switch (cur->kind) {
      case Deriv::Kind::LDiv:
        rev.push_back(GenCell{GenCell::Kind::PushL, cur->a1, cur->a2});
        break;
      case Deriv::Kind::RMult:
        rev.push_back(GenCell{GenCell::Kind::PushR, cur->body->j.base, cur->a1});
        break;
      case Deriv::Kind::LMult:
        rev.push_back(GenCell{GenCell::Kind::PullL, cur->a1, cur->body->j.base});
        break;
      case Deriv::Kind::RDiv:
        rev.push_back(GenCell{GenCell::Kind::PullR, cur->a1, cur->a2});
        break;
      case Deriv::Kind::Ax: break;
    }
    cur = cur->body;
  }
  Stack s;
  s.top = ctx.p->map(cur->a1);
  s.cells.assign(rev.rbegin(), rev.rend());
  return {cur->a1, s};
}

DerivPtr recompose(const Context& ctx, const Arrow& delta, const Stack& s) {
  DerivPtr d = mk_ax(ctx, delta);
  if (d->j.base != s.top) fail(ErrorKind::BoundaryMismatch, "axiom arrow does not match stack top");
  for (const GenCell& c : s.cells) {
    switch (c.kind) {
      case GenCell::Kind::PushL: d = mk_ldiv(ctx, c.a, c.b, d); break;
      case GenCell::Kind::PushR:
        if (d->j.base != c.a) fail(ErrorKind::BoundaryMismatch, "PushR cell top mismatch");
        d = mk_rmult(ctx, d, c.b);
        break;
      case GenCell::Kind::PullL:
        if (d->j.base != c.b) fail(ErrorKind::BoundaryMismatch, "PullL cell top mismatch");
        d = mk_lmult(ctx, c.a, d);
        break;
      case GenCell::Kind::PullR: d = mk_rdiv(ctx, d, c.a, c.b); break;
    }
  }
  return d;
}

FormulaPtr action_formula(const Context& ctx, const FormulaPtr& s, const FormulaPtr& z) {
  if (z->is_atom()) {
    if (s->ref != z->atom) fail(ErrorKind::BoundaryMismatch, "formula action: source mismatch");
    return s;
  }
  FormulaPtr inner = action_formula(ctx, s, z->body);
  return z->is_push() ? mk_push(ctx, z->arrow, inner) : mk_pull(ctx, z->arrow, inner);
}

DerivPtr action(const Context& ctx, const DerivPtr& a, const DerivPtr& z) {
  switch (z->kind) {
    case Deriv::Kind::Ax:
      if (a->j.base != z->a1) fail(ErrorKind::BoundaryMismatch, "action: base arrow mismatch");
      return a;
    case Deriv::Kind::LDiv: return mk_ldiv(ctx, z->a1, z->a2, action(ctx, a, z->body));
    case Deriv::Kind::RMult: return mk_rmult(ctx, action(ctx, a, z->body), z->a1);
    case Deriv::Kind::LMult: return mk_lmult(ctx, z->a1, action(ctx, a, z->body));
    case Deriv::Kind::RDiv: return mk_rdiv(ctx, action(ctx, a, z->body), z->a1, z->a2);
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

Stack vcompose(const Context& ctx, const Stack& s1, const Stack& s2) {
  if (stack_bottom(ctx, s1) != s2.top)
    fail(ErrorKind::BoundaryMismatch, "vcompose: bottom of first != top of second");
  Stack out = s1;
  out.cells.insert(out.cells.end(), s2.cells.begin(), s2.cells.end());
  return out;
}

Stack dagger(const Context& ctx, const Stack& s) {
  Stack out;
  out.top = stack_bottom(ctx, s);
  out.cells.reserve(s.cells.size());
  for (auto it = s.cells.rbegin(); it != s.cells.rend(); ++it) {
    GenCell c = *it;
    switch (c.kind) {
      case GenCell::Kind::PushL: c.kind = GenCell::Kind::PullL; break;
      case GenCell::Kind::PullL: c.kind = GenCell::Kind::PushL; break;
      case GenCell::Kind::PushR: c.kind = GenCell::Kind::PullR; break;
      case GenCell::Kind::PullR: c.kind = GenCell::Kind::PushR; break;
    }
    out.cells.push_back(c);
  }
  return out;
}

namespace {
std::string pad(const std::string& s, size_t w) {
  std::string out = s;
  while (out.size() < w) out += ' ';
  return out;
}
}  // namespace

std::string render_text(const Context& ctx, const Arrow& delta, const Stack& s) {
  const Backend& c = ctx.C();
  std::ostringstream out;
  out << "  [" << ctx.D().arrow_name(delta) << " : " << ctx.D().object_name(delta.dom)
      << " -> " << ctx.D().object_name(delta.cod) << "]\n";
  auto baseline = [&](const Arrow& f) {
    out << "  " << c.object_name(f.dom) << " --" << c.arrow_name(f) << "--> "
        << c.object_name(f.cod) << "\n";
  };
  baseline(s.top);
  Arrow cur = s.top;
  for (const GenCell& cell : s.cells) {
    std::string left = "=", right = "=";
    switch (cell.kind) {
      case GenCell::Kind::PushL: left = "v " + c.arrow_name(cell.a); break;
      case GenCell::Kind::PushR: right = "v " + c.arrow_name(cell.b); break;
      case GenCell::Kind::PullL: left = "^ " + c.arrow_name(cell.a); break;
      case GenCell::Kind::PullR: right = "^ " + c.arrow_name(cell.b); break;
    }
    out << "  " << pad(left, 12) << " | " << right << "\n";
    cur = cell_bottom(ctx, cell);
    baseline(cur);
  }
  return out.str();
}

namespace {
std::string color_of(ObjId o) {
  // Deterministic palette keyed by object hash; purely cosmetic.
  static const char* palette[] = {"#cfe8fc", "#fde2cf", "#d8f2d4", "#f4d4f2",
                                  "#fbf2c4", "#d4e4f2", "#e8d4c4", "#d4f2ec"};
  return palette[size_t(std::hash<int>()(o.v)) % 8];
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}
}  // namespace

std::string render_svg(const Context& ctx, const Arrow& delta, const Stack& s) {
  const Backend& c = ctx.C();
  const int rowh = 48, width = 360, x0 = 60, x1 = width - 60;
  int n = int(s.cells.size());
  int height = rowh * (n + 1) + 20;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  // Region bands per cell row, colored by the codomain object at that level.
  Arrow cur = s.top;
  for (int i = 0; i <= n; ++i) {
    ObjId region = cur.cod;
    out << "  <rect x=\"0\" y=\"" << (10 + i * rowh) << "\" width=\"" << width
        << "\" height=\"" << rowh << "\" fill=\"" << color_of(region) << "\"/>\n";
    if (i < n) cur = cell_bottom(ctx, s.cells[i]);
  }
  // The axiom wire runs straight down the middle.
  out << "  <line x1=\"" << (width / 2) << "\" y1=\"10\" x2=\"" << (width / 2)
      << "\" y2=\"" << (10 + rowh) << "\" stroke=\"black\" stroke-width=\"2\"/>\n"
      << "  <text x=\"" << (width / 2 + 6) << "\" y=\"" << (10 + rowh / 2)
      << "\" font-size=\"11\">" << xml_escape(ctx.D().arrow_name(delta)) << "</text>\n";
  // Each cell is a bent wire from its side anchor to the row boundary.
  for (int i = 0; i < n; ++i) {
    const GenCell& cell = s.cells[i];
    int ytop = 10 + (i + 1) * rowh, ybot = ytop + rowh;
    int ymid = (ytop + ybot) / 2;
    std::string label;
    std::ostringstream path;
    switch (cell.kind) {
      case GenCell::Kind::PushL:
        label = c.arrow_name(cell.a);
        path << "M " << x0 << ' ' << ymid << " C " << (x0 + 60) << ' ' << ymid << ", "
             << (x0 + 60) << ' ' << ytop << ", " << (x0 + 90) << ' ' << ytop;
        break;
      case GenCell::Kind::PushR:
        label = c.arrow_name(cell.b);
        path << "M " << (x1 - 90) << ' ' << ybot << " C " << (x1 - 60) << ' ' << ybot << ", "
             << (x1 - 60) << ' ' << ymid << ", " << x1 << ' ' << ymid;
        break;
      case GenCell::Kind::PullL:
        label = c.arrow_name(cell.a);
        path << "M " << x0 << ' ' << ymid << " C " << (x0 + 60) << ' ' << ymid << ", "
             << (x0 + 60) << ' ' << ybot << ", " << (x0 + 90) << ' ' << ybot;
        break;
      case GenCell::Kind::PullR:
        label = c.arrow_name(cell.b);
        path << "M " << (x1 - 90) << ' ' << ytop << " C " << (x1 - 60) << ' ' << ytop << ", "
             << (x1 - 60) << ' ' << ymid << ", " << x1 << ' ' << ymid;
        break;
    }
    out << "  <path d=\"" << path.str()
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << (width / 2 - 30) << "\" y=\"" << (ymid + 4)
        << "\" font-size=\"11\">" << xml_escape(label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bifib
