#include "bifib/focusing.hpp"

#include <algorithm>

namespace bifib {

namespace {

bool non_pos(const FormulaPtr& f) { return !f->is_push(); }
bool non_neg(const FormulaPtr& f) { return !f->is_pull(); }

size_t seq_hash(const std::vector<Arrow>& seq) {
  size_t h = 0x5eed;
  for (const Arrow& a : seq) h = hash_combine(h, ArrowHash()(a));
  return h;
}

Arrow comp_before(const Context& ctx, const std::vector<Arrow>& seq, const Arrow& f) {
  Arrow acc = f;
  for (size_t i = seq.size(); i-- > 0;) acc = ctx.C().compose(seq[i], acc);
  return acc;
}

Arrow comp_after(const Context& ctx, const Arrow& f, const std::vector<Arrow>& seq) {
  Arrow acc = f;
  for (const Arrow& a : seq) acc = ctx.C().compose(acc, a);
  return acc;
}

}  // namespace

// ----------------------------------------------------------- weak terms

namespace {
WeakPtr make_w(WeakDeriv::Kind k, Arrow a, std::vector<Arrow> seq, WeakPtr body, Judgment j) {
  auto w = std::make_shared<WeakDeriv>();
  w->kind = k;
  w->delta_or_f = std::move(a);
  w->seq = std::move(seq);
  size_t h = hash_combine(size_t(k) * 0x77, ArrowHash()(w->delta_or_f));
  h = hash_combine(h, seq_hash(w->seq));
  if (body) h = hash_combine(h, body->hash);
  w->hash = h;
  w->body = std::move(body);
  w->j = std::move(j);
  return w;
}
}  // namespace

WeakPtr mk_w_ax(const Context& ctx, const Arrow& delta) {
  Judgment j{mk_atom(ctx, delta.dom), ctx.p->map(delta), mk_atom(ctx, delta.cod)};
  return make_w(WeakDeriv::Kind::Ax, delta, {}, nullptr, std::move(j));
}

WeakPtr mk_w_ldiv(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& g,
                  WeakPtr body) {
  if (pi.empty()) fail(ErrorKind::IllFormed, "weak ldiv: empty sequence");
  if (!non_pos(body->j.lhs)) fail(ErrorKind::IllFormed, "weak ldiv: chunk not maximal");
  if (body->j.base != comp_before(ctx, pi, g))
    fail(ErrorKind::IllFormed, "weak ldiv: premise base is not pi.g");
  Judgment j{wrap_push(ctx, pi, body->j.lhs), g, body->j.rhs};
  return make_w(WeakDeriv::Kind::LDiv, g, pi, std::move(body), std::move(j));
}

WeakPtr mk_w_rmult(const Context& ctx, WeakPtr body, const std::vector<Arrow>& tau) {
  if (tau.empty()) fail(ErrorKind::IllFormed, "weak rmult: empty sequence");
  if (!non_pos(body->j.rhs)) fail(ErrorKind::IllFormed, "weak rmult: chunk not maximal");
  Judgment j{body->j.lhs, comp_after(ctx, body->j.base, tau), wrap_push(ctx, tau, body->j.rhs)};
  return make_w(WeakDeriv::Kind::RMult, Arrow{}, tau, std::move(body), std::move(j));
}

WeakPtr mk_w_lmult(const Context& ctx, const std::vector<Arrow>& sigma, WeakPtr body) {
  if (sigma.empty()) fail(ErrorKind::IllFormed, "weak lmult: empty sequence");
  if (!non_neg(body->j.lhs)) fail(ErrorKind::IllFormed, "weak lmult: chunk not maximal");
  Judgment j{wrap_pull(ctx, sigma, body->j.lhs), comp_before(ctx, sigma, body->j.base),
             body->j.rhs};
  return make_w(WeakDeriv::Kind::LMult, Arrow{}, sigma, std::move(body), std::move(j));
}

WeakPtr mk_w_rdiv(const Context& ctx, WeakPtr body, const Arrow& f,
                  const std::vector<Arrow>& rho) {
  if (rho.empty()) fail(ErrorKind::IllFormed, "weak rdiv: empty sequence");
  if (!non_neg(body->j.rhs)) fail(ErrorKind::IllFormed, "weak rdiv: chunk not maximal");
  if (body->j.base != comp_after(ctx, f, rho))
    fail(ErrorKind::IllFormed, "weak rdiv: premise base is not f.rho");
  Judgment j{body->j.lhs, f, wrap_pull(ctx, rho, body->j.rhs)};
  return make_w(WeakDeriv::Kind::RDiv, f, rho, std::move(body), std::move(j));
}

bool weak_eq(const WeakPtr& a, const WeakPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->delta_or_f != b->delta_or_f ||
      a->seq != b->seq)
    return false;
  if (!a->body) return !b->body;
  return b->body && weak_eq(a->body, b->body);
}

DerivPtr weak_ceil(const Context& ctx, const WeakPtr& w) {
  switch (w->kind) {
    case WeakDeriv::Kind::Ax: return mk_ax(ctx, w->delta_or_f);
    case WeakDeriv::Kind::LDiv:
      return ldiv_seq(ctx, w->seq, w->delta_or_f, weak_ceil(ctx, w->body));
    case WeakDeriv::Kind::RMult: return rmult_seq(ctx, weak_ceil(ctx, w->body), w->seq);
    case WeakDeriv::Kind::LMult: return lmult_seq(ctx, w->seq, weak_ceil(ctx, w->body));
    case WeakDeriv::Kind::RDiv:
      return rdiv_seq(ctx, weak_ceil(ctx, w->body), w->delta_or_f, w->seq);
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

DerivPtr weak_floor(const Context& ctx, const WeakPtr& w) {
  switch (w->kind) {
    case WeakDeriv::Kind::Ax: return mk_ax(ctx, w->delta_or_f);
    case WeakDeriv::Kind::LDiv: {
      Arrow c = seq_composite(ctx, w->seq, w->seq.front().dom);
      return mk_ldiv(ctx, c, w->delta_or_f, weak_floor(ctx, w->body));
    }
    case WeakDeriv::Kind::RMult: {
      Arrow c = seq_composite(ctx, w->seq, w->seq.front().dom);
      return mk_rmult(ctx, weak_floor(ctx, w->body), c);
    }
    case WeakDeriv::Kind::LMult: {
      Arrow c = seq_composite(ctx, w->seq, w->seq.front().dom);
      return mk_lmult(ctx, c, weak_floor(ctx, w->body));
    }
    case WeakDeriv::Kind::RDiv: {
      Arrow c = seq_composite(ctx, w->seq, w->seq.front().dom);
      return mk_rdiv(ctx, weak_floor(ctx, w->body), w->delta_or_f, c);
    }
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

namespace {
WeakPtr weak_preimage_rec(const Context& ctx, const DerivPtr& d, const FormulaPtr& s,
                          const FormulaPtr& t) {
  switch (d->kind) {
    case Deriv::Kind::Ax:
      if (!s->is_atom() || !t->is_atom())
        fail(ErrorKind::NotStrictlyAlternating, "axiom against non-atomic formula");
      return mk_w_ax(ctx, d->a1);
    case Deriv::Kind::LDiv: {
      std::vector<Arrow> pi = top_chunk(s, true);
      if (pi.empty() || seq_composite(ctx, pi, pi.front().dom) != d->a1)
        fail(ErrorKind::NotStrictlyAlternating, "ldiv arrow is not the chunk composite");
      return mk_w_ldiv(ctx, pi, d->a2, weak_preimage_rec(ctx, d->body, chunk_body(s), t));
    }
    case Deriv::Kind::RMult: {
      std::vector<Arrow> tau = top_chunk(t, true);
      if (tau.empty() || seq_composite(ctx, tau, tau.front().dom) != d->a1)
        fail(ErrorKind::NotStrictlyAlternating, "rmult arrow is not the chunk composite");
      return mk_w_rmult(ctx, weak_preimage_rec(ctx, d->body, s, chunk_body(t)), tau);
    }
    case Deriv::Kind::LMult: {
      std::vector<Arrow> sigma = top_chunk(s, false);
      if (sigma.empty() || seq_composite(ctx, sigma, sigma.front().dom) != d->a1)
        fail(ErrorKind::NotStrictlyAlternating, "lmult arrow is not the chunk composite");
      return mk_w_lmult(ctx, sigma, weak_preimage_rec(ctx, d->body, chunk_body(s), t));
    }
    case Deriv::Kind::RDiv: {
      std::vector<Arrow> rho = top_chunk(t, false);
      if (rho.empty() || seq_composite(ctx, rho, rho.front().dom) != d->a2)
        fail(ErrorKind::NotStrictlyAlternating, "rdiv arrow is not the chunk composite");
      return mk_w_rdiv(ctx, weak_preimage_rec(ctx, d->body, s, chunk_body(t)), d->a1, rho);
    }
  }
  fail(ErrorKind::IllFormed, "unreachable");
}
}  // namespace

WeakPtr weak_preimage(const Context& ctx, const DerivPtr& d, const FormulaPtr& s,
                      const FormulaPtr& t) {
  if (!formula_eq(collapse_formula(ctx, s), d->j.lhs) ||
      !formula_eq(collapse_formula(ctx, t), d->j.rhs))
    fail(ErrorKind::NotStrictlyAlternating,
         "endpoints are not the collapses of the given formulas");
  return weak_preimage_rec(ctx, d, s, t);
}

WeakPtr weak_preimage(const Context& ctx, const DerivPtr& d) {
  if (!is_strictly_alternating(d->j.lhs) || !is_strictly_alternating(d->j.rhs))
    fail(ErrorKind::NotStrictlyAlternating, "endpoints are not strictly alternating");
  return weak_preimage(ctx, d, d->j.lhs, d->j.rhs);
}

// ---------------------------------------------------------- multifocused

namespace {
MPtr make_m(MDeriv::Kind k, Arrow a, std::vector<Arrow> pi, std::vector<Arrow> rho, MPtr body,
            Judgment j) {
  auto m = std::make_shared<MDeriv>();
  m->kind = k;
  m->delta_or_f = std::move(a);
  m->pi = std::move(pi);
  m->rho = std::move(rho);
  size_t h = hash_combine(size_t(k) * 0x99, ArrowHash()(m->delta_or_f));
  h = hash_combine(h, seq_hash(m->pi));
  h = hash_combine(h, seq_hash(m->rho));
  if (body) h = hash_combine(h, body->hash);
  m->hash = h;
  m->body = std::move(body);
  m->j = std::move(j);
  return m;
}
}  // namespace

MPtr mk_m_ax(const Context& ctx, const Arrow& delta) {
  Judgment j{mk_atom(ctx, delta.dom), ctx.p->map(delta), mk_atom(ctx, delta.cod)};
  return make_m(MDeriv::Kind::Ax, delta, {}, {}, nullptr, std::move(j));
}

MPtr mk_m_ldiv(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& f, MPtr body) {
  if (pi.empty()) fail(ErrorKind::IllFormed, "m-ldiv: empty sequence");
  if (!non_pos(body->j.lhs) || !non_neg(body->j.rhs))
    fail(ErrorKind::IllFormed, "m-ldiv: polarity discipline violated");
  if (body->j.base != comp_before(ctx, pi, f))
    fail(ErrorKind::IllFormed, "m-ldiv: premise base is not pi.f");
  Judgment j{wrap_push(ctx, pi, body->j.lhs), f, body->j.rhs};
  return make_m(MDeriv::Kind::LDiv, f, pi, {}, std::move(body), std::move(j));
}

MPtr mk_m_bidiv(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& f, MPtr body,
                const std::vector<Arrow>& rho) {
  if (pi.empty() || rho.empty()) fail(ErrorKind::IllFormed, "m-bidiv: empty sequence");
  if (!non_pos(body->j.lhs) || !non_neg(body->j.rhs))
    fail(ErrorKind::IllFormed, "m-bidiv: polarity discipline violated");
  if (body->j.base != comp_after(ctx, comp_before(ctx, pi, f), rho))
    fail(ErrorKind::IllFormed, "m-bidiv: premise base is not pi.f.rho");
  Judgment j{wrap_push(ctx, pi, body->j.lhs), f, wrap_pull(ctx, rho, body->j.rhs)};
  return make_m(MDeriv::Kind::BiDiv, f, pi, rho, std::move(body), std::move(j));
}

MPtr mk_m_rdiv(const Context& ctx, MPtr body, const Arrow& f, const std::vector<Arrow>& rho) {
  if (rho.empty()) fail(ErrorKind::IllFormed, "m-rdiv: empty sequence");
  if (!non_pos(body->j.lhs) || !non_neg(body->j.rhs))
    fail(ErrorKind::IllFormed, "m-rdiv: polarity discipline violated");
  if (body->j.base != comp_after(ctx, f, rho))
    fail(ErrorKind::IllFormed, "m-rdiv: premise base is not f.rho");
  Judgment j{body->j.lhs, f, wrap_pull(ctx, rho, body->j.rhs)};
  return make_m(MDeriv::Kind::RDiv, f, {}, rho, std::move(body), std::move(j));
}

MPtr mk_m_lmult(const Context& ctx, const std::vector<Arrow>& sigma, MPtr body) {
  if (sigma.empty()) fail(ErrorKind::IllFormed, "m-lmult: empty sequence");
  if (!non_neg(body->j.lhs) || !non_neg(body->j.rhs))
    fail(ErrorKind::IllFormed, "m-lmult: polarity discipline violated");
  Judgment j{wrap_pull(ctx, sigma, body->j.lhs), comp_before(ctx, sigma, body->j.base),
             body->j.rhs};
  return make_m(MDeriv::Kind::LMult, Arrow{}, sigma, {}, std::move(body), std::move(j));
}

MPtr mk_m_bimult(const Context& ctx, const std::vector<Arrow>& sigma, MPtr body,
                 const std::vector<Arrow>& tau) {
  if (sigma.empty() || tau.empty()) fail(ErrorKind::IllFormed, "m-bimult: empty sequence");
  if (!non_neg(body->j.lhs) || !non_pos(body->j.rhs))
    fail(ErrorKind::IllFormed, "m-bimult: polarity discipline violated");
  Judgment j{wrap_pull(ctx, sigma, body->j.lhs),
             comp_after(ctx, comp_before(ctx, sigma, body->j.base), tau),
             wrap_push(ctx, tau, body->j.rhs)};
  return make_m(MDeriv::Kind::BiMult, Arrow{}, sigma, tau, std::move(body), std::move(j));
}

MPtr mk_m_rmult(const Context& ctx, MPtr body, const std::vector<Arrow>& tau) {
  if (tau.empty()) fail(ErrorKind::IllFormed, "m-rmult: empty sequence");
  if (!non_pos(body->j.lhs) || !non_pos(body->j.rhs))
    fail(ErrorKind::IllFormed, "m-rmult: polarity discipline violated");
  Judgment j{body->j.lhs, comp_after(ctx, body->j.base, tau), wrap_push(ctx, tau, body->j.rhs)};
  return make_m(MDeriv::Kind::RMult, Arrow{}, {}, tau, std::move(body), std::move(j));
}

bool multi_eq(const MPtr& a, const MPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->delta_or_f != b->delta_or_f ||
      a->pi != b->pi || a->rho != b->rho)
    return false;
  if (!a->body) return !b->body;
  return b->body && multi_eq(a->body, b->body);
}

namespace {
std::string seq_str(const Context& ctx, const std::vector<Arrow>& seq) {
  std::string s = "(";
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ' ';
    s += ctx.C().arrow_name(seq[i]);
  }
  return s + ")";
}
}  // namespace

std::string multi_to_string(const Context& ctx, const MPtr& m) {
  switch (m->kind) {
    case MDeriv::Kind::Ax: return "(m-ax " + ctx.D().arrow_name(m->delta_or_f) + ")";
    case MDeriv::Kind::LDiv:
      return "(m-ldiv " + seq_str(ctx, m->pi) + " " + ctx.C().arrow_name(m->delta_or_f) + " " +
             multi_to_string(ctx, m->body) + ")";
    case MDeriv::Kind::BiDiv:
      return "(m-bidiv " + seq_str(ctx, m->pi) + " " + ctx.C().arrow_name(m->delta_or_f) +
             " " + multi_to_string(ctx, m->body) + " " + seq_str(ctx, m->rho) + ")";
    case MDeriv::Kind::RDiv:
      return "(m-rdiv " + multi_to_string(ctx, m->body) + " " +
             ctx.C().arrow_name(m->delta_or_f) + " " + seq_str(ctx, m->rho) + ")";
    case MDeriv::Kind::LMult:
      return "(m-lmult " + seq_str(ctx, m->pi) + " " + multi_to_string(ctx, m->body) + ")";
    case MDeriv::Kind::BiMult:
      return "(m-bimult " + seq_str(ctx, m->pi) + " " + multi_to_string(ctx, m->body) + " " +
             seq_str(ctx, m->rho) + ")";
    case MDeriv::Kind::RMult:
      return "(m-rmult " + multi_to_string(ctx, m->body) + " " + seq_str(ctx, m->rho) + ")";
  }
  return "";
}

MPtr parse_multi(const Context& ctx, const Sexpr& e) {
  if (e.is_atom) fail(ErrorKind::Parse, "multifocused term must be a list");
  const std::string& h = e.head();
  auto seq = [&](const Sexpr& s) {
    if (s.is_atom) fail(ErrorKind::Parse, "expected arrow sequence");
    std::vector<Arrow> out;
    for (const Sexpr& item : s.items) {
      auto a = ctx.C().parse_arrow(item.atom);
      if (!a) fail(ErrorKind::Parse, "cannot parse arrow: " + item.atom);
      out.push_back(*a);
    }
    return out;
  };
  auto arr = [&](const Sexpr& s) {
    auto a = ctx.C().parse_arrow(s.atom);
    if (!a) fail(ErrorKind::Parse, "cannot parse arrow: " + s.atom);
    return *a;
  };
  if (h == "m-ax") {
    auto d = ctx.D().parse_arrow(e.at(1).atom);
    if (!d) fail(ErrorKind::Parse, "cannot parse domain arrow: " + e.at(1).atom);
    return mk_m_ax(ctx, *d);
  }
  if (h == "m-ldiv") return mk_m_ldiv(ctx, seq(e.at(1)), arr(e.at(2)), parse_multi(ctx, e.at(3)));
  if (h == "m-bidiv")
    return mk_m_bidiv(ctx, seq(e.at(1)), arr(e.at(2)), parse_multi(ctx, e.at(3)), seq(e.at(4)));
  if (h == "m-rdiv") return mk_m_rdiv(ctx, parse_multi(ctx, e.at(1)), arr(e.at(2)), seq(e.at(3)));
  if (h == "m-lmult") return mk_m_lmult(ctx, seq(e.at(1)), parse_multi(ctx, e.at(2)));
  if (h == "m-bimult")
    return mk_m_bimult(ctx, seq(e.at(1)), parse_multi(ctx, e.at(2)), seq(e.at(3)));
  if (h == "m-rmult") return mk_m_rmult(ctx, parse_multi(ctx, e.at(1)), seq(e.at(2)));
  fail(ErrorKind::Parse, "unknown multifocused head: " + h);
}

// ----------------------------------------------------------- strengthen

namespace {

// opcart_pi . w, by case analysis on the weak derivation.
WeakPtr opcart_cut_weak(const Context& ctx, const std::vector<Arrow>& pi, const WeakPtr& w) {
  switch (w->kind) {
    case WeakDeriv::Kind::LDiv:
      if (w->seq != pi) fail(ErrorKind::IllFormed, "opcart_cut_weak: chunk mismatch");
      return w->body;
    case WeakDeriv::Kind::RMult:
      return mk_w_rmult(ctx, opcart_cut_weak(ctx, pi, w->body), w->seq);
    case WeakDeriv::Kind::RDiv:
      return mk_w_rdiv(ctx, opcart_cut_weak(ctx, pi, w->body),
                       comp_before(ctx, pi, w->delta_or_f), w->seq);
    default:
      fail(ErrorKind::IllFormed, "opcart_cut_weak: unexpected head");
  }
}

// w . cart_rho, by case analysis on the weak derivation.
WeakPtr cart_cut_weak(const Context& ctx, const WeakPtr& w, const std::vector<Arrow>& rho) {
  switch (w->kind) {
    case WeakDeriv::Kind::RDiv:
      if (w->seq != rho) fail(ErrorKind::IllFormed, "cart_cut_weak: chunk mismatch");
      return w->body;
    case WeakDeriv::Kind::LDiv: {
      Arrow c = seq_composite(ctx, rho, rho.front().dom);
      return mk_w_ldiv(ctx, w->seq, ctx.C().compose(w->delta_or_f, c),
                       cart_cut_weak(ctx, w->body, rho));
    }
    case WeakDeriv::Kind::LMult:
      return mk_w_lmult(ctx, w->seq, cart_cut_weak(ctx, w->body, rho));
    default:
      fail(ErrorKind::IllFormed, "cart_cut_weak: unexpected head");
  }
}

MPtr wrap_bi(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& mid, MPtr body,
             const std::vector<Arrow>& rho) {
  if (!pi.empty() && !rho.empty()) return mk_m_bidiv(ctx, pi, mid, std::move(body), rho);
  if (!pi.empty()) return mk_m_ldiv(ctx, pi, mid, std::move(body));
  if (!rho.empty()) return mk_m_rdiv(ctx, std::move(body), mid, rho);
  if (body->j.base != mid) fail(ErrorKind::IllFormed, "trivial inversion: base mismatch");
  return body;
}

}  // namespace

MPtr strengthen(const Context& ctx, const WeakPtr& w) {
  const FormulaPtr& s = w->j.lhs;
  const FormulaPtr& t = w->j.rhs;
  if (s->is_push() || t->is_pull()) {
    std::vector<Arrow> pi = top_chunk(s, true);
    std::vector<Arrow> rho = top_chunk(t, false);
    WeakPtr core = w;
    if (!pi.empty()) core = opcart_cut_weak(ctx, pi, core);
    if (!rho.empty()) core = cart_cut_weak(ctx, core, rho);
    return wrap_bi(ctx, pi, w->j.base, strengthen(ctx, core), rho);
  }
  switch (w->kind) {
    case WeakDeriv::Kind::Ax: return mk_m_ax(ctx, w->delta_or_f);
    case WeakDeriv::Kind::LMult: return mk_m_lmult(ctx, w->seq, strengthen(ctx, w->body));
    case WeakDeriv::Kind::RMult: return mk_m_rmult(ctx, strengthen(ctx, w->body), w->seq);
    default:
      fail(ErrorKind::IllFormed, "strengthen: division at a neutral judgment");
  }
}

// ------------------------------------------------------ sequentialization

namespace {

struct InversionSplit {
  std::vector<Arrow> pi, rho;
  Arrow mid;
  MPtr body;
};

InversionSplit split_inversion(const MPtr& inner) {
  switch (inner->kind) {
    case MDeriv::Kind::BiDiv: return {inner->pi, inner->rho, inner->delta_or_f, inner->body};
    case MDeriv::Kind::LDiv: return {inner->pi, {}, inner->delta_or_f, inner->body};
    case MDeriv::Kind::RDiv: return {{}, inner->rho, inner->delta_or_f, inner->body};
    default: return {{}, {}, inner->j.base, inner};
  }
}

MPtr wrap_l(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& mid, MPtr body) {
  if (pi.empty()) {
    if (body->j.base != mid) fail(ErrorKind::IllFormed, "wrap_l: base mismatch");
    return body;
  }
  return mk_m_ldiv(ctx, pi, mid, std::move(body));
}

MPtr wrap_r(const Context& ctx, MPtr body, const Arrow& mid, const std::vector<Arrow>& rho) {
  if (rho.empty()) {
    if (body->j.base != mid) fail(ErrorKind::IllFormed, "wrap_r: base mismatch");
    return body;
  }
  return mk_m_rdiv(ctx, std::move(body), mid, rho);
}

MPtr seq_rl(const Context& ctx, const std::vector<Arrow>& sigma, const InversionSplit& sp,
            const std::vector<Arrow>& tau, MPtr beta) {
  MPtr r = mk_m_rmult(ctx, wrap_r(ctx, std::move(beta), comp_before(ctx, sp.pi, sp.mid), sp.rho),
                      tau);
  return mk_m_lmult(ctx, sigma, wrap_l(ctx, sp.pi, comp_after(ctx, sp.mid, tau), r));
}

MPtr seq_lr(const Context& ctx, const std::vector<Arrow>& sigma, const InversionSplit& sp,
            const std::vector<Arrow>& tau, MPtr beta) {
  MPtr l = mk_m_lmult(ctx, sigma, wrap_l(ctx, sp.pi, comp_after(ctx, sp.mid, sp.rho), beta));
  return mk_m_rmult(ctx, wrap_r(ctx, l, comp_before(ctx, sigma, sp.mid), sp.rho), tau);
}

MPtr rebuild_with_body(const Context& ctx, const MPtr& m, MPtr nb) {
  switch (m->kind) {
    case MDeriv::Kind::LDiv: return mk_m_ldiv(ctx, m->pi, m->delta_or_f, std::move(nb));
    case MDeriv::Kind::BiDiv:
      return mk_m_bidiv(ctx, m->pi, m->delta_or_f, std::move(nb), m->rho);
    case MDeriv::Kind::RDiv: return mk_m_rdiv(ctx, std::move(nb), m->delta_or_f, m->rho);
    case MDeriv::Kind::LMult: return mk_m_lmult(ctx, m->pi, std::move(nb));
    case MDeriv::Kind::BiMult: return mk_m_bimult(ctx, m->pi, std::move(nb), m->rho);
    case MDeriv::Kind::RMult: return mk_m_rmult(ctx, std::move(nb), m->rho);
    case MDeriv::Kind::Ax: break;
  }
  fail(ErrorKind::IllFormed, "rebuild_with_body on axiom");
}

}  // namespace

std::vector<MPtr> foc_sequentialize(const Context& ctx, const MPtr& m) {
  if (m->kind == MDeriv::Kind::Ax) return {m};
  if (m->kind == MDeriv::Kind::BiMult) {
    InversionSplit sp = split_inversion(m->body);
    std::vector<MPtr> out;
    for (const MPtr& beta : foc_sequentialize(ctx, sp.body)) {
      out.push_back(seq_rl(ctx, m->pi, sp, m->rho, beta));
      out.push_back(seq_lr(ctx, m->pi, sp, m->rho, beta));
    }
    return out;
  }
  std::vector<MPtr> out;
  for (const MPtr& nb : foc_sequentialize(ctx, m->body))
    out.push_back(rebuild_with_body(ctx, m, nb));
  return out;
}

std::vector<WeakPtr> inv_sequentialize(const Context& ctx, const MPtr& mono) {
  switch (mono->kind) {
    case MDeriv::Kind::Ax: return {mk_w_ax(ctx, mono->delta_or_f)};
    case MDeriv::Kind::BiMult:
      fail(ErrorKind::IllFormed, "inv_sequentialize expects a mono-focused proof");
    case MDeriv::Kind::LDiv: {
      std::vector<WeakPtr> out;
      for (const WeakPtr& b : inv_sequentialize(ctx, mono->body))
        out.push_back(mk_w_ldiv(ctx, mono->pi, mono->delta_or_f, b));
      return out;
    }
    case MDeriv::Kind::RDiv: {
      std::vector<WeakPtr> out;
      for (const WeakPtr& b : inv_sequentialize(ctx, mono->body))
        out.push_back(mk_w_rdiv(ctx, b, mono->delta_or_f, mono->rho));
      return out;
    }
    case MDeriv::Kind::BiDiv: {
      std::vector<WeakPtr> out;
      Arrow fl = comp_before(ctx, mono->pi, mono->delta_or_f);
      Arrow fr = comp_after(ctx, mono->delta_or_f, mono->rho);
      for (const WeakPtr& b : inv_sequentialize(ctx, mono->body)) {
        out.push_back(mk_w_ldiv(ctx, mono->pi, mono->delta_or_f, mk_w_rdiv(ctx, b, fl, mono->rho)));
        out.push_back(mk_w_rdiv(ctx, mk_w_ldiv(ctx, mono->pi, fr, b), mono->delta_or_f, mono->rho));
      }
      return out;
    }
    case MDeriv::Kind::LMult: {
      std::vector<WeakPtr> out;
      for (const WeakPtr& b : inv_sequentialize(ctx, mono->body))
        out.push_back(mk_w_lmult(ctx, mono->pi, b));
      return out;
    }
    case MDeriv::Kind::RMult: {
      std::vector<WeakPtr> out;
      for (const WeakPtr& b : inv_sequentialize(ctx, mono->body))
        out.push_back(mk_w_rmult(ctx, b, mono->rho));
      return out;
    }
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

std::vector<WeakPtr> sequentializations(const Context& ctx, const MPtr& m) {
  std::vector<WeakPtr> out;
  for (const MPtr& mono : foc_sequentialize(ctx, m))
    for (const WeakPtr& w : inv_sequentialize(ctx, mono)) out.push_back(w);
  return out;
}

WeakPtr weak_of_multi(const Context& ctx, const MPtr& m) {
  switch (m->kind) {
    case MDeriv::Kind::Ax: return mk_w_ax(ctx, m->delta_or_f);
    case MDeriv::Kind::LDiv:
      return mk_w_ldiv(ctx, m->pi, m->delta_or_f, weak_of_multi(ctx, m->body));
    case MDeriv::Kind::RDiv:
      return mk_w_rdiv(ctx, weak_of_multi(ctx, m->body), m->delta_or_f, m->rho);
    case MDeriv::Kind::BiDiv:
      return mk_w_ldiv(ctx, m->pi, m->delta_or_f,
                       mk_w_rdiv(ctx, weak_of_multi(ctx, m->body),
                                 comp_before(ctx, m->pi, m->delta_or_f), m->rho));
    case MDeriv::Kind::LMult:
      return mk_w_lmult(ctx, m->pi, weak_of_multi(ctx, m->body));
    case MDeriv::Kind::RMult:
      return mk_w_rmult(ctx, weak_of_multi(ctx, m->body), m->rho);
    case MDeriv::Kind::BiMult:
      return mk_w_lmult(ctx, m->pi, mk_w_rmult(ctx, weak_of_multi(ctx, m->body), m->rho));
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

DerivPtr plain_of_multi(const Context& ctx, const MPtr& m) {
  return weak_ceil(ctx, weak_of_multi(ctx, m));
}

// -------------------------------------------------------- bipole parsing

BipoleChain parse_chain(const Context&, const MPtr& m) {
  BipoleChain chain;
  MPtr cur = m;
  if (cur->kind == MDeriv::Kind::LDiv || cur->kind == MDeriv::Kind::BiDiv ||
      cur->kind == MDeriv::Kind::RDiv) {
    InversionSplit sp = split_inversion(cur);
    chain.has_root_inv = true;
    chain.root_pi = sp.pi;
    chain.root_rho = sp.rho;
    chain.root_mid = sp.mid;
    cur = sp.body;
  }
  while (cur->kind != MDeriv::Kind::Ax) {
    Bipole b;
    switch (cur->kind) {
      case MDeriv::Kind::LMult: {
        b.cls = Bipole::Cls::L;
        b.sigma = cur->pi;
        InversionSplit sp = split_inversion(cur->body);
        if (!sp.rho.empty()) fail(ErrorKind::IllFormed, "L bipole with right inversion");
        b.pi = sp.pi;
        b.mid = sp.mid;
        cur = sp.body;
        break;
      }
      case MDeriv::Kind::RMult: {
        b.cls = Bipole::Cls::R;
        b.tau = cur->rho;
        InversionSplit sp = split_inversion(cur->body);
        if (!sp.pi.empty()) fail(ErrorKind::IllFormed, "R bipole with left inversion");
        b.rho = sp.rho;
        b.mid = sp.mid;
        cur = sp.body;
        break;
      }
      case MDeriv::Kind::BiMult: {
        b.cls = Bipole::Cls::LR;
        b.sigma = cur->pi;
        b.tau = cur->rho;
        InversionSplit sp = split_inversion(cur->body);
        b.pi = sp.pi;
        b.rho = sp.rho;
        b.mid = sp.mid;
        cur = sp.body;
        break;
      }
      default:
        fail(ErrorKind::IllFormed, "inversion without a preceding focus");
    }
    chain.bips.push_back(std::move(b));
  }
  chain.axiom = cur->delta_or_f;
  return chain;
}

MPtr rebuild_chain(const Context& ctx, const BipoleChain& chain) {
  MPtr cur = mk_m_ax(ctx, chain.axiom);
  for (size_t i = chain.bips.size(); i-- > 0;) {
    const Bipole& b = chain.bips[i];
    switch (b.cls) {
      case Bipole::Cls::L:
        cur = mk_m_lmult(ctx, b.sigma, wrap_l(ctx, b.pi, b.mid, cur));
        break;
      case Bipole::Cls::R:
        cur = mk_m_rmult(ctx, wrap_r(ctx, cur, b.mid, b.rho), b.tau);
        break;
      case Bipole::Cls::LR:
        cur = mk_m_bimult(ctx, b.sigma, wrap_bi(ctx, b.pi, b.mid, cur, b.rho), b.tau);
        break;
    }
  }
  if (chain.has_root_inv)
    cur = wrap_bi(ctx, chain.root_pi, chain.root_mid, cur, chain.root_rho);
  return cur;
}

size_t weight(const Context& ctx, const MPtr& m) {
  BipoleChain chain = parse_chain(ctx, m);
  size_t w = 0;
  for (size_t i = 0; i < chain.bips.size(); ++i)
    w += i * (chain.bips[i].cls == Bipole::Cls::LR ? 2 : 1);
  return w;
}

// ------------------------------------------------------------- rewrites

std::optional<MPtr> rewrite_step(const Context& ctx, const MPtr& m, RewriteRule rule,
                                 size_t pos) {
  BipoleChain chain = parse_chain(ctx, m);
  auto& bips = chain.bips;
  const Backend& c = ctx.C();
  auto comp_seq = [&](const std::vector<Arrow>& seq, ObjId at) {
    return seq_composite(ctx, seq, at);
  };
  auto enforce_fp = [&](std::vector<Arrow>& cands) {
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    if (cands.size() > 1 && ctx.fp())
      fail(ErrorKind::FPViolation, "two distinct middle arrows under a declared-FP backend");
  };

  switch (rule) {
    case RewriteRule::SeqRL:
    case RewriteRule::SeqLR: {
      if (pos >= bips.size() || bips[pos].cls != Bipole::Cls::LR) return std::nullopt;
      Bipole lr = bips[pos];
      Bipole bl, br;
      bl.cls = Bipole::Cls::L;
      bl.sigma = lr.sigma;
      bl.pi = lr.pi;
      br.cls = Bipole::Cls::R;
      br.tau = lr.tau;
      br.rho = lr.rho;
      if (rule == RewriteRule::SeqRL) {
        bl.mid = comp_after(ctx, lr.mid, lr.tau);
        br.mid = comp_before(ctx, lr.pi, lr.mid);
        bips[pos] = bl;
        bips.insert(bips.begin() + pos + 1, br);
      } else {
        br.mid = comp_before(ctx, lr.sigma, lr.mid);
        bl.mid = comp_after(ctx, lr.mid, lr.rho);
        bips[pos] = br;
        bips.insert(bips.begin() + pos + 1, bl);
      }
      return rebuild_chain(ctx, chain);
    }
    case RewriteRule::ParRL: {
      if (pos + 1 >= bips.size() || bips[pos].cls != Bipole::Cls::L ||
          bips[pos + 1].cls != Bipole::Cls::R)
        return std::nullopt;
      const Bipole& bl = bips[pos];
      const Bipole& br = bips[pos + 1];
      Arrow tau_c = comp_seq(br.tau, br.tau.front().dom);
      std::vector<Arrow> cands;
      for (const Arrow& f : c.right_divisors(bl.mid, tau_c))
        if (comp_before(ctx, bl.pi, f) == br.mid) cands.push_back(f);
      enforce_fp(cands);
      if (cands.empty()) return std::nullopt;
      Bipole lr;
      lr.cls = Bipole::Cls::LR;
      lr.sigma = bl.sigma;
      lr.pi = bl.pi;
      lr.tau = br.tau;
      lr.rho = br.rho;
      lr.mid = cands.front();
      bips[pos] = lr;
      bips.erase(bips.begin() + pos + 1);
      return rebuild_chain(ctx, chain);
    }
    case RewriteRule::ParLR: {
      if (pos + 1 >= bips.size() || bips[pos].cls != Bipole::Cls::R ||
          bips[pos + 1].cls != Bipole::Cls::L)
        return std::nullopt;
      const Bipole& br = bips[pos];
      const Bipole& bl = bips[pos + 1];
      std::vector<Arrow> cands;
      if (br.rho.empty()) {
        if (comp_before(ctx, bl.sigma, bl.mid) == br.mid) cands.push_back(bl.mid);
      } else {
        Arrow rho_c = comp_seq(br.rho, br.rho.front().dom);
        for (const Arrow& f : c.right_divisors(bl.mid, rho_c))
          if (comp_before(ctx, bl.sigma, f) == br.mid) cands.push_back(f);
      }
      enforce_fp(cands);
      if (cands.empty()) return std::nullopt;
      Bipole lr;
      lr.cls = Bipole::Cls::LR;
      lr.sigma = bl.sigma;
      lr.pi = bl.pi;
      lr.tau = br.tau;
      lr.rho = br.rho;
      lr.mid = cands.front();
      bips[pos] = lr;
      bips.erase(bips.begin() + pos + 1);
      return rebuild_chain(ctx, chain);
    }
    case RewriteRule::GraL: {
      if (pos + 1 >= bips.size() || bips[pos].cls != Bipole::Cls::L ||
          bips[pos + 1].cls != Bipole::Cls::LR)
        return std::nullopt;
      const Bipole& bl = bips[pos];       // LMult(e, LDiv(b', k, .))
      const Bipole& lr = bips[pos + 1];   // BiMult(b, BiDiv(a, f, ., c), d)
      Arrow bf = comp_before(ctx, lr.sigma, lr.mid);
      std::vector<Arrow> cands;
      Arrow d_c = comp_seq(lr.tau, lr.tau.front().dom);
      for (const Arrow& g : c.right_divisors(bl.mid, d_c))
        if (comp_before(ctx, bl.pi, g) == bf) cands.push_back(g);
      enforce_fp(cands);
      if (cands.empty()) return std::nullopt;
      Bipole nlr;  // the LR bipole moved toward the root
      nlr.cls = Bipole::Cls::LR;
      nlr.sigma = bl.sigma;
      nlr.tau = lr.tau;
      nlr.pi = bl.pi;
      nlr.rho = lr.rho;
      nlr.mid = cands.front();
      Bipole nl;  // the L bipole moved up
      nl.cls = Bipole::Cls::L;
      nl.sigma = lr.sigma;
      nl.pi = lr.pi;
      nl.mid = comp_after(ctx, lr.mid, lr.rho);
      bips[pos] = nlr;
      bips[pos + 1] = nl;
      return rebuild_chain(ctx, chain);
    }
    case RewriteRule::GraR: {
      if (pos + 1 >= bips.size() || bips[pos].cls != Bipole::Cls::R ||
          bips[pos + 1].cls != Bipole::Cls::LR)
        return std::nullopt;
      const Bipole& br = bips[pos];       // RMult(RDiv(., m, d'), e)
      const Bipole& lr = bips[pos + 1];   // BiMult(b, BiDiv(a, f, ., c), d)
      Arrow fd = comp_after(ctx, lr.mid, lr.tau);
      std::vector<Arrow> cands;
      Arrow b_c = comp_seq(lr.sigma, lr.sigma.front().dom);
      Arrow rp_c = br.rho.empty() ? c.identity(fd.cod)
                                  : comp_seq(br.rho, br.rho.front().dom);
      for (const Arrow& g : c.left_divisors(b_c, br.mid))
        if (ctx.C().compose(g, rp_c) == fd) cands.push_back(g);
      enforce_fp(cands);
      if (cands.empty()) return std::nullopt;
      Bipole nlr;
      nlr.cls = Bipole::Cls::LR;
      nlr.sigma = lr.sigma;
      nlr.tau = br.tau;
      nlr.pi = lr.pi;
      nlr.rho = br.rho;
      nlr.mid = cands.front();
      Bipole nr;
      nr.cls = Bipole::Cls::R;
      nr.tau = lr.tau;
      nr.rho = lr.rho;
      nr.mid = comp_before(ctx, lr.pi, lr.mid);
      bips[pos] = nlr;
      bips[pos + 1] = nr;
      return rebuild_chain(ctx, chain);
    }
  }
  return std::nullopt;
}

namespace {
const RewriteRule kReducing[] = {RewriteRule::GraL, RewriteRule::GraR, RewriteRule::ParRL,
                                 RewriteRule::ParLR};
}

bool is_maximal(const Context& ctx, const MPtr& m) {
  size_t n = parse_chain(ctx, m).bips.size();
  for (size_t i = 0; i < n; ++i)
    for (RewriteRule r : kReducing)
      if (rewrite_step(ctx, m, r, i)) return false;
  return true;
}

NormalForm normalize(const Context& ctx, const MPtr& m, int strategy) {
  MPtr cur = m;
  size_t steps = 0;
  size_t guard = weight(ctx, m) + 1;
  for (size_t iter = 0; iter <= guard; ++iter) {
    size_t n = parse_chain(ctx, cur).bips.size();
    bool fired = false;
    if (strategy == 0) {
      // Root-up scan, gravitation before parallelization.
      for (size_t i = 0; i < n && !fired; ++i)
        for (RewriteRule r : {RewriteRule::GraL, RewriteRule::GraR, RewriteRule::ParRL,
                              RewriteRule::ParLR})
          if (auto next = rewrite_step(ctx, cur, r, i)) {
            cur = *next;
            fired = true;
            ++steps;
            break;
          }
    } else {
      // Top-down scan, parallelization before gravitation.
      for (size_t i = n; i-- > 0 && !fired;)
        for (RewriteRule r : {RewriteRule::ParRL, RewriteRule::ParLR, RewriteRule::GraL,
                              RewriteRule::GraR})
          if (auto next = rewrite_step(ctx, cur, r, i)) {
            cur = *next;
            fired = true;
            ++steps;
            break;
          }
    }
    if (!fired) return {cur, steps};
  }
  fail(ErrorKind::IllFormed, "normalize did not terminate within the weight bound");
}

// ----------------------------------------------------------- max search

namespace {

struct Lock {
  enum class Side { None, L, R } side = Side::None;
  std::vector<Arrow> seq;  // the inversion chunk of the previous bipole
  Arrow mid;               // its intermediate arrow
};

// Guarded factorization-order test; mismatched composites mean "not <=".
bool le_guarded(const Context& ctx, const Arrow& a, const Arrow& b, const Arrow& c,
                const Arrow& d) {
  if (a.dom != c.dom || b.cod != d.cod || a.cod != b.dom || c.cod != d.dom) return false;
  if (ctx.C().compose(a, b) != ctx.C().compose(c, d)) return false;
  return ctx.C().le_fact(a, b, c, d);
}

struct Searcher {
  const Context& ctx;
  SearchStats* stats;

  std::vector<Arrow> ldivs(const Arrow& a, const Arrow& h) {
    if (stats) ++stats->division_queries;
    return ctx.C().left_divisors(a, h);
  }
  std::vector<Arrow> rdivs(const Arrow& h, const Arrow& b) {
    if (stats) ++stats->division_queries;
    return ctx.C().right_divisors(h, b);
  }

  // Locks forbid creating a par or gra redex with the previous bipole.
  bool blocked_lfocus(const Lock& lock, const std::vector<Arrow>& sigma, const Arrow& g) {
    if (lock.side != Lock::Side::R) return false;
    Arrow sc = seq_composite(ctx, sigma, sigma.front().dom);
    Arrow rc = lock.seq.empty() ? ctx.C().identity(lock.mid.cod)
                                : seq_composite(ctx, lock.seq, lock.seq.front().dom);
    return le_guarded(ctx, sc, g, lock.mid, rc);
  }
  bool blocked_rfocus(const Lock& lock, const Arrow& g, const std::vector<Arrow>& tau) {
    if (lock.side != Lock::Side::L) return false;
    Arrow pc = lock.seq.empty() ? ctx.C().identity(lock.mid.dom)
                                : seq_composite(ctx, lock.seq, lock.seq.front().dom);
    Arrow tc = seq_composite(ctx, tau, tau.front().dom);
    return le_guarded(ctx, pc, lock.mid, g, tc);
  }
  bool blocked_bifocus(const Lock& lock, const std::vector<Arrow>& sigma, const Arrow& g,
                       const std::vector<Arrow>& tau) {
    Arrow sc = seq_composite(ctx, sigma, sigma.front().dom);
    Arrow tc = seq_composite(ctx, tau, tau.front().dom);
    if (lock.side == Lock::Side::L) {
      Arrow pc = lock.seq.empty() ? ctx.C().identity(lock.mid.dom)
                                  : seq_composite(ctx, lock.seq, lock.seq.front().dom);
      return le_guarded(ctx, pc, lock.mid, ctx.C().compose(sc, g), tc);
    }
    if (lock.side == Lock::Side::R) {
      Arrow rc = lock.seq.empty() ? ctx.C().identity(lock.mid.cod)
                                  : seq_composite(ctx, lock.seq, lock.seq.front().dom);
      return le_guarded(ctx, sc, ctx.C().compose(g, tc), lock.mid, rc);
    }
    return false;
  }

  // Enumerates proofs of the neutral sequent N |-_g P under the lock, in
  // the fixed order L-focus, R-focus, bi-focus, axiom. `emit` may return
  // false to stop early (existence queries).
  bool neutral(const FormulaPtr& n, const Arrow& g, const FormulaPtr& p, const Lock& lock,
               const std::function<bool(const MPtr&)>& emit) {
    if (stats) ++stats->nodes;
    if (n->is_pull()) {  // L-focus
      std::vector<Arrow> sigma = top_chunk(n, false);
      FormulaPtr pp = chunk_body(n);
      Arrow sc = seq_composite(ctx, sigma, sigma.front().dom);
      for (const Arrow& g2 : ldivs(sc, g)) {
        if (blocked_lfocus(lock, sigma, g2)) continue;
        std::vector<Arrow> pi = top_chunk(pp, true);
        FormulaPtr nn = chunk_body(pp);
        Arrow inner = comp_before(ctx, pi, g2);
        Lock next{Lock::Side::L, pi, g2};
        bool cont = neutral(nn, inner, p, next, [&](const MPtr& sub) {
          return emit(mk_m_lmult(ctx, sigma, wrap_l(ctx, pi, g2, sub)));
        });
        if (!cont) return false;
      }
    }
    if (p->is_push()) {  // R-focus
      std::vector<Arrow> tau = top_chunk(p, true);
      FormulaPtr mm = chunk_body(p);
      Arrow tc = seq_composite(ctx, tau, tau.front().dom);
      for (const Arrow& g2 : rdivs(g, tc)) {
        if (blocked_rfocus(lock, g2, tau)) continue;
        std::vector<Arrow> rho = top_chunk(mm, false);
        FormulaPtr pp2 = chunk_body(mm);
        Arrow inner = comp_after(ctx, g2, rho);
        Lock next{Lock::Side::R, rho, g2};
        bool cont = neutral(n, inner, pp2, next, [&](const MPtr& sub) {
          return emit(mk_m_rmult(ctx, wrap_r(ctx, sub, g2, rho), tau));
        });
        if (!cont) return false;
      }
    }
    if (n->is_pull() && p->is_push()) {  // bi-focus
      std::vector<Arrow> sigma = top_chunk(n, false);
      std::vector<Arrow> tau = top_chunk(p, true);
      FormulaPtr pp = chunk_body(n);
      FormulaPtr mm = chunk_body(p);
      Arrow sc = seq_composite(ctx, sigma, sigma.front().dom);
      Arrow tc = seq_composite(ctx, tau, tau.front().dom);
      for (const Arrow& h : ldivs(sc, g)) {
        for (const Arrow& g2 : rdivs(h, tc)) {
          if (blocked_bifocus(lock, sigma, g2, tau)) continue;
          std::vector<Arrow> pi = top_chunk(pp, true);
          std::vector<Arrow> rho = top_chunk(mm, false);
          Arrow inner = comp_after(ctx, comp_before(ctx, pi, g2), rho);
          Lock next{Lock::Side::None, {}, Arrow{}};
          bool cont = neutral(chunk_body(pp), inner, chunk_body(mm), next,
                              [&](const MPtr& sub) {
                                return emit(mk_m_bimult(
                                    ctx, sigma, wrap_bi(ctx, pi, g2, sub, rho), tau));
                              });
          if (!cont) return false;
        }
      }
    }
    if (n->is_atom() && p->is_atom()) {
      for (const Arrow& delta : ctx.p->fiber_arrows(n->atom, p->atom, g))
        if (!emit(mk_m_ax(ctx, delta))) return false;
    }
    return true;
  }

  bool run(const FormulaPtr& s, const Arrow& f, const FormulaPtr& t,
           const std::function<bool(const MPtr&)>& emit) {
    std::vector<Arrow> pi = top_chunk(s, true);
    std::vector<Arrow> rho = top_chunk(t, false);
    if (pi.empty() && rho.empty())
      return neutral(s, f, t, Lock{}, emit);
    FormulaPtr n = pi.empty() ? s : chunk_body(s);
    FormulaPtr p = rho.empty() ? t : chunk_body(t);
    Arrow inner = comp_after(ctx, comp_before(ctx, pi, f), rho);
    return neutral(n, inner, p, Lock{}, [&](const MPtr& sub) {
      return emit(wrap_bi(ctx, pi, f, sub, rho));
    });
  }
};

}  // namespace

std::vector<MPtr> max_search(const Context& ctx, const FormulaPtr& s, const Arrow& f,
                             const FormulaPtr& t, bool require_fp, SearchStats* stats) {
  if (require_fp && !ctx.fp())
    fail(ErrorKind::NotFP, "backend does not declare the FP property for classes (" +
                               ctx.clsP + ", " + ctx.clsN + ")");
  if (s->ref != f.dom || t->ref != f.cod)
    fail(ErrorKind::IllFormed, "max_search: refinement objects do not match the base arrow");
  std::vector<MPtr> out;
  Searcher searcher{ctx, stats};
  searcher.run(s, f, t, [&](const MPtr& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

// Existence-only search with memoization keyed on the whole search state.
struct EntailmentCache {
  struct Key {
    FormulaPtr lhs, rhs;
    Arrow base;
    int lock_side;
    std::vector<Arrow> lock_seq;
    Arrow lock_mid;
    bool operator==(const Key& o) const {
      return lock_side == o.lock_side && base == o.base && lock_mid == o.lock_mid &&
             lock_seq == o.lock_seq && formula_eq(lhs, o.lhs) && formula_eq(rhs, o.rhs);
    }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      size_t h = hash_combine(k.lhs->hash, k.rhs->hash);
      h = hash_combine(h, ArrowHash()(k.base));
      h = hash_combine(h, size_t(k.lock_side));
      h = hash_combine(h, seq_hash(k.lock_seq));
      h = hash_combine(h, ArrowHash()(k.lock_mid));
      return h;
    }
  };
  std::unordered_map<Key, bool, KeyHash> memo;
};

std::shared_ptr<EntailmentCache> make_entailment_cache() {
  return std::make_shared<EntailmentCache>();
}

namespace {

bool exists_neutral(const Context& ctx, const FormulaPtr& n, const Arrow& g,
                    const FormulaPtr& p, const Lock& lock, EntailmentCache* cache);

bool exists_neutral_memo(const Context& ctx, const FormulaPtr& n, const Arrow& g,
                         const FormulaPtr& p, const Lock& lock, EntailmentCache* cache) {
  EntailmentCache::Key key{n, p, g, int(lock.side), lock.seq, lock.mid};
  auto it = cache->memo.find(key);
  if (it != cache->memo.end()) return it->second;
  bool res = exists_neutral(ctx, n, g, p, lock, cache);
  cache->memo.emplace(std::move(key), res);
  return res;
}

bool exists_neutral(const Context& ctx, const FormulaPtr& n, const Arrow& g,
                    const FormulaPtr& p, const Lock& lock, EntailmentCache* cache) {
  Searcher searcher{ctx, nullptr};
  if (n->is_pull()) {
    std::vector<Arrow> sigma = top_chunk(n, false);
    FormulaPtr pp = chunk_body(n);
    Arrow sc = seq_composite(ctx, sigma, sigma.front().dom);
    for (const Arrow& g2 : ctx.C().left_divisors(sc, g)) {
      if (searcher.blocked_lfocus(lock, sigma, g2)) continue;
      std::vector<Arrow> pi = top_chunk(pp, true);
      if (exists_neutral_memo(ctx, chunk_body(pp), comp_before(ctx, pi, g2), p,
                              Lock{Lock::Side::L, pi, g2}, cache))
        return true;
    }
  }
  if (p->is_push()) {
    std::vector<Arrow> tau = top_chunk(p, true);
    FormulaPtr mm = chunk_body(p);
    Arrow tc = seq_composite(ctx, tau, tau.front().dom);
    for (const Arrow& g2 : ctx.C().right_divisors(g, tc)) {
      if (searcher.blocked_rfocus(lock, g2, tau)) continue;
      std::vector<Arrow> rho = top_chunk(mm, false);
      if (exists_neutral_memo(ctx, n, comp_after(ctx, g2, rho), chunk_body(mm),
                              Lock{Lock::Side::R, rho, g2}, cache))
        return true;
    }
  }
  if (n->is_pull() && p->is_push()) {
    std::vector<Arrow> sigma = top_chunk(n, false);
    std::vector<Arrow> tau = top_chunk(p, true);
    FormulaPtr pp = chunk_body(n);
    FormulaPtr mm = chunk_body(p);
    Arrow sc = seq_composite(ctx, sigma, sigma.front().dom);
    Arrow tc = seq_composite(ctx, tau, tau.front().dom);
    for (const Arrow& h : ctx.C().left_divisors(sc, g))
      for (const Arrow& g2 : ctx.C().right_divisors(h, tc)) {
        if (searcher.blocked_bifocus(lock, sigma, g2, tau)) continue;
        std::vector<Arrow> pi = top_chunk(pp, true);
        std::vector<Arrow> rho = top_chunk(mm, false);
        if (exists_neutral_memo(ctx, chunk_body(pp),
                                comp_after(ctx, comp_before(ctx, pi, g2), rho),
                                chunk_body(mm), Lock{}, cache))
          return true;
      }
  }
  if (n->is_atom() && p->is_atom() && !ctx.p->fiber_arrows(n->atom, p->atom, g).empty())
    return true;
  return false;
}

}  // namespace

bool exists_maximal_proof(const Context& ctx, const FormulaPtr& s, const Arrow& f,
                          const FormulaPtr& t, EntailmentCache* cache) {
  std::vector<Arrow> pi = top_chunk(s, true);
  std::vector<Arrow> rho = top_chunk(t, false);
  FormulaPtr n = pi.empty() ? s : chunk_body(s);
  FormulaPtr p = rho.empty() ? t : chunk_body(t);
  Arrow inner = comp_after(ctx, comp_before(ctx, pi, f), rho);
  return exists_neutral_memo(ctx, n, inner, p, Lock{}, cache);
}

// --------------------------------------------------------------- mf_cut

namespace {

// opcart_pi : a, for a : push_pi N |- T; strips the leading inversion.
MPtr opcartcomp(const Context& ctx, const std::vector<Arrow>& pi, const MPtr& a) {
  if (a->kind == MDeriv::Kind::LDiv) {
    if (a->pi != pi) fail(ErrorKind::IllFormed, "opcartcomp: chunk mismatch");
    return a->body;
  }
  if (a->kind == MDeriv::Kind::BiDiv) {
    if (a->pi != pi) fail(ErrorKind::IllFormed, "opcartcomp: chunk mismatch");
    return mk_m_rdiv(ctx, a->body, comp_before(ctx, a->pi, a->delta_or_f), a->rho);
  }
  fail(ErrorKind::IllFormed, "opcartcomp: proof does not start with a left inversion");
}

// a : cart_rho, for a : S |- pull_rho P.
MPtr cartcomp(const Context& ctx, const MPtr& a, const std::vector<Arrow>& rho) {
  if (a->kind == MDeriv::Kind::RDiv) {
    if (a->rho != rho) fail(ErrorKind::IllFormed, "cartcomp: chunk mismatch");
    return a->body;
  }
  if (a->kind == MDeriv::Kind::BiDiv) {
    if (a->rho != rho) fail(ErrorKind::IllFormed, "cartcomp: chunk mismatch");
    return mk_m_ldiv(ctx, a->pi, comp_after(ctx, a->delta_or_f, a->rho), a->body);
  }
  fail(ErrorKind::IllFormed, "cartcomp: proof does not start with a right inversion");
}

}  // namespace

MPtr mf_cut(const Context& ctx, const MPtr& a, const MPtr& b) {
  if (!formula_eq(a->j.rhs, b->j.lhs))
    fail(ErrorKind::NonComposable, "mf_cut: middle formulas disagree");
  const FormulaPtr& s = a->j.lhs;
  const FormulaPtr& t = b->j.rhs;
  if (s->is_push() || t->is_pull()) {
    std::vector<Arrow> pi = top_chunk(s, true);
    std::vector<Arrow> rho = top_chunk(t, false);
    MPtr a2 = pi.empty() ? a : opcartcomp(ctx, pi, a);
    MPtr b2 = rho.empty() ? b : cartcomp(ctx, b, rho);
    Arrow fg = ctx.C().compose(a->j.base, b->j.base);
    return wrap_bi(ctx, pi, fg, mf_cut(ctx, a2, b2), rho);
  }
  using K = MDeriv::Kind;
  if (a->kind == K::LMult && b->kind == K::RMult)
    return mk_m_bimult(ctx, a->pi, mf_cut(ctx, a->body, b->body), b->rho);
  if (a->kind == K::LMult) return mk_m_lmult(ctx, a->pi, mf_cut(ctx, a->body, b));
  if (b->kind == K::RMult) return mk_m_rmult(ctx, mf_cut(ctx, a, b->body), b->rho);
  if (a->kind == K::RMult && b->kind == K::LDiv) return mf_cut(ctx, a->body, b->body);
  if (a->kind == K::BiMult && b->kind == K::LDiv)
    return mk_m_lmult(ctx, a->pi, mf_cut(ctx, a->body, b->body));
  if (a->kind == K::RDiv && b->kind == K::LMult) return mf_cut(ctx, a->body, b->body);
  if (a->kind == K::RDiv && b->kind == K::BiMult)
    return mk_m_rmult(ctx, mf_cut(ctx, a->body, b->body), b->rho);
  if (a->kind == K::Ax && b->kind == K::Ax)
    return mk_m_ax(ctx, ctx.D().compose(a->delta_or_f, b->delta_or_f));
  fail(ErrorKind::IllFormed, "mf_cut: no applicable case");
}

MPtr canonical_form(const Context& ctx, const DerivPtr& d) {
  DerivPtr floored = strictify_derivation(ctx, d);
  WeakPtr w = weak_preimage(ctx, floored, d->j.lhs, d->j.rhs);
  MPtr m = strengthen(ctx, w);
  return normalize(ctx, m, 0).term;
}

}  // namespace bifib
