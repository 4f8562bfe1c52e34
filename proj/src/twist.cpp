#include "lpa/twist.hpp"

#include "lpa/error.hpp"

namespace lpa {

TwistContext::TwistContext(Automorphism sigma) : sigma_(std::move(sigma)) {
  if (!sigma_.phi.graded()) throw Error("twist needs a graded automorphism");
}

TwistContext TwistContext::identity(const GraphPtr& g) {
  auto n = g->rose_petals();
  if (!n) throw Error("identity twist context is provided for rose graphs");
  AlgMatrix id = AlgMatrix::identity(g, 0, static_cast<std::size_t>(*n));
  InvertiblePair I = mk_invertible(id, id);
  return TwistContext(certify_automorphism(mk_phi(I), I));
}

const Endo& TwistContext::power(int n) const {
  std::lock_guard lock(cache_->mu);
  auto it = cache_->powers.find(n);
  if (it != cache_->powers.end()) return *it->second;
  Endo p = n >= 0 ? lpa::power(sigma_.phi, n) : lpa::power(sigma_.inverse, -n);
  // Second route: φ^m = φ_{P_m}, with P_m^{-1} as the inverse.
  if (n >= 2) {
    const auto& prov = *sigma_.phi.provenance();
    InvertiblePair pm = mk_invertible(iterate_Pm(sigma_.phi, n), iterate_Pm_inv(sigma_.phi, n));
    if (!mk_phi(graph(), prov.v, prov.w, prov.edges, pm).same_on_generators(p)) {
      throw VerificationError("σ^m disagrees with φ_{P_m}");
    }
  }
  return *cache_->powers.emplace(n, std::make_unique<Endo>(std::move(p))).first->second;
}

Element twist_mul(const TwistContext& ctx, const Element& a, const Element& b) {
  Element out(ctx.graph());
  for (const auto& [d, part] : a.graded_parts()) {
    out += d == 0 ? part * b : part * ctx.power(d).apply(b);
  }
  return out;
}

namespace {

enum : int { kEdge = 0, kGhost = 1, kVertex = 2 };

int letter_code(int kind, int id) { return id * 3 + kind; }

}  // namespace

const Element& ThetaMap::shifted(int n, int letter) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->shifted.find({n, letter});
    if (it != cache_->shifted.end()) return it->second;
  }
  const GraphPtr& g = ctx_->graph();
  int kind = letter % 3;
  int id = letter / 3;
  Element base = kind == kEdge ? Element::edge(g, id) : kind == kGhost ? ghost_img_[id] : Element::vertex(g, id);
  Element img = n == 0 ? base : ctx_->power(n).apply(base);
  std::lock_guard lock(cache_->mu);
  return cache_->shifted.emplace(std::make_pair(n, letter), std::move(img)).first->second;
}

Element ThetaMap::apply(const Element& a) const {
  const GraphPtr& g = ctx_->graph();
  if (!same_graph(a.graph(), g)) throw Error("theta: element over a different graph");
  Element out(g);
  for (const auto& [m, c] : a.terms()) {
    if (m.p.empty() && m.q.empty()) {
      out += Element::vertex(g, m.tip) * c;
      continue;
    }
    std::vector<int> letters;
    for (EdgeId e : m.p) letters.push_back(letter_code(kEdge, e));
    for (auto it = m.q.rbegin(); it != m.q.rend(); ++it) letters.push_back(letter_code(kGhost, *it));
    Element acc = shifted(0, letters.front());
    for (std::size_t i = 1; i < letters.size(); ++i) {
      Element next(g);
      for (const auto& [d, part] : acc.graded_parts()) next += part * shifted(d, letters[i]);
      acc = std::move(next);
      if (acc.is_zero()) break;
    }
    out += acc * c;
  }
  return out;
}

ThetaMap mk_theta(std::shared_ptr<const TwistContext> ctx) {
  const Automorphism& s = ctx->sigma();
  const auto& prov = s.phi.provenance();
  if (!prov) throw Error("mk_theta needs a matrix-built automorphism");
  const GraphPtr& g = ctx->graph();
  ThetaMap th;
  th.ctx_ = ctx;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g->num_edges()); ++e) th.ghost_img_.push_back(Element::ghost(g, e));
  const AlgMatrix& Qinv = s.witness.Pinv();
  const auto& edges = prov->edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Element img(g);
    for (std::size_t k = 0; k < edges.size(); ++k) img += Qinv.at(i, k) * Element::ghost(g, edges[k]);
    th.ghost_img_[edges[i]] = std::move(img);
  }

  const TwistContext& c = *ctx;
  auto star = [&](const Element& a, const Element& b) { return twist_mul(c, a, b); };
  auto fail = [](const std::string& what) { throw VerificationError("theta images violate " + what + " under ⋆"); };
  const Graph& gr = *g;
  for (EdgeId e = 0; e < static_cast<EdgeId>(gr.num_edges()); ++e) {
    Element T = Element::edge(g, e);
    const Element& Ts = th.ghost_img_[e];
    Element S = Element::vertex(g, gr.source(e));
    Element R = Element::vertex(g, gr.range(e));
    if (star(S, T) != T || star(T, R) != T) fail("s(e)e = e = e r(e) for " + gr.edge_name(e));
    if (star(R, Ts) != Ts || star(Ts, S) != Ts) fail("r(e)e* = e* = e* s(e) for " + gr.edge_name(e));
    for (EdgeId f = 0; f < static_cast<EdgeId>(gr.num_edges()); ++f) {
      Element expect = e == f ? R : Element(g);
      if (star(Ts, Element::edge(g, f)) != expect) fail("e*f = δ r(e) at (" + gr.edge_name(e) + ", " + gr.edge_name(f) + ")");
    }
  }
  for (VertexId v = 0; v < static_cast<VertexId>(gr.num_vertices()); ++v) {
    if (gr.classify_vertex(v) != VertexKind::regular) continue;
    Element sum(g);
    for (EdgeId e : gr.out_edges(v)) sum += star(Element::edge(g, e), th.ghost_img_[e]);
    if (sum != Element::vertex(g, v)) fail("v = Σ ee* at " + gr.vertex_name(v));
  }
  return th;
}

Element theta_apply(const ThetaMap& theta, const Element& a) { return theta.apply(a); }

std::string MembershipResult::str() const {
  if (in_image()) return "InImage(" + (witness ? witness->str() : std::string("?")) + ")";
  return "NotFoundUpTo(" + std::to_string(bound) + ")";
}

std::vector<Monomial> basis_monomials(const Graph& g, int d, int max_len) {
  // paths_by_range[r] = all paths of length <= max_len ending at r.
  std::vector<std::vector<std::vector<EdgeId>>> by_range(g.num_vertices());
  std::vector<std::vector<EdgeId>> frontier;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) by_range[v].push_back({});
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) frontier.push_back({e});
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<std::vector<EdgeId>> next;
    for (auto& p : frontier) {
      VertexId r = g.range(p.back());
      by_range[r].push_back(p);
      if (len < max_len) {
        for (EdgeId e : g.out_edges(r)) {
          auto q = p;
          q.push_back(e);
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Monomial> out;
  for (VertexId r = 0; r < static_cast<VertexId>(g.num_vertices()); ++r) {
    for (const auto& p : by_range[r]) {
      for (const auto& q : by_range[r]) {
        if (static_cast<int>(p.size()) - static_cast<int>(q.size()) != d) continue;
        Monomial m{p, q, r};
        // The empty/empty pair at r is only its own vertex once.
        if (m.is_normal(g)) out.push_back(std::move(m));
      }
    }
  }
  return out;
}

namespace {

// Incremental row echelon form over Elements viewed as coefficient vectors,
// tracking how each pivot row combines the inserted vectors.
class SpanSolver {
 public:
  using Combo = std::map<std::size_t, Scalar>;

  bool insert(Element v, std::size_t idx) {
    Combo combo{{idx, Scalar(1)}};
    reduce_leads(v, combo);
    if (v.is_zero()) return false;
    Monomial lead = v.terms().rbegin()->first;
    Scalar inv = v.terms().rbegin()->second.inverse();
    v *= inv;
    scale(combo, inv);
    pivots_.emplace(std::move(lead), Row{std::move(v), std::move(combo)});
    return true;
  }

  std::optional<Combo> solve(Element v) const {
    Combo combo;
    while (!v.is_zero()) {
      const auto& [lead, c] = *v.terms().rbegin();
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) return std::nullopt;
      Scalar k = c;
      v -= it->second.vec * k;
      add_scaled(combo, it->second.combo, k);
    }
    return combo;
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  struct Row {
    Element vec;
    Combo combo;
  };

  static void scale(Combo& c, const Scalar& k) {
    for (auto& [i, x] : c) x *= k;
  }
  static void add_scaled(Combo& into, const Combo& from, const Scalar& k) {
    for (const auto& [i, x] : from) {
      auto& slot = into[i];
      slot += x * k;
      if (slot.is_zero()) into.erase(i);
    }
  }

  void reduce_leads(Element& v, Combo& combo) const {
    while (!v.is_zero()) {
      const auto& [lead, c] = *v.terms().rbegin();
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) return;
      Scalar k = c;
      v -= it->second.vec * k;
      add_scaled(combo, it->second.combo, -k);
    }
  }

  std::map<Monomial, Row> pivots_;
};

MembershipResult homogeneous_membership(const ThetaMap& theta, const Element& target, int d, int L) {
  const GraphPtr& g = theta.context().graph();
  auto basis = basis_monomials(*g, d, L);
  SpanSolver solver;
  for (std::size_t i = 0; i < basis.size(); ++i) solver.insert(theta.apply(Element::from_monomial(g, basis[i])), i);
  MembershipResult r;
  r.bound = L;
  r.searched = basis.size();
  auto combo = solver.solve(target);
  if (!combo) return r;
  Element w(g);
  for (const auto& [i, c] : *combo) w += Element::from_monomial(g, basis[i], c);
  if (theta.apply(w) != target) throw VerificationError("membership witness does not reproduce the target");
  r.verdict = MembershipResult::Verdict::InImage;
  r.witness = std::move(w);
  return r;
}

}  // namespace

MembershipResult image_membership(const ThetaMap& theta, const Element& target, int L) {
  if (L < 0) throw Error("image_membership: negative bound");
  const GraphPtr& g = theta.context().graph();
  MembershipResult total;
  total.bound = L;
  total.verdict = MembershipResult::Verdict::InImage;
  total.witness = Element(g);
  for (const auto& [d, part] : target.graded_parts()) {
    MembershipResult r = homogeneous_membership(theta, part, d, L);
    total.searched += r.searched;
    if (!r.in_image()) {
      r.searched = total.searched;
      return r;
    }
    *total.witness += *r.witness;
  }
  return total;
}

std::size_t rank_of(const std::vector<Element>& elems) {
  SpanSolver s;
  for (std::size_t i = 0; i < elems.size(); ++i) s.insert(elems[i], i);
  return s.rank();
}

std::string IsoReport::str() const {
  switch (verdict) {
    case Verdict::IsomorphismCertified:
      return std::string("IsomorphismCertified") + (shortcut ? " (fixed-point shortcut)" : "");
    case Verdict::FailsAt:
      return "FailsAt(m=" + std::to_string(m) + ", " + matrix + "[" + std::to_string(row) + "," + std::to_string(col) +
             "], not found up to length " + std::to_string(bound) + ")";
    case Verdict::InconclusiveUpTo:
      break;
  }
  return "InconclusiveUpTo(m=" + std::to_string(m) + ", L=" + std::to_string(bound) + ")";
}

namespace {

// First entry of M that is not found in Im θ, if any.
std::optional<std::pair<std::size_t, std::size_t>> first_missing(const ThetaMap& theta, const AlgMatrix& M, int L) {
  for (std::size_t i = 0; i < M.size(); ++i) {
    for (std::size_t j = 0; j < M.size(); ++j) {
      if (!image_membership(theta, M.at(i, j), L).in_image()) return std::make_pair(i + 1, j + 1);
    }
  }
  return std::nullopt;
}

}  // namespace

IsoReport check_iso_criterion(const ThetaMap& theta, int m_max, int L) {
  if (m_max < 1) throw Error("check_iso_criterion needs m_max >= 1");
  const Automorphism& s = theta.context().sigma();
  const InvertiblePair& P = s.phi.provenance()->P;
  IsoReport rep;
  rep.bound = L;
  auto fails = [&](int m, std::string name, std::pair<std::size_t, std::size_t> at) {
    rep.verdict = IsoReport::Verdict::FailsAt;
    rep.m = m;
    rep.matrix = std::move(name);
    rep.row = at.first;
    rep.col = at.second;
    return rep;
  };
  if (apply_entrywise(s.phi, P.P()) == P.P()) {
    rep.shortcut = true;
    if (auto miss = first_missing(theta, P.P(), L)) return fails(1, "P", *miss);
    if (auto miss = first_missing(theta, P.Pinv(), L)) return fails(1, "P^-1", *miss);
    rep.verdict = IsoReport::Verdict::IsomorphismCertified;
    rep.m = 1;
    return rep;
  }
  for (int m = 1; m <= m_max; ++m) {
    const std::string sfx = "_" + std::to_string(m);
    if (auto miss = first_missing(theta, iterate_Pm_inv(s.phi, m), L)) return fails(m, "P^-1" + sfx, *miss);
    if (auto miss = first_missing(theta, iterate_Pm(s.inverse, m), L)) return fails(m, "Q" + sfx, *miss);
    if (auto miss = first_missing(theta, iterate_Pm_inv(s.inverse, m), L)) return fails(m, "Q^-1" + sfx, *miss);
  }
  rep.verdict = IsoReport::Verdict::InconclusiveUpTo;
  rep.m = m_max;
  return rep;
}

bool verify_lemma_ei(const Endo& phiP, const InvertiblePair& Q, int m) {
  try {
    const auto& prov = phiP.provenance();
    if (!prov || m < 1) return false;
    const GraphPtr& g = phiP.graph();
    Endo phiQ = mk_phi(g, prov->v, prov->w, prov->edges, Q);
    Endo pm = power(phiP, m);
    Endo qm = power(phiQ, m);
    AlgMatrix Qm = iterate_Pm(phiQ, m);
    AlgMatrix Qm_inv = iterate_Pm_inv(phiQ, m);
    AlgMatrix Pm_inv = iterate_Pm_inv(phiP, m);
    const auto& e = prov->edges;
    const std::size_t n = e.size();
    for (std::size_t i = 0; i < n; ++i) {
      Element a(g), b(g), c(g);
      for (std::size_t k = 0; k < n; ++k) {
        a += Element::edge(g, e[k]) * Qm.at(k, i);
        b += Qm_inv.at(i, k) * Element::ghost(g, e[k]);
        c += Pm_inv.at(i, k) * Element::ghost(g, e[k]);
      }
      if (pm.apply(a) != Element::edge(g, e[i])) return false;
      if (pm.apply(b) != Element::ghost(g, e[i])) return false;
      if (qm.apply(c) != Element::ghost(g, e[i])) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

Element iterate_unit(const Endo& f, const Element& u, int m) {
  Element acc = u;
  Element img = u;
  for (int k = 1; k < m; ++k) {
    img = f.apply(img);
    acc = img * acc;
  }
  return acc;
}

Element iterate_unit_inv(const Endo& f, const Element& uinv, int m) {
  Element acc = uinv;
  Element img = uinv;
  for (int k = 1; k < m; ++k) {
    img = f.apply(img);
    acc = acc * img;
  }
  return acc;
}

bool verify_lemma_pm(const Element& u, const Element& uinv, const Element& w, const Element& winv, int m) {
  try {
    if (m < 1) return false;
    for (const auto& [a, ainv] : {std::pair{u, uinv}, std::pair{w, winv}}) {
      Endo f = mk_fu(a, ainv);
      if (iterate_Pm(f, m) != matrix_iso(iterate_unit(f, a, m))) return false;
      if (iterate_Pm_inv(f, m) != matrix_iso(iterate_unit_inv(f, ainv, m))) return false;
    }
    // f_w must invert f_u.
    Endo fu = mk_fu(u, uinv);
    Endo fw = mk_fu(w, winv);
    return compose_functional(fu, fw).same_on_generators(Endo::identity(u.graph()));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace lpa
