#include "lpa/morphism.hpp"

#include <algorithm>
#include <set>

#include "lpa/error.hpp"

namespace lpa {

namespace {

int rose_size(const GraphPtr& g, const char* what) {
  auto n = g->rose_petals();
  if (!n) throw Error(std::string(what) + " needs a rose graph");
  return *n;
}

bool homogeneous_of(const Element& e, int d) {
  auto h = e.homogeneous_degree();
  return e.is_zero() || (h && *h == d);
}

}  // namespace

Endo Endo::identity(const GraphPtr& g) {
  Endo f(g);
  for (VertexId v = 0; v < static_cast<VertexId>(g->num_vertices()); ++v) {
    f.vertex_img_.push_back(Element::vertex(g, v));
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g->num_edges()); ++e) {
    f.edge_img_.push_back(Element::edge(g, e));
    f.ghost_img_.push_back(Element::ghost(g, e));
  }
  f.graded_ = true;
  return f;
}

Endo Endo::from_images(const GraphPtr& g, std::vector<Element> vertex_images, std::vector<Element> edge_images,
                       std::vector<Element> ghost_images) {
  if (vertex_images.size() != g->num_vertices() || edge_images.size() != g->num_edges() ||
      ghost_images.size() != g->num_edges()) {
    throw Error("generator image lists have the wrong length");
  }
  Endo f(g);
  f.vertex_img_ = std::move(vertex_images);
  f.edge_img_ = std::move(edge_images);
  f.ghost_img_ = std::move(ghost_images);
  f.validate();
  return f;
}

void Endo::validate() {
  const Graph& g = *g_;
  const auto nv = static_cast<VertexId>(g.num_vertices());
  const auto ne = static_cast<EdgeId>(g.num_edges());
  auto fail = [](const std::string& what) { throw VerificationError("generator images violate " + what); };
  for (const auto* list : {&vertex_img_, &edge_img_, &ghost_img_}) {
    for (const auto& x : *list) {
      if (!same_graph(x.graph(), g_)) throw Error("generator image over a different graph");
    }
  }
  for (VertexId v = 0; v < nv; ++v) {
    for (VertexId w = 0; w < nv; ++w) {
      Element expect = v == w ? vertex_img_[v] : Element(g_);
      if (vertex_img_[v] * vertex_img_[w] != expect) {
        fail("vw = δ v at (" + g.vertex_name(v) + ", " + g.vertex_name(w) + ")");
      }
    }
  }
  for (EdgeId e = 0; e < ne; ++e) {
    const Element& T = edge_img_[e];
    const Element& Ts = ghost_img_[e];
    const Element& S = vertex_img_[g.source(e)];
    const Element& R = vertex_img_[g.range(e)];
    if (S * T != T || T * R != T) fail("s(e)e = e = e r(e) for " + g.edge_name(e));
    if (R * Ts != Ts || Ts * S != Ts) fail("r(e)e* = e* = e* s(e) for " + g.edge_name(e));
  }
  for (EdgeId e = 0; e < ne; ++e) {
    for (EdgeId f = 0; f < ne; ++f) {
      Element expect = e == f ? vertex_img_[g.range(e)] : Element(g_);
      if (ghost_img_[e] * edge_img_[f] != expect) {
        fail("e*f = δ r(e) at (" + g.edge_name(e) + ", " + g.edge_name(f) + ")");
      }
    }
  }
  for (VertexId v = 0; v < nv; ++v) {
    if (g.classify_vertex(v) != VertexKind::regular) continue;
    Element sum(g_);
    for (EdgeId e : g.out_edges(v)) sum += edge_img_[e] * ghost_img_[e];
    if (sum != vertex_img_[v]) fail("v = Σ ee* at " + g.vertex_name(v));
  }
  graded_ = std::all_of(vertex_img_.begin(), vertex_img_.end(), [](const Element& x) { return homogeneous_of(x, 0); }) &&
            std::all_of(edge_img_.begin(), edge_img_.end(), [](const Element& x) { return homogeneous_of(x, 1); }) &&
            std::all_of(ghost_img_.begin(), ghost_img_.end(), [](const Element& x) { return homogeneous_of(x, -1); });
}

Element Endo::apply(const Element& a) const {
  if (!same_graph(a.graph(), g_)) throw Error("apply: element over a different graph");
  Element out(g_);
  for (const auto& [m, c] : a.terms()) {
    Element t(g_);
    if (m.p.empty() && m.q.empty()) {
      t = vertex_img_[m.tip];
    } else {
      bool first = true;
      auto times = [&](const Element& x) {
        if (first) {
          t = x;
          first = false;
        } else {
          t = t * x;
        }
      };
      for (EdgeId e : m.p) times(edge_img_[e]);
      for (auto it = m.q.rbegin(); it != m.q.rend(); ++it) times(ghost_img_[*it]);
    }
    out += t * c;
  }
  return out;
}

bool Endo::same_on_generators(const Endo& o) const {
  return same_graph(g_, o.g_) && vertex_img_ == o.vertex_img_ && edge_img_ == o.edge_img_ &&
         ghost_img_ == o.ghost_img_;
}

std::string Endo::describe() const {
  const Graph& g = *g_;
  std::string s;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    s += g.vertex_name(v) + " -> " + vertex_img_[v].str() + "\n";
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    s += g.edge_name(e) + " -> " + edge_img_[e].str() + "\n";
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    s += g.edge_name(e) + "' -> " + ghost_img_[e].str() + "\n";
  }
  return s;
}

Endo mk_phi(const GraphPtr& g, VertexId v, VertexId w, const std::vector<EdgeId>& edges, const InvertiblePair& P) {
  const std::size_t n = edges.size();
  if (n == 0) throw Error("mk_phi needs at least one edge");
  if (std::set<EdgeId>(edges.begin(), edges.end()).size() != n) throw Error("mk_phi: edges are not distinct");
  for (EdgeId e : edges) {
    if (g->source(e) != v || g->range(e) != w) {
      throw Error("mk_phi: edge " + g->edge_name(e) + " does not run from " + g->vertex_name(v) + " to " +
                  g->vertex_name(w));
    }
  }
  if (P.size() != n || P.corner() != w || !same_graph(P.graph(), g)) {
    throw Error("mk_phi: matrix size or corner does not match the edge list");
  }
  Endo f = Endo::identity(g);
  for (std::size_t i = 0; i < n; ++i) {
    Element img(g);
    Element gimg(g);
    for (std::size_t k = 0; k < n; ++k) {
      img += Element::edge(g, edges[k]) * P.P().at(k, i);
      gimg += P.Pinv().at(i, k) * Element::ghost(g, edges[k]);
    }
    f.edge_img_[edges[i]] = std::move(img);
    f.ghost_img_[edges[i]] = std::move(gimg);
  }
  f.validate();
  f.prov_ = MatrixProvenance{v, w, edges, P};
  return f;
}

Endo mk_phi(const InvertiblePair& P) {
  const GraphPtr& g = P.graph();
  int n = rose_size(g, "mk_phi");
  std::vector<EdgeId> edges(n);
  for (int i = 0; i < n; ++i) edges[i] = i;
  return mk_phi(g, 0, 0, edges, P);
}

Endo mk_phi_auto(const InvertiblePair& P) {
  const GraphPtr& g = P.graph();
  if (g->rose_petals()) return mk_phi(P);
  for (VertexId v = 0; v < static_cast<VertexId>(g->num_vertices()); ++v) {
    std::vector<EdgeId> edges;
    for (EdgeId e : g->out_edges(v)) {
      if (g->range(e) == P.corner()) edges.push_back(e);
    }
    if (edges.size() == P.size()) return mk_phi(g, v, P.corner(), edges, P);
  }
  throw Error("no vertex has exactly " + std::to_string(P.size()) + " edges into " + g->vertex_name(P.corner()));
}

Element apply(const Endo& f, const Element& a) { return f.apply(a); }

Endo compose_functional(const Endo& f, const Endo& g) {
  if (!same_graph(f.graph(), g.graph())) throw Error("compose: different graphs");
  const GraphPtr& gr = f.graph();
  std::vector<Element> vi, ei, gi;
  for (VertexId v = 0; v < static_cast<VertexId>(gr->num_vertices()); ++v) vi.push_back(f.apply(g.vertex_image(v)));
  for (EdgeId e = 0; e < static_cast<EdgeId>(gr->num_edges()); ++e) {
    ei.push_back(f.apply(g.edge_image(e)));
    gi.push_back(f.apply(g.ghost_image(e)));
  }
  return Endo::from_images(gr, std::move(vi), std::move(ei), std::move(gi));
}

Endo compose(const Endo& f, const Endo& g) {
  const auto& pf = f.provenance();
  const auto& pg = g.provenance();
  if (!pf || !pg || pf->v != pg->v || pf->w != pg->w || pf->edges != pg->edges) return compose_functional(f, g);
  InvertiblePair pq = star_product(pf->P, pg->P, f);
  Endo h = mk_phi(f.graph(), pf->v, pf->w, pf->edges, pq);
  if (!h.same_on_generators(compose_functional(f, g))) {
    throw VerificationError("compose: φ_{P⋆Q} disagrees with φ_P∘φ_Q on generators");
  }
  return h;
}

Endo power(const Endo& f, int k) {
  if (k < 0) throw Error("power: negative exponent");
  if (k == 0) {
    if (f.provenance()) {
      const auto& p = *f.provenance();
      auto id = mk_invertible(AlgMatrix::identity(f.graph(), p.w, p.edges.size()),
                              AlgMatrix::identity(f.graph(), p.w, p.edges.size()));
      return mk_phi(f.graph(), p.v, p.w, p.edges, id);
    }
    return Endo::identity(f.graph());
  }
  Endo r = f;
  for (int i = 1; i < k; ++i) r = compose(f, r);
  return r;
}

Automorphism certify_automorphism(const Endo& f, const InvertiblePair& Q) {
  const auto& prov = f.provenance();
  if (!prov) throw Error("certify_automorphism: endomorphism is not matrix-built");
  if (Q.size() != prov->P.size() || Q.corner() != prov->w) throw Error("certify_automorphism: witness size mismatch");
  AlgMatrix img = apply_entrywise(f, Q.P());
  const AlgMatrix& Pinv = prov->P.Pinv();
  for (std::size_t i = 0; i < img.size(); ++i) {
    for (std::size_t j = 0; j < img.size(); ++j) {
      if (img.at(i, j) != Pinv.at(i, j)) {
        throw VerificationError("witness rejected: φ_P(Q)[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                "] = " + img.at(i, j).str() + " but P^-1 has " + Pinv.at(i, j).str());
      }
    }
  }
  Endo inv = mk_phi(f.graph(), prov->v, prov->w, prov->edges, Q);
  const Endo id = Endo::identity(f.graph());
  if (!compose_functional(f, inv).same_on_generators(id) || !compose_functional(inv, f).same_on_generators(id)) {
    throw VerificationError("certified inverse does not invert on generators");
  }
  return Automorphism{f, inv, Q};
}

std::optional<Automorphism> try_fixed_point_shortcut(const Endo& f) {
  const auto& prov = f.provenance();
  if (!prov) return std::nullopt;
  const InvertiblePair& P = prov->P;
  if (apply_entrywise(f, P.P()) == P.P() || apply_entrywise(f, P.Pinv()) == P.Pinv()) {
    return certify_automorphism(f, P.swapped());
  }
  return std::nullopt;
}

InvertiblePair extract_matrix(const Endo& f, VertexId v) {
  const GraphPtr& g = f.graph();
  const auto& edges = g->out_edges(v);
  if (edges.empty()) throw Error("extract_matrix: vertex is a sink");
  VertexId w = g->range(edges.front());
  for (EdgeId e : edges) {
    if (g->range(e) != w) throw Error("extract_matrix: edges from the vertex do not share a range");
  }
  for (VertexId u = 0; u < static_cast<VertexId>(g->num_vertices()); ++u) {
    if (f.vertex_image(u) != Element::vertex(g, u)) throw VerificationError("extract_matrix: vertex not fixed");
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g->num_edges()); ++e) {
    if (g->source(e) == v) continue;
    if (f.edge_image(e) != Element::edge(g, e) || f.ghost_image(e) != Element::ghost(g, e)) {
      throw VerificationError("extract_matrix: edge off the list is not fixed");
    }
  }
  const std::size_t n = edges.size();
  AlgMatrix P(g, w, n);
  AlgMatrix Pinv(g, w, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      P.set(i, j, Element::ghost(g, edges[i]) * f.edge_image(edges[j]));
      Pinv.set(i, j, f.ghost_image(edges[i]) * Element::edge(g, edges[j]));
    }
  }
  InvertiblePair pair = mk_invertible(P, Pinv);
  Endo h = mk_phi(g, v, w, edges, pair);
  if (!h.same_on_generators(f)) throw VerificationError("extract_matrix: φ_P does not reproduce the map");
  return pair;
}

InvertiblePair extract_matrix(const Endo& f) {
  rose_size(f.graph(), "extract_matrix");
  return extract_matrix(f, 0);
}

void require_unit(const Element& u, const Element& uinv) {
  const Element one = Element::one(u.graph());
  if (u * uinv != one || uinv * u != one) throw VerificationError("not a unit: u·u^-1 or u^-1·u differs from 1");
}

AlgMatrix matrix_iso(const Element& s) {
  const GraphPtr& g = s.graph();
  int n = rose_size(g, "matrix_iso");
  AlgMatrix m(g, 0, n);
  for (int i = 0; i < n; ++i) {
    Element left = Element::ghost(g, i) * s;
    for (int j = 0; j < n; ++j) m.set(i, j, left * Element::edge(g, j));
  }
  return m;
}

Element matrix_iso_inv(const AlgMatrix& m) {
  const GraphPtr& g = m.graph();
  int n = rose_size(g, "matrix_iso_inv");
  if (static_cast<int>(m.size()) != n) throw Error("matrix_iso_inv: size differs from the number of petals");
  Element s(g);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += Element::edge(g, i) * m.at(i, j) * Element::ghost(g, j);
  }
  return s;
}

Endo mk_fu(const Element& u, const Element& uinv) {
  const GraphPtr& g = u.graph();
  int n = rose_size(g, "mk_fu");
  require_unit(u, uinv);
  Endo f = mk_phi(mk_invertible(matrix_iso(u), matrix_iso(uinv)));
  for (int i = 0; i < n; ++i) {
    if (f.edge_image(i) != u * Element::edge(g, i) || f.ghost_image(i) != Element::ghost(g, i) * uinv) {
      throw VerificationError("mk_fu: φ_P disagrees with e ↦ ue, e* ↦ e*u^-1");
    }
  }
  return f;
}

Element unit_of_endo(const Endo& f) {
  const GraphPtr& g = f.graph();
  int n = rose_size(g, "unit_of_endo");
  Element x(g);
  for (int i = 0; i < n; ++i) x += f.edge_image(i) * Element::ghost(g, i);
  return x;
}

Endo inner(const Element& u, const Element& uinv) {
  const GraphPtr& g = u.graph();
  int n = rose_size(g, "inner");
  require_unit(u, uinv);
  Element a(g);
  Element b(g);
  for (int i = 0; i < n; ++i) {
    a += Element::edge(g, i) * u * Element::ghost(g, i);
    b += Element::edge(g, i) * uinv * Element::ghost(g, i);
  }
  Endo f = mk_fu(uinv * a, b * u);
  for (int i = 0; i < n; ++i) {
    if (f.edge_image(i) != uinv * Element::edge(g, i) * u || f.ghost_image(i) != uinv * Element::ghost(g, i) * u) {
      throw VerificationError("inner: f_x disagrees with a ↦ u^-1 a u");
    }
  }
  return f;
}

std::optional<Element> easy_unit_inverse(const Element& u) {
  const Element one = Element::one(u.graph());
  for (const Element& c : {u, u.star()}) {
    if (u * c == one && c * u == one) return c;
  }
  // u = 1 + n with n nilpotent: u^-1 = Σ (-n)^k.
  const Element minus_n = one - u;
  Element term = one, sum = one;
  for (int k = 1; k <= 8; ++k) {
    term = term * minus_n;
    if (term.is_zero()) return sum;
    sum += term;
  }
  if (!u.graph()->rose_petals()) return std::nullopt;
  auto f = matrix_iso(u).as_field();
  if (!f) return std::nullopt;
  auto inv = f->inverse();
  if (!inv) return std::nullopt;
  return matrix_iso_inv(AlgMatrix::from_field(u.graph(), 0, *inv));
}

std::optional<InvertiblePair> easy_invertible(const AlgMatrix& P) {
  if (auto f = P.as_field(); f && f->inverse()) return mk_invertible_scalar(P);
  AlgMatrix t(P.graph(), P.corner(), P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < P.size(); ++j) t.set(i, j, P.at(j, i).star());
  }
  // P = w·I + N with N nilpotent: P^-1 = Σ (-N)^k, and N^n = 0 suffices to
  // stop since the series is tried only up to size n.
  const AlgMatrix I = AlgMatrix::identity(P.graph(), P.corner(), P.size());
  const AlgMatrix minus_n = I - P;
  AlgMatrix term = I, series = I;
  for (std::size_t k = 1; k <= P.size() + 1; ++k) {
    term = term * minus_n;
    series = series + term;
  }
  for (const AlgMatrix& c : {P, t, series}) {
    try {
      return mk_invertible(P, c);
    } catch (const VerificationError&) {
    }
  }
  return std::nullopt;
}

}  // namespace lpa
