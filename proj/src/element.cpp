#include "lpa/element.hpp"

#include <algorithm>

#include "lpa/error.hpp"

namespace lpa {

bool operator==(const Monomial& a, const Monomial& b) {
  return a.tip == b.tip && a.p == b.p && a.q == b.q;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  if (auto c = a.p.size() <=> b.p.size(); c != 0) return c;
  if (auto c = a.p <=> b.p; c != 0) return c;
  if (auto c = a.q <=> b.q; c != 0) return c;
  return a.tip <=> b.tip;
}

bool Monomial::is_normal(const Graph& g) const {
  if (p.empty() || q.empty() || p.back() != q.back()) return true;
  EdgeId f = p.back();
  return g.special_edge(g.source(f)) != f;
}

bool same_graph(const GraphPtr& a, const GraphPtr& b) {
  return a == b || (a && b && *a == *b);
}

Element Element::one(const GraphPtr& g) {
  Element r(g);
  for (VertexId v = 0; v < static_cast<VertexId>(g->num_vertices()); ++v) {
    r.terms_.emplace(Monomial{{}, {}, v}, Scalar(1));
  }
  return r;
}

Element Element::scalar(const GraphPtr& g, const Scalar& c) { return one(g) * c; }

Element Element::vertex(const GraphPtr& g, VertexId v) {
  if (v < 0 || v >= static_cast<VertexId>(g->num_vertices())) throw Error("unknown vertex id");
  Element r(g);
  r.terms_.emplace(Monomial{{}, {}, v}, Scalar(1));
  return r;
}

Element Element::edge(const GraphPtr& g, EdgeId e) {
  Element r(g);
  r.terms_.emplace(Monomial{{e}, {}, g->range(e)}, Scalar(1));
  return r;
}

Element Element::ghost(const GraphPtr& g, EdgeId e) {
  Element r(g);
  r.terms_.emplace(Monomial{{}, {e}, g->range(e)}, Scalar(1));
  return r;
}

Element Element::monomial(const GraphPtr& g, const Path& p, const Path& q, const Scalar& c) {
  if (p.range(*g) != q.range(*g)) throw Error("mismatched ranges in p q*");
  Element r(g);
  r.add_normalized(p.edges, q.edges, p.range(*g), c);
  return r;
}

Element Element::from_monomial(const GraphPtr& g, const Monomial& m, const Scalar& c) {
  Element r(g);
  r.add_normalized(m.p, m.q, m.tip, c);
  return r;
}

Element Element::normalize(const GraphPtr& g, const std::vector<RawTerm>& raw) {
  Element r(g);
  for (const auto& t : raw) {
    Path::make(*g, t.p.base, t.p.edges);
    Path::make(*g, t.q.base, t.q.edges);
    if (t.p.range(*g) != t.q.range(*g)) throw Error("mismatched ranges in p q*");
    r.add_normalized(t.p.edges, t.q.edges, t.p.range(*g), t.coeff);
  }
  return r;
}

Scalar Element::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Element::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

// Repeatedly replaces the junction γγ* by v - Σ_{e≠γ} e e*; the
// complementary terms end in distinct non-special pairs and are already normal.
void Element::add_normalized(std::vector<EdgeId> p, std::vector<EdgeId> q, VertexId tip,
                             const Scalar& c) {
  if (c.is_zero()) return;
  const Graph& g = *g_;
  while (!p.empty() && !q.empty() && p.back() == q.back()) {
    EdgeId f = p.back();
    VertexId v = g.source(f);
    if (g.special_edge(v) != f) break;
    p.pop_back();
    q.pop_back();
    tip = v;
    Scalar neg = -c;
    for (EdgeId e : g.out_edges(v)) {
      if (e == f) continue;
      Monomial m{p, q, g.range(e)};
      m.p.push_back(e);
      m.q.push_back(e);
      add_term(m, neg);
    }
  }
  add_term(Monomial{std::move(p), std::move(q), tip}, c);
}

void Element::check_graph(const Element& o) const {
  if (!same_graph(g_, o.g_)) throw Error("elements live over different graphs");
}

Element& Element::operator+=(const Element& o) {
  check_graph(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  check_graph(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const Element& a, const Element& b) {
  return a.terms_ == b.terms_ && (a.terms_.empty() || same_graph(a.g_, b.g_));
}

Element Element::mul(const Element& a, const Element& b) {
  a.check_graph(b);
  const Graph& g = *a.g_;
  Element r(a.g_);
  for (const auto& [m1, c1] : a.terms_) {
    VertexId sq = m1.source_q(g);
    for (const auto& [m2, c2] : b.terms_) {
      if (m2.source_p(g) != sq) continue;
      const auto& q = m1.q;
      const auto& rr = m2.p;
      if (q.size() <= rr.size()) {
        if (!std::equal(q.begin(), q.end(), rr.begin())) continue;
        std::vector<EdgeId> np = m1.p;
        np.insert(np.end(), rr.begin() + static_cast<std::ptrdiff_t>(q.size()), rr.end());
        r.add_normalized(std::move(np), m2.q, m2.tip, c1 * c2);
      } else {
        if (!std::equal(rr.begin(), rr.end(), q.begin())) continue;
        std::vector<EdgeId> nq = m2.q;
        nq.insert(nq.end(), q.begin() + static_cast<std::ptrdiff_t>(rr.size()), q.end());
        r.add_normalized(m1.p, std::move(nq), m1.tip, c1 * c2);
      }
    }
  }
  return r;
}

Element Element::pow(unsigned k) const {
  Element r = one(g_);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Element Element::star() const {
  Element r(g_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(Monomial{m.q, m.p, m.tip}, c);
  return r;
}

std::map<int, Element> Element::graded_parts() const {
  std::map<int, Element> parts;
  for (const auto& [m, c] : terms_) {
    auto it = parts.try_emplace(m.degree(), g_).first;
    it->second.terms_.emplace(m, c);
  }
  return parts;
}

std::optional<int> Element::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree();
  // Keys are sorted by degree first.
  if (terms_.rbegin()->first.degree() != d) return std::nullopt;
  return d;
}

bool Element::in_corner(VertexId w1, VertexId w2) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) {
    return kv.first.source_p(*g_) == w1 && kv.first.source_q(*g_) == w2;
  });
}

bool Element::in_A_subalgebra(int n) const {
  auto petals = g_->rose_petals();
  if (!petals || *petals != n || n < 2) throw Error("in_A_subalgebra needs the rose graph with n >= 2 petals");
  const EdgeId e1 = 0;
  const EdgeId e2 = 1;
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) {
    const auto& m = kv.first;
    return std::find(m.p.begin(), m.p.end(), e2) == m.p.end() &&
           std::find(m.q.begin(), m.q.end(), e1) == m.q.end();
  });
}

Element Element::map_monomials(const std::function<Element(const Monomial&, const Scalar&)>& f) const {
  Element r(g_);
  for (const auto& [m, c] : terms_) r += f(m, c);
  return r;
}

std::string render_monomial(const Graph& g, const Monomial& m) {
  if (m.p.empty() && m.q.empty()) return g.vertex_name(m.tip);
  std::vector<std::string> letters;
  auto push_run = [&](const std::string& name, int count) {
    letters.push_back(count == 1 ? name : name + "^" + std::to_string(count));
  };
  for (std::size_t i = 0; i < m.p.size();) {
    std::size_t j = i;
    while (j < m.p.size() && m.p[j] == m.p[i]) ++j;
    push_run(g.edge_name(m.p[i]), static_cast<int>(j - i));
    i = j;
  }
  // q* = q_k* ... q_1*
  for (std::size_t i = m.q.size(); i > 0;) {
    std::size_t j = i;
    while (j > 0 && m.q[j - 1] == m.q[i - 1]) --j;
    push_run(g.edge_name(m.q[i - 1]) + "'", static_cast<int>(i - j));
    i = j;
  }
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += '*';
    s += letters[i];
  }
  return s;
}

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string word = render_monomial(*g_, m);
    std::string cs = c.str();
    bool negative = cs.front() == '-';
    if (negative) cs.erase(0, 1);
    std::string body = cs == "1" ? word : cs + "*" + word;
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

namespace words {

namespace {

using Combo = std::vector<WordTerm>;

// Result of rewriting the pair at (i, i+1): nullopt when it is not a redex,
// otherwise the replacement words (empty list means the term vanishes).
struct Replacement {
  std::vector<std::pair<Scalar, Word>> pieces;
};

std::optional<Replacement> rewrite_pair(const Graph& g, const Letter& a, const Letter& b) {
  using K = LetterKind;
  auto keep = [](const Letter& l) { return Replacement{{{Scalar(1), Word{l}}}}; };
  const Replacement zero{};
  if (a.kind == K::vertex && b.kind == K::vertex) return a.id == b.id ? keep(a) : zero;
  if (a.kind == K::vertex && b.kind == K::edge) return g.source(b.id) == a.id ? keep(b) : zero;
  if (a.kind == K::edge && b.kind == K::vertex) return g.range(a.id) == b.id ? keep(a) : zero;
  if (a.kind == K::vertex && b.kind == K::ghost) return g.range(b.id) == a.id ? keep(b) : zero;
  if (a.kind == K::ghost && b.kind == K::vertex) return g.source(a.id) == b.id ? keep(a) : zero;
  if (a.kind == K::edge && b.kind == K::edge) {
    if (g.range(a.id) != g.source(b.id)) return zero;
    return std::nullopt;
  }
  if (a.kind == K::ghost && b.kind == K::ghost) {
    if (g.source(a.id) != g.range(b.id)) return zero;
    return std::nullopt;
  }
  if (a.kind == K::ghost && b.kind == K::edge) {
    if (a.id != b.id) return zero;
    return keep(Letter{K::vertex, g.range(a.id)});
  }
  // edge followed by ghost
  if (g.range(a.id) != g.range(b.id)) return zero;
  VertexId v = g.source(a.id);
  if (a.id == b.id && g.special_edge(v) == a.id) {
    Replacement r;
    r.pieces.push_back({Scalar(1), Word{Letter{K::vertex, v}}});
    for (EdgeId e : g.out_edges(v)) {
      if (e == a.id) continue;
      r.pieces.push_back({Scalar(-1), Word{Letter{K::edge, e}, Letter{K::ghost, e}}});
    }
    return r;
  }
  return std::nullopt;
}

}  // namespace

Word spell(const Monomial& m) {
  if (m.p.empty() && m.q.empty()) return {Letter{LetterKind::vertex, m.tip}};
  Word w;
  for (EdgeId e : m.p) w.push_back({LetterKind::edge, e});
  for (auto it = m.q.rbegin(); it != m.q.rend(); ++it) w.push_back({LetterKind::ghost, *it});
  return w;
}

Element reduce(const GraphPtr& g, std::vector<WordTerm> terms, std::mt19937_64& rng, std::size_t* steps) {
  std::size_t count = 0;
  terms.erase(std::remove_if(terms.begin(), terms.end(),
                             [](const WordTerm& t) { return t.coeff.is_zero() || t.word.empty(); }),
              terms.end());
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> redexes;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const Word& w = terms[t].word;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (rewrite_pair(*g, w[i], w[i + 1])) redexes.emplace_back(t, i);
      }
    }
    if (redexes.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, redexes.size() - 1);
    auto [t, i] = redexes[pick(rng)];
    WordTerm term = std::move(terms[t]);
    terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(t));
    auto rep = *rewrite_pair(*g, term.word[i], term.word[i + 1]);
    for (auto& [c, mid] : rep.pieces) {
      Word w(term.word.begin(), term.word.begin() + static_cast<std::ptrdiff_t>(i));
      w.insert(w.end(), mid.begin(), mid.end());
      w.insert(w.end(), term.word.begin() + static_cast<std::ptrdiff_t>(i + 2), term.word.end());
      terms.push_back({term.coeff * c, std::move(w)});
    }
    ++count;
  }
  if (steps) *steps = count;

  // Every irreducible word is a lone vertex or edges followed by ghosts.
  Element out(g);
  for (const auto& t : terms) {
    Monomial m;
    if (t.word.size() == 1 && t.word[0].kind == LetterKind::vertex) {
      m.tip = t.word[0].id;
    } else {
      std::size_t i = 0;
      for (; i < t.word.size() && t.word[i].kind == LetterKind::edge; ++i) m.p.push_back(t.word[i].id);
      for (std::size_t j = t.word.size(); j > i; --j) {
        if (t.word[j - 1].kind != LetterKind::ghost) throw Error("irreducible word is not of the form p q*");
        m.q.push_back(t.word[j - 1].id);
      }
      m.tip = m.p.empty() ? g->range(m.q.back()) : g->range(m.p.back());
    }
    if (!m.is_normal(*g)) throw Error("irreducible word still has a junction redex");
    out += Element::from_monomial(g, m, t.coeff);
  }
  return out;
}

}  // namespace words

}  // namespace lpa
