#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

//! The monomial p q* with r(p) = r(q) = tip.
//!
//! Normal monomials never end in the junction pair γ(v) γ(v)*. Ordering is
//! by degree |p|-|q|, then |p|, then the edge indices of p and q
//! lexicographically, then the tip vertex.
struct Monomial {
  std::vector<EdgeId> p;
  std::vector<EdgeId> q;
  VertexId tip = 0;

  int degree() const { return static_cast<int>(p.size()) - static_cast<int>(q.size()); }
  VertexId source_p(const Graph& g) const { return p.empty() ? tip : g.source(p.front()); }
  VertexId source_q(const Graph& g) const { return q.empty() ? tip : g.source(q.front()); }
  bool is_normal(const Graph& g) const;
  Path path_p(const Graph& g) const { return Path{source_p(g), p}; }
  Path path_q(const Graph& g) const { return Path{source_q(g), q}; }
};

bool operator==(const Monomial& a, const Monomial& b);
std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

//! A formal weighted pair (p, q) before normalization.
struct RawTerm {
  Scalar coeff;
  Path p;
  Path q;
};

//! An element of L_K(E): a finite sum of normal monomials with nonzero
//! coefficients. The representation is canonical, so == is the algebra's
//! equality.
class Element {
 public:
  using Terms = std::map<Monomial, Scalar>;

  explicit Element(GraphPtr g) : g_(std::move(g)) {}

  static Element zero(const GraphPtr& g) { return Element(g); }
  //! The identity Σ_v v.
  static Element one(const GraphPtr& g);
  static Element scalar(const GraphPtr& g, const Scalar& c);
  static Element vertex(const GraphPtr& g, VertexId v);
  static Element edge(const GraphPtr& g, EdgeId e);
  static Element ghost(const GraphPtr& g, EdgeId e);
  //! c · p q*, normalized. Throws when r(p) != r(q).
  static Element monomial(const GraphPtr& g, const Path& p, const Path& q, const Scalar& c = Scalar(1));
  static Element from_monomial(const GraphPtr& g, const Monomial& m, const Scalar& c = Scalar(1));
  //! Normal form of a raw list of weighted pairs.
  static Element normalize(const GraphPtr& g, const std::vector<RawTerm>& raw);

  const GraphPtr& graph() const { return g_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coeff(const Monomial& m) const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Scalar& c);
  Element operator-() const;
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Scalar& c) { return a *= c; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  friend Element operator*(const Element& a, const Element& b) { return mul(a, b); }
  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  static Element mul(const Element& a, const Element& b);
  Element pow(unsigned k) const;
  //! The involution: c p q* ↦ c q p*.
  Element star() const;

  //! Degree components; zero components are omitted.
  std::map<int, Element> graded_parts() const;
  //! Degree of a nonzero homogeneous element.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }

  //! Every monomial has s(p) = w1 and s(q) = w2.
  bool in_corner(VertexId w1, VertexId w2) const;
  //! Basis shape of the subalgebra generated by e1 and e2* in L(R_n): p avoids
  //! e2 and q avoids e1. Throws on a non-rose graph or n < 2.
  bool in_A_subalgebra(int n) const;

  //! Rendering in the element grammar, terms in monomial order.
  std::string str() const;

  //! Linear extension of a per-monomial map.
  Element map_monomials(const std::function<Element(const Monomial&, const Scalar&)>& f) const;

  //! Adds c · (p q*) after normalizing the single pair. Used by the product.
  void add_normalized(std::vector<EdgeId> p, std::vector<EdgeId> q, VertexId tip, const Scalar& c);

 private:
  void add_term(const Monomial& m, const Scalar& c);
  void check_graph(const Element& o) const;

  GraphPtr g_;
  Terms terms_;
};

std::string render_monomial(const Graph& g, const Monomial& m);
bool same_graph(const GraphPtr& a, const GraphPtr& b);

//! Independent word-level rewriting for cross-checking the normal form.
//!
//! A word is a product of vertex, edge and ghost letters. Rewriting applies
//! one relation at a time at a randomly chosen redex, so two runs with
//! different seeds follow different reduction orders.
namespace words {

enum class LetterKind : std::uint8_t { vertex, edge, ghost };

struct Letter {
  LetterKind kind;
  int id;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

struct WordTerm {
  Scalar coeff;
  Word word;
};

//! Reduces a linear combination of words to normal form choosing redexes
//! with the given RNG, and returns the canonical element.
Element reduce(const GraphPtr& g, std::vector<WordTerm> terms, std::mt19937_64& rng,
               std::size_t* steps = nullptr);

//! The word spelling of p q*.
Word spell(const Monomial& m);

}  // namespace words

}  // namespace lpa
