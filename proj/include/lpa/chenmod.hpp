#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/matrix.hpp"

namespace lpa {

enum class OracleFamily { thue_morse, fibonacci_word };

// Symbol (0 or 1) at position n of the built-in binary sequence.
int oracle_symbol(OracleFamily f, std::size_t n);
std::string oracle_name(OracleFamily f);

// An infinite path, either prefix·cycle^∞ or prefix followed by a shifted
// built-in binary sequence whose symbols are mapped to edges.
//
// Eventually periodic paths are stored with a primitive cycle and the
// shortest prefix; the cycle is kept in phase with the path. Its minimal
// rotation identifies the tail-equivalence class.
struct InfinitePath {
  enum class Kind { periodic, oracle };
  Kind kind = Kind::periodic;
  std::vector<EdgeId> prefix;
  std::vector<EdgeId> cycle;  // periodic only
  OracleFamily family = OracleFamily::thue_morse;
  std::vector<EdgeId> alphabet;  // oracle only: symbol -> edge
  std::size_t offset = 0;        // oracle only: tail starts at this index
  bool irrational = false;       // caller-asserted for oracle paths
  bool eeri = false;             // every edge occurs infinitely often
  std::size_t bound = 64;        // comparison depth for oracle verdicts

  EdgeId edge_at(std::size_t i) const;
  VertexId source(const Graph& g) const { return g.source(edge_at(0)); }
  // Cycle rotation that is lexicographically minimal (periodic only).
  std::vector<EdgeId> cycle_class() const;
  std::string str(const Graph& g) const;

  friend bool operator==(const InfinitePath&, const InfinitePath&) = default;
  friend auto operator<=>(const InfinitePath&, const InfinitePath&) = default;
};

// prefix·cycle^∞ in canonical form; validates the path condition.
InfinitePath canonicalize_path(const Graph& g, const Path& prefix, const Path& cycle);
// prefix followed by the sequence from `offset` on, mapped through alphabet.
// Flags default to irrational = true and eeri = (alphabet covers all edges).
InfinitePath oracle_path(const Graph& g, OracleFamily f, std::vector<EdgeId> alphabet, std::size_t offset = 0,
                         std::vector<EdgeId> prefix = {}, std::size_t bound = 64);

// Path literals: `(e1 e2)^inf`, `e2 (e1 e2)^inf`, `oracle:thue-morse[e1,e2]`,
// `e1 oracle:fibonacci-word[e1,e2]@3` (tail shifted by 3).
InfinitePath parse_path(std::string_view src, const Graph& g);

// Removes the first k edges.
InfinitePath drop_edges(const InfinitePath& p, std::size_t k);
// p·x for a finite path p with r(p) = s(x).
InfinitePath prepend(const Graph& g, const std::vector<EdgeId>& p, const InfinitePath& x);

enum class Tri { yes, no, unknown };
struct TailVerdict {
  Tri verdict;
  std::size_t bound = 0;  // set for unknown
  std::string str() const;
};
TailVerdict tail_equivalent(const InfinitePath& p, const InfinitePath& q);

// A vector in V_[p]: finite combination of infinite paths.
class ModuleVector {
 public:
  explicit ModuleVector(GraphPtr g) : g_(std::move(g)) {}
  static ModuleVector basis(const GraphPtr& g, const InfinitePath& p);

  const GraphPtr& graph() const { return g_; }
  const std::map<InfinitePath, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const InfinitePath& p, const Scalar& c);

  ModuleVector& operator+=(const ModuleVector& o);
  friend bool operator==(const ModuleVector& a, const ModuleVector& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ModuleVector& a, const ModuleVector& b) { return !(a == b); }
  std::string str() const;

 private:
  GraphPtr g_;
  std::map<InfinitePath, Scalar> terms_;
};

// The Chen action: v·x = x iff v = s(x); e·x = ex iff r(e) = s(x);
// e*·x = τ_{>1}(x) iff x starts with e.
ModuleVector act(const Element& a, const ModuleVector& m);
// The action on V^P: a·x = φ_{P^{-1}}(a) x for P ∈ GL_n(K) on a rose graph.
ModuleVector twisted_act(const FieldMatrix& P, const Element& a, const ModuleVector& m);
// φ_P for a scalar matrix on a rose graph.
Element apply_scalar_phi(const FieldMatrix& P, const Element& a);

// ε_0 = s(α), ε_m = e_{i1}…e_{im} e*_{im}…e*_{i1} for the first m edges.
Element epsilon(const GraphPtr& g, const InfinitePath& alpha, int m);
// (φ_P(ε_m) - φ_P(ε_{m+1}))·α = 0 in V^P for 0 <= m <= m_max. `eps`, when
// given, replaces ε_0..ε_{m_max+1}.
bool annihilator_check(const GraphPtr& g, const FieldMatrix& P, const InfinitePath& alpha, int m_max,
                       const std::vector<Element>* eps = nullptr);

// Permutations are 0-based images: sigma[i] = σ(i). (στ)(i) = σ(τ(i)).
using Perm = std::vector<int>;
Perm perm_compose(const Perm& s, const Perm& t);
Perm perm_inverse(const Perm& s);
bool is_perm(const Perm& s);

// Relabels e_i as e_σ(i) on a rose graph.
InfinitePath sn_act_path(const Graph& g, const Perm& sigma, const InfinitePath& p);
// σ·A = [a_σ(1) … a_σ(n)]: column j of the result is column σ(j) of A.
FieldMatrix sn_act_matrix(const Perm& sigma, const FieldMatrix& a);

struct PermDiagDecomp {
  Perm sigma;
  std::vector<Scalar> diag;  // d_1..d_n
  FieldMatrix reassemble() const;
};
// P = σ·D when P has exactly one nonzero entry per row and column.
std::optional<PermDiagDecomp> monomial_decompose(const FieldMatrix& P);

// φ_Q(d) = φ_P(β) for some rotation β of c.
bool iso_test_rational(const GraphPtr& g, const ClosedPathClass& c, const FieldMatrix& P, const ClosedPathClass& d,
                       const FieldMatrix& Q);
// Decides V^P_[α] ≅ V^Q_[β] for irrational paths: Q^{-1}P must be a
// monomial matrix σ·D and σ^{-1} must carry β into the class of α.
TailVerdict iso_test_irrational(const GraphPtr& g, const InfinitePath& alpha, const FieldMatrix& P,
                                const InfinitePath& beta, const FieldMatrix& Q);

}  // namespace lpa
