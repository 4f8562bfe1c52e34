#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/matrix.hpp"

namespace lpa {

//! Data recording that an endomorphism is φ_P for the listed edges.
struct MatrixProvenance {
  VertexId v;
  VertexId w;
  std::vector<EdgeId> edges;  // e_1..e_n, all with source v and range w
  InvertiblePair P;
};

//! An algebra endomorphism of L_K(E), stored by its generator images.
//!
//! Construction validates the Cuntz-Krieger relations on the images, so the
//! universal property guarantees a well-defined homomorphism.
class Endo {
 public:
  static Endo identity(const GraphPtr& g);
  //! Validates the relations; throws VerificationError naming the failing one.
  static Endo from_images(const GraphPtr& g, std::vector<Element> vertex_images,
                          std::vector<Element> edge_images, std::vector<Element> ghost_images);

  const GraphPtr& graph() const { return g_; }
  const Element& vertex_image(VertexId v) const { return vertex_img_.at(v); }
  const Element& edge_image(EdgeId e) const { return edge_img_.at(e); }
  const Element& ghost_image(EdgeId e) const { return ghost_img_.at(e); }
  const std::optional<MatrixProvenance>& provenance() const { return prov_; }
  bool graded() const { return graded_; }

  //! The multiplicative linear extension, normalized.
  Element apply(const Element& a) const;
  Element operator()(const Element& a) const { return apply(a); }

  bool same_on_generators(const Endo& o) const;
  //! One line per generator: `e1 -> ...`.
  std::string describe() const;

 private:
  friend Endo mk_phi(const GraphPtr&, VertexId, VertexId, const std::vector<EdgeId>&, const InvertiblePair&);
  Endo(GraphPtr g) : g_(std::move(g)) {}
  void validate();

  GraphPtr g_;
  std::vector<Element> vertex_img_;
  std::vector<Element> edge_img_;
  std::vector<Element> ghost_img_;
  std::optional<MatrixProvenance> prov_;
  bool graded_ = false;
};

//! φ_P: e_i ↦ Σ_k e_k p_ki, e_i* ↦ Σ_k p'_ik e_k*, everything else fixed.
Endo mk_phi(const GraphPtr& g, VertexId v, VertexId w, const std::vector<EdgeId>& edges, const InvertiblePair& P);
//! φ_P on a rose graph, using all petals in order.
Endo mk_phi(const InvertiblePair& P);
//! φ_P on all petals of a rose graph; otherwise on the edges of the first
//! vertex with exactly size(P) edges into the corner.
Endo mk_phi_auto(const InvertiblePair& P);

Element apply(const Endo& f, const Element& a);

//! f∘g by generator images.
Endo compose_functional(const Endo& f, const Endo& g);
//! f∘g. For matrix-built endomorphisms on the same edge list this is
//! φ_{P⋆Q}, cross-checked against compose_functional; otherwise functional.
Endo compose(const Endo& f, const Endo& g);
//! f^k for k >= 0.
Endo power(const Endo& f, int k);

//! φ_P together with its inverse φ_Q.
struct Automorphism {
  Endo phi;
  Endo inverse;
  InvertiblePair witness;  // Q with φ_P(Q) = P^{-1}
};

//! Accepts iff φ_P(Q) = P^{-1}; throws VerificationError otherwise.
Automorphism certify_automorphism(const Endo& f, const InvertiblePair& Q);
//! Certifies with witness P^{-1} when φ_P fixes P or P^{-1}.
std::optional<Automorphism> try_fixed_point_shortcut(const Endo& f);

//! The unique P with f = φ_P on s^{-1}(v): p_ij = e_i* f(e_j), p'_ij = f(e_i*) e_j.
InvertiblePair extract_matrix(const Endo& f, VertexId v);
//! Rose shorthand for the single vertex.
InvertiblePair extract_matrix(const Endo& f);

//! f_u: e_i ↦ u e_i, e_i* ↦ e_i* u^{-1}, built as φ_P with P = (e_i* u e_j).
Endo mk_fu(const Element& u, const Element& uinv);
//! Σ f(e_i) e_i*.
Element unit_of_endo(const Endo& f);
//! τ_u: a ↦ u^{-1} a u.
Endo inner(const Element& u, const Element& uinv);

//! s ↦ (e_i* s e_j) on a rose graph.
AlgMatrix matrix_iso(const Element& s);
//! M ↦ Σ e_i m_ij e_j*.
Element matrix_iso_inv(const AlgMatrix& m);

//! Throws VerificationError unless u·uinv = uinv·u = 1.
void require_unit(const Element& u, const Element& uinv);

//! Inverse candidates that need no search: u itself, u*, the series
//! Σ (1-u)^k when 1-u is nilpotent, and on a rose graph the preimage of the
//! inverse of a scalar matrix (e_i* u e_j).
std::optional<Element> easy_unit_inverse(const Element& u);
//! Same for matrices: the Gaussian inverse of a scalar matrix, P itself, the
//! conjugate transpose and a truncated series Σ (I-P)^k.
std::optional<InvertiblePair> easy_invertible(const AlgMatrix& P);

}  // namespace lpa
