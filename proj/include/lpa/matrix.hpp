#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/parse.hpp"

namespace lpa {

class Endo;

//! Dense square matrix over the field.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  explicit FieldMatrix(std::size_t n) : n_(n), a_(n * n, Scalar(0)) {}
  static FieldMatrix identity(std::size_t n);
  static FieldMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  std::size_t size() const { return n_; }
  Scalar& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) = default;

  //! Exact Gauss-Jordan inverse; nullopt when singular.
  std::optional<FieldMatrix> inverse() const;
  bool is_upper_unitriangular() const;
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::vector<Scalar> a_;
};

//! Square matrix over the corner w L w.
class AlgMatrix {
 public:
  AlgMatrix(GraphPtr g, VertexId w, std::size_t n);
  //! w·I_n.
  static AlgMatrix identity(const GraphPtr& g, VertexId w, std::size_t n);
  //! Validates that every entry lies in the corner.
  static AlgMatrix from_rows(const GraphPtr& g, VertexId w, std::vector<std::vector<Element>> rows);
  //! Lifts c ↦ c·w.
  static AlgMatrix from_field(const GraphPtr& g, VertexId w, const FieldMatrix& m);

  const GraphPtr& graph() const { return g_; }
  VertexId corner() const { return w_; }
  std::size_t size() const { return n_; }
  const Element& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  //! Setter that re-checks the corner condition.
  void set(std::size_t i, std::size_t j, Element e);

  //! The field matrix when every entry is a multiple of w.
  std::optional<FieldMatrix> as_field() const;
  //! Every entry homogeneous of degree 0 (zero counts).
  bool is_degree0() const;
  AlgMatrix map(const std::function<Element(const Element&)>& f) const;

  friend AlgMatrix operator*(const AlgMatrix& a, const AlgMatrix& b);
  friend AlgMatrix operator+(const AlgMatrix& a, const AlgMatrix& b);
  friend AlgMatrix operator-(const AlgMatrix& a, const AlgMatrix& b);
  friend bool operator==(const AlgMatrix& a, const AlgMatrix& b);
  friend bool operator!=(const AlgMatrix& a, const AlgMatrix& b) { return !(a == b); }

  //! `[a, b; c, d]`.
  std::string str() const;

 private:
  void check_compatible(const AlgMatrix& o) const;

  GraphPtr g_;
  VertexId w_;
  std::size_t n_;
  std::vector<Element> a_;
};

AlgMatrix mat_mul(const AlgMatrix& a, const AlgMatrix& b);

//! Parses a matrix literal over the corner w. A scalar literal c (that is,
//! c times the identity) denotes c·w.
AlgMatrix parse_matrix(std::string_view src, const GraphPtr& g, VertexId w, const ParseEnv* env = nullptr);

//! A matrix bundled with an exactly verified two-sided inverse.
class InvertiblePair {
 public:
  const AlgMatrix& P() const { return p_; }
  const AlgMatrix& Pinv() const { return pinv_; }
  bool degree0() const { return degree0_; }
  std::size_t size() const { return p_.size(); }
  VertexId corner() const { return p_.corner(); }
  const GraphPtr& graph() const { return p_.graph(); }
  InvertiblePair swapped() const;

 private:
  InvertiblePair(AlgMatrix p, AlgMatrix pinv);
  friend InvertiblePair mk_invertible(const AlgMatrix&, const AlgMatrix&);

  AlgMatrix p_;
  AlgMatrix pinv_;
  bool degree0_;
};

//! Verifies P·Pinv = Pinv·P = w·I_n; throws VerificationError naming the
//! first offending entry otherwise.
InvertiblePair mk_invertible(const AlgMatrix& P, const AlgMatrix& Pinv);
//! For matrices with entries in K·w: the inverse is computed by Gaussian
//! elimination. Throws when P is not scalar or is singular.
InvertiblePair mk_invertible_scalar(const AlgMatrix& P);

//! (f(a_ij)).
AlgMatrix apply_entrywise(const Endo& f, const AlgMatrix& a);
//! P_m = P φ(P) ... φ^{m-1}(P) for the matrix P that built φ.
AlgMatrix iterate_Pm(const Endo& phi, int m);
//! φ^{m-1}(P^{-1}) ... φ(P^{-1}) P^{-1}, the inverse of P_m.
AlgMatrix iterate_Pm_inv(const Endo& phi, int m);
//! P ⋆ Q = P φ_P(Q), with inverse φ_P(Q^{-1}) P^{-1}.
InvertiblePair star_product(const InvertiblePair& P, const InvertiblePair& Q, const Endo& phiP);

}  // namespace lpa
