#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpa/morphism.hpp"

namespace lpa {

// A graded automorphism σ together with a lazily filled cache of its powers.
// The cache is append-only and guarded by a mutex, so one context can be
// shared between threads.
class TwistContext {
 public:
  explicit TwistContext(Automorphism sigma);
  static TwistContext identity(const GraphPtr& g);

  const Automorphism& sigma() const { return sigma_; }
  const GraphPtr& graph() const { return sigma_.phi.graph(); }
  // σ^n for any integer n; negative powers come from the certified inverse.
  const Endo& power(int n) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<int, std::unique_ptr<Endo>> powers;
  };
  Automorphism sigma_;
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

// a ⋆ b = Σ_n a_n σ^n(b) over the homogeneous parts a_n of a.
Element twist_mul(const TwistContext& ctx, const Element& a, const Element& b);

// θ_P: v ↦ v, e ↦ e, e_i* ↦ Σ_k q^{(-1)}_ik e_k* into the twisted algebra.
class ThetaMap {
 public:
  const TwistContext& context() const { return *ctx_; }
  const Element& ghost_image(EdgeId e) const { return ghost_img_.at(e); }
  // Multiplicative extension using ⋆.
  Element apply(const Element& a) const;

 private:
  friend ThetaMap mk_theta(std::shared_ptr<const TwistContext> ctx);
  const Element& shifted(int n, int letter) const;

  std::shared_ptr<const TwistContext> ctx_;
  struct Cache {
    std::mutex mu;
    std::map<std::pair<int, int>, Element> shifted;
  };
  std::vector<Element> ghost_img_;
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

// Requires the context's automorphism to be matrix-built with witness Q.
// Verifies the Cuntz-Krieger relations for the images under ⋆.
ThetaMap mk_theta(std::shared_ptr<const TwistContext> ctx);
Element theta_apply(const ThetaMap& theta, const Element& a);

struct MembershipResult {
  enum class Verdict { InImage, NotFoundUpTo };
  Verdict verdict = Verdict::NotFoundUpTo;
  std::optional<Element> witness;  // preimage when InImage
  int bound = 0;
  std::size_t searched = 0;  // number of basis monomials tried
  bool in_image() const { return verdict == Verdict::InImage; }
  std::string str() const;
};

// Normal monomials of degree d with |p|, |q| <= max_len.
std::vector<Monomial> basis_monomials(const Graph& g, int d, int max_len);

// Exact search for a preimage among same-degree basis monomials with path
// lengths at most L. Non-homogeneous targets are split by degree.
MembershipResult image_membership(const ThetaMap& theta, const Element& target, int L);

// Rank of the given elements as vectors over the field.
std::size_t rank_of(const std::vector<Element>& elems);

struct IsoReport {
  enum class Verdict { IsomorphismCertified, FailsAt, InconclusiveUpTo };
  Verdict verdict = Verdict::InconclusiveUpTo;
  bool shortcut = false;   // decided from the entries of P and P^-1 alone
  int m = 0;               // level of the failing matrix, or m_max
  std::string matrix;      // failing matrix name
  std::size_t row = 0;     // 1-based failing entry
  std::size_t col = 0;
  int bound = 0;
  std::string str() const;
};

// Checks the image criterion for θ_P to be an isomorphism onto the twist.
IsoReport check_iso_criterion(const ThetaMap& theta, int m_max, int L);

// The three identities expressing e_i and e_i* through φ_P^m and φ_Q^m.
bool verify_lemma_ei(const Endo& phiP, const InvertiblePair& Q, int m);
// P_m = (e_i* u_m e_j) for f_u and the analogue for the inverse side f_w.
bool verify_lemma_pm(const Element& u, const Element& uinv, const Element& w, const Element& winv, int m);

// u_m = f^{m-1}(u) ... f(u) u.
Element iterate_unit(const Endo& f, const Element& u, int m);
// u^{-1} f(u^{-1}) ... f^{m-1}(u^{-1}).
Element iterate_unit_inv(const Endo& f, const Element& uinv, int m);

}  // namespace lpa
