#include "lpa/matrix.hpp"

#include "lpa/error.hpp"
#include "lpa/morphism.hpp"

namespace lpa {

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  FieldMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error("field matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.n_ != b.n_) throw Error("matrix size mismatch");
  FieldMatrix r(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.n_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return r;
}

std::optional<FieldMatrix> FieldMatrix::inverse() const {
  FieldMatrix a = *this;
  FieldMatrix inv = identity(n_);
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t piv = col;
    while (piv < n_ && a.at(piv, col).is_zero()) ++piv;
    if (piv == n_) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    Scalar s = a.at(col, col).inverse();
    for (std::size_t j = 0; j < n_; ++j) {
      a.at(col, j) *= s;
      inv.at(col, j) *= s;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == col || a.at(i, col).is_zero()) continue;
      Scalar f = a.at(i, col);
      for (std::size_t j = 0; j < n_; ++j) {
        a.at(i, j) -= f * a.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

bool FieldMatrix::is_upper_unitriangular() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!at(i, i).is_one()) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (!at(i, j).is_zero()) return false;
    }
  }
  return true;
}

std::string FieldMatrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) s += ", ";
      s += at(i, j).str();
    }
  }
  return s + "]";
}

AlgMatrix::AlgMatrix(GraphPtr g, VertexId w, std::size_t n) : g_(std::move(g)), w_(w), n_(n) {
  if (w_ < 0 || w_ >= static_cast<VertexId>(g_->num_vertices())) throw Error("unknown corner vertex");
  a_.assign(n * n, Element(g_));
}

AlgMatrix AlgMatrix::identity(const GraphPtr& g, VertexId w, std::size_t n) {
  AlgMatrix m(g, w, n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = Element::vertex(g, w);
  return m;
}

AlgMatrix AlgMatrix::from_rows(const GraphPtr& g, VertexId w, std::vector<std::vector<Element>> rows) {
  AlgMatrix m(g, w, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.set(i, j, std::move(rows[i][j]));
  }
  return m;
}

AlgMatrix AlgMatrix::from_field(const GraphPtr& g, VertexId w, const FieldMatrix& f) {
  AlgMatrix m(g, w, f.size());
  Element wv = Element::vertex(g, w);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) m.a_[i * f.size() + j] = wv * f.at(i, j);
  }
  return m;
}

void AlgMatrix::set(std::size_t i, std::size_t j, Element e) {
  if (!same_graph(e.graph(), g_)) throw Error("matrix entry over a different graph");
  if (!e.in_corner(w_, w_)) {
    throw Error("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + e.str() +
                " is not in the corner of " + g_->vertex_name(w_));
  }
  a_.at(i * n_ + j) = std::move(e);
}

std::optional<FieldMatrix> AlgMatrix::as_field() const {
  FieldMatrix f(n_);
  const Monomial wm{{}, {}, w_};
  for (std::size_t k = 0; k < a_.size(); ++k) {
    const auto& t = a_[k].terms();
    if (t.empty()) continue;
    if (t.size() != 1 || !(t.begin()->first == wm)) return std::nullopt;
    f.at(k / n_, k % n_) = t.begin()->second;
  }
  return f;
}

bool AlgMatrix::is_degree0() const {
  for (const auto& e : a_) {
    for (const auto& [m, c] : e.terms()) {
      if (m.degree() != 0) return false;
    }
  }
  return true;
}

AlgMatrix AlgMatrix::map(const std::function<Element(const Element&)>& f) const {
  AlgMatrix r(g_, w_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) r.set(i, j, f(at(i, j)));
  }
  return r;
}

void AlgMatrix::check_compatible(const AlgMatrix& o) const {
  if (n_ != o.n_) throw Error("matrix size mismatch");
  if (w_ != o.w_ || !same_graph(g_, o.g_)) throw Error("matrix corner mismatch");
}

AlgMatrix operator*(const AlgMatrix& a, const AlgMatrix& b) {
  a.check_compatible(b);
  AlgMatrix r(a.g_, a.w_, a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t j = 0; j < a.n_; ++j) {
      Element s(a.g_);
      for (std::size_t k = 0; k < a.n_; ++k) {
        const Element& x = a.at(i, k);
        const Element& y = b.at(k, j);
        if (!x.is_zero() && !y.is_zero()) s += x * y;
      }
      r.a_[i * a.n_ + j] = std::move(s);
    }
  }
  return r;
}

AlgMatrix operator+(const AlgMatrix& a, const AlgMatrix& b) {
  a.check_compatible(b);
  AlgMatrix r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
  return r;
}

AlgMatrix operator-(const AlgMatrix& a, const AlgMatrix& b) {
  a.check_compatible(b);
  AlgMatrix r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
  return r;
}

bool operator==(const AlgMatrix& a, const AlgMatrix& b) {
  return a.n_ == b.n_ && a.w_ == b.w_ && a.a_ == b.a_;
}

std::string AlgMatrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) s += ", ";
      s += at(i, j).str();
    }
  }
  return s + "]";
}

AlgMatrix mat_mul(const AlgMatrix& a, const AlgMatrix& b) { return a * b; }

AlgMatrix parse_matrix(std::string_view src, const GraphPtr& g, VertexId w, const ParseEnv* env) {
  auto rows = split_matrix_literal(src);
  const Element one = Element::one(g);
  const Element wv = Element::vertex(g, w);
  std::vector<std::vector<Element>> entries;
  for (const auto& row : rows) {
    auto& out = entries.emplace_back();
    for (const auto& cell : row) {
      Element e = parse_element(cell, g, env);
      // A multiple of the identity means the same multiple of w.
      if (!e.is_zero()) {
        const Scalar c = e.terms().begin()->second;
        if (e == one * c) e = wv * c;
      }
      out.push_back(std::move(e));
    }
  }
  return AlgMatrix::from_rows(g, w, std::move(entries));
}

InvertiblePair::InvertiblePair(AlgMatrix p, AlgMatrix pinv)
    : p_(std::move(p)), pinv_(std::move(pinv)), degree0_(p_.is_degree0() && pinv_.is_degree0()) {}

InvertiblePair InvertiblePair::swapped() const { return InvertiblePair(pinv_, p_); }

InvertiblePair mk_invertible(const AlgMatrix& P, const AlgMatrix& Pinv) {
  if (P.size() != Pinv.size() || P.corner() != Pinv.corner() || !same_graph(P.graph(), Pinv.graph())) {
    throw Error("inverse pair: sizes or corners differ");
  }
  const AlgMatrix id = AlgMatrix::identity(P.graph(), P.corner(), P.size());
  auto check = [&](const AlgMatrix& prod, const char* which) {
    for (std::size_t i = 0; i < P.size(); ++i) {
      for (std::size_t j = 0; j < P.size(); ++j) {
        if (prod.at(i, j) != id.at(i, j)) {
          throw VerificationError(std::string("not an inverse pair: (") + which + ")[" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + "] = " + prod.at(i, j).str() + ", expected " +
                                  id.at(i, j).str());
        }
      }
    }
  };
  check(P * Pinv, "P*Pinv");
  check(Pinv * P, "Pinv*P");
  return InvertiblePair(P, Pinv);
}

InvertiblePair mk_invertible_scalar(const AlgMatrix& P) {
  auto f = P.as_field();
  if (!f) throw Error("matrix has non-scalar entries");
  auto inv = f->inverse();
  if (!inv) throw VerificationError("matrix is singular over " + FieldMode::describe());
  return mk_invertible(P, AlgMatrix::from_field(P.graph(), P.corner(), *inv));
}

AlgMatrix apply_entrywise(const Endo& f, const AlgMatrix& a) {
  return a.map([&](const Element& e) { return f.apply(e); });
}

namespace {

const InvertiblePair& provenance_matrix(const Endo& phi) {
  if (!phi.provenance()) throw Error("endomorphism is not matrix-built");
  return phi.provenance()->P;
}

}  // namespace

AlgMatrix iterate_Pm(const Endo& phi, int m) {
  if (m < 1) throw Error("iterate_Pm needs m >= 1");
  const AlgMatrix& P = provenance_matrix(phi).P();
  AlgMatrix acc = P;
  AlgMatrix img = P;
  for (int k = 1; k < m; ++k) {
    img = apply_entrywise(phi, img);
    acc = acc * img;
  }
  return acc;
}

AlgMatrix iterate_Pm_inv(const Endo& phi, int m) {
  if (m < 1) throw Error("iterate_Pm_inv needs m >= 1");
  const AlgMatrix& Pinv = provenance_matrix(phi).Pinv();
  AlgMatrix acc = Pinv;
  AlgMatrix img = Pinv;
  for (int k = 1; k < m; ++k) {
    img = apply_entrywise(phi, img);
    acc = img * acc;
  }
  return acc;
}

InvertiblePair star_product(const InvertiblePair& P, const InvertiblePair& Q, const Endo& phiP) {
  if (!phiP.provenance() || phiP.provenance()->P.P() != P.P()) {
    throw Error("star_product: endomorphism was not built from P");
  }
  AlgMatrix prod = P.P() * apply_entrywise(phiP, Q.P());
  AlgMatrix inv = apply_entrywise(phiP, Q.Pinv()) * P.Pinv();
  return mk_invertible(prod, inv);
}

}  // namespace lpa
