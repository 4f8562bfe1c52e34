#include "lpa/chenmod.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lpa/error.hpp"
#include "lpa/morphism.hpp"

namespace lpa {

int oracle_symbol(OracleFamily f, std::size_t n) {
  if (f == OracleFamily::thue_morse) return __builtin_popcountll(static_cast<unsigned long long>(n)) & 1;
  // Fibonacci word 0100101001001...: the symbol is 1 exactly when the
  // Zeckendorf representation of n uses the term 1.
  std::vector<unsigned long long> fib{1, 2};
  while (fib.back() <= n) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  unsigned long long rest = n;
  int last = 0;
  for (auto it = fib.rbegin(); it != fib.rend(); ++it) {
    if (*it <= rest) {
      rest -= *it;
      last = *it == 1 ? 1 : 0;
    }
  }
  return last;
}

std::string oracle_name(OracleFamily f) {
  return f == OracleFamily::thue_morse ? "thue-morse" : "fibonacci-word";
}

EdgeId InfinitePath::edge_at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  i -= prefix.size();
  if (kind == Kind::periodic) return cycle[i % cycle.size()];
  return alphabet[oracle_symbol(family, offset + i)];
}

std::vector<EdgeId> InfinitePath::cycle_class() const {
  std::vector<EdgeId> best = cycle;
  std::vector<EdgeId> rot = cycle;
  for (std::size_t k = 1; k < cycle.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    best = std::min(best, rot);
  }
  return best;
}

namespace {

std::string edge_list(const Graph& g, const std::vector<EdgeId>& es) {
  std::string s;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) s += ' ';
    s += g.edge_name(es[i]);
  }
  return s;
}

void canonicalize(InfinitePath& p) {
  if (p.kind == InfinitePath::Kind::periodic) {
    const std::size_t t = p.cycle.size();
    for (std::size_t d = 1; d < t; ++d) {
      if (t % d) continue;
      bool periodic = true;
      for (std::size_t i = d; i < t && periodic; ++i) periodic = p.cycle[i] == p.cycle[i - d];
      if (periodic) {
        p.cycle.resize(d);
        break;
      }
    }
    while (!p.prefix.empty() && p.prefix.back() == p.cycle.back()) {
      p.prefix.pop_back();
      std::rotate(p.cycle.rbegin(), p.cycle.rbegin() + 1, p.cycle.rend());
    }
    return;
  }
  while (!p.prefix.empty() && p.offset > 0 && p.prefix.back() == p.alphabet[oracle_symbol(p.family, p.offset - 1)]) {
    p.prefix.pop_back();
    --p.offset;
  }
}

void check_edges(const Graph& g, const std::vector<EdgeId>& es) {
  for (EdgeId e : es) {
    if (e < 0 || e >= static_cast<EdgeId>(g.num_edges())) throw Error("unknown edge id in infinite path");
  }
}

// Checks the range/source condition on the first `depth` edges.
void check_path(const Graph& g, const InfinitePath& p, std::size_t depth) {
  for (std::size_t i = 0; i + 1 < depth; ++i) {
    if (g.range(p.edge_at(i)) != g.source(p.edge_at(i + 1))) {
      throw Error("infinite path breaks at position " + std::to_string(i + 1));
    }
  }
}

}  // namespace

std::string InfinitePath::str(const Graph& g) const {
  std::string s = edge_list(g, prefix);
  if (!s.empty()) s += ' ';
  if (kind == Kind::periodic) return s + "(" + edge_list(g, cycle) + ")^inf";
  std::string alpha;
  for (std::size_t i = 0; i < alphabet.size(); ++i) alpha += (i ? "," : "") + g.edge_name(alphabet[i]);
  s += "oracle:" + oracle_name(family) + "[" + alpha + "]";
  if (offset) s += "@" + std::to_string(offset);
  return s;
}

InfinitePath canonicalize_path(const Graph& g, const Path& prefix, const Path& cycle) {
  if (!cycle.is_closed(g)) throw Error("cycle must be a closed path of positive length");
  if (!prefix.empty() && prefix.range(g) != cycle.source()) throw Error("prefix does not end where the cycle starts");
  Path::make(g, prefix.base, prefix.edges);
  Path::make(g, cycle.base, cycle.edges);
  InfinitePath p;
  p.prefix = prefix.edges;
  p.cycle = cycle.edges;
  canonicalize(p);
  return p;
}

InfinitePath oracle_path(const Graph& g, OracleFamily f, std::vector<EdgeId> alphabet, std::size_t offset,
                         std::vector<EdgeId> prefix, std::size_t bound) {
  if (alphabet.size() != 2) throw Error("oracle alphabets map the two symbols 0 and 1");
  check_edges(g, alphabet);
  check_edges(g, prefix);
  InfinitePath p;
  p.kind = InfinitePath::Kind::oracle;
  p.family = f;
  p.alphabet = std::move(alphabet);
  p.offset = offset;
  p.prefix = std::move(prefix);
  p.bound = bound;
  p.irrational = p.alphabet[0] != p.alphabet[1];
  std::set<EdgeId> used(p.alphabet.begin(), p.alphabet.end());
  p.eeri = p.irrational && used.size() == g.num_edges();
  check_path(g, p, p.prefix.size() + bound);
  canonicalize(p);
  return p;
}

InfinitePath parse_path(std::string_view src, const Graph& g) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  };
  auto ident = [&]() {
    std::size_t start = pos;
    while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) ++pos;
    if (start == pos) throw ParseError("expected an edge name", start);
    std::string_view name = src.substr(start, pos - start);
    auto e = g.find_edge(name);
    if (!e) throw ParseError("unknown edge '" + std::string(name) + "'", start);
    return *e;
  };
  auto at_end = [&] {
    skip();
    if (pos != src.size()) throw ParseError("trailing input after infinite tail", pos);
  };
  std::vector<EdgeId> prefix;
  for (;;) {
    skip();
    if (pos >= src.size()) throw ParseError("missing infinite tail: use (c)^inf or oracle:NAME[a,b]", pos);
    if (src[pos] == '(') {
      std::size_t open = pos++;
      std::vector<EdgeId> cycle;
      for (skip(); pos < src.size() && src[pos] != ')'; skip()) cycle.push_back(ident());
      if (pos >= src.size()) throw ParseError("unclosed '('", open);
      ++pos;
      if (src.substr(pos, 4) != "^inf") throw ParseError("expected '^inf'", pos);
      pos += 4;
      at_end();
      if (cycle.empty()) throw ParseError("empty cycle", open);
      try {
        Path c = Path::of_edges(g, cycle);
        Path p = prefix.empty() ? Path::vertex(c.base) : Path::of_edges(g, prefix);
        return canonicalize_path(g, p, c);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), open);
      }
    }
    if (src.substr(pos, 7) == "oracle:") {
      std::size_t start = pos;
      pos += 7;
      std::size_t lb = src.find('[', pos);
      if (lb == std::string_view::npos) throw ParseError("expected '[' after oracle name", pos);
      std::string_view name = src.substr(pos, lb - pos);
      OracleFamily fam;
      if (name == "thue-morse") {
        fam = OracleFamily::thue_morse;
      } else if (name == "fibonacci-word") {
        fam = OracleFamily::fibonacci_word;
      } else {
        throw ParseError("unknown oracle '" + std::string(name) + "'", pos);
      }
      pos = lb + 1;
      std::vector<EdgeId> alphabet;
      for (;;) {
        skip();
        alphabet.push_back(ident());
        skip();
        if (pos < src.size() && src[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < src.size() && src[pos] == ']') {
          ++pos;
          break;
        }
        throw ParseError("expected ',' or ']'", pos);
      }
      std::size_t offset = 0;
      if (pos < src.size() && src[pos] == '@') {
        std::size_t d = ++pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (d == pos) throw ParseError("expected a shift after '@'", d);
        offset = std::stoull(std::string(src.substr(d, pos - d)));
      }
      at_end();
      try {
        return oracle_path(g, fam, alphabet, offset, prefix);
      } catch (const Error& e) {
        throw ParseError(e.what(), start);
      }
    }
    prefix.push_back(ident());
  }
}

InfinitePath drop_edges(const InfinitePath& p, std::size_t k) {
  InfinitePath r = p;
  if (k <= r.prefix.size()) {
    r.prefix.erase(r.prefix.begin(), r.prefix.begin() + static_cast<std::ptrdiff_t>(k));
    return r;
  }
  k -= r.prefix.size();
  r.prefix.clear();
  if (r.kind == InfinitePath::Kind::periodic) {
    std::rotate(r.cycle.begin(), r.cycle.begin() + static_cast<std::ptrdiff_t>(k % r.cycle.size()), r.cycle.end());
  } else {
    r.offset += k;
  }
  return r;
}

InfinitePath prepend(const Graph& g, const std::vector<EdgeId>& p, const InfinitePath& x) {
  if (p.empty()) return x;
  if (g.range(p.back()) != x.source(g)) throw Error("prepend: range/source mismatch");
  InfinitePath r = x;
  r.prefix.insert(r.prefix.begin(), p.begin(), p.end());
  canonicalize(r);
  return r;
}

std::string TailVerdict::str() const {
  switch (verdict) {
    case Tri::yes:
      return "yes";
    case Tri::no:
      return "no";
    case Tri::unknown:
      break;
  }
  return "unknown(" + std::to_string(bound) + ")";
}

namespace {

// Asymptotic frequency of each edge, as an exact tag: thue-morse gives each
// symbol 1/2; the Fibonacci word gives symbol 0 frequency (√5-1)/2 and
// symbol 1 frequency (3-√5)/2. Tags: 0 = absent, 1 = half, 2 = golden, 3 = 1-golden.
std::map<EdgeId, int> frequency_tags(const InfinitePath& p) {
  std::map<EdgeId, int> tags;
  if (p.alphabet[0] == p.alphabet[1]) {
    tags[p.alphabet[0]] = 4;  // frequency 1
    return tags;
  }
  if (p.family == OracleFamily::thue_morse) {
    tags[p.alphabet[0]] = 1;
    tags[p.alphabet[1]] = 1;
  } else {
    tags[p.alphabet[0]] = 2;
    tags[p.alphabet[1]] = 3;
  }
  return tags;
}

}  // namespace

TailVerdict tail_equivalent(const InfinitePath& p, const InfinitePath& q) {
  using K = InfinitePath::Kind;
  if (p.kind == K::periodic && q.kind == K::periodic) {
    return {p.cycle_class() == q.cycle_class() ? Tri::yes : Tri::no};
  }
  if (p.kind == K::oracle && q.kind == K::oracle) {
    if (p.family == q.family && p.alphabet == q.alphabet) return {Tri::yes};
    if (frequency_tags(p) != frequency_tags(q)) return {Tri::no};
    return {Tri::unknown, std::min(p.bound, q.bound)};
  }
  const InfinitePath& o = p.kind == K::oracle ? p : q;
  if (o.irrational) return {Tri::no};
  return {Tri::unknown, o.bound};
}

ModuleVector ModuleVector::basis(const GraphPtr& g, const InfinitePath& p) {
  ModuleVector m(g);
  m.add(p, Scalar(1));
  return m;
}

void ModuleVector::add(const InfinitePath& p, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

std::string ModuleVector::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    std::string cs = c.str();
    bool neg = cs.front() == '-';
    if (neg) cs.erase(0, 1);
    std::string body = (cs == "1" ? "" : cs + "*") + p.str(*g_);
    if (first) {
      s = neg ? "-" + body : body;
      first = false;
    } else {
      s += (neg ? " - " : " + ") + body;
    }
  }
  return s;
}

ModuleVector act(const Element& a, const ModuleVector& m) {
  const GraphPtr& g = m.graph();
  if (!same_graph(a.graph(), g)) throw Error("act: element over a different graph");
  ModuleVector out(g);
  for (const auto& [mono, c] : a.terms()) {
    for (const auto& [x, k] : m.terms()) {
      if (mono.q.empty()) {
        if (x.source(*g) != mono.tip) continue;
      } else {
        bool starts = true;
        for (std::size_t i = 0; i < mono.q.size() && starts; ++i) starts = x.edge_at(i) == mono.q[i];
        if (!starts) continue;
      }
      out.add(prepend(*g, mono.p, drop_edges(x, mono.q.size())), c * k);
    }
  }
  return out;
}

namespace {

Endo scalar_phi(const GraphPtr& g, const FieldMatrix& P) {
  if (!g->rose_petals() || static_cast<std::size_t>(*g->rose_petals()) != P.size()) {
    throw Error("scalar twist needs a rose graph with as many petals as the matrix size");
  }
  return mk_phi(mk_invertible_scalar(AlgMatrix::from_field(g, 0, P)));
}

}  // namespace

Element apply_scalar_phi(const FieldMatrix& P, const Element& a) { return scalar_phi(a.graph(), P).apply(a); }

ModuleVector twisted_act(const FieldMatrix& P, const Element& a, const ModuleVector& m) {
  auto inv = P.inverse();
  if (!inv) throw Error("twisted_act: singular matrix");
  const GraphPtr& g = m.graph();
  if (!same_graph(a.graph(), g)) throw Error("twisted_act: element over a different graph");
  Endo psi = scalar_phi(g, *inv);
  // Letter by letter: expanding φ_{P^-1}(a) as an element first grows
  // exponentially in the word length, while the module vector stays small.
  ModuleVector out(g);
  for (const auto& [mono, c] : a.terms()) {
    ModuleVector cur = m;
    if (mono.p.empty() && mono.q.empty()) cur = act(psi.vertex_image(mono.tip), cur);
    for (EdgeId e : mono.q) {
      if (cur.is_zero()) break;
      cur = act(psi.ghost_image(e), cur);
    }
    for (auto it = mono.p.rbegin(); it != mono.p.rend() && !cur.is_zero(); ++it) cur = act(psi.edge_image(*it), cur);
    for (const auto& [x, k] : cur.terms()) out.add(x, c * k);
  }
  return out;
}

Element epsilon(const GraphPtr& g, const InfinitePath& alpha, int m) {
  if (m < 0) throw Error("epsilon: negative index");
  if (alpha.kind == InfinitePath::Kind::oracle && static_cast<std::size_t>(m) > alpha.prefix.size() + alpha.bound) {
    throw Error("epsilon: oracle bound exhausted");
  }
  std::vector<EdgeId> p;
  for (int i = 0; i < m; ++i) p.push_back(alpha.edge_at(static_cast<std::size_t>(i)));
  if (p.empty()) return Element::vertex(g, alpha.source(*g));
  Path path = Path::of_edges(*g, p);
  return Element::monomial(g, path, path);
}

bool annihilator_check(const GraphPtr& g, const FieldMatrix& P, const InfinitePath& alpha, int m_max,
                       const std::vector<Element>* eps) {
  Endo phi = scalar_phi(g, P);
  ModuleVector base = ModuleVector::basis(g, alpha);
  for (int m = 0; m <= m_max; ++m) {
    Element a = eps ? eps->at(m) : epsilon(g, alpha, m);
    Element b = eps ? eps->at(m + 1) : epsilon(g, alpha, m + 1);
    if (!twisted_act(P, phi.apply(a) - phi.apply(b), base).is_zero()) return false;
  }
  return true;
}

bool is_perm(const Perm& s) {
  std::vector<bool> seen(s.size(), false);
  for (int x : s) {
    if (x < 0 || x >= static_cast<int>(s.size()) || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Perm perm_compose(const Perm& s, const Perm& t) {
  if (s.size() != t.size()) throw Error("permutation sizes differ");
  Perm r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = s[t[i]];
  return r;
}

Perm perm_inverse(const Perm& s) {
  Perm r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[s[i]] = static_cast<int>(i);
  return r;
}

InfinitePath sn_act_path(const Graph& g, const Perm& sigma, const InfinitePath& p) {
  if (!is_perm(sigma)) throw Error("not a permutation");
  auto n = g.rose_petals();
  if (!n || static_cast<std::size_t>(*n) != sigma.size()) throw Error("permutation index out of range for the graph");
  auto relabel = [&](std::vector<EdgeId>& es) {
    for (auto& e : es) e = sigma.at(e);
  };
  InfinitePath r = p;
  relabel(r.prefix);
  relabel(r.cycle);
  relabel(r.alphabet);
  canonicalize(r);
  return r;
}

FieldMatrix sn_act_matrix(const Perm& sigma, const FieldMatrix& a) {
  if (!is_perm(sigma) || sigma.size() != a.size()) throw Error("permutation index out of range");
  FieldMatrix r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) r.at(i, j) = a.at(i, sigma[j]);
  }
  return r;
}

FieldMatrix PermDiagDecomp::reassemble() const {
  FieldMatrix d(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) d.at(i, i) = diag[i];
  return sn_act_matrix(sigma, d);
}

std::optional<PermDiagDecomp> monomial_decompose(const FieldMatrix& P) {
  const std::size_t n = P.size();
  PermDiagDecomp out;
  out.sigma.assign(n, -1);
  out.diag.assign(n, Scalar(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (P.at(i, j).is_zero()) continue;
      if (out.sigma[j] != -1) return std::nullopt;
      out.sigma[j] = static_cast<int>(i);
      out.diag[i] = P.at(i, j);
    }
    if (out.sigma[j] == -1) return std::nullopt;
  }
  if (!is_perm(out.sigma)) return std::nullopt;
  return out;
}

bool iso_test_rational(const GraphPtr& g, const ClosedPathClass& c, const FieldMatrix& P, const ClosedPathClass& d,
                       const FieldMatrix& Q) {
  Endo phiP = scalar_phi(g, P);
  Endo phiQ = scalar_phi(g, Q);
  auto as_element = [&](const Path& p) { return Element::monomial(g, p, Path::vertex(p.range(*g))); };
  Element target = phiQ.apply(as_element(d.path));
  return std::any_of(c.rotations.begin(), c.rotations.end(),
                     [&](const Path& beta) { return phiP.apply(as_element(beta)) == target; });
}

TailVerdict iso_test_irrational(const GraphPtr& g, const InfinitePath& alpha, const FieldMatrix& P,
                                const InfinitePath& beta, const FieldMatrix& Q) {
  auto qinv = Q.inverse();
  if (!qinv) throw Error("iso_test_irrational: singular Q");
  if (!P.inverse()) throw Error("iso_test_irrational: singular P");
  auto dec = monomial_decompose(*qinv * P);
  if (!dec) return {Tri::no};
  return tail_equivalent(sn_act_path(*g, perm_inverse(dec->sigma), beta), alpha);
}

}  // namespace lpa
