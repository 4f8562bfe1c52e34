#include <catch2/catch_amalgamated.hpp>

#include <deque>
#include <set>

#include "gen.hpp"
#include "lpa/chenmod.hpp"
#include "lpa/error.hpp"
#include "lpa/morphism.hpp"
#include "lpa/parse.hpp"

using namespace lpa;

namespace {

// Fixed points of the substitutions 0 -> 01, 1 -> 10 and 0 -> 01, 1 -> 0.
std::vector<int> substitution_word(bool thue_morse, std::size_t n) {
  std::vector<int> w = {0};
  while (w.size() < n) {
    std::vector<int> next;
    for (int s : w) {
      if (thue_morse) {
        next.push_back(s);
        next.push_back(1 - s);
      } else if (s == 0) {
        next.push_back(0);
        next.push_back(1);
      } else {
        next.push_back(0);
      }
    }
    w = std::move(next);
  }
  return w;
}

FieldMatrix fm(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (auto row : rows) {
    r.emplace_back();
    for (long x : row) r.back().push_back(Scalar(x));
  }
  return FieldMatrix::from_rows(r);
}

struct Rose2 {
  GraphPtr g = rose_graph(2);
  InfinitePath P(const char* s) const { return parse_path(s, *g); }
  Element E(const char* s) const { return parse_element(s, g); }
  ModuleVector V(const char* s) const { return ModuleVector::basis(g, P(s)); }
};

// A random vector in the Chen module of `base`: paths w·τ_{>k}(base).
ModuleVector random_vector(testgen::Gen& gen, const InfinitePath& base) {
  const GraphPtr& g = gen.graph();
  ModuleVector m(g);
  int n = gen.uniform(1, 3);
  for (int i = 0; i < n; ++i) {
    InfinitePath tail = drop_edges(base, gen.uniform(0, 3));
    auto w = gen.path_into(tail.source(*g), gen.uniform(0, 3));
    m.add(prepend(*g, w, tail), gen.scalar());
  }
  return m;
}

}  // namespace

TEST_CASE("oracle sequences match their substitution definitions") {
  auto tm = substitution_word(true, 600);
  auto fib = substitution_word(false, 600);
  for (std::size_t i = 0; i < 600; ++i) {
    REQUIRE(oracle_symbol(OracleFamily::thue_morse, i) == tm[i]);
    REQUIRE(oracle_symbol(OracleFamily::fibonacci_word, i) == fib[i]);
  }
}

TEST_CASE("path literals and canonical forms") {
  Rose2 r;
  CHECK(r.P("(e1 e2)^inf").str(*r.g) == "(e1 e2)^inf");
  CHECK(r.P("e2 (e1 e2)^inf") == r.P("(e2 e1)^inf"));
  CHECK(r.P("(e1 e2 e1 e2)^inf") == r.P("(e1 e2)^inf"));
  CHECK(r.P("e1 e1 (e2 e1)^inf") == r.P("e1 (e1 e2)^inf"));
  CHECK(r.P("(e2 e1)^inf").cycle_class() == std::vector<EdgeId>{0, 1});
  InfinitePath tm = r.P("oracle:thue-morse[e1,e2]");
  CHECK(tm.edge_at(0) == 0);
  CHECK(tm.edge_at(1) == 1);
  CHECK(tm.irrational);
  CHECK(tm.eeri);
  InfinitePath shifted = r.P("e2 oracle:fibonacci-word[e1,e2]@3");
  CHECK(shifted.edge_at(0) == 1);
  CHECK(shifted.edge_at(1) == (oracle_symbol(OracleFamily::fibonacci_word, 3) == 0 ? 0 : 1));
  CHECK_THROWS_AS(r.P("(e1 e3)^inf"), ParseError);
  CHECK_THROWS_AS(r.P("(e1 e2"), ParseError);
  CHECK_THROWS_AS(r.P("oracle:collatz[e1,e2]"), ParseError);

  GraphPtr s = testgen::sink_graph();
  CHECK_THROWS_AS(parse_path("(g h)^inf", *s), ParseError);
  CHECK_NOTHROW(parse_path("g (k f g)^inf", *s));
}

TEST_CASE("tail equivalence verdicts") {
  Rose2 r;
  CHECK(tail_equivalent(r.P("(e1 e2)^inf"), r.P("e2 (e1 e2)^inf")).verdict == Tri::yes);
  CHECK(tail_equivalent(r.P("(e1)^inf"), r.P("(e2)^inf")).verdict == Tri::no);
  InfinitePath tm = r.P("oracle:thue-morse[e1,e2]");
  CHECK(tail_equivalent(tm, drop_edges(tm, 1)).verdict == Tri::yes);
  CHECK(tail_equivalent(tm, r.P("e2 e2 oracle:thue-morse[e1,e2]@5")).verdict == Tri::yes);
  CHECK(tail_equivalent(tm, r.P("(e1 e2)^inf")).verdict == Tri::no);
  CHECK(tail_equivalent(tm, r.P("oracle:fibonacci-word[e1,e2]")).verdict == Tri::no);
  TailVerdict unk = tail_equivalent(tm, r.P("oracle:thue-morse[e2,e1]"));
  CHECK(unk.verdict == Tri::unknown);
  CHECK(unk.bound > 0);
}

TEST_CASE("tail equivalence is an equivalence on periodic paths") {
  for (const GraphPtr& g : {rose_graph(2), testgen::sink_graph()}) {
    testgen::Gen gen(g, 211);
    std::vector<InfinitePath> sample;
    for (int i = 0; i < 25; ++i) sample.push_back(gen.periodic_path(3, 3));
    for (const auto& p : sample) {
      REQUIRE(tail_equivalent(p, p).verdict == Tri::yes);
      for (const auto& q : sample) {
        Tri pq = tail_equivalent(p, q).verdict;
        REQUIRE(pq != Tri::unknown);
        REQUIRE(pq == tail_equivalent(q, p).verdict);
        if (pq != Tri::yes) continue;
        for (const auto& s : sample) {
          if (tail_equivalent(q, s).verdict == Tri::yes) REQUIRE(tail_equivalent(p, s).verdict == Tri::yes);
        }
      }
    }
  }
}

TEST_CASE("Chen action rules") {
  Rose2 r;
  CHECK(act(r.E("e1'"), r.V("(e1 e2)^inf")) == r.V("(e2 e1)^inf"));
  CHECK(act(r.E("e2'"), r.V("(e1 e2)^inf")).is_zero());
  CHECK(act(r.E("e2"), r.V("(e1 e2)^inf")) == r.V("(e2 e1)^inf"));
  CHECK(act(r.E("v - e1*e2"), r.V("(e1 e2)^inf")).is_zero());
  CHECK(act(r.E("v"), r.V("oracle:thue-morse[e1,e2]")) == r.V("oracle:thue-morse[e1,e2]"));
  GraphPtr s = testgen::sink_graph();
  ModuleVector m = ModuleVector::basis(s, parse_path("(f)^inf", *s));
  CHECK(act(parse_element("b", s), m).is_zero());
  CHECK(act(parse_element("k", s), m) == ModuleVector::basis(s, parse_path("k (f)^inf", *s)));
}

TEST_CASE("module law and CK compatibility") {
  for (const GraphPtr& g : {rose_graph(2), testgen::sink_graph()}) {
    testgen::Gen gen(g, 223);
    for (int t = 0; t < 100; ++t) {
      InfinitePath base = gen.periodic_path(2, 3);
      ModuleVector m = random_vector(gen, base);
      Element a = gen.element(2, 2), b = gen.element(2, 2);
      REQUIRE(act(a * b, m) == act(a, act(b, m)));
      EdgeId e = gen.edge();
      REQUIRE(act(Element::ghost(g, e) * Element::edge(g, e), m) ==
              act(Element::vertex(g, g->range(e)), m));
      VertexId v = g->source(e);
      Element ck = Element::zero(g);
      for (EdgeId f : g->out_edges(v)) ck += Element::edge(g, f) * Element::ghost(g, f);
      ModuleVector lhs(g), rhs = act(Element::vertex(g, v), m);
      for (EdgeId f : g->out_edges(v)) lhs += act(Element::edge(g, f), act(Element::ghost(g, f), m));
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("twisted action is a module action") {
  Rose2 r;
  testgen::Gen gen(r.g, 227);
  FieldMatrix P = gen.invertible_matrix(2);
  for (int t = 0; t < 60; ++t) {
    ModuleVector m = random_vector(gen, gen.periodic_path(2, 3));
    Element a = gen.element(2, 2), b = gen.element(2, 2);
    REQUIRE(twisted_act(P, a * b, m) == twisted_act(P, a, twisted_act(P, b, m)));
    REQUIRE(twisted_act(FieldMatrix::identity(2), a, m) == act(a, m));
  }
  CHECK(twisted_act(fm({{0, 1}, {1, 0}}), r.E("e1"), r.V("(e1)^inf")) == r.V("e2 (e1)^inf"));
  CHECK_THROWS_AS(twisted_act(fm({{1, 1}, {1, 1}}), r.E("e1"), r.V("(e1)^inf")), Error);
}

TEST_CASE("cyclicity probe from (e1 e2)^inf") {
  Rose2 r;
  InfinitePath start = r.P("(e1 e2)^inf");
  std::set<InfinitePath> seen = {start};
  std::deque<std::pair<InfinitePath, int>> queue = {{start, 0}};
  std::vector<Element> gens = {r.E("e1"), r.E("e2"), r.E("e1'"), r.E("e2'")};
  while (!queue.empty()) {
    auto [p, depth] = queue.front();
    queue.pop_front();
    if (depth == 10) continue;
    for (const Element& a : gens) {
      ModuleVector img = act(a, ModuleVector::basis(r.g, p));
      for (const auto& [q, c] : img.terms()) {
        if (seen.insert(q).second) queue.push_back({q, depth + 1});
      }
    }
  }
  std::size_t targets = 0;
  for (int len = 0; len <= 4; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::vector<EdgeId> w;
      for (int i = 0; i < len; ++i) w.push_back((bits >> i) & 1);
      REQUIRE(seen.count(prepend(*r.g, w, start)) == 1);
      ++targets;
    }
  }
  CHECK(targets == 31);
}

TEST_CASE("prefix idempotents and annihilators") {
  Rose2 r;
  CHECK(epsilon(r.g, r.P("(e1 e2)^inf"), 0) == r.E("v"));
  CHECK(epsilon(r.g, r.P("(e1 e2)^inf"), 1) == r.E("e1*e1'"));
  CHECK(epsilon(r.g, r.P("(e1 e2)^inf"), 2) == r.E("e1*e1' - e1^2*e1'^2"));
  InfinitePath tm = r.P("oracle:thue-morse[e1,e2]");
  CHECK(annihilator_check(r.g, FieldMatrix::identity(2), tm, 5));
  CHECK(annihilator_check(r.g, fm({{0, 1}, {1, 0}}), tm, 4));
  CHECK(annihilator_check(r.g, fm({{0, 1}, {1, 0}}), r.P("(e1 e2)^inf"), 4));
  std::vector<Element> eps;
  for (int m = 0; m <= 4; ++m) eps.push_back(epsilon(r.g, tm, m));
  eps[2] = r.E("e2*e2'");
  CHECK_FALSE(annihilator_check(r.g, FieldMatrix::identity(2), tm, 3, &eps));

  for (auto [ps, es] : {std::pair{"(e1)^inf", "e1"}, std::pair{"(e1 e2)^inf", "e1*e2"}}) {
    FieldMatrix P = fm({{2, 1}, {1, 1}});
    Element rel = r.E("v") - apply_scalar_phi(P, r.E(es));
    CHECK(twisted_act(P, rel, r.V(ps)).is_zero());
  }
}

TEST_CASE("symmetric group actions") {
  Rose2 r;
  Perm swap = {1, 0}, id = {0, 1};
  CHECK(sn_act_path(*r.g, id, r.P("(e1 e2)^inf")) == r.P("(e1 e2)^inf"));
  CHECK(sn_act_path(*r.g, swap, r.P("(e1 e2)^inf")) == r.P("(e2 e1)^inf"));
  CHECK(sn_act_path(*r.g, swap, r.P("oracle:thue-morse[e1,e2]")) == r.P("oracle:thue-morse[e2,e1]"));
  CHECK(sn_act_matrix(swap, FieldMatrix::identity(2)) == fm({{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(sn_act_matrix({0, 0}, FieldMatrix::identity(2)), Error);

  GraphPtr g3 = rose_graph(3);
  testgen::Gen gen(g3, 229);
  for (int t = 0; t < 100; ++t) {
    Perm s = gen.perm(3), u = gen.perm(3);
    FieldMatrix A = gen.field_matrix(3);
    REQUIRE(perm_compose(s, perm_inverse(s)) == Perm{0, 1, 2});
    // Column j of σ·A is column σ(j) of A, so applying τ and then σ gives
    // the action of τσ: this is a right action.
    REQUIRE(sn_act_matrix(s, sn_act_matrix(u, A)) == sn_act_matrix(perm_compose(u, s), A));
    InfinitePath p = gen.periodic_path(2, 3);
    REQUIRE(sn_act_path(*g3, s, sn_act_path(*g3, u, p)) == sn_act_path(*g3, perm_compose(s, u), p));
  }
}

TEST_CASE("monomial matrix decomposition") {
  auto d = monomial_decompose(fm({{0, 1}, {1, 0}}));
  REQUIRE(d);
  CHECK(d->sigma == Perm{1, 0});
  CHECK(d->diag == std::vector<Scalar>{Scalar(1), Scalar(1)});
  auto diag = monomial_decompose(fm({{2, 0}, {0, 3}}));
  REQUIRE(diag);
  CHECK(diag->sigma == Perm{0, 1});
  CHECK(diag->diag == std::vector<Scalar>{Scalar(2), Scalar(3)});
  CHECK_FALSE(monomial_decompose(fm({{1, 1}, {0, 1}})));
  testgen::Gen gen(rose_graph(3), 233);
  for (int t = 0; t < 50; ++t) {
    FieldMatrix D(3);
    for (std::size_t i = 0; i < 3; ++i) D.at(i, i) = gen.scalar();
    FieldMatrix M = sn_act_matrix(gen.perm(3), D);
    auto m = monomial_decompose(M);
    REQUIRE(m);
    REQUIRE(m->reassemble() == M);
  }
}

TEST_CASE("isomorphism decisions") {
  Rose2 r;
  auto cls = [&](std::vector<EdgeId> e) { return rotations(*r.g, Path::of_edges(*r.g, std::move(e))); };
  FieldMatrix I = FieldMatrix::identity(2), S = fm({{0, 1}, {1, 0}});
  CHECK(iso_test_rational(r.g, cls({0, 1}), I, cls({1, 0}), I));
  CHECK_FALSE(iso_test_rational(r.g, cls({0}), I, cls({1}), I));
  CHECK(iso_test_rational(r.g, cls({0}), S, cls({1}), I));

  InfinitePath tm = r.P("oracle:thue-morse[e1,e2]");
  CHECK(iso_test_irrational(r.g, tm, I, tm, I).verdict == Tri::yes);
  CHECK(iso_test_irrational(r.g, tm, S, r.P("oracle:thue-morse[e2,e1]"), I).verdict == Tri::yes);
  CHECK(iso_test_irrational(r.g, tm, fm({{1, 1}, {1, 2}}), tm, I).verdict == Tri::no);

  testgen::Gen gen(r.g, 239);
  int equal = 0;
  for (int t = 0; t < 20; ++t) {
    FieldMatrix P = gen.unitriangular(2);
    FieldMatrix Q = t % 4 == 0 ? P : gen.unitriangular(2);
    const InfinitePath& beta = t % 3 == 0 ? r.P("oracle:fibonacci-word[e1,e2]") : tm;
    bool want = P == Q && beta == tm;
    equal += want;
    REQUIRE((iso_test_irrational(r.g, tm, P, beta, Q).verdict == Tri::yes) == want);
  }
  CHECK(equal > 0);
}
