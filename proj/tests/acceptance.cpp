// Acceptance driver: one PASS/FAIL line per criterion, each with a time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "gen.hpp"
#include "lpa/chenmod.hpp"
#include "lpa/error.hpp"
#include "lpa/morphism.hpp"
#include "lpa/parse.hpp"
#include "lpa/twist.hpp"
#include "lpa/verify.hpp"

using namespace lpa;

namespace {

struct Failed {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failed{what};
}

// Runs named checks from the worked-example suite and joins their details.
std::string paper_checks(std::initializer_list<const char*> names) {
  std::string detail;
  for (const char* n : names) {
    Report r = verify_paper(std::string(n));
    const CheckResult& c = r.checks.at(0);
    expect(c.verdict == Verdict::pass, std::string(n) + ": " + c.detail);
    if (!detail.empty()) detail += "; ";
    detail += n;
  }
  return detail;
}

InvertiblePair anick(const GraphPtr& g, const Element& p) {
  Element v = Element::vertex(g, 0), z = Element::zero(g);
  return mk_invertible(AlgMatrix::from_rows(g, 0, {{v, p}, {z, v}}), AlgMatrix::from_rows(g, 0, {{v, z - p}, {z, v}}));
}

FieldMatrix perm_matrix(const Perm& s) { return sn_act_matrix(s, FieldMatrix::identity(s.size())); }

std::string monoid_law() {
  ExampleUnits ex = ExampleUnits::make();
  testgen::Gen gen(ex.g, 5);
  auto draw = [&]() -> InvertiblePair {
    switch (gen.uniform(0, 2)) {
      case 0:
        return mk_invertible_scalar(AlgMatrix::from_field(ex.g, 0, gen.invertible_matrix(2)));
      case 1:
        return mk_invertible_scalar(AlgMatrix::from_field(ex.g, 0, perm_matrix(gen.perm(2))));
      default:
        return anick(ex.g, gen.anick_element(2));
    }
  };
  for (int t = 0; t < 100; ++t) {
    Endo a = mk_phi(draw()), b = mk_phi(draw());
    Endo c = compose(a, b);
    expect(c.same_on_generators(compose_functional(a, b)), "pair " + std::to_string(t) + " on generators");
    for (int k = 0; k < 20; ++k) {
      Element x = gen.element(3, 3);
      expect(c(x) == a(b(x)), "pair " + std::to_string(t) + " on " + x.str());
    }
  }
  return "100 pairs, generators and 20 elements each";
}

std::string twist_laws() {
  ExampleUnits ex = ExampleUnits::make();
  testgen::Gen gen(ex.g, 6);
  Endo fu = mk_fu(ex.u, ex.uinv);
  TwistContext ctx(certify_automorphism(fu, mk_invertible(matrix_iso(ex.w), matrix_iso(ex.winv))));
  for (int t = 0; t < 200; ++t) {
    Element a = gen.homogeneous(gen.uniform(-2, 2), 2, 3);
    Element b = gen.homogeneous(gen.uniform(-2, 2), 2, 3);
    Element c = gen.homogeneous(gen.uniform(-2, 2), 2, 3);
    expect(twist_mul(ctx, twist_mul(ctx, a, b), c) == twist_mul(ctx, a, twist_mul(ctx, b, c)),
           "associativity, triple " + std::to_string(t));
  }
  TwistContext id = TwistContext::identity(ex.g);
  for (int t = 0; t < 200; ++t) {
    Element a = gen.homogeneous(gen.uniform(-2, 2), 2, 3);
    Element b = gen.homogeneous(gen.uniform(-2, 2), 2, 3);
    expect(twist_mul(id, a, b) == a * b, "identity twist, pair " + std::to_string(t));
  }
  return "200 triples under sigma = f_u; 200 identity pairs";
}

std::string chen_modules() {
  GraphPtr g = rose_graph(2);
  testgen::Gen gen(g, 8);
  Element v = Element::vertex(g, 0);
  std::pair<const char*, const char*> cycles[] = {
      {"(e1)^inf", "e1"}, {"(e1 e2)^inf", "e1*e2"}, {"(e1 e1 e2)^inf", "e1*e1*e2"}};
  for (int t = 0; t < 10; ++t) {
    FieldMatrix P = gen.invertible_matrix(2);
    for (auto [ps, es] : cycles) {
      Element r = v - apply_scalar_phi(P, parse_element(es, g));
      expect(twisted_act(P, r, ModuleVector::basis(g, parse_path(ps, *g))).is_zero(),
             std::string("c = ") + es + ", P = " + P.str());
    }
  }
  InfinitePath tm = parse_path("oracle:thue-morse[e1,e2]", *g);
  for (int t = 0; t < 5; ++t) {
    FieldMatrix P = gen.invertible_matrix(2);
    expect(annihilator_check(g, P, tm, 5), "Thue-Morse annihilators, P = " + P.str());
  }
  std::vector<InfinitePath> betas = {tm, drop_edges(tm, 3), parse_path("oracle:fibonacci-word[e1,e2]", *g)};
  int yes = 0;
  for (int t = 0; t < 20; ++t) {
    FieldMatrix P = gen.unitriangular(2);
    FieldMatrix Q = t % 3 == 0 ? P : gen.unitriangular(2);
    std::size_t bi = t % betas.size();
    bool want = P == Q && bi != 2;
    auto got = iso_test_irrational(g, tm, P, betas[bi], Q);
    expect((got.verdict == Tri::yes) == want, "unitriangular pair " + std::to_string(t));
    yes += want;
  }
  return "30 cycle annihilators; 5 Thue-Morse matrices, m <= 5; 20 unitriangular pairs (" + std::to_string(yes) +
         " isomorphic)";
}

Element letter(const GraphPtr& g, const words::Letter& l) {
  switch (l.kind) {
    case words::LetterKind::vertex:
      return Element::vertex(g, l.id);
    case words::LetterKind::edge:
      return Element::edge(g, l.id);
    case words::LetterKind::ghost:
      return Element::ghost(g, l.id);
  }
  return Element::zero(g);
}

std::string normalization() {
  std::vector<GraphPtr> graphs = {rose_graph(2), rose_graph(3), testgen::sink_graph()};
  int confluent = 0, triples = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const GraphPtr& g = graphs[gi];
    testgen::Gen gen(g, 90 + gi);
    for (int t = 0; t < 170; ++t) {
      std::vector<words::WordTerm> terms;
      Element direct = Element::zero(g);
      for (int i = gen.uniform(1, 6); i > 0; --i) {
        words::Word w = gen.coin() ? gen.live_word(5) : gen.word(5);
        Scalar c = gen.scalar();
        terms.push_back({c, w});
        Element prod = letter(g, w.front());
        for (std::size_t k = 1; k < w.size(); ++k) prod = prod * letter(g, w[k]);
        direct += prod * c;
      }
      std::mt19937_64 r1(t), r2(t + 7919);
      Element a = words::reduce(g, terms, r1), b = words::reduce(g, terms, r2);
      expect(a == b && a == direct, "reduction orders disagree");
      ++confluent;
    }
    for (int t = 0; t < 100; ++t) {
      Element a = gen.element(3, 3), b = gen.element(3, 3), c = gen.element(3, 3);
      expect((a * b) * c == a * (b * c), "associativity");
      expect(a * (b + c) == a * b + a * c && (a + b) * c == a * c + b * c, "distributivity");
      ++triples;
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(g->num_edges()); ++e) {
      for (EdgeId f = 0; f < static_cast<EdgeId>(g->num_edges()); ++f) {
        Element want = e == f ? Element::vertex(g, g->range(e)) : Element::zero(g);
        expect(Element::ghost(g, e) * Element::edge(g, f) == want, "CK1");
      }
    }
    for (VertexId v = 0; v < static_cast<VertexId>(g->num_vertices()); ++v) {
      if (g->classify_vertex(v) == VertexKind::sink) continue;
      Element s = Element::zero(g);
      for (EdgeId e : g->out_edges(v)) s += Element::edge(g, e) * Element::ghost(g, e);
      expect(s == Element::vertex(g, v), "CK2");
    }
  }
  return std::to_string(confluent) + " expressions, " + std::to_string(triples) + " triples, CK on 3 graphs";
}

template <class F>
std::string rejected_with(F&& f, const char* label) {
  try {
    f();
  } catch (const VerificationError& e) {
    return std::string(label) + " rejected";
  }
  throw Failed{std::string(label) + " was accepted"};
}

std::string negative_controls() {
  ExampleUnits ex = ExampleUnits::make();
  auto M = [&](const char* s) { return parse_matrix(s, ex.g, 0); };
  std::string d1 = rejected_with([&] { mk_invertible(M("[0, v; v, 0]"), M("[0, v; v, e1*e1']")); }, "inverse pair");
  Endo fu = mk_fu(ex.u, ex.uinv);
  std::string d2 = rejected_with([&] { certify_automorphism(fu, mk_invertible(matrix_iso(ex.x), matrix_iso(ex.x))); },
                                 "witness");
  InfinitePath tm = parse_path("oracle:thue-morse[e1,e2]", *ex.g);
  std::vector<Element> eps;
  for (int m = 0; m <= 4; ++m) eps.push_back(epsilon(ex.g, tm, m));
  eps[2] = parse_element("e2*e2'", ex.g);
  expect(!annihilator_check(ex.g, FieldMatrix::identity(2), tm, 3, &eps), "corrupted epsilon accepted");
  return d1 + "; " + d2 + "; corrupted epsilon fails";
}

struct Criterion {
  int id;
  double limit_s;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  FieldMode::init_from_env();
  const Criterion criteria[] = {
      {1, 1, [] { return paper_checks({"example-auto-1"}); }},
      {2, 1, [] { return paper_checks({"example-auto-2"}); }},
      {3, 1, [] { return paper_checks({"example-auto-3"}); }},
      {4, 10, [] { return paper_checks({"exa-theta-3", "exa-theta-1", "exa-theta-2"}); }},
      {5, 30, monoid_law},
      {6, 30, twist_laws},
      {7, 10, [] { return paper_checks({"lemma-ei", "lemma-pm"}); }},
      {8, 30, chen_modules},
      {9, 60, normalization},
      {10, 5, negative_controls},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failed& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > c.limit_s) {
      ok = false;
      detail = "over time limit; " + detail;
    }
    failures += !ok;
    std::printf("%s  criterion %2d  [%.2f s / %.0f s]  %s\n", ok ? "PASS" : "FAIL", c.id, secs, c.limit_s,
                detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
