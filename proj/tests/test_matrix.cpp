#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"
#include "lpa/error.hpp"
#include "lpa/morphism.hpp"
#include "lpa/parse.hpp"
#include "lpa/verify.hpp"

using namespace lpa;

namespace {

InvertiblePair anick(const GraphPtr& g, const Element& p) {
  Element v = Element::vertex(g, 0), z = Element::zero(g);
  return mk_invertible(AlgMatrix::from_rows(g, 0, {{v, p}, {z, v}}),
                       AlgMatrix::from_rows(g, 0, {{v, z - p}, {z, v}}));
}

}  // namespace

TEST_CASE("field matrices invert exactly") {
  FieldMatrix a = FieldMatrix::from_rows({{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(1)}});
  auto inv = a.inverse();
  REQUIRE(inv);
  CHECK(a * *inv == FieldMatrix::identity(2));
  CHECK_FALSE(FieldMatrix::from_rows({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}).inverse());
  CHECK(FieldMatrix::from_rows({{Scalar(1), Scalar(5)}, {Scalar(0), Scalar(1)}}).is_upper_unitriangular());
  CHECK_FALSE(a.is_upper_unitriangular());
  testgen::Gen gen(rose_graph(2), 3);
  for (int t = 0; t < 100; ++t) {
    FieldMatrix m = gen.invertible_matrix(3);
    REQUIRE(*m.inverse() * m == FieldMatrix::identity(3));
  }
}

TEST_CASE("matrix literals over a corner") {
  GraphPtr g = rose_graph(2);
  AlgMatrix P = parse_matrix("[0, v; v, 0]", g, 0);
  CHECK(P.size() == 2);
  CHECK(P.str() == "[0, v; v, 0]");
  CHECK(parse_matrix("[2, 0; 0, 1/2]", g, 0).as_field());
  CHECK(P.is_degree0());
  CHECK_FALSE(parse_matrix("[e1, 0; 0, v]", g, 0).is_degree0());
  CHECK_THROWS_AS(parse_matrix("[v, v; v]", g, 0), Error);

  GraphPtr s = testgen::sink_graph();
  VertexId a = s->vertex("a");
  CHECK_NOTHROW(parse_matrix("[a + g*k]", s, a));
  CHECK_THROWS_AS(parse_matrix("[g]", s, a), Error);
}

TEST_CASE("inverse pairs are verified") {
  GraphPtr g = rose_graph(2);
  AlgMatrix P = parse_matrix("[0, v; v, 0]", g, 0);
  CHECK_NOTHROW(mk_invertible(P, P));
  AlgMatrix bad = parse_matrix("[0, v; v, e1*e1']", g, 0);
  CHECK_THROWS_AS(mk_invertible(P, bad), VerificationError);
  try {
    mk_invertible(P, bad);
  } catch (const VerificationError& e) {
    CHECK(std::string(e.what()).find("[") != std::string::npos);
  }
  InvertiblePair Up = anick(g, parse_element("e1*e2'", g));
  CHECK(Up.degree0());
  CHECK(Up.swapped().P() == Up.Pinv());
  CHECK_THROWS_AS(mk_invertible_scalar(parse_matrix("[1, 2; 2, 4]", g, 0)), Error);
  CHECK_THROWS_AS(mk_invertible_scalar(parse_matrix("[e1, 0; 0, v]", g, 0)), Error);
}

TEST_CASE("U_p U_q = U_{p+q} for p, q in A(e1, e2)") {
  GraphPtr g = rose_graph(2);
  testgen::Gen gen(g, 8);
  for (int t = 0; t < 30; ++t) {
    Element p = gen.anick_element(2), q = gen.anick_element(2);
    REQUIRE(anick(g, p).P() * anick(g, q).P() == anick(g, p + q).P());
  }
}

TEST_CASE("endomorphisms preserve invertibility entrywise") {
  ExampleUnits ex = ExampleUnits::make();
  std::vector<Endo> fs = {mk_fu(ex.x, ex.x), mk_fu(ex.y, ex.yinv), mk_fu(ex.u, ex.uinv)};
  std::vector<InvertiblePair> ps = {anick(ex.g, parse_element("e1^2*e2'", ex.g)),
                                    mk_invertible(matrix_iso(ex.w), matrix_iso(ex.winv)),
                                    mk_invertible_scalar(parse_matrix("[2, 1; 1, 1]", ex.g, 0))};
  for (const Endo& f : fs) {
    for (const InvertiblePair& P : ps) {
      REQUIRE_NOTHROW(mk_invertible(apply_entrywise(f, P.P()), apply_entrywise(f, P.Pinv())));
    }
  }
}

TEST_CASE("P_m follows its recursion and matches powers of phi") {
  ExampleUnits ex = ExampleUnits::make();
  for (const Endo& f : {mk_fu(ex.u, ex.uinv), mk_fu(ex.w, ex.winv), mk_fu(ex.y, ex.yinv)}) {
    AlgMatrix P = extract_matrix(f).P();
    for (int m = 1; m <= 3; ++m) {
      Endo fm = power(f, m);
      AlgMatrix Pm = iterate_Pm(f, m);
      REQUIRE(iterate_Pm(f, m + 1) == Pm * apply_entrywise(fm, P));
      REQUIRE(extract_matrix(fm).P() == Pm);
      REQUIRE(Pm * iterate_Pm_inv(f, m) == AlgMatrix::identity(ex.g, 0, 2));
    }
  }
  AlgMatrix P = parse_matrix("[0, v; v, 0]", ex.g, 0);
  Endo fx = mk_phi(mk_invertible(P, P));
  CHECK(iterate_Pm(fx, 4) == P * P * P * P);
}

TEST_CASE("the star product is associative") {
  ExampleUnits ex = ExampleUnits::make();
  testgen::Gen gen(ex.g, 41);
  std::vector<InvertiblePair> pool = {mk_invertible(matrix_iso(ex.u), matrix_iso(ex.uinv)),
                                      mk_invertible(matrix_iso(ex.x), matrix_iso(ex.x)),
                                      mk_invertible(matrix_iso(ex.y), matrix_iso(ex.yinv))};
  for (int i = 0; i < 3; ++i) {
    pool.push_back(mk_invertible_scalar(AlgMatrix::from_field(ex.g, 0, gen.invertible_matrix(2))));
  }
  auto star = [](const InvertiblePair& a, const InvertiblePair& b) { return star_product(a, b, mk_phi(a)); };
  for (int t = 0; t < 20; ++t) {
    const auto& P = pool[gen.uniform(0, 5)];
    const auto& Q = pool[gen.uniform(0, 5)];
    const auto& R = pool[gen.uniform(0, 5)];
    REQUIRE(star(star(P, Q), R).P() == star(P, star(Q, R)).P());
  }
  FieldMatrix A = gen.invertible_matrix(2), B = gen.invertible_matrix(2);
  auto Ap = mk_invertible_scalar(AlgMatrix::from_field(ex.g, 0, A));
  auto Bp = mk_invertible_scalar(AlgMatrix::from_field(ex.g, 0, B));
  CHECK(star(Ap, Bp).P() == AlgMatrix::from_field(ex.g, 0, A * B));
}
