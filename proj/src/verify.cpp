#include "lpa/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <random>

#include "lpa/chenmod.hpp"
#include "lpa/error.hpp"
#include "lpa/morphism.hpp"
#include "lpa/parse.hpp"
#include "lpa/twist.hpp"

namespace lpa {

ExampleUnits ExampleUnits::make() {
  GraphPtr g = rose_graph(2);
  auto p = [&](const char* s) { return parse_element(s, g); };
  return ExampleUnits{g,
                      p("v"),
                      p("e1*e2' + e2*e1'"),
                      p("v + e1^2*e2'^2"),
                      p("v - e1^2*e2'^2"),
                      p("e1*e2' + e2*e1' + e1^2*e2'*e1'"),
                      p("e1*e2' + e2*e1' - e2*e1*e2'^2"),
                      p("e1*e2' + e2*e1' - e2^2*e1'*e2'"),
                      p("e1*e2' + e2*e1' + e1*e2*e1'^2")};
}

namespace {

struct CheckFailed {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed{what};
}

void expect_eq(const Element& got, const Element& want, const std::string& what) {
  if (got != want) throw CheckFailed{what + ": got " + got.str() + ", want " + want.str()};
}

struct Ctx : ExampleUnits {
  Ctx() : ExampleUnits(make()) {}
  Element E(const char* s) const { return parse_element(s, g); }
  AlgMatrix M(const char* s) const { return parse_matrix(s, g, 0); }
  InvertiblePair pair(const Element& a, const Element& ainv) const {
    return mk_invertible(matrix_iso(a), matrix_iso(ainv));
  }
};

void expect_images(const Ctx& c, const Endo& f, const char* e1, const char* e2, const char* g1, const char* g2,
                   const std::string& label) {
  expect_eq(f.edge_image(0), c.E(e1), label + "(e1)");
  expect_eq(f.edge_image(1), c.E(e2), label + "(e2)");
  expect_eq(f.ghost_image(0), c.E(g1), label + "(e1*)");
  expect_eq(f.ghost_image(1), c.E(g2), label + "(e2*)");
  expect_eq(f.vertex_image(0), c.v, label + "(v)");
}

std::string example_auto_1() {
  Ctx c;
  expect_eq(c.x * c.x, c.v, "x*x");
  Endo fx = mk_fu(c.x, c.x);
  expect_images(c, fx, "e2", "e1", "e2'", "e1'", "f_x");
  AlgMatrix P = c.M("[0, v; v, 0]");
  expect(matrix_iso(c.x) == P, "matrix_iso(x) = [0, v; v, 0]");
  expect(extract_matrix(fx).P() == P, "extract_matrix(f_x) = [0, v; v, 0]");
  expect(apply_entrywise(fx, P) == P, "f_x(P) = P");
  expect_eq(unit_of_endo(fx), c.x, "unit_of_endo(f_x)");
  auto aut = try_fixed_point_shortcut(fx);
  expect(aut.has_value(), "fixed-point shortcut certifies f_x");
  expect(aut->inverse.same_on_generators(fx), "f_x is an involution");
  return "x^2 = v; extract_matrix(f_x) = " + P.str() + "; shortcut certified";
}

std::string example_auto_2() {
  Ctx c;
  expect_eq(c.y * c.yinv, c.v, "y*y^-1");
  expect_eq(c.yinv * c.y, c.v, "y^-1*y");
  AlgMatrix Up = c.M("[v, e1*e2'; 0, v]");
  AlgMatrix Um = c.M("[v, -e1*e2'; 0, v]");
  InvertiblePair U = mk_invertible(Up, Um);
  expect(U.degree0(), "U_p has degree 0");
  expect(matrix_iso(c.y) == Up, "matrix_iso(y) = U_p");
  expect(c.E("e1*e2'").in_A_subalgebra(2), "e1e2* lies in A(e1, e2)");
  Endo fy = mk_fu(c.y, c.yinv);
  expect_images(c, fy, "e1", "e2 + e1^2*e2'", "e1' - e1*e2'^2", "e2'", "f_y");
  expect(fy.same_on_generators(mk_phi(U)), "f_y = phi_{U_p}");
  expect(extract_matrix(fy).P() == Up, "extract_matrix(f_y) = U_p");
  expect_eq(fy(c.y), c.y, "f_y(y)");
  expect(fy.graded(), "f_y graded");
  return "f_y = phi_{U_p} with U_p = " + Up.str();
}

std::string example_auto_3() {
  Ctx c;
  expect_eq(c.y * c.x, c.u, "u = y*x");
  expect_eq(c.u * c.uinv, c.v, "u*u^-1");
  expect_eq(c.uinv * c.u, c.v, "u^-1*u");
  Endo fu = mk_fu(c.u, c.uinv);
  expect_eq(fu.edge_image(0), c.E("e2 + e1^2*e2'"), "f_u(e1)");
  for (EdgeId i = 0; i < 2; ++i) {
    expect_eq(fu.edge_image(i), c.u * Element::edge(c.g, i), "f_u(e_i) = u e_i");
    expect_eq(fu.ghost_image(i), Element::ghost(c.g, i) * c.uinv, "f_u(e_i*) = e_i* u^-1");
  }
  expect_eq(fu(c.w), c.uinv, "f_u(w)");
  Automorphism aut = certify_automorphism(fu, c.pair(c.w, c.winv));
  expect(aut.inverse.same_on_generators(mk_fu(c.w, c.winv)), "f_u^-1 = f_w");
  expect(fu(c.u) != c.u, "f_u(u) != u");
  expect(!try_fixed_point_shortcut(fu).has_value(), "no fixed-point shortcut for f_u");
  // f_u(P) = P iff f_u(u) = u, on x (both true) and u (both false).
  for (auto [a, ainv, want] : {std::tuple{c.x, c.x, true}, std::tuple{c.u, c.uinv, false}}) {
    Endo f = mk_fu(a, ainv);
    AlgMatrix P = matrix_iso(a);
    bool lhs = apply_entrywise(f, P) == P;
    bool rhs = f(a) == a;
    expect(lhs == want && rhs == want, "f_a(P) = P iff f_a(a) = a for a = " + a.str());
  }
  return "f_u(w) = u^-1 certifies f_u; f_u(u) = " + fu(c.u).str();
}

std::shared_ptr<const TwistContext> context_of(const Element& a, const Element& ainv) {
  Endo f = mk_fu(a, ainv);
  auto aut = try_fixed_point_shortcut(f);
  expect(aut.has_value(), "fixed-point shortcut for f_a, a = " + a.str());
  return std::make_shared<const TwistContext>(std::move(*aut));
}

std::string exa_theta_1() {
  Ctx c;
  ThetaMap th = mk_theta(context_of(c.x, c.x));
  expect_eq(th.ghost_image(0), c.E("e2'"), "theta_x(e1*)");
  expect_eq(th.ghost_image(1), c.E("e1'"), "theta_x(e2*)");
  IsoReport r = check_iso_criterion(th, 2, 4);
  expect(r.verdict == IsoReport::Verdict::IsomorphismCertified && r.shortcut, "theta_x certified by shortcut");
  return "theta_x " + r.str();
}

std::string exa_theta_2() {
  Ctx c;
  ThetaMap th = mk_theta(context_of(c.y, c.yinv));
  expect_eq(th.ghost_image(0), c.E("e1' + e1*e2'^2"), "theta_y(e1*)");
  expect_eq(th.ghost_image(1), c.E("e2'"), "theta_y(e2*)");
  Element p = c.E("e1*e2'");
  expect_eq(th.apply(p), p, "theta_y(e1e2*)");
  Element target = c.E("e1'") * c.y * c.E("e2");
  expect_eq(target, p, "e1* y e2");
  MembershipResult m = image_membership(th, target, 2);
  expect(m.in_image() && m.witness && *m.witness == p, "e1* y e2 = theta_y(e1e2*)");
  IsoReport r = check_iso_criterion(th, 2, 4);
  expect(r.verdict == IsoReport::Verdict::IsomorphismCertified, "theta_y certified");
  return "membership " + m.str() + "; theta_y " + r.str();
}

std::string exa_theta_3() {
  Ctx c;
  Endo fu = mk_fu(c.u, c.uinv);
  auto ctx = std::make_shared<const TwistContext>(certify_automorphism(fu, c.pair(c.w, c.winv)));
  ThetaMap th = mk_theta(ctx);
  expect_eq(th.ghost_image(0), c.E("e2' + e2*e1'^2"), "theta_u(e1*)");
  expect_eq(th.ghost_image(1), c.E("e1'"), "theta_u(e2*)");
  expect_eq(th.ghost_image(0), c.E("e1'") * c.winv, "theta_u(e1*) = e1* w^-1");
  AlgMatrix Q2 = iterate_Pm(ctx->sigma().inverse, 2);
  AlgMatrix want = c.M("[1, -e1*e2' - e1*e2*e1'^2 + e2^2*e1'*e2'; -e2*e1', 1 + e2*e2' + e2^2*e1'^2]");
  expect(Q2 == want, "Q_2 = " + Q2.str());
  MembershipResult m = image_membership(th, Q2.at(0, 1), 4);
  expect(m.verdict == MembershipResult::Verdict::NotFoundUpTo && m.bound == 4, "Q_2[1,2] not found up to 4");
  IsoReport r = check_iso_criterion(th, 2, 4);
  expect(r.verdict == IsoReport::Verdict::FailsAt && r.m == 2 && r.row == 1 && r.col == 2,
         "theta_u criterion fails at m = 2, entry (1,2): " + r.str());
  return "Q_2 matches; Q_2[1,2] " + m.str() + "; theta_u " + r.str();
}

std::string lemma_ei() {
  Ctx c;
  AlgMatrix P = c.M("[0, v; v, 0]");
  InvertiblePair Px = mk_invertible(P, P);
  Endo fx = mk_phi(Px);
  Endo fu = mk_fu(c.u, c.uinv);
  InvertiblePair Qu = c.pair(c.w, c.winv);
  for (int m = 1; m <= 4; ++m) {
    expect(verify_lemma_ei(fx, Px, m), "f_x, m = " + std::to_string(m));
    expect(verify_lemma_ei(fu, Qu, m), "f_u, m = " + std::to_string(m));
  }
  return "f_x and f_u, m = 1..4";
}

std::string lemma_pm() {
  Ctx c;
  for (int m = 1; m <= 3; ++m) {
    expect(verify_lemma_pm(c.x, c.x, c.x, c.x, m), "f_x, m = " + std::to_string(m));
    expect(verify_lemma_pm(c.u, c.uinv, c.w, c.winv, m), "f_u, m = " + std::to_string(m));
  }
  Endo fx = mk_fu(c.x, c.x);
  AlgMatrix P = c.M("[0, v; v, 0]");
  expect(iterate_Pm(fx, 3) == P * P * P, "P_3 = P^3 when f_x(P) = P");
  return "f_x and f_u, m = 1..3";
}

std::string cuntz_correspondence() {
  Ctx c;
  for (const Element* a : {&c.x, &c.y, &c.u, &c.w}) {
    expect_eq(matrix_iso_inv(matrix_iso(*a)), *a, "matrix_iso round trip");
  }
  expect(matrix_iso(c.u * c.w) == matrix_iso(c.u) * matrix_iso(c.w), "matrix_iso multiplicative");
  expect(matrix_iso(c.v) == AlgMatrix::identity(c.g, 0, 2), "matrix_iso(v) = I");
  Endo fu = mk_fu(c.u, c.uinv);
  expect(fu.same_on_generators(mk_phi(c.pair(c.u, c.uinv))), "f_u = phi_(e_i* u e_j)");
  expect_eq(unit_of_endo(fu), c.u, "unit_of_endo(f_u)");
  // f_a f_b = f_{f_a(b) a}.
  Endo fx = mk_fu(c.x, c.x);
  Endo fy = mk_fu(c.y, c.yinv);
  Element xy = fx(c.y) * c.x;
  Element xy_inv = c.x * fx(c.yinv);
  expect(compose_functional(fx, fy).same_on_generators(mk_fu(xy, xy_inv)), "f_x f_y = f_{f_x(y) x}");
  expect(compose_functional(fu, mk_fu(c.w, c.winv)).same_on_generators(Endo::identity(c.g)), "f_u f_w = id");
  Endo tu = inner(c.u, c.uinv);
  for (EdgeId i = 0; i < 2; ++i) {
    expect_eq(tu.edge_image(i), c.uinv * Element::edge(c.g, i) * c.u, "tau_u(e_i)");
    expect_eq(tu.ghost_image(i), c.uinv * Element::ghost(c.g, i) * c.u, "tau_u(e_i*)");
  }
  Element two = Element::scalar(c.g, Scalar(2));
  Element half = Element::scalar(c.g, Scalar::fraction(1, 2));
  expect(inner(two, half).same_on_generators(Endo::identity(c.g)), "tau_{2v} = id");
  return "round trips, f_x f_y = f_{f_x(y) x}, inner automorphisms";
}

std::string anick_monoid() {
  Ctx c;
  const char* ps[] = {"e1*e2'", "e1^2*e2'", "e1*e2'^2", "e1^2*e2'^2"};
  auto U = [&](const Element& p) {
    AlgMatrix a = AlgMatrix::from_rows(c.g, 0, {{c.v, p}, {Element::zero(c.g), c.v}});
    AlgMatrix b = AlgMatrix::from_rows(c.g, 0, {{c.v, Element::zero(c.g) - p}, {Element::zero(c.g), c.v}});
    return mk_invertible(a, b);
  };
  int pairs = 0;
  for (const char* ps1 : ps) {
    for (const char* ps2 : ps) {
      Element p = c.E(ps1), q = c.E(ps2);
      expect(p.in_A_subalgebra(2) && q.in_A_subalgebra(2), "p, q in A(e1, e2)");
      InvertiblePair Up = U(p), Uq = U(q), Upq = U(p + q);
      expect(Up.P() * Uq.P() == Upq.P(), "U_p U_q = U_{p+q}");
      Endo phip = mk_phi(Up);
      expect(star_product(Up, Uq, phip).P() == Upq.P(), "U_p * U_q = U_{p+q}");
      expect(compose(phip, mk_phi(Uq)).same_on_generators(mk_phi(Upq)), "phi_{U_p} phi_{U_q} = phi_{U_{p+q}}");
      ++pairs;
    }
  }
  // Scalar matrices: P * Q = PQ.
  AlgMatrix A = c.M("[2, 1; 1, 1]");
  AlgMatrix B = c.M("[1, 3; 0, 1]");
  InvertiblePair Ap = mk_invertible_scalar(A), Bp = mk_invertible_scalar(B);
  expect(star_product(Ap, Bp, mk_phi(Ap)).P() == A * B, "P * Q = PQ for scalar P, Q");
  return std::to_string(pairs) + " pairs U_p * U_q = U_{p+q}; scalar P * Q = PQ";
}

FieldMatrix fm(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (auto row : rows) {
    r.emplace_back();
    for (long x : row) r.back().push_back(Scalar(x));
  }
  return FieldMatrix::from_rows(r);
}

std::string chen_annihilators() {
  Ctx c;
  auto path = [&](const char* s) { return parse_path(s, *c.g); };
  InfinitePath ce = path("(e1 e2)^inf");
  Element cyc = c.E("e1*e2");
  expect(act(c.v - cyc, ModuleVector::basis(c.g, ce)).is_zero(), "(v - c) c^inf = 0");
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> d(-3, 3);
  std::vector<FieldMatrix> Ps = {fm({{0, 1}, {1, 0}}), FieldMatrix::identity(2)};
  while (Ps.size() < 6) {
    FieldMatrix P = fm({{d(rng), d(rng)}, {d(rng), d(rng)}});
    if (P.inverse()) Ps.push_back(P);
  }
  std::vector<std::pair<const char*, const char*>> cycles = {
      {"(e1)^inf", "e1"}, {"(e1 e2)^inf", "e1*e2"}, {"(e1 e1 e2)^inf", "e1*e1*e2"}};
  for (const auto& P : Ps) {
    for (auto [ps, es] : cycles) {
      Element r = c.v - apply_scalar_phi(P, c.E(es));
      expect(twisted_act(P, r, ModuleVector::basis(c.g, path(ps))).is_zero(),
             std::string("(v - phi_P(c)) c^inf = 0 for c = ") + es + ", P = " + P.str());
    }
  }
  InfinitePath tm = path("oracle:thue-morse[e1,e2]");
  for (const auto& P : Ps) {
    expect(annihilator_check(c.g, P, tm, 5), "annihilators of Thue-Morse path, P = " + P.str());
  }
  return std::to_string(Ps.size()) + " matrices; Thue-Morse path (irrationality caller-asserted), m <= 5";
}

std::string irrep_decisions() {
  Ctx c;
  auto cls = [&](std::vector<EdgeId> e) { return rotations(*c.g, Path::of_edges(*c.g, std::move(e))); };
  FieldMatrix I = FieldMatrix::identity(2), S = fm({{0, 1}, {1, 0}});
  expect(iso_test_rational(c.g, cls({0, 1}), I, cls({1, 0}), I), "e1e2 vs e2e1, P = Q = I");
  expect(!iso_test_rational(c.g, cls({0}), I, cls({1}), I), "e1 vs e2, P = Q = I");
  expect(iso_test_rational(c.g, cls({0}), S, cls({1}), I), "e1 vs e2, P swap, Q = I");
  auto md = monomial_decompose(S);
  expect(md && md->reassemble() == S && md->sigma == Perm{1, 0}, "swap = (1 2) D");
  expect(!monomial_decompose(fm({{1, 1}, {0, 1}})), "[1, 1; 0, 1] is not monomial");
  InfinitePath tm = parse_path("oracle:thue-morse[e1,e2]", *c.g);
  InfinitePath tm_swapped = parse_path("oracle:thue-morse[e2,e1]", *c.g);
  InfinitePath fib = parse_path("oracle:fibonacci-word[e1,e2]", *c.g);
  FieldMatrix U1 = fm({{1, 2}, {0, 1}}), U2 = fm({{1, -1}, {0, 1}});
  expect(iso_test_irrational(c.g, tm, U1, tm, U1).verdict == Tri::yes, "alpha = beta, P = Q");
  expect(iso_test_irrational(c.g, tm, U1, tm, U2).verdict == Tri::no, "unitriangular P != Q");
  expect(iso_test_irrational(c.g, tm, U1, fib, U1).verdict == Tri::no, "Thue-Morse vs Fibonacci word");
  expect(iso_test_irrational(c.g, tm, S, tm_swapped, I).verdict == Tri::yes, "P swap, beta relabelled");
  return "rational and irrational decisions (oracle flags caller-asserted)";
}

struct CheckDef {
  const char* name;
  bool rational_only;
  std::string (*run)();
};

const CheckDef kChecks[] = {
    {"anick-monoid", false, anick_monoid},
    {"chen-annihilators", true, chen_annihilators},
    {"cuntz-correspondence", false, cuntz_correspondence},
    {"exa-theta-1", false, exa_theta_1},
    {"exa-theta-2", false, exa_theta_2},
    {"exa-theta-3", true, exa_theta_3},
    {"example-auto-1", false, example_auto_1},
    {"example-auto-2", false, example_auto_2},
    {"example-auto-3", false, example_auto_3},
    {"irrep-decisions", true, irrep_decisions},
    {"lemma-ei", false, lemma_ei},
    {"lemma-pm", false, lemma_pm},
};

CheckResult run_check(const CheckDef& def) {
  CheckResult r;
  r.name = def.name;
  if (def.rational_only && !FieldMode::is_rational()) {
    r.verdict = Verdict::skip;
    r.detail = "needs rational scalars; skipped over " + FieldMode::describe();
    return r;
  }
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.detail = def.run();
    r.verdict = Verdict::pass;
  } catch (const CheckFailed& f) {
    r.verdict = Verdict::fail;
    r.detail = f.what;
  } catch (const std::exception& e) {
    r.verdict = Verdict::fail;
    r.detail = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<std::string> paper_check_names() {
  std::vector<std::string> out;
  for (const auto& c : kChecks) out.emplace_back(c.name);
  return out;
}

Report verify_paper(const std::optional<std::string>& only) {
  std::vector<const CheckDef*> todo;
  for (const auto& c : kChecks) {
    if (!only || *only == c.name) todo.push_back(&c);
  }
  if (todo.empty()) throw Error("unknown check '" + *only + "'");
  std::vector<std::future<CheckResult>> running;
  for (const CheckDef* c : todo) running.push_back(std::async(std::launch::async, run_check, std::cref(*c)));
  Report rep;
  for (auto& f : running) rep.checks.push_back(f.get());
  std::sort(rep.checks.begin(), rep.checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return rep;
}

}  // namespace lpa
