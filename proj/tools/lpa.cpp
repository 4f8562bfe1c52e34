// lpa: command-line front end for the exact Leavitt path algebra engine.
//
// Exit status: 0 when every check passes, 1 when a check or verification
// fails, 2 for usage, parse and precondition errors.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "lpa/chenmod.hpp"
#include "lpa/error.hpp"
#include "lpa/morphism.hpp"
#include "lpa/parse.hpp"
#include "lpa/script.hpp"
#include "lpa/twist.hpp"
#include "lpa/verify.hpp"

namespace {

using namespace lpa;

// Options shared by every subcommand that needs an endomorphism.
struct EndoOpts {
  std::string graph = "rose:2";
  std::string corner;
  std::string phi, inverse;
  std::string fu, uinv;
  std::string certify, certify_inverse;
};

void add_endo_opts(CLI::App* app, EndoOpts& o) {
  app->add_option("-g,--graph", o.graph, "graph file or rose:N")->capture_default_str();
  app->add_option("--corner", o.corner, "corner vertex for matrix entries (default: first vertex)");
  auto* phi = app->add_option("--phi", o.phi, "matrix P of phi_P, e.g. '[0,v;v,0]'");
  app->add_option("--inverse", o.inverse, "inverse of --phi (found automatically in easy cases)")->needs(phi);
  auto* fu = app->add_option("--fu", o.fu, "unit u of f_u");
  app->add_option("--uinv", o.uinv, "inverse of --fu (found automatically in easy cases)")->needs(fu);
  phi->excludes(fu);
  auto* cert = app->add_option("--certify", o.certify, "witness Q with phi_P(Q) = P^-1");
  app->add_option("--certify-inverse", o.certify_inverse, "inverse of --certify")->needs(cert);
}

struct Built {
  GraphPtr g;
  VertexId w = 0;
};

Built setup(const EndoOpts& o) {
  Built b{load_graph_arg(o.graph), 0};
  if (!o.corner.empty()) b.w = b.g->vertex(o.corner);
  return b;
}

InvertiblePair pair_of(const Built& b, const std::string& m, const std::string& minv, const char* flag) {
  AlgMatrix P = parse_matrix(m, b.g, b.w);
  if (!minv.empty()) return mk_invertible(P, parse_matrix(minv, b.g, b.w));
  auto found = easy_invertible(P);
  if (!found) throw Error(std::string("cannot invert ") + flag + " automatically; pass its inverse");
  return *found;
}

Endo build_endo(const Built& b, const EndoOpts& o) {
  if (!o.phi.empty()) return mk_phi_auto(pair_of(b, o.phi, o.inverse, "--phi"));
  if (!o.fu.empty()) {
    Element u = parse_element(o.fu, b.g);
    if (!o.uinv.empty()) return mk_fu(u, parse_element(o.uinv, b.g));
    auto ui = easy_unit_inverse(u);
    if (!ui) throw Error("cannot invert --fu automatically; pass --uinv");
    return mk_fu(u, *ui);
  }
  throw CLI::RequiredError("--phi or --fu");
}

// Certified with the given witness, or by the fixed-point shortcut.
std::optional<Automorphism> build_automorphism(const Built& b, const EndoOpts& o, const Endo& f) {
  if (!o.certify.empty()) return certify_automorphism(f, pair_of(b, o.certify, o.certify_inverse, "--certify"));
  return try_fixed_point_shortcut(f);
}

Automorphism require_automorphism(const Built& b, const EndoOpts& o) {
  Endo f = build_endo(b, o);
  auto aut = build_automorphism(b, o, f);
  if (!aut) throw Error("the endomorphism is not certified; pass a witness with --certify");
  return std::move(*aut);
}

int cmd_graph(const std::string& file) {
  GraphPtr g = load_graph_arg(file);
  std::cout << g->render();
  return 0;
}

int cmd_eval(const std::string& graph, const std::string& expr) {
  GraphPtr g = load_graph_arg(graph);
  std::cout << parse_element(expr, g).str() << '\n';
  return 0;
}

int cmd_endo(const EndoOpts& o, const std::string& apply_expr) {
  Built b = setup(o);
  Endo f = build_endo(b, o);
  std::cout << f.describe();
  std::cout << "graded: " << (f.graded() ? "yes" : "no") << '\n';
  auto aut = build_automorphism(b, o, f);
  if (aut) {
    std::cout << "automorphism: certified" << (o.certify.empty() ? " (fixed-point shortcut)" : "") << '\n';
    std::cout << "inverse:\n" << aut->inverse.describe();
  } else {
    std::cout << "automorphism: not certified (no witness given)\n";
  }
  if (!apply_expr.empty()) std::cout << "image: " << f(parse_element(apply_expr, b.g)).str() << '\n';
  return 0;
}

int cmd_twist_eval(const EndoOpts& o, const std::string& a, const std::string& bexpr) {
  Built b = setup(o);
  TwistContext ctx(require_automorphism(b, o));
  Element x = parse_element(a, b.g);
  Element y = parse_element(bexpr, b.g);
  std::cout << twist_mul(ctx, x, y).str() << '\n';
  return 0;
}

int cmd_twist_theta(const EndoOpts& o, bool check_iso, int m_max, int bound, const std::string& member) {
  Built b = setup(o);
  auto ctx = std::make_shared<const TwistContext>(require_automorphism(b, o));
  ThetaMap theta = mk_theta(ctx);
  for (EdgeId e = 0; e < static_cast<EdgeId>(b.g->num_edges()); ++e) {
    std::cout << "theta(" << b.g->edge_name(e) << "') = " << theta.ghost_image(e).str() << '\n';
  }
  if (!member.empty()) {
    std::cout << "membership: " << image_membership(theta, parse_element(member, b.g), bound).str() << '\n';
  }
  if (check_iso) std::cout << "criterion: " << check_iso_criterion(theta, m_max, bound).str() << '\n';
  return 0;
}

int cmd_module_act(const std::string& graph, const std::string& path, const std::string& expr,
                   const std::string& twist) {
  GraphPtr g = load_graph_arg(graph);
  ModuleVector m = ModuleVector::basis(g, parse_path(path, *g));
  Element a = parse_element(expr, g);
  if (twist.empty()) {
    std::cout << act(a, m).str() << '\n';
    return 0;
  }
  auto P = parse_matrix(twist, g, 0).as_field();
  if (!P) throw Error("--twist needs a matrix with scalar entries");
  std::cout << twisted_act(*P, a, m).str() << '\n';
  return 0;
}

int print_report(const Report& r, bool timing) {
  std::cout << r.render(timing);
  std::cout << (r.any_fail() ? "FAIL" : "PASS") << ": " << r.checks.size() << " check(s)\n";
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in Leavitt path algebras (LPA_FIELD=rational|fp:<prime>)"};
  app.require_subcommand(1);

  std::string graph_file;
  auto* graph = app.add_subcommand("graph", "parse and print a graph");
  graph->add_option("file", graph_file, "graph file or rose:N")->required();

  std::string eval_graph = "rose:2", eval_expr;
  auto* eval = app.add_subcommand("eval", "print the normal form of an element");
  eval->add_option("-g,--graph", eval_graph, "graph file or rose:N")->capture_default_str();
  eval->add_option("-e,--expr", eval_expr, "element expression")->required();

  EndoOpts endo_opts;
  std::string endo_apply;
  auto* endo = app.add_subcommand("endo", "build phi_P or f_u and optionally certify it");
  add_endo_opts(endo, endo_opts);
  endo->add_option("--apply", endo_apply, "element to map");

  auto* twist = app.add_subcommand("twist", "Zhang twist by a certified automorphism");
  twist->require_subcommand(1);
  EndoOpts tw_eval_opts;
  std::string tw_a, tw_b;
  auto* tw_eval = twist->add_subcommand("eval", "compute a * b in the twisted algebra");
  add_endo_opts(tw_eval, tw_eval_opts);
  tw_eval->add_option("--expr", tw_a, "left factor")->required();
  tw_eval->add_option("--star", tw_b, "right factor")->required();

  EndoOpts tw_theta_opts;
  bool check_iso = false;
  int m_max = 2, bound = 4;
  std::string member;
  auto* tw_theta = twist->add_subcommand("theta", "the embedding theta into the twisted algebra");
  add_endo_opts(tw_theta, tw_theta_opts);
  tw_theta->add_flag("--check-iso", check_iso, "run the isomorphism criterion");
  tw_theta->add_option("--mmax", m_max, "largest level for --check-iso")->capture_default_str();
  tw_theta->add_option("--bound", bound, "path length bound for image searches")->capture_default_str();
  tw_theta->add_option("--member", member, "element to look up in the image");

  auto* module = app.add_subcommand("module", "Chen modules");
  module->require_subcommand(1);
  std::string mod_graph = "rose:2", mod_path, mod_expr, mod_twist;
  auto* mod_act = module->add_subcommand("act", "act on an infinite path");
  mod_act->add_option("-g,--graph", mod_graph, "graph file or rose:N")->capture_default_str();
  mod_act->add_option("--path", mod_path, "path literal, e.g. '(e1 e2)^inf'")->required();
  mod_act->add_option("--expr", mod_expr, "acting element")->required();
  mod_act->add_option("--twist", mod_twist, "scalar matrix P for the twisted module V^P");

  std::string only;
  bool no_timing = false, list = false;
  auto* verify = app.add_subcommand("verify-paper", "replay the worked examples as checks");
  verify->add_option("--only", only, "run a single named check");
  verify->add_flag("--list", list, "print the check names");
  verify->add_flag("--no-timing", no_timing, "omit timings");

  std::string script;
  bool run_no_timing = false;
  auto* run = app.add_subcommand("run", "execute a script of assertions");
  run->add_option("script", script, "script file")->required();
  run->add_flag("--no-timing", run_no_timing, "omit timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    FieldMode::init_from_env();
    if (graph->parsed()) return cmd_graph(graph_file);
    if (eval->parsed()) return cmd_eval(eval_graph, eval_expr);
    if (endo->parsed()) return cmd_endo(endo_opts, endo_apply);
    if (tw_eval->parsed()) return cmd_twist_eval(tw_eval_opts, tw_a, tw_b);
    if (tw_theta->parsed()) return cmd_twist_theta(tw_theta_opts, check_iso, m_max, bound, member);
    if (mod_act->parsed()) return cmd_module_act(mod_graph, mod_path, mod_expr, mod_twist);
    if (verify->parsed()) {
      if (list) {
        for (const auto& n : paper_check_names()) std::cout << n << '\n';
        return 0;
      }
      if (!FieldMode::is_rational()) {
        std::cout << "scalars in " << FieldMode::describe() << "; rational-only checks are skipped\n";
      }
      return print_report(verify_paper(only.empty() ? std::nullopt : std::optional(only)), !no_timing);
    }
    if (run->parsed()) return print_report(run_script(script), !run_no_timing);
  } catch (const VerificationError& e) {
    std::cerr << "FAIL: " << e.what() << '\n';
    return 1;
  } catch (const CLI::RequiredError& e) {
    std::cerr << "error: " << e.what() << " is required\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
