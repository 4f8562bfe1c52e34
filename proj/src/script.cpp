#include "lpa/script.hpp"

#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "lpa/error.hpp"
#include "lpa/morphism.hpp"
#include "lpa/parse.hpp"

namespace lpa {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_ident(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

class Interpreter {
 public:
  Report run(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::string l = trim(line);
      if (l.empty()) continue;
      try {
        exec(l, lineno);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.message(), e.position());
      } catch (const VerificationError& e) {
        throw VerificationError("line " + std::to_string(lineno) + ": " + e.what());
      } catch (const Error& e) {
        throw Error("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    return std::move(report_);
  }

 private:
  void exec(const std::string& l, int lineno) {
    std::istringstream ws(l);
    std::string cmd;
    ws >> cmd;
    std::string rest = trim(std::string_view(l).substr(cmd.size()));
    if (cmd == "rose" || cmd == "vertex" || cmd == "edge") return graph_cmd(cmd, rest);
    if (cmd == "let") return let_cmd(rest);
    if (cmd == "matrix") return matrix_cmd(rest);
    if (cmd == "endo") return endo_cmd(rest);
    if (cmd == "assert") return assert_cmd(rest, lineno);
    throw ParseError("unknown command '" + cmd + "'", 0);
  }

  void graph_cmd(const std::string& cmd, const std::string& rest) {
    if (g_) throw ParseError("graph commands must come before any other command", 0);
    std::istringstream ws(rest);
    std::vector<std::string> w;
    for (std::string t; ws >> t;) w.push_back(t);
    if (cmd == "rose") {
      if (w.size() != 1 || w[0].find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("usage: rose <petals>", 0);
      }
      if (!vertex_names_.empty()) throw ParseError("rose cannot be combined with vertex/edge", 0);
      g_ = rose_graph(std::stoi(w[0]));
      return;
    }
    if (cmd == "vertex") {
      if (w.size() != 1) throw ParseError("usage: vertex <name>", 0);
      vertex_names_.push_back(w[0]);
      return;
    }
    if (w.size() != 3) throw ParseError("usage: edge <name> <src> <dst>", 0);
    edge_lines_ += "edge " + w[0] + " " + w[1] + " " + w[2] + "\n";
  }

  const GraphPtr& graph() {
    if (!g_) {
      if (vertex_names_.empty()) throw ParseError("no graph defined (use rose N or vertex/edge)", 0);
      std::string text;
      for (const auto& v : vertex_names_) text += "vertex " + v + "\n";
      g_ = make_graph(Graph::parse(text + edge_lines_));
    }
    return g_;
  }

  ParseEnv env() {
    ParseEnv e;
    e.lookup = [this](std::string_view n) -> std::optional<Element> {
      auto it = lets_.find(std::string(n));
      if (it == lets_.end()) return std::nullopt;
      return it->second;
    };
    e.call = [this](std::string_view n, const Element& a) -> std::optional<Element> {
      auto it = endos_.find(std::string(n));
      if (it == endos_.end()) return std::nullopt;
      return it->second.apply(a);
    };
    return e;
  }

  Element element(const std::string& src) {
    ParseEnv e = env();
    return parse_element(src, graph(), &e);
  }

  // `name = body`, with an optional `@corner` after the name for matrices.
  std::pair<std::string, std::string> binding(const std::string& rest) {
    auto eq = rest.find('=');
    if (eq == std::string::npos) throw ParseError("expected '='", 0);
    std::string name = trim(std::string_view(rest).substr(0, eq));
    std::string body = trim(std::string_view(rest).substr(eq + 1));
    if (body.empty()) throw ParseError("empty right-hand side", eq + 1);
    return {name, body};
  }

  void check_fresh(const std::string& name) {
    if (!valid_ident(name)) throw ParseError("invalid name '" + name + "'", 0);
    if (graph()->find_vertex(name) || graph()->find_edge(name)) {
      throw ParseError("'" + name + "' is already a vertex or edge name", 0);
    }
    if (lets_.count(name) || mats_.count(name) || endos_.count(name)) {
      throw ParseError("'" + name + "' is already bound", 0);
    }
  }

  void let_cmd(const std::string& rest) {
    auto [name, body] = binding(rest);
    check_fresh(name);
    lets_.emplace(name, element(body));
  }

  void matrix_cmd(const std::string& rest) {
    auto [lhs, body] = binding(rest);
    std::string name = lhs;
    VertexId w = 0;
    if (auto at = lhs.find('@'); at != std::string::npos) {
      name = trim(std::string_view(lhs).substr(0, at));
      w = graph()->vertex(trim(std::string_view(lhs).substr(at + 1)));
    }
    check_fresh(name);
    ParseEnv e = env();
    mats_.emplace(name, parse_matrix(body, graph(), w, &e));
  }

  const AlgMatrix& matrix_named(const std::string& n) {
    auto it = mats_.find(n);
    if (it == mats_.end()) throw ParseError("unknown matrix '" + n + "'", 0);
    return it->second;
  }

  void endo_cmd(const std::string& rest) {
    auto [name, body] = binding(rest);
    check_fresh(name);
    std::istringstream ws(body);
    std::vector<std::string> w;
    for (std::string t; ws >> t;) w.push_back(t);
    if (w.empty()) throw ParseError("usage: endo f = phi P [Pinv] | fu u [uinv]", 0);
    if (w[0] == "phi" && (w.size() == 2 || w.size() == 3)) {
      const AlgMatrix& P = matrix_named(w[1]);
      std::optional<InvertiblePair> pair;
      if (w.size() == 3) {
        pair = mk_invertible(P, matrix_named(w[2]));
      } else if (!(pair = easy_invertible(P))) {
        throw Error("cannot invert " + w[1] + "; name its inverse: endo f = phi P Pinv");
      }
      endos_.emplace(name, mk_phi_auto(*pair));
      return;
    }
    if (w[0] == "fu" && w.size() == 2) {
      Element u = element(w[1]);
      auto uinv = easy_unit_inverse(u);
      if (!uinv) throw Error("cannot invert " + w[1] + "; give it: endo f = fu u uinv");
      endos_.emplace(name, mk_fu(u, *uinv));
      return;
    }
    if (w[0] == "fu" && w.size() == 3) {
      endos_.emplace(name, mk_fu(element(w[1]), element(w[2])));
      return;
    }
    throw ParseError("usage: endo f = phi P [Pinv] | fu u [uinv]", 0);
  }

  // Matrix expression: factors joined by '*', each a literal, a matrix name
  // or f(M) for an endomorphism f. Returns nullopt when the text is not one.
  std::optional<AlgMatrix> matrix_expr(const std::string& src) {
    std::vector<std::string> factors;
    int depth = 0;
    std::string cur;
    for (char c : src) {
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (c == '*' && depth == 0) {
        factors.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    factors.push_back(trim(cur));
    std::optional<AlgMatrix> acc;
    for (const auto& f : factors) {
      auto m = matrix_factor(f);
      if (!m) return std::nullopt;
      acc = acc ? *acc * *m : *m;
    }
    return acc;
  }

  std::optional<AlgMatrix> matrix_factor(const std::string& f) {
    if (f.empty()) return std::nullopt;
    if (f.front() == '[') {
      ParseEnv e = env();
      return parse_matrix(f, graph(), 0, &e);
    }
    if (auto it = mats_.find(f); it != mats_.end()) return it->second;
    auto open = f.find('(');
    if (open != std::string::npos && f.back() == ')') {
      auto it = endos_.find(trim(std::string_view(f).substr(0, open)));
      if (it == endos_.end()) return std::nullopt;
      auto inner = matrix_expr(f.substr(open + 1, f.size() - open - 2));
      if (!inner) return std::nullopt;
      return apply_entrywise(it->second, *inner);
    }
    return std::nullopt;
  }

  void assert_cmd(const std::string& rest, int lineno) {
    auto t0 = std::chrono::steady_clock::now();
    bool negate = false;
    auto op = rest.find("==");
    if (op == std::string::npos) {
      op = rest.find("!=");
      negate = true;
    }
    if (op == std::string::npos) throw ParseError("assert needs == or !=", 0);
    std::string lhs = trim(std::string_view(rest).substr(0, op));
    std::string rhs = trim(std::string_view(rest).substr(op + 2));
    bool equal;
    std::string shown;
    auto lm = matrix_expr(lhs);
    auto rm = lm ? matrix_expr(rhs) : std::nullopt;
    if (lm && rm) {
      equal = *lm == *rm;
      shown = lm->str() + " vs " + rm->str();
    } else {
      Element a = element(lhs);
      Element b = element(rhs);
      equal = a == b;
      shown = a.str() + " vs " + b.str();
    }
    CheckResult r;
    r.name = "line " + std::to_string(lineno);
    r.verdict = equal != negate ? Verdict::pass : Verdict::fail;
    r.detail = rest + (r.verdict == Verdict::fail ? "  (" + shown + ")" : "");
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report_.checks.push_back(std::move(r));
  }

  GraphPtr g_;
  std::vector<std::string> vertex_names_;
  std::string edge_lines_;
  std::map<std::string, Element> lets_;
  std::map<std::string, AlgMatrix> mats_;
  std::map<std::string, Endo> endos_;
  Report report_;
};

}  // namespace

Report run_script_text(std::string_view text) { return Interpreter().run(text); }

Report run_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read script '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return run_script_text(ss.str());
}

}  // namespace lpa
