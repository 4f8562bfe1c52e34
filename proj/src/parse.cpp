#include "lpa/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "lpa/error.hpp"

namespace lpa {

namespace {

class ElementParser {
 public:
  ElementParser(std::string_view src, const GraphPtr& g, const ParseEnv* env) : s_(src), g_(g), env_(env) {}

  Element parse() {
    Element e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Element expr() {
    Element acc(g_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Element t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Element term() {
    Element acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Element factor() {
    if (accept('-')) return -factor();
    Element e = primary();
    for (;;) {
      if (accept('\'')) {
        e = e.star();
      } else if (accept('^')) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent after '^'");
        unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
        if (k > 4096) fail("exponent too large");
        e = e.pow(static_cast<unsigned>(k));
      } else {
        return e;
      }
    }
  }

  Element primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Element e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Element number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (dstart == pos_) fail("expected denominator");
    }
    std::size_t at = start;
    try {
      return Element::scalar(g_, Scalar::parse(s_.substr(start, pos_ - start)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), at);
    }
  }

  Element name() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view id = s_.substr(start, pos_ - start);
    if (peek() == '(' && env_ && env_->call) {
      ++pos_;
      Element arg = expr();
      if (!accept(')')) fail("expected ')'");
      if (auto r = env_->call(id, arg)) return *r;
      pos_ = start;
      fail("unknown function '" + std::string(id) + "'");
    }
    if (auto v = g_->find_vertex(id)) return Element::vertex(g_, *v);
    if (auto e = g_->find_edge(id)) return Element::edge(g_, *e);
    if (env_ && env_->lookup) {
      if (auto r = env_->lookup(id)) return *r;
    }
    pos_ = start;
    fail("unknown name '" + std::string(id) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  GraphPtr g_;
  const ParseEnv* env_;
};

}  // namespace

Element parse_element(std::string_view src, const GraphPtr& g, const ParseEnv* env) {
  return ElementParser(src, g, env).parse();
}

std::vector<std::vector<std::string>> split_matrix_literal(std::string_view src) {
  std::size_t b = src.find_first_not_of(" \t\r\n");
  std::size_t e = src.find_last_not_of(" \t\r\n");
  if (b == std::string_view::npos || src[b] != '[') throw ParseError("matrix literal must start with '['", b == std::string_view::npos ? 0 : b);
  if (src[e] != ']') throw ParseError("matrix literal must end with ']'", e);
  std::vector<std::vector<std::string>> rows(1);
  std::string cur;
  int depth = 0;
  for (std::size_t i = b + 1; i < e; ++i) {
    char c = src[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced ')'", i);
    if (depth == 0 && (c == ',' || c == ';')) {
      rows.back().push_back(cur);
      cur.clear();
      if (c == ';') rows.emplace_back();
      continue;
    }
    if (c == '[' || c == ']') throw ParseError("nested brackets in matrix literal", i);
    cur += c;
  }
  rows.back().push_back(cur);
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw ParseError("matrix literal is not square", b);
    for (const auto& x : r) {
      if (x.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError("empty matrix entry", b);
    }
  }
  return rows;
}

GraphPtr load_graph_arg(std::string_view arg) {
  if (arg.substr(0, 5) == "rose:") {
    std::string n(arg.substr(5));
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("expected rose:<petals>", 5);
    }
    return rose_graph(std::stoi(n));
  }
  std::ifstream in{std::string(arg)};
  if (!in) throw Error("cannot read graph file '" + std::string(arg) + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return make_graph(Graph::parse(ss.str()));
}

}  // namespace lpa
