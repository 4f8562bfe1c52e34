#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/graph.hpp"

namespace lpa {

// Optional hooks for names the graph does not define: bound variables and
// one-argument functions such as `f(e1)`.
struct ParseEnv {
  std::function<std::optional<Element>(std::string_view)> lookup;
  std::function<std::optional<Element>(std::string_view, const Element&)> call;
};

// Parses the element grammar: names, postfix ' (involution) and ^k, * , + ,
// - , rational literals a/b (meaning a/b times the identity) and parentheses.
Element parse_element(std::string_view src, const GraphPtr& g, const ParseEnv* env = nullptr);

// Parses `[a, b; c, d]` into rows of entry sources; the entries are parsed
// separately so callers can map scalars into a corner.
std::vector<std::vector<std::string>> split_matrix_literal(std::string_view src);

// `rose:N` or a path to a graph file.
GraphPtr load_graph_arg(std::string_view arg);

}  // namespace lpa
