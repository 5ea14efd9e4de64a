#pragma once

#include "kcube/torus.hpp"

#include <ostream>
#include <string_view>

namespace kcube {

enum class ExportFormat { edgelist, dot };

ExportFormat export_format_from_string(std::string_view text);
std::string_view to_string(ExportFormat f);

/// One `u v` line per edge, endpoints as digit strings, sorted by
/// (smaller code, larger code).
void write_edgelist(const Torus& torus, std::ostream& out);

/// Undirected Graphviz graph with the same edge order as write_edgelist.
void write_dot(const Torus& torus, std::ostream& out);

void write_graph(const Torus& torus, ExportFormat format, std::ostream& out);

}  // namespace kcube
