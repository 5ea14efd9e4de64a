#include "kcube/export.hpp"

#include "kcube/errors.hpp"

#include <algorithm>

namespace kcube {

namespace {

template <class Fn>
void for_each_edge(const Torus& torus, Fn&& fn)
{
    std::vector<Vertex> higher;
    for (Code u = 0; u < torus.vertex_count(); ++u) {
        higher.clear();
        torus.for_each_neighbor(Vertex{u}, [&](Vertex v) {
            if (v.code > u) higher.push_back(v);
        });
        std::sort(higher.begin(), higher.end());
        higher.erase(std::unique(higher.begin(), higher.end()), higher.end());
        for (auto v : higher) fn(Vertex{u}, v);
    }
}

}  // namespace

ExportFormat export_format_from_string(std::string_view text)
{
    if (text == "edgelist") return ExportFormat::edgelist;
    if (text == "dot") return ExportFormat::dot;
    throw InvalidArgument("unknown export format '" + std::string(text) + "' (expected dot or edgelist)");
}

std::string_view to_string(ExportFormat f)
{
    return f == ExportFormat::dot ? "dot" : "edgelist";
}

void write_edgelist(const Torus& torus, std::ostream& out)
{
    for_each_edge(torus, [&](Vertex u, Vertex v) { out << torus.label(u) << ' ' << torus.label(v) << '\n'; });
}

void write_dot(const Torus& torus, std::ostream& out)
{
    const auto& p = torus.params();
    out << "graph Q" << p.n << "_" << p.k << " {\n";
    for (Code v = 0; v < torus.vertex_count(); ++v) out << "  \"" << torus.label(Vertex{v}) << "\";\n";
    for_each_edge(torus, [&](Vertex u, Vertex v) {
        out << "  \"" << torus.label(u) << "\" -- \"" << torus.label(v) << "\";\n";
    });
    out << "}\n";
}

void write_graph(const Torus& torus, ExportFormat format, std::ostream& out)
{
    if (format == ExportFormat::dot) {
        write_dot(torus, out);
    } else {
        write_edgelist(torus, out);
    }
}

}  // namespace kcube
