#include "kcube/errors.hpp"
#include "kcube/export.hpp"
#include "kcube/report.hpp"

#include "support.hpp"

#include <doctest.h>

#include <json.hpp>
#include <sstream>

using namespace kcube;

namespace {

RunReport stamped(TorusParams p, ReportPayload payload)
{
    RunReport r;
    r.command = std::string(command_for(payload));
    r.params = p;
    r.payload = std::move(payload);
    r.timestamp = std::chrono::sys_seconds(std::chrono::seconds(1'760'000'000));
    return r;
}

std::string edgelist(TorusParams p)
{
    std::ostringstream out;
    write_edgelist(Torus(p), out);
    return out.str();
}

}  // namespace

TEST_CASE("certificates round-trip")
{
    const Torus t({3, 3});
    auto cert = kappa_formula(t.params(), 2);
    const auto report = stamped(t.params(), cert);
    const auto text = serialize_report(report);
    CHECK(parse_report(text) == report);
    CHECK(text.find("\"001\"") != std::string::npos);

    cert.witness.reset();
    cert.exhaustive = false;
    cert.method = SearchMethod::boundary_enum;
    const auto bare = stamped(t.params(), cert);
    CHECK(parse_report(serialize_report(bare)) == bare);
}

TEST_CASE("verification reports round-trip, counterexamples included")
{
    const Torus t({4, 3});
    VerifyOptions opts;
    std::vector<VerificationReport> reports{
        verify_edge_cut_lemma(3, VerifyMode::exhaustive()),
        verify_path_cut_lemma(2, VerifyMode::exhaustive()),
    };
    const auto report = stamped({3, 3}, reports);
    CHECK(parse_report(serialize_report(report)) == report);

    std::vector<VerificationReport> failing{
        detail::run_check_on(t, CheckId::path_cut, VerifyMode::sampled(100, 4), opts)};
    REQUIRE(failing[0].counterexample);
    const auto bad = stamped(t.params(), failing);
    const auto back = parse_report(serialize_report(bad));
    CHECK(back == bad);
    CHECK(recheck_counterexample(std::get<1>(back.payload)[0]));
}

TEST_CASE("reliability tables round-trip exactly")
{
    const Torus t({3, 2});
    auto rows = sweep_fault_sizes(t, 3, 8, SurvivorCondition::no_isolated_vertex, 3'000, 12345678901234567ull);
    const auto report = stamped(t.params(), rows);
    const auto back = parse_report(serialize_report(report));
    CHECK(back == report);
    CHECK(std::get<2>(back.payload).back().condition_starved);
}

TEST_CASE("export metadata round-trips")
{
    const auto report = stamped({3, 2}, ExportMetadata{"dot", "-", 9, 18});
    CHECK(parse_report(serialize_report(report)) == report);
}

TEST_CASE("malformed documents are rejected")
{
    const auto report = stamped({3, 2}, ExportMetadata{"dot", "-", 9, 18});
    auto doc = nlohmann::json::parse(serialize_report(report));

    auto without_version = doc;
    without_version.erase("schema_version");
    CHECK_THROWS_AS(parse_report(without_version.dump()), InvalidArgument);

    auto future = doc;
    future["schema_version"] = 99;
    CHECK_THROWS_AS(parse_report(future.dump()), InvalidArgument);

    auto mismatched = doc;
    mismatched["command"] = "kappa";
    CHECK_THROWS_AS(parse_report(mismatched.dump()), InvalidArgument);

    CHECK_THROWS_AS(parse_report("{not json"), InvalidArgument);

    auto wrong = report;
    wrong.command = "verify";
    CHECK_THROWS_AS(serialize_report(wrong), InvalidArgument);
}

TEST_CASE("timestamps are UTC ISO-8601")
{
    const std::chrono::sys_seconds t{std::chrono::seconds(0)};
    CHECK(format_timestamp(t) == "1970-01-01T00:00:00Z");
    CHECK(format_timestamp(parse_timestamp("2026-10-16T08:30:05Z")) == "2026-10-16T08:30:05Z");
    CHECK_THROWS_AS(parse_timestamp("yesterday"), InvalidArgument);
}

TEST_CASE("edge list of the 3-cycle")
{
    CHECK(edgelist({3, 1}) == "0 1\n0 2\n1 2\n");
}

TEST_CASE("edge lists are sorted, complete and stable")
{
    for (const TorusParams p : {TorusParams{3, 2}, TorusParams{3, 3}, TorusParams{2, 3}, TorusParams{5, 2}}) {
        const Torus t(p);
        const auto text = edgelist(p);
        CHECK(text == edgelist(p));
        std::istringstream in(text);
        std::string a, b;
        std::vector<std::pair<Code, Code>> edges;
        while (in >> a >> b) edges.emplace_back(t.parse(a).code, t.parse(b).code);
        CHECK(edges.size() == p.edge_count());
        CHECK(std::is_sorted(edges.begin(), edges.end()));
        CHECK(std::adjacent_find(edges.begin(), edges.end()) == edges.end());
        for (auto [u, v] : edges) {
            CHECK(u < v);
            CHECK(t.is_adjacent(Vertex{u}, Vertex{v}));
        }
    }
    const auto q2 = edgelist({3, 2});
    CHECK(std::count(q2.begin(), q2.end(), '\n') == 18);
}

TEST_CASE("DOT output")
{
    std::ostringstream out;
    write_dot(Torus({3, 1}), out);
    CHECK(out.str() ==
          "graph Q1_3 {\n"
          "  \"0\";\n"
          "  \"1\";\n"
          "  \"2\";\n"
          "  \"0\" -- \"1\";\n"
          "  \"0\" -- \"2\";\n"
          "  \"1\" -- \"2\";\n"
          "}\n");
    CHECK(export_format_from_string("dot") == ExportFormat::dot);
    CHECK_THROWS_AS(export_format_from_string("svg"), InvalidArgument);
}
