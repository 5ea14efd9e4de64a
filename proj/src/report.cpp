#include "kcube/report.hpp"

#include "kcube/errors.hpp"

#include <json.hpp>

#include <ctime>

namespace kcube {

using nlohmann::json;

namespace {

// Labels are written and parsed by a torus of the report's own radix.
struct Codec {
    const Torus& torus;

    json vertices(const VertexSet& s) const
    {
        json out = json::array();
        for (auto v : s) out.push_back(torus.label(v));
        return out;
    }

    VertexSet vertices(const json& j) const
    {
        std::vector<Vertex> members;
        for (const auto& item : j) members.push_back(torus.parse(item.get<std::string>()));
        return VertexSet(torus.params(), std::move(members));
    }
};

json params_json(const TorusParams& p) { return {{"k", p.k}, {"n", p.n}}; }

TorusParams params_from(const json& j)
{
    TorusParams p{j.at("k").get<std::uint32_t>(), j.at("n").get<std::uint32_t>()};
    p.validate();
    return p;
}

json certificate_json(const KappaCertificate& c, const Codec& codec)
{
    return {{"params", params_json(c.params)},
            {"h", c.h},
            {"value", c.value},
            {"witness", c.witness ? codec.vertices(*c.witness) : json(nullptr)},
            {"method", std::string(to_string(c.method))},
            {"exhaustive", c.exhaustive}};
}

KappaCertificate certificate_from(const json& j, const Codec& codec)
{
    KappaCertificate c;
    c.params = params_from(j.at("params"));
    c.h = j.at("h").get<int>();
    c.value = j.at("value").get<std::uint64_t>();
    if (!j.at("witness").is_null()) c.witness = codec.vertices(j.at("witness"));
    c.method = search_method_from_string(j.at("method").get<std::string>());
    c.exhaustive = j.at("exhaustive").get<bool>();
    return c;
}

json verification_json(const VerificationReport& r, const Codec& codec)
{
    json cx = nullptr;
    if (r.counterexample) {
        json sets = json::array();
        for (const auto& [name, set] : r.counterexample->sets) {
            sets.push_back({{"name", name}, {"vertices", codec.vertices(set)}});
        }
        cx = {{"reason", r.counterexample->reason}, {"sets", sets}};
    }
    const bool sampled = r.mode.kind == VerifyMode::Kind::sampled;
    return {{"check", std::string(to_string(r.check))},
            {"params", params_json(r.params)},
            {"mode", {{"kind", sampled ? "sampled" : "exhaustive"}, {"trials", r.mode.trials}, {"seed", r.mode.seed}}},
            {"cases_checked", r.cases_checked},
            {"cases_applicable", r.cases_applicable},
            {"status", std::string(to_string(r.status))},
            {"counterexample", cx},
            {"notice", r.notice},
            {"elapsed_seconds", r.elapsed.count()}};
}

VerificationReport verification_from(const json& j, const Codec& codec)
{
    VerificationReport r;
    r.check = check_id_from_string(j.at("check").get<std::string>());
    r.params = params_from(j.at("params"));
    const auto& mode = j.at("mode");
    const auto kind = mode.at("kind").get<std::string>();
    if (kind != "sampled" && kind != "exhaustive") throw InvalidArgument("unknown verify mode '" + kind + "'");
    r.mode.kind = kind == "sampled" ? VerifyMode::Kind::sampled : VerifyMode::Kind::exhaustive;
    r.mode.trials = mode.at("trials").get<std::uint64_t>();
    r.mode.seed = mode.at("seed").get<std::uint64_t>();
    r.cases_checked = j.at("cases_checked").get<std::uint64_t>();
    r.cases_applicable = j.at("cases_applicable").get<std::uint64_t>();
    r.status = check_status_from_string(j.at("status").get<std::string>());
    if (!j.at("counterexample").is_null()) {
        Counterexample cx;
        cx.reason = j.at("counterexample").at("reason").get<std::string>();
        for (const auto& s : j.at("counterexample").at("sets")) {
            cx.sets.emplace_back(s.at("name").get<std::string>(), codec.vertices(s.at("vertices")));
        }
        r.counterexample = std::move(cx);
    }
    r.notice = j.at("notice").get<std::string>();
    r.elapsed = std::chrono::duration<double>(j.at("elapsed_seconds").get<double>());
    return r;
}

json estimate_json(const ReliabilityEstimate& e)
{
    return {{"fault_count", e.fault_count},
            {"condition", std::string(to_string(e.condition))},
            {"seed", e.seed},
            {"trials", e.trials},
            {"accepted", e.accepted},
            {"disconnected", e.disconnected},
            {"point_estimate", e.point_estimate},
            {"wilson_low", e.wilson.low},
            {"wilson_high", e.wilson.high},
            {"condition_starved", e.condition_starved}};
}

ReliabilityEstimate estimate_from(const json& j)
{
    ReliabilityEstimate e;
    e.fault_count = j.at("fault_count").get<std::uint64_t>();
    e.condition = survivor_condition_from_string(j.at("condition").get<std::string>());
    e.seed = j.at("seed").get<std::uint64_t>();
    e.trials = j.at("trials").get<std::uint64_t>();
    e.accepted = j.at("accepted").get<std::uint64_t>();
    e.disconnected = j.at("disconnected").get<std::uint64_t>();
    e.point_estimate = j.at("point_estimate").get<double>();
    e.wilson.low = j.at("wilson_low").get<double>();
    e.wilson.high = j.at("wilson_high").get<double>();
    e.condition_starved = j.at("condition_starved").get<bool>();
    return e;
}

struct PayloadWriter {
    const Codec& codec;

    json operator()(const KappaCertificate& c) const { return certificate_json(c, codec); }
    json operator()(const std::vector<VerificationReport>& reports) const
    {
        json out = json::array();
        for (const auto& r : reports) out.push_back(verification_json(r, codec));
        return {{"reports", out}};
    }
    json operator()(const std::vector<ReliabilityEstimate>& rows) const
    {
        json out = json::array();
        for (const auto& e : rows) out.push_back(estimate_json(e));
        return {{"estimates", out}};
    }
    json operator()(const ExportMetadata& m) const
    {
        return {{"format", m.format}, {"path", m.path}, {"vertex_count", m.vertex_count}, {"edge_count", m.edge_count}};
    }
};

ReportPayload payload_from(std::string_view command, const json& j, const Codec& codec)
{
    if (command == "kappa") return certificate_from(j, codec);
    if (command == "verify") {
        std::vector<VerificationReport> reports;
        for (const auto& r : j.at("reports")) reports.push_back(verification_from(r, codec));
        return reports;
    }
    if (command == "simulate") {
        std::vector<ReliabilityEstimate> rows;
        for (const auto& e : j.at("estimates")) rows.push_back(estimate_from(e));
        return rows;
    }
    if (command == "export") {
        return ExportMetadata{j.at("format").get<std::string>(), j.at("path").get<std::string>(),
                              j.at("vertex_count").get<std::uint64_t>(), j.at("edge_count").get<std::uint64_t>()};
    }
    throw InvalidArgument("unknown report command '" + std::string(command) + "'");
}

}  // namespace

std::string_view command_for(const ReportPayload& payload)
{
    switch (payload.index()) {
    case 0:
        return "kappa";
    case 1:
        return "verify";
    case 2:
        return "simulate";
    default:
        return "export";
    }
}

std::string format_timestamp(std::chrono::sys_seconds t)
{
    const std::time_t secs = t.time_since_epoch().count();
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::chrono::sys_seconds parse_timestamp(std::string_view text)
{
    std::tm tm{};
    const std::string s(text);
    const char* end = strptime(s.c_str(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    if (!end || *end != '\0') throw InvalidArgument("malformed timestamp '" + s + "'");
    return std::chrono::sys_seconds(std::chrono::seconds(timegm(&tm)));
}

std::string serialize_report(const RunReport& report)
{
    if (report.command != command_for(report.payload)) {
        throw InvalidArgument("payload does not match command '" + report.command + "'");
    }
    const Torus torus(report.params);
    const Codec codec{torus};
    json doc = {{"schema_version", report_schema_version},
                {"tool_version", report.tool_version},
                {"command", report.command},
                {"params", params_json(report.params)},
                {"timestamp", format_timestamp(report.timestamp)},
                {"payload", std::visit(PayloadWriter{codec}, report.payload)}};
    return doc.dump(2) + "\n";
}

RunReport parse_report(std::string_view text)
{
    try {
        const auto doc = json::parse(text);
        const auto version = doc.at("schema_version").get<int>();
        if (version != report_schema_version) {
            throw InvalidArgument("unsupported report schema version " + std::to_string(version));
        }
        RunReport report;
        report.tool_version = doc.at("tool_version").get<std::string>();
        report.command = doc.at("command").get<std::string>();
        report.params = params_from(doc.at("params"));
        report.timestamp = parse_timestamp(doc.at("timestamp").get<std::string>());
        const Torus torus(report.params);
        report.payload = payload_from(report.command, doc.at("payload"), Codec{torus});
        return report;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed report: ") + e.what());
    }
}

}  // namespace kcube
