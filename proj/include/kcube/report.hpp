#pragma once

// Machine-readable run reports. One JSON document per run:
//
//   { "schema_version": 1, "tool_version": "0.1.0", "command": "kappa",
//     "params": {"k": 3, "n": 3}, "timestamp": "2026-01-01T00:00:00Z",
//     "payload": { ... } }
//
// The payload shape is fixed by the command. Vertices are written as digit
// strings (e.g. "012"), never as integer codes.

#include "kcube/reliability.hpp"
#include "kcube/solver.hpp"
#include "kcube/torus.hpp"
#include "kcube/verify.hpp"

#include <chrono>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kcube {

inline constexpr std::string_view tool_version = "0.1.0";
inline constexpr int report_schema_version = 1;

struct ExportMetadata {
    std::string format;
    /// Output path, or "-" for standard output.
    std::string path;
    std::uint64_t vertex_count = 0;
    std::uint64_t edge_count = 0;

    friend bool operator==(const ExportMetadata&, const ExportMetadata&) = default;
};

using ReportPayload = std::variant<KappaCertificate, std::vector<VerificationReport>,
                                   std::vector<ReliabilityEstimate>, ExportMetadata>;

struct RunReport {
    std::string tool_version{kcube::tool_version};
    std::string command;
    TorusParams params;
    ReportPayload payload;
    std::chrono::sys_seconds timestamp{};

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// The command name whose payload has the given alternative.
std::string_view command_for(const ReportPayload& payload);

std::string serialize_report(const RunReport& report);
/// Throws InvalidArgument on malformed documents, unknown schema versions or
/// a payload that does not match the command.
RunReport parse_report(std::string_view text);

std::string format_timestamp(std::chrono::sys_seconds t);
std::chrono::sys_seconds parse_timestamp(std::string_view text);

}  // namespace kcube
