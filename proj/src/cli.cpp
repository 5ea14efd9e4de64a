#include "kcube/cli.hpp"

#include "kcube/cuts.hpp"
#include "kcube/errors.hpp"
#include "kcube/export.hpp"
#include "kcube/reliability.hpp"
#include "kcube/report.hpp"
#include "kcube/solver.hpp"
#include "kcube/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace kcube {

namespace {

/// Raised for unwritable output paths; maps to the usage exit code.
class OutputError : public Error {
public:
    using Error::Error;
};

struct Common {
    std::uint32_t k = 3;
    std::uint32_t n = 0;
    unsigned workers = 1;
    std::string json_path;
};

struct KappaArgs {
    int h = 0;
    std::string method = "formula";
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> max_side;
};

struct VerifyArgs {
    std::string check = "all";
    std::string mode;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 42;
};

struct SimulateArgs {
    std::string faults;
    std::string condition = "none";
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 42;
    std::string csv_path;
};

struct ExportArgs {
    std::string format;
    std::string out = "-";
};

RunReport make_report(const TorusParams& params, ReportPayload payload)
{
    RunReport r;
    r.command = std::string(command_for(payload));
    r.params = params;
    r.payload = std::move(payload);
    r.timestamp = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    return r;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw OutputError("cannot open '" + path + "' for writing");
    f << content;
    f.close();
    if (!f) throw OutputError("failed writing '" + path + "'");
}

void emit_json(const Common& c, const RunReport& report)
{
    if (!c.json_path.empty()) write_file(c.json_path, serialize_report(report));
}

std::string join_labels(const Torus& t, const VertexSet& s)
{
    std::string out;
    for (auto v : s) {
        if (!out.empty()) out += ' ';
        out += t.label(v);
    }
    return out;
}

SearchMethod parse_kappa_method(const std::string& m)
{
    if (m == "formula") return SearchMethod::formula;
    if (m == "subsets") return SearchMethod::subset_oracle;
    if (m == "boundary") return SearchMethod::boundary_enum;
    if (m == "upper-bound") return SearchMethod::constructive_upper_bound;
    if (m == "flow") return SearchMethod::max_flow;
    throw InvalidArgument("unknown method '" + m + "'");
}

int cmd_kappa(const Common& c, const KappaArgs& a, std::ostream& out)
{
    const TorusParams params{c.k, c.n};
    params.validate();
    const auto method = parse_kappa_method(a.method);
    SearchConfig cfg;
    cfg.max_cut_size = a.budget;
    cfg.max_side_size = a.max_side;
    cfg.worker_count = c.workers;
    cfg.apply_environment_overrides();

    KappaCertificate cert;
    std::optional<Torus> torus;
    if (method == SearchMethod::formula) {
        cert = kappa_formula(params, a.h);
    } else {
        torus.emplace(params);
        switch (method) {
        case SearchMethod::subset_oracle:
            cert = kappa_subset_oracle(*torus, a.h, cfg);
            break;
        case SearchMethod::boundary_enum:
            cert = kappa_boundary_enum(*torus, a.h, cfg);
            break;
        case SearchMethod::constructive_upper_bound:
            cert = kappa_upper_bound(*torus, a.h);
            break;
        default:
            if (a.h != 0) throw InvalidArgument("--method flow computes classical connectivity and needs --h 0");
            cert = kappa_flow(*torus, cfg);
            break;
        }
    }

    out << "Q_" << params.n << "^" << params.k << "  h=" << a.h << "  method=" << to_string(cert.method) << "\n";
    if (cert.witness || cert.exhaustive) {
        out << "kappa_" << a.h << " = " << cert.value
            << (cert.exhaustive ? "  (exact)" : "  (upper bound)") << "\n";
    } else {
        out << "kappa_" << a.h << " >= " << cert.value << "  (no cut within the budget)\n";
    }
    if (cert.witness) {
        if (!torus) torus.emplace(params);
        const auto cls = classify_cut(*torus, *cert.witness);
        out << "witness (" << cert.witness->size() << "): " << join_labels(*torus, *cert.witness) << "\n";
        out << "components:";
        for (auto s : cls.component_sizes) out << ' ' << s;
        out << "  max_h=" << cls.max_h << "\n";
    }
    emit_json(c, make_report(params, cert));
    return exit_ok;
}

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out)
{
    const TorusParams params{c.k, c.n};
    params.validate();
    std::vector<CheckId> checks;
    if (a.check == "all") {
        checks = all_checks();
    } else {
        checks.push_back(check_id_from_string(a.check));
    }
    if (!a.mode.empty() && a.mode != "exhaustive" && a.mode != "sampled") {
        throw InvalidArgument("--mode must be exhaustive or sampled");
    }
    VerifyOptions opts;
    opts.worker_count = c.workers;
    const Torus torus(params);

    std::vector<VerificationReport> reports;
    bool failed = false;
    for (auto id : checks) {
        VerifyMode mode = default_mode(id, c.n, a.trials, a.seed);
        if (a.mode == "exhaustive") mode = VerifyMode::exhaustive();
        if (a.mode == "sampled") mode = VerifyMode::sampled(a.trials, a.seed);
        auto report = detail::run_check_on(torus, id, mode, opts);
        out << std::left << std::setw(18) << to_string(id) << ' ' << std::setw(5) << to_string(report.status);
        if (report.status == CheckStatus::skipped) {
            out << "  " << report.notice << "\n";
        } else {
            out << "  " << (mode.kind == VerifyMode::Kind::sampled ? "sampled" : "exhaustive")
                << "  cases=" << report.cases_checked << "  applicable=" << report.cases_applicable << "  "
                << std::fixed << std::setprecision(2) << report.elapsed.count() << "s\n";
            out.unsetf(std::ios::fixed);
        }
        if (report.counterexample) {
            out << "  counterexample: " << report.counterexample->reason << "\n";
            for (const auto& [name, set] : report.counterexample->sets) {
                out << "    " << name << " = {" << join_labels(torus, set) << "}\n";
            }
            failed = true;
        }
        reports.push_back(std::move(report));
    }
    emit_json(c, make_report(params, std::move(reports)));
    return failed ? exit_verification_failed : exit_ok;
}

std::pair<std::uint64_t, std::uint64_t> parse_fault_range(const std::string& text)
{
    auto number = [&](const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            throw InvalidArgument("--faults expects N or A:B, got '" + text + "'");
        }
        return std::stoull(s);
    };
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        const auto f = number(text);
        return {f, f};
    }
    return {number(text.substr(0, colon)), number(text.substr(colon + 1))};
}

std::string sweep_csv(const std::vector<ReliabilityEstimate>& rows)
{
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "fault_count,condition,trials,accepted,disconnected,point_estimate,wilson_low,wilson_high,condition_starved\n";
    for (const auto& r : rows) {
        csv << r.fault_count << ',' << to_string(r.condition) << ',' << r.trials << ',' << r.accepted << ','
            << r.disconnected << ',' << r.point_estimate << ',' << r.wilson.low << ',' << r.wilson.high << ','
            << (r.condition_starved ? "true" : "false") << '\n';
    }
    return csv.str();
}

int cmd_simulate(const Common& c, const SimulateArgs& a, std::ostream& out)
{
    const TorusParams params{c.k, c.n};
    params.validate();
    const auto [lo, hi] = parse_fault_range(a.faults);
    const auto condition = survivor_condition_from_string(a.condition);
    const Torus torus(params);

    std::vector<ReliabilityEstimate> rows;
    if (lo == hi) {
        rows.push_back(estimate_disconnection(torus, FaultModel{lo, condition, a.seed}, a.trials, c.workers));
    } else {
        rows = sweep_fault_sizes(torus, lo, hi, condition, a.trials, a.seed, c.workers);
    }

    out << "Q_" << params.n << "^" << params.k << "  condition=" << to_string(condition) << "  trials=" << a.trials
        << "  seed=" << a.seed << "\n";
    out << std::right << std::setw(6) << "faults" << std::setw(10) << "accepted" << std::setw(14) << "disconnected"
        << std::setw(12) << "estimate" << "  wilson95\n";
    for (const auto& r : rows) {
        out << std::setw(6) << r.fault_count;
        if (r.condition_starved) {
            out << std::setw(10) << 0 << "  condition starved\n";
            continue;
        }
        out << std::setw(10) << r.accepted << std::setw(14) << r.disconnected << std::setw(12) << std::setprecision(6)
            << r.point_estimate << "  [" << r.wilson.low << ", " << r.wilson.high << "]\n";
    }
    if (!a.csv_path.empty()) write_file(a.csv_path, sweep_csv(rows));
    emit_json(c, make_report(params, std::move(rows)));
    return exit_ok;
}

int cmd_export(const Common& c, const ExportArgs& a, std::ostream& out)
{
    const TorusParams params{c.k, c.n};
    params.validate();
    const auto format = export_format_from_string(a.format);
    const Torus torus(params);
    std::ostringstream text;
    write_graph(torus, format, text);
    if (a.out == "-") {
        out << text.str();
    } else {
        write_file(a.out, text.str());
    }
    emit_json(c, make_report(params, ExportMetadata{std::string(to_string(format)), a.out, params.vertex_count(),
                                                    params.edge_count()}));
    return exit_ok;
}

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--k", c.k, "radix")->capture_default_str();
    cmd->add_option("--n", c.n, "dimension count")->required();
    cmd->add_option("--workers", c.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--json", c.json_path, "write a machine-readable report to this path");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"h-extra connectivity of k-ary n-cubes", "kcube"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    Common common;
    KappaArgs kappa;
    VerifyArgs verify;
    SimulateArgs simulate;
    ExportArgs exp;

    auto* kappa_cmd = app.add_subcommand("kappa", "compute or bound the h-extra connectivity");
    kappa_cmd->set_help_flag("--help", "print this help message and exit");
    add_common(kappa_cmd, common);
    kappa_cmd->add_option("--h", kappa.h, "extra-connectivity order")->capture_default_str();
    kappa_cmd->add_option("--method", kappa.method, "formula | subsets | boundary | upper-bound | flow")
        ->capture_default_str();
    kappa_cmd->add_option("--budget", kappa.budget, "largest cut size to search");
    kappa_cmd->add_option("--max-side", kappa.max_side, "cap on enumerated component size (boundary)");

    auto* verify_cmd = app.add_subcommand("verify", "machine-check the structural lemmas and theorems");
    add_common(verify_cmd, common);
    verify_cmd->add_option("--check", verify.check, "check name or 'all'")->capture_default_str();
    verify_cmd->add_option("--mode", verify.mode, "exhaustive | sampled (default depends on the check)");
    verify_cmd->add_option("--trials", verify.trials, "sampled trials")->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed, "sampling seed")->capture_default_str();

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo disconnection under random vertex faults");
    add_common(sim_cmd, common);
    sim_cmd->add_option("--faults", simulate.faults, "fault count N or range A:B")->required();
    sim_cmd->add_option("--condition", simulate.condition, "none | no-isolated-vertex | no-isolated-vertex-or-edge")
        ->capture_default_str();
    sim_cmd->add_option("--trials", simulate.trials, "trials per fault count")->capture_default_str();
    sim_cmd->add_option("--seed", simulate.seed, "master seed")->capture_default_str();
    sim_cmd->add_option("--csv", simulate.csv_path, "write the table as CSV");

    auto* export_cmd = app.add_subcommand("export", "write the graph as an edge list or DOT");
    add_common(export_cmd, common);
    export_cmd->add_option("--format", exp.format, "dot | edgelist")->required();
    export_cmd->add_option("--out", exp.out, "output path, '-' for stdout")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (kappa_cmd->parsed()) return cmd_kappa(common, kappa, out);
        if (verify_cmd->parsed()) return cmd_verify(common, verify, out);
        if (sim_cmd->parsed()) return cmd_simulate(common, simulate, out);
        return cmd_export(common, exp, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "refused: " << e.what() << "\n";
        return exit_refused;
    }
}

}  // namespace kcube
