#pragma once

// Machine checks of the structural lemmas and conditional-connectivity
// statements for 3-ary n-cubes, run exhaustively or by seeded sampling.
//
// Each check is a case loop: a case either passes or yields a counterexample
// made of named vertex sets that recheck_counterexample() can re-validate
// from the torus and cut primitives alone.

#include "kcube/torus.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kcube {

enum class CheckId {
    common_neighbors,     ///< adjacent pairs share 1 neighbor, distance-2 pairs share 2
    closed_neighborhood,  ///< Q - A(x) is connected
    edge_cut,             ///< N(u, v) is a 1-extra cut of size 4n - 3
    path_cut,             ///< N(u, v, w) is a 2-extra cut of size 6n - 7
    theorem1,             ///< |S| <= 4n - 4, no isolated vertex => connected
    theorem2,             ///< |S| <= 6n - 8, no isolated vertex or edge => connected
};

std::string_view to_string(CheckId id);
CheckId check_id_from_string(std::string_view text);
const std::vector<CheckId>& all_checks();

struct VerifyMode {
    enum class Kind { exhaustive, sampled };
    Kind kind = Kind::exhaustive;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    static VerifyMode exhaustive() { return {}; }
    static VerifyMode sampled(std::uint64_t trials, std::uint64_t seed) { return {Kind::sampled, trials, seed}; }

    friend bool operator==(const VerifyMode&, const VerifyMode&) = default;
};

enum class CheckStatus { passed, failed, skipped };
std::string_view to_string(CheckStatus s);
CheckStatus check_status_from_string(std::string_view text);

struct Counterexample {
    std::string reason;
    std::vector<std::pair<std::string, VertexSet>> sets;

    const VertexSet* find(std::string_view name) const;
    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct VerificationReport {
    CheckId check = CheckId::common_neighbors;
    TorusParams params;
    VerifyMode mode;
    std::uint64_t cases_checked = 0;
    /// Cases meeting the premise (e.g. no isolated survivor); equals
    /// cases_checked for checks without a premise.
    std::uint64_t cases_applicable = 0;
    CheckStatus status = CheckStatus::passed;
    std::optional<Counterexample> counterexample;
    /// Explanation for skipped checks and sampling notes.
    std::string notice;
    std::chrono::duration<double> elapsed{0};

    bool passed() const { return status == CheckStatus::passed; }
    /// Equality on everything except wall-clock time.
    bool same_outcome(const VerificationReport& other) const;
    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct VerifyOptions {
    unsigned worker_count = 1;
    /// Exhaustive runs refuse (SearchRefused) above this many cases.
    std::uint64_t exhaustive_ceiling = 100'000'000;
};

VerificationReport verify_common_neighbors(std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts = {});
VerificationReport verify_closed_neighborhood_connected(std::uint32_t n, const VerifyMode& mode,
                                                        const VerifyOptions& opts = {});
VerificationReport verify_edge_cut_lemma(std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts = {});
VerificationReport verify_path_cut_lemma(std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts = {});
VerificationReport verify_theorem1_conditional(std::uint32_t n, const VerifyMode& mode,
                                               const VerifyOptions& opts = {});
VerificationReport verify_theorem2_conditional(std::uint32_t n, const VerifyMode& mode,
                                               const VerifyOptions& opts = {});

VerificationReport run_check(CheckId id, std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts = {});

/// The mode a check uses when none is requested: exhaustive for the lemma
/// checks and for theorem1 at n = 2, otherwise sampled.
VerifyMode default_mode(CheckId id, std::uint32_t n, std::uint64_t trials, std::uint64_t seed);

/// Number of cases an exhaustive run of `id` visits on Q_n^3.
std::uint64_t exhaustive_case_count(CheckId id, std::uint32_t n);

/// Re-validates a failing report's counterexample with torus and cut
/// primitives only. True iff it is a genuine violation of the check.
bool recheck_counterexample(const VerificationReport& report);

namespace detail {

/// Runs a check on any radix. The public entry points fix k = 3; other radices
/// exist to exercise the counterexample path, where the lemmas do fail.
VerificationReport run_check_on(const Torus& torus, CheckId id, const VerifyMode& mode, const VerifyOptions& opts);

}  // namespace detail

}  // namespace kcube
