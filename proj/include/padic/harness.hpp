#pragma once

// Verification harness: run configuration, check records, reports and the
// commands behind the CLI. Commands return a Report; the CLI only parses
// arguments and renders.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padic/event.hpp"

namespace padic {

// Bad command line or parameters; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Text, Json };

struct RunConfig {
    std::vector<std::uint32_t> bases;   // empty: command default
    std::vector<std::size_t> horizons;  // empty: command default
    std::optional<std::size_t> k;
    std::optional<std::size_t> j;
    std::optional<std::size_t> l0;
    std::optional<std::size_t> J;
    std::uint64_t samples = 100000;
    std::optional<std::uint64_t> seed;
    unsigned cap = 20;                  // SupportCap::binary_digits
    std::uint64_t subgroup_bound = 16;
    std::uint64_t type_bound = 36;
    std::uint64_t patterns = 100;
    int parity = 0;
    bool monte_carlo = false;
    OutputFormat format = OutputFormat::Text;
    std::string out_path;
    bool timing = false;

    SupportCap support_cap() const { return SupportCap{cap}; }

    // Throws UsageError unless every bound is positive and in range.
    void validate() const;

    // key/value pairs echoed into reports, fixed order.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

enum class CheckStatus { Pass, Fail, Vacuous };

std::string_view to_string(CheckStatus s) noexcept;

struct CheckRecord {
    CheckRecord() = default;
    explicit CheckRecord(std::string check_name) : name(std::move(check_name)) {}

    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::vector<std::pair<std::string, std::string>> values;
    std::string witness;  // counterexample on failure, or a notable instance

    CheckRecord& value(std::string key, std::string v) {
        values.emplace_back(std::move(key), std::move(v));
        return *this;
    }
};

struct Report {
    std::string command;
    RunConfig config;
    std::vector<CheckRecord> checks;  // sorted by name
    std::int64_t duration_ms = 0;     // 0 unless config.timing

    bool failed() const noexcept;
    // 0 when nothing failed, 1 otherwise.
    int exit_code() const noexcept;
};

std::string render_json(const Report& report);
std::string render_text(const Report& report);
std::string render(const Report& report);

struct SuiteInfo {
    std::string_view name;
    std::vector<std::string_view> invariants;  // ids from invariant_catalog()
    bool stochastic;                           // needs --seed
};

// Every module invariant the harness can sweep, by id.
const std::vector<std::string_view>& invariant_catalog();
const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo* find_suite(std::string_view name);

// Checks of one suite, sorted by name. Throws UsageError for unknown
// suites or a missing seed on a stochastic suite.
std::vector<CheckRecord> run_suite(std::string_view suite, const RunConfig& config);

// "all" runs every registered suite.
Report cmd_verify(std::string_view suite, const RunConfig& config);
// what: block | hk | tail | rectangle. rectangle takes two event literals.
Report cmd_measure(std::string_view what, const RunConfig& config,
                   const std::vector<std::string>& events = {});
Report cmd_collapse(std::string_view window_literal, const RunConfig& config);
Report cmd_witness(std::string_view pattern_literal, const RunConfig& config);
// predicate: block | hk | true | false.
Report cmd_sample(std::string_view predicate, const RunConfig& config);

}  // namespace padic
