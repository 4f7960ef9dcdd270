#include "padic/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "padic/blocks.hpp"
#include "padic/errors.hpp"
#include "padic/measure.hpp"
#include "padic/window.hpp"

namespace padic {

void RunConfig::validate() const {
    for (auto b : bases) {
        if (b < 2) throw UsageError("--base must be at least 2");
    }
    if (samples < 1) throw UsageError("--samples must be positive");
    if (cap < 1 || cap > 40) throw UsageError("--cap must lie in [1, 40]");
    if (subgroup_bound < 1 || type_bound < 1) throw UsageError("order bounds must be positive");
    if (patterns < 1) throw UsageError("--patterns must be positive");
    if (parity != 0 && parity != 1) throw UsageError("--parity must be 0 or 1");
}

namespace {

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

std::string approx(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    if (!bases.empty()) out.emplace_back("base", join(bases));
    if (!horizons.empty()) out.emplace_back("horizon", join(horizons));
    if (k) out.emplace_back("k", std::to_string(*k));
    if (j) out.emplace_back("j", std::to_string(*j));
    if (l0) out.emplace_back("l0", std::to_string(*l0));
    if (J) out.emplace_back("J", std::to_string(*J));
    out.emplace_back("samples", std::to_string(samples));
    out.emplace_back("seed", seed ? std::to_string(*seed) : "none");
    out.emplace_back("cap", std::to_string(cap));
    out.emplace_back("subgroup_bound", std::to_string(subgroup_bound));
    out.emplace_back("type_bound", std::to_string(type_bound));
    out.emplace_back("patterns", std::to_string(patterns));
    out.emplace_back("parity", std::to_string(parity));
    out.emplace_back("format", format == OutputFormat::Json ? "json" : "text");
    return out;
}

std::string_view to_string(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Vacuous: return "vacuous";
    }
    return "?";
}

bool Report::failed() const noexcept {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.status == CheckStatus::Fail; });
}

int Report::exit_code() const noexcept { return failed() ? 1 : 0; }

std::string render_json(const Report& report) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["schema"] = "1";
    doc["command"] = report.command;
    ordered_json config = ordered_json::object();
    for (const auto& [k, v] : report.config.echo()) config[k] = v;
    doc["config"] = config;
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json values = ordered_json::object();
        for (const auto& [k, v] : c.values) values[k] = v;
        checks.push_back({{"name", c.name},
                          {"status", std::string(to_string(c.status))},
                          {"values", values},
                          {"witness", c.witness}});
    }
    doc["checks"] = checks;
    doc["duration_ms"] = report.duration_ms;
    return doc.dump(2) + "\n";
}

std::string render_text(const Report& report) {
    std::ostringstream out;
    out << "command: " << report.command << "\n";
    out << "config:";
    for (const auto& [k, v] : report.config.echo()) out << " " << k << "=" << v;
    out << "\n";
    for (const auto& c : report.checks) {
        out << "[" << to_string(c.status) << "] " << c.name << "\n";
        for (const auto& [k, v] : c.values) out << "    " << k << " = " << v << "\n";
        if (!c.witness.empty()) out << "    witness: " << c.witness << "\n";
    }
    const auto failures = std::count_if(report.checks.begin(), report.checks.end(),
                                        [](const CheckRecord& c) { return c.status == CheckStatus::Fail; });
    out << "summary: " << report.checks.size() << " checks, " << failures << " failed";
    if (report.config.timing) out << ", " << report.duration_ms << " ms";
    out << "\n";
    return out.str();
}

std::string render(const Report& report) {
    return report.config.format == OutputFormat::Json ? render_json(report) : render_text(report);
}

namespace {

using Clock = std::chrono::steady_clock;

Report start(std::string command, const RunConfig& config) {
    config.validate();
    Report r;
    r.command = std::move(command);
    r.config = config;
    return r;
}

void finish(Report& r, Clock::time_point t0) {
    std::stable_sort(r.checks.begin(), r.checks.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    if (r.config.timing) {
        r.duration_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    }
}

template <typename T>
T need(const std::optional<T>& v, const char* flag, std::string_view command) {
    if (!v) throw UsageError(std::string(command) + " requires " + flag);
    return *v;
}

std::uint32_t single_base(const RunConfig& c) {
    if (c.bases.size() > 1) throw UsageError("this command takes a single --base");
    return c.bases.empty() ? 2 : c.bases.front();
}

// Runs f, turning contract violations into parameter errors.
template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const ContractViolation& e) {
        throw UsageError(std::string("parameter error: ") + e.what());
    } catch (const CapacityError& e) {
        throw UsageError(std::string("parameter error: ") + e.what());
    }
}

void add_monte_carlo(CheckRecord& rec, const MonteCarloEstimate& mc, const MeasureValue& exact) {
    rec.value("mc_estimate", approx(mc.estimate))
        .value("mc_standard_error", approx(mc.standard_error))
        .value("mc_samples", std::to_string(mc.samples));
    const double sigma = binomial_sigma(exact, mc.samples);
    const double diff = mc.estimate - exact.convert_to<double>();
    const double z = sigma > 0 ? diff / sigma : (diff == 0 ? 0.0 : INFINITY);
    rec.value("mc_z", approx(z));
    if (std::abs(z) > 4.0) rec.status = CheckStatus::Fail;
}

}  // namespace

Report cmd_verify(std::string_view suite, const RunConfig& config) {
    const auto t0 = Clock::now();
    Report r = start("verify " + std::string(suite), config);
    if (suite == "all") {
        for (const auto& info : suite_registry()) {
            auto checks = run_suite(info.name, config);
            r.checks.insert(r.checks.end(), checks.begin(), checks.end());
        }
    } else {
        r.checks = run_suite(suite, config);
    }
    finish(r, t0);
    return r;
}

Report cmd_measure(std::string_view what, const RunConfig& config,
                   const std::vector<std::string>& events) {
    const auto t0 = Clock::now();
    Report r = start("measure " + std::string(what), config);
    const SupportCap cap = config.support_cap();
    guarded([&] {
        if (what == "block") {
            const auto base = single_base(config);
            const auto k = need(config.k, "--k", "measure block");
            const auto j = need(config.j, "--j", "measure block");
            const auto exact = block_constancy_measure(base, k, j);
            CheckRecord rec{"measure.block"};
            rec.value("exact", fraction_string(exact)).value("decimal", decimal_string(exact));
            if (cap.admits(base, (j + 1) * (j + 1))) {
                const auto counted = measure(block_constancy_event(base, k, j, cap));
                rec.value("event_count", fraction_string(counted));
                if (counted != exact) rec.status = CheckStatus::Fail;
            } else {
                rec.value("event_count", "skipped (support cap)");
            }
            if (config.monte_carlo) {
                const auto seed = need(config.seed, "--seed", "measure block --mc");
                const auto mc = monte_carlo(
                    base, [&](const PAdicWindow& x) { return is_good_block(x, k, j); },
                    (j + 1) * (j + 1), config.samples, seed);
                add_monte_carlo(rec, mc, exact);
            }
            r.checks.push_back(std::move(rec));
        } else if (what == "hk") {
            const auto base = single_base(config);
            const auto k = config.k.value_or(0);
            const auto l0 = need(config.l0, "--l0", "measure hk");
            const auto J = need(config.J, "--J", "measure hk");
            const auto exact = hk_truncation_measure(base, k, l0, J);
            CheckRecord rec{"measure.hk"};
            rec.value("exact", fraction_string(exact))
                .value("decimal", decimal_string(exact))
                .value("basis", "derived: product over disjoint blocks");
            if (J > l0 && cap.admits(base, J * J)) {
                std::vector<CylinderEvent> family;
                for (std::size_t j = l0; j < J; ++j) family.push_back(block_constancy_event(base, k, j, cap));
                const auto counted = measure(event_intersection(family, cap));
                rec.value("event_count", fraction_string(counted));
                if (counted != exact) rec.status = CheckStatus::Fail;
            }
            r.checks.push_back(std::move(rec));
        } else if (what == "tail") {
            const auto base = single_base(config);
            const auto k = config.k.value_or(0);
            const auto l0 = need(config.l0, "--l0", "measure tail");
            const auto exact = tail_bound(base, k, l0);
            const auto partial = tail_partial_sum(base, k, l0, l0 + 100);
            const auto rebuilt = partial + tail_bound(base, k, l0 + 100);
            CheckRecord rec{"measure.tail"};
            rec.value("exact", fraction_string(exact))
                .value("decimal", decimal_string(exact))
                .value("partial_sum_100", decimal_string(partial));
            if (rebuilt != exact) rec.status = CheckStatus::Fail;
            r.checks.push_back(std::move(rec));
        } else if (what == "rectangle") {
            if (events.size() != 2) throw UsageError("measure rectangle takes two event literals");
            const auto c = parse_event(events[0], cap);
            const auto d = parse_event(events[1], cap);
            const auto exact = product_rectangle_measure(c, d);
            CheckRecord rec{"measure.rectangle"};
            rec.value("exact", fraction_string(exact))
                .value("decimal", decimal_string(exact))
                .value("mu(C)", fraction_string(measure(c)))
                .value("mu(D)", fraction_string(measure(d)))
                .value("non_null", exact > 0 ? "true" : "false");
            if ((exact > 0) != (measure(c) > 0 && measure(d) > 0)) rec.status = CheckStatus::Fail;
            r.checks.push_back(std::move(rec));
        } else {
            throw UsageError("unknown measure target '" + std::string(what) +
                             "' (expected block, hk, tail or rectangle)");
        }
        return 0;
    });
    finish(r, t0);
    return r;
}

Report cmd_collapse(std::string_view window_literal, const RunConfig& config) {
    const auto t0 = Clock::now();
    Report r = start("collapse " + std::string(window_literal), config);
    const auto x = parse_window(window_literal);
    const auto word = guarded([&] { return collapse(x); });
    CheckRecord rec{"collapse"};
    rec.value("input", format_window(x)).value("f(x)", format_word(word));
    const auto v = hk_verdict(x, 0, 0);
    rec.value("good_blocks", join(v.good_set));
    r.checks.push_back(std::move(rec));
    finish(r, t0);
    return r;
}

Report cmd_witness(std::string_view pattern_literal, const RunConfig& config) {
    const auto t0 = Clock::now();
    Report r = start("witness " + std::string(pattern_literal), config);
    const auto w = parse_pattern(pattern_literal);
    const auto base = single_base(config);
    const auto y = build_y(w, config.parity);
    const auto z = lift_z(y, base);
    const auto split = parity_split(w);
    const auto& chosen = config.parity == 0 ? split.even : split.odd;

    CheckRecord rec{"witness.pipeline"};
    rec.value("pattern", format_pattern(w))
        .value("parity", std::to_string(config.parity))
        .value("y", format_word(y))
        .value("z", format_window(z))
        .value("matches", std::to_string(witness_match_count(y, w)) + "/" +
                              std::to_string(w.interval_count()));
    bool ok = true;
    if (!y.size()) {
        rec.value("f(z)", "");
    } else {
        const auto fz = collapse(z);
        rec.value("f(z)", format_word(fz));
        ok = fz == y;
        const auto v = hk_verdict(z, 0, 0);
        rec.value("good_blocks", join(v.good_set));
        for (auto j : chosen) {
            if (!std::binary_search(v.good_set.begin(), v.good_set.end(), j) ||
                block_class(z, *block_interval(0, j)) != BlockClass::AllZero) {
                ok = false;
                rec.witness = "collapse index " + std::to_string(j) + " in the chosen class is not all-zero";
            }
        }
    }
    rec.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    r.checks.push_back(std::move(rec));
    finish(r, t0);
    return r;
}

Report cmd_sample(std::string_view predicate, const RunConfig& config) {
    const auto t0 = Clock::now();
    Report r = start("sample " + std::string(predicate), config);
    const auto seed = need(config.seed, "--seed", "sample");
    const auto base = single_base(config);
    CheckRecord rec{"sample." + std::string(predicate)};
    guarded([&] {
        if (predicate == "block") {
            const auto k = need(config.k, "--k", "sample block");
            const auto j = need(config.j, "--j", "sample block");
            const auto exact = block_constancy_measure(base, k, j);
            const auto mc = monte_carlo(
                base, [&](const PAdicWindow& x) { return is_good_block(x, k, j); }, (j + 1) * (j + 1),
                config.samples, seed);
            rec.value("exact", fraction_string(exact));
            add_monte_carlo(rec, mc, exact);
        } else if (predicate == "hk") {
            const auto k = config.k.value_or(0);
            const auto l0 = need(config.l0, "--l0", "sample hk");
            const auto J = need(config.J, "--J", "sample hk");
            const auto exact = hk_truncation_measure(base, k, l0, J);
            const auto mc = monte_carlo(
                base,
                [&](const PAdicWindow& x) {
                    for (std::size_t j = l0; j < J; ++j) {
                        if (!is_good_block(x, k, j)) return false;
                    }
                    return true;
                },
                J * J, config.samples, seed);
            rec.value("exact", fraction_string(exact));
            add_monte_carlo(rec, mc, exact);
        } else if (predicate == "true" || predicate == "false") {
            const bool value = predicate == "true";
            const std::size_t horizon = config.horizons.empty() ? 1 : config.horizons.front();
            const auto mc = monte_carlo(base, [value](const PAdicWindow&) { return value; }, horizon,
                                        config.samples, seed);
            const MeasureValue exact = value ? 1 : 0;
            rec.value("exact", fraction_string(exact));
            add_monte_carlo(rec, mc, exact);
        } else {
            throw UsageError("unknown predicate '" + std::string(predicate) +
                             "' (expected block, hk, true or false)");
        }
        return 0;
    });
    r.checks.push_back(std::move(rec));
    finish(r, t0);
    return r;
}

}  // namespace padic
