// padic: command-line front end for the p-adic block-structure toolkit.
//
//   padic verify <suite>|all      invariant sweeps
//   padic measure <what> [C D]    exact measures (block, hk, tail, rectangle)
//   padic collapse <window>       the collapse map to Cantor space
//   padic witness <pattern>       build y, lift z, re-collapse
//   padic sample <predicate>      Monte Carlo estimate against the exact value
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or parameter error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "padic/errors.hpp"
#include "padic/harness.hpp"

namespace {

constexpr int kUsageError = 2;

int emit(const padic::Report& report) {
    const std::string text = padic::render(report);
    if (report.config.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(report.config.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << report.config.out_path << "\n";
            return kUsageError;
        }
        out << text;
    }
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic block structure, Haar measure and duality checks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file; explicit flags take precedence");

    padic::RunConfig cfg;
    std::string format = "text";
    std::vector<std::uint32_t> bases;
    std::vector<std::size_t> horizons;
    std::size_t k = 0, j = 0, l0 = 0, J = 0;
    std::uint64_t seed = 0;

    app.add_option("--base", bases, "digit base(s), at least 2")->delimiter(',');
    app.add_option("--horizon", horizons, "digit horizon(s)")->delimiter(',');
    auto* k_opt = app.add_option("--k", k, "block offset k (upper bound for verify monotone)");
    auto* j_opt = app.add_option("--j", j, "block index j");
    auto* l0_opt = app.add_option("--l0", l0, "first block index");
    auto* J_opt = app.add_option("--J", J, "end block index (exclusive)");
    auto* seed_opt = app.add_option("--seed", seed, "seed for every random draw");
    app.add_option("--samples", cfg.samples, "random cases / Monte Carlo samples");
    app.add_option("--cap", cfg.cap, "support cap: at most 2^cap residues per event");
    app.add_option("--bound", cfg.subgroup_bound, "group order bound for subgroup sweeps");
    app.add_option("--type-bound", cfg.type_bound, "group order bound for isomorphism-type sweeps");
    app.add_option("--patterns", cfg.patterns, "random witness patterns");
    app.add_option("--parity", cfg.parity, "parity class for witness (0 or 1)");
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", cfg.out_path, "write the report to this file");
    app.add_flag("--mc", cfg.monte_carlo, "add a Monte Carlo estimate to measure block");
    app.add_flag("--timing", cfg.timing, "record wall-clock duration (reports stop being byte-stable)");

    std::string suite, what, literal, predicate;
    std::vector<std::string> events;
    auto* verify = app.add_subcommand("verify", "run an invariant suite, or all");
    verify->add_option("suite", suite, "arithmetic | carry-lemma | closure | negation | monotone | "
                                       "witness | duality | haar | all")->required();
    auto* measure = app.add_subcommand("measure", "exact measure of block, hk, tail or rectangle");
    measure->add_option("what", what)->required();
    measure->add_option("events", events, "two event literals for rectangle");
    auto* collapse = app.add_subcommand("collapse", "apply the collapse map to a window literal");
    collapse->add_option("window", literal, "p=<base>:<d0>,<d1>,...")->required();
    auto* witness = app.add_subcommand("witness", "run the witness pipeline on a pattern");
    witness->add_option("pattern", literal, "cuts=<n0,n1,...>;ref=<bits>")->required();
    auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of a predicate");
    sample->add_option("predicate", predicate, "block | hk | true | false")->required();
    for (auto* sub : {verify, measure, collapse, witness, sample}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    cfg.bases = bases;
    cfg.horizons = horizons;
    if (*k_opt) cfg.k = k;
    if (*j_opt) cfg.j = j;
    if (*l0_opt) cfg.l0 = l0;
    if (*J_opt) cfg.J = J;
    if (*seed_opt) cfg.seed = seed;
    cfg.format = format == "json" ? padic::OutputFormat::Json : padic::OutputFormat::Text;

    try {
        if (*verify) return emit(padic::cmd_verify(suite, cfg));
        if (*measure) return emit(padic::cmd_measure(what, cfg, events));
        if (*collapse) return emit(padic::cmd_collapse(literal, cfg));
        if (*witness) return emit(padic::cmd_witness(literal, cfg));
        if (*sample) return emit(padic::cmd_sample(predicate, cfg));
    } catch (const padic::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const padic::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsageError;
    } catch (const padic::ContractViolation& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kUsageError;
    } catch (const padic::CapacityError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
