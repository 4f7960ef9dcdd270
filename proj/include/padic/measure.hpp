#pragma once

// Exact Haar-measure values on Δ_p (normalized to total mass 1) for
// cylinder events and the block events behind the nullness of H_k, plus
// a seeded Monte Carlo estimator used as a stochastic cross-check.

#include <cstddef>
#include <cstdint>
#include <functional>

#include "padic/event.hpp"
#include "padic/rational.hpp"
#include "padic/window.hpp"

namespace padic {

// |residues| / base^n.
MeasureValue measure(const CylinderEvent& e);

// Prefixes of length (j+1)^2 that are constant 0 or constant base-1 on
// I^k_j. Throws on an empty block.
CylinderEvent block_constancy_event(std::uint32_t base, std::size_t k, std::size_t j,
                                    SupportCap cap = {});

// 2 / base^(2j+1-k).
MeasureValue block_constancy_measure(std::uint32_t base, std::size_t k, std::size_t j);

// Measure of "every block I^k_j, first_block <= j < end_block, is good":
// the product of the block measures, since the blocks are disjoint.
// This exact product goes beyond the union bound; reports label it
// "derived".
MeasureValue hk_truncation_measure(std::uint32_t base, std::size_t k, std::size_t first_block,
                                   std::size_t end_block);

// sum_{j >= first_block} 2 / base^(2j+1-k) = 2 base^(k+1-2 first_block) / (base^2 - 1).
// Requires 2 first_block + 1 > k.
MeasureValue tail_bound(std::uint32_t base, std::size_t k, std::size_t first_block);

// Finite partial sum of the same series over first_block <= j < end_block.
MeasureValue tail_partial_sum(std::uint32_t base, std::size_t k, std::size_t first_block,
                              std::size_t end_block);

// mu x mu of the rectangle C x D.
MeasureValue product_rectangle_measure(const CylinderEvent& c, const CylinderEvent& d);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
};

using WindowPredicate = std::function<bool(const PAdicWindow&)>;

// Draws `samples` windows of `horizon` independent uniform digits from a
// generator seeded with `seed`, and reports the hit frequency with its
// binomial standard error.
MonteCarloEstimate monte_carlo(std::uint32_t base, const WindowPredicate& predicate,
                               std::size_t horizon, std::uint64_t samples, std::uint64_t seed);

// sqrt(q (1 - q) / samples) for an exact probability q.
double binomial_sigma(const MeasureValue& q, std::uint64_t samples);

}  // namespace padic
