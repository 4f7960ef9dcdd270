#include "padic/measure.hpp"

#include <cmath>
#include <random>

#include "padic/blocks.hpp"
#include "padic/errors.hpp"

namespace padic {

MeasureValue measure(const CylinderEvent& e) {
    return MeasureValue(BigInt(e.count()), BigInt(e.cell_count()));
}

CylinderEvent block_constancy_event(std::uint32_t base, std::size_t k, std::size_t j,
                                    SupportCap cap) {
    const auto block = block_interval(k, j);
    require(block.has_value(), "block_constancy_event: block I^k_j is empty");
    CylinderEvent e(base, block->end, cap);
    // Low digits [0, begin) are free; the block digits are all 0 or all
    // base-1; nothing lies above the block.
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < block->begin; ++i) stride *= base;
    std::uint64_t top_pattern = 0;
    std::uint64_t place = stride;
    for (std::size_t i = block->begin; i < block->end; ++i) {
        top_pattern += place * (base - 1);
        place *= base;
    }
    for (std::uint64_t low = 0; low < stride; ++low) {
        e.insert(low);
        e.insert(low + top_pattern);
    }
    return e;
}

MeasureValue block_constancy_measure(std::uint32_t base, std::size_t k, std::size_t j) {
    const auto block = block_interval(k, j);
    require(block.has_value(), "block_constancy_measure: block I^k_j is empty");
    require(base >= 2, "block_constancy_measure: base must be at least 2");
    return MeasureValue(2) * pow_rational(base, -static_cast<std::int64_t>(2 * j + 1 - k));
}

MeasureValue hk_truncation_measure(std::uint32_t base, std::size_t k, std::size_t first_block,
                                   std::size_t end_block) {
    MeasureValue product = 1;
    for (std::size_t j = first_block; j < end_block; ++j) {
        if (!block_interval(k, j)) {
            throw ContractViolation("hk_truncation_measure: block I^" + std::to_string(k) + "_" +
                                    std::to_string(j) + " is empty");
        }
        product *= block_constancy_measure(base, k, j);
    }
    return product;
}

MeasureValue tail_bound(std::uint32_t base, std::size_t k, std::size_t first_block) {
    require(base >= 2, "tail_bound: base must be at least 2");
    require(2 * first_block + 1 > k, "tail_bound: need 2*l0 + 1 > k so every block is nonempty");
    const auto exponent = static_cast<std::int64_t>(k + 1) - 2 * static_cast<std::int64_t>(first_block);
    const BigInt b(base);
    return MeasureValue(2) * pow_rational(base, exponent) / MeasureValue(b * b - 1);
}

MeasureValue tail_partial_sum(std::uint32_t base, std::size_t k, std::size_t first_block,
                              std::size_t end_block) {
    MeasureValue sum = 0;
    for (std::size_t j = first_block; j < end_block; ++j) sum += block_constancy_measure(base, k, j);
    return sum;
}

MeasureValue product_rectangle_measure(const CylinderEvent& c, const CylinderEvent& d) {
    require(c.base() == d.base(), "product_rectangle_measure: bases differ");
    return measure(c) * measure(d);
}

MonteCarloEstimate monte_carlo(std::uint32_t base, const WindowPredicate& predicate,
                               std::size_t horizon, std::uint64_t samples, std::uint64_t seed) {
    require(samples >= 1, "monte_carlo: need at least one sample");
    require(base >= 2, "monte_carlo: base must be at least 2");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Digit> digit(0, base - 1);
    std::vector<Digit> digits(horizon);
    MonteCarloEstimate out;
    out.samples = samples;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& d : digits) d = digit(rng);
        if (predicate(PAdicWindow(base, digits))) ++out.hits;
    }
    const double n = static_cast<double>(samples);
    out.estimate = static_cast<double>(out.hits) / n;
    out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
    return out;
}

double binomial_sigma(const MeasureValue& q, std::uint64_t samples) {
    const double v = q.convert_to<double>();
    return std::sqrt(v * (1.0 - v) / static_cast<double>(samples));
}

}  // namespace padic
