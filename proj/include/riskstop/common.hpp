#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace riskstop {

/// Vector of doubles; the workhorse container for weights, samples, cost
/// tables and value tables throughout the library.
using numvec = std::vector<double>;

namespace detail {

/// Throw std::invalid_argument when a precondition fails.
inline void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

}  // namespace detail

/// Deterministic random source. Wraps std::mt19937_64 but maps draws to
/// doubles by hand: the standard distributions are implementation-defined,
/// and reproducibility of seeded outputs is part of the CLI contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in {0, 1, ..., n-1}. Rejection-free modulo is fine
    /// here: n is always tiny compared to 2^64 so the bias is negligible
    /// and, more importantly, deterministic.
    std::size_t uniform_index(std::size_t n) {
        detail::require(n > 0, "uniform_index: n must be positive");
        return static_cast<std::size_t>(engine_() % n);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace riskstop
