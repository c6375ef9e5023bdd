#pragma once

#include "lalg/poly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace lalg {

/// Deterministic RNG. Draws go through explicit modulo so results do not
/// depend on the standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Stream for trial `index` derived from a base seed; (seed, index)
    /// pairs give independent reproducible streams.
    static Rng derived(std::uint64_t seed, std::uint64_t index)
    {
        return Rng(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    }

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

    /// Uniform integer in [lo, hi].
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    /// Coefficient draw per the identity-testing convention: numerator
    /// uniform in {-3..3}, denominator uniform in {1..3}.
    Rat coeff()
    {
        long num = range(-3, 3);
        long den = range(1, 3);
        return Rat(num, den);
    }

  private:
    std::mt19937_64 eng_;
};

/// All monomials over `vars` of total degree <= deg, in a fixed order.
std::vector<Monomial> monomials_up_to(const std::vector<VarId>& vars, int deg);

/// Random polynomial of total degree <= deg with coeff() coefficients
/// (zero numerators keep it sparse).
Poly random_poly(Rng& rng, const std::vector<VarId>& vars, int deg);

} // namespace lalg
