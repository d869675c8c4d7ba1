#pragma once

#include <map>
#include <vector>

#include "ibvp3/wellposed.hpp"

namespace ibvp3 {

/// Real parts of the series exponents -a sigma_k^3 t over the indexed zeros
/// (origin excluded, sorted by modulus, indexed from 1). bounded_above uses
/// the same monotone finite-sample test as the zero-location bound; the two
/// agree for every spec and direction at t > 0.
struct GrowthProfile {
    Direction a = Direction::plus_i;
    double t = 0.0;
    std::vector<std::pair<int, double>> entries; // (k, Re(-a sigma_k^3) t)
    bool bounded_above = true;
};

GrowthProfile growth_profile(const std::vector<ZeroRecord>& zeros, Direction a,
                             double t, const AnalysisConfig& cfg = {});

/// True when the residue series of the solution blows up for every positive
/// time in the spec's own direction (t = 1 decides: exponents scale
/// linearly in t). Equals the negation of the zero-location bound for that
/// direction.
bool divergence_check(const ProblemSpec& spec, const AnalysisConfig& cfg = {});

/// Externally supplied series coefficients, keyed by the modulus-sorted
/// zero index.
using SeriesCoefficients = std::map<int, Complex>;

struct TruncatedSum {
    Complex value{0.0, 0.0};
    std::vector<std::string> diagnostics; // boundary-tie notes (Im sigma = 0)
};

/// Partial sum of the residue series with injected coefficients: zeros with
/// Im sigma > 0 contribute exp(i sigma x), zeros with Im sigma < 0
/// contribute exp(i sigma (x-1)), both with time factor exp(-a sigma^3 t).
/// A zero exactly on the real axis joins the upper set and is surfaced as a
/// diagnostic. Terms are added in ascending index order.
TruncatedSum evaluate_truncated(const std::vector<ZeroRecord>& zeros,
                                const SeriesCoefficients& coeffs, Direction a,
                                double x, double t, int truncation);

} // namespace ibvp3
