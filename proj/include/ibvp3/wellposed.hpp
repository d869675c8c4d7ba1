#pragma once

#include <utility>
#include <vector>

#include "ibvp3/zeros.hpp"

namespace ibvp3 {

/// Six-way classification of a problem. IVa/IVb/IVc split form IV by |Y|
/// below / at / above 1.
enum class ClassLabel { I, II, III, IVa, IVb, IVc };

std::string class_name(ClassLabel c);

/// Per-direction well-posedness breakdown: a problem is well-posed for a
/// direction exactly when it is conditioned for it and its zeros satisfy
/// the location bound for it.
struct Verdict {
    bool conditioned_plus = false;
    bool conditioned_minus = false;
    bool bound_plus = false;
    bool bound_minus = false;
    bool wellposed_plus = false;
    bool wellposed_minus = false;
};

/// Growth verdict for the boundary-to-determinant ratio along one of the
/// six sectors of opening pi/3 that partition the plane.
struct SectorGrowth {
    double theta_lo = 0;
    double theta_hi = 0;
    bool decays = false;
};

/// Thresholds of the finite-sample zero-location test, exposed for
/// configuration. The test accepts when k^2 d_k is non-increasing from
/// mono_from_k on, or when every d_k with k >= small_from_k stays below
/// small_dk (distances that decay exponentially pass, constant positive
/// distances fail).
struct BoundTestConfig {
    int mono_from_k = 3;
    double small_dk = 1e-6;
    int small_from_k = 5;
};

struct AnalysisConfig {
    int k_depth = 12;            // zeros per family used by verdicts
    ZeroSearchOptions search;
    BoundTestConfig bound;
    double growth_entry_floor = 1e-6; // positive-part floor of the growth test
};

/// Conditioning by form (first: direction +i, second: -i):
/// I -> neither, II -> +i only, III -> -i only, IV -> both.
std::pair<bool, bool> conditioning(const CanonicalForm& cf);

/// Class label from the canonical form.
ClassLabel classify(const CanonicalForm& cf);

/// Distance from sigma to the time-decay region {rho : Re(a rho^3) >= 0},
/// a closed union of three sectors of opening pi/3.
double distance_to_decay_region(Complex sigma, Direction a);

/// Finite-sample test of the zero-location bound: distances from the
/// indexed zeros (sorted by modulus, origin excluded) to the time-decay
/// region must vanish at the k^-2 rate. Needs at least 5 zeros.
bool zero_bound_check(const std::vector<ZeroRecord>& zeros, Direction a,
                      const BoundTestConfig& cfg = {});

/// Numerical audit of conditioning: along the mid-ray of each sector,
/// compares the dominant boundary-term exponential envelope against the
/// bracket at increasing radii (jittering the ray off zero lines) and
/// reports whether the ratio decays. samples >= 8 radii per ray.
std::vector<SectorGrowth> sector_growth_audit(const CanonicalForm& cf,
                                              int samples = 10);

/// Conditioning read off an audit: decay on all three sectors that make up
/// the growth region of each direction.
std::pair<bool, bool> audit_conditioning(const std::vector<SectorGrowth>& audit);

/// Verdict from precomputed zeros (form I passes the bound vacuously).
Verdict verdict_from_parts(const CanonicalForm& cf,
                           const std::vector<ZeroRecord>& zeros,
                           const BoundTestConfig& cfg = {});

/// Full pipeline: canonical form, refined zeros, conditioning and bound
/// checks for both directions.
Verdict verdict(const ProblemSpec& spec, const AnalysisConfig& cfg = {});

} // namespace ibvp3
