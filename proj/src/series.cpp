#include "ibvp3/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ibvp3 {

namespace {

std::vector<ZeroRecord> indexed_zeros(const std::vector<ZeroRecord>& zeros) {
    std::vector<ZeroRecord> out;
    for (const auto& z : zeros)
        if (!z.at_origin) out.push_back(z);
    std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
        const double ma = std::abs(a.value), mb = std::abs(b.value);
        if (ma != mb) return ma < mb;
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

} // namespace

GrowthProfile growth_profile(const std::vector<ZeroRecord>& zeros, Direction a,
                             double t, const AnalysisConfig& cfg) {
    if (t < 0) throw ValidationError("growth_profile requires t >= 0");
    GrowthProfile profile;
    profile.a = a;
    profile.t = t;

    const Complex av = direction_value(a);
    std::vector<double> positive_parts;
    int k = 0;
    for (const auto& z : indexed_zeros(zeros)) {
        ++k;
        const double e = (-av * z.value * z.value * z.value).real() * t;
        profile.entries.emplace_back(k, e);
        positive_parts.push_back(std::max(e, 0.0));
    }

    // Same shape as the zero-location test: the positive parts must be
    // non-increasing past the settling index, or uniformly negligible.
    const int n = static_cast<int>(positive_parts.size());
    bool mono = true;
    for (int i = cfg.bound.mono_from_k; i < n; ++i) {
        if (positive_parts[i] >
            positive_parts[i - 1] * (1 + 1e-9) + 1e-12) {
            mono = false;
            break;
        }
    }
    bool small = n >= cfg.bound.small_from_k;
    const double floor = cfg.growth_entry_floor * (1.0 + std::abs(t));
    for (int i = cfg.bound.small_from_k - 1; i < n && small; ++i)
        if (positive_parts[i] >= floor) small = false;
    profile.bounded_above = n == 0 || mono || small;
    return profile;
}

bool divergence_check(const ProblemSpec& spec, const AnalysisConfig& cfg) {
    const CanonicalForm cf = canonical_form(spec);
    if (cf.form() == Form::I) return false; // no residue series at all
    const auto zeros = family_zeros(cf, cfg.k_depth, cfg.search);
    return !growth_profile(zeros, spec.direction, 1.0, cfg).bounded_above;
}

TruncatedSum evaluate_truncated(const std::vector<ZeroRecord>& zeros,
                                const SeriesCoefficients& coeffs, Direction a,
                                double x, double t, int truncation) {
    if (x < 0.0 || x > 1.0)
        throw ValidationError("evaluate_truncated requires x in [0, 1]");
    if (t < 0.0) throw ValidationError("evaluate_truncated requires t >= 0");

    TruncatedSum sum;
    const Complex av = direction_value(a);
    const Complex i_unit(0.0, 1.0);
    int k = 0;
    for (const auto& z : indexed_zeros(zeros)) {
        ++k;
        if (k > truncation) break;
        const auto it = coeffs.find(k);
        if (it == coeffs.end() || it->second == Complex(0.0, 0.0)) continue;

        const Complex sigma = z.value;
        bool upper = sigma.imag() > 0.0;
        if (sigma.imag() == 0.0) {
            upper = true;
            std::ostringstream msg;
            msg << "zero " << k << " lies exactly on the real axis; assigned "
                   "to the upper half-plane set by convention";
            sum.diagnostics.push_back(msg.str());
        }
        const Complex space = upper ? i_unit * sigma * x
                                    : i_unit * sigma * (x - 1.0);
        const Complex time = -av * sigma * sigma * sigma * t;
        sum.value += it->second * std::exp(space + time);
    }
    return sum;
}

} // namespace ibvp3
