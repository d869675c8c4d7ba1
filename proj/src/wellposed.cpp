#include "ibvp3/wellposed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ibvp3 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

double normalized_angle(Complex z) {
    double t = std::atan2(z.imag(), z.real());
    if (t < 0) t += kTwoPi;
    return t;
}

double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

/// Distance from a point to the closed sector [alpha, alpha + pi/3].
double distance_to_sector(Complex z, double alpha) {
    const double r = std::abs(z);
    if (r == 0.0) return 0.0;
    const double phi = normalized_angle(z);
    const double beta = alpha + kPi / 3;
    double rel = std::fmod(phi - alpha, kTwoPi);
    if (rel < 0) rel += kTwoPi;
    if (rel <= kPi / 3) return 0.0;
    const double d = std::min(circular_distance(phi, alpha),
                              circular_distance(phi, beta));
    return d >= kPi / 2 ? r : r * std::sin(d);
}

std::vector<double> decay_region_sector_starts(Direction a) {
    // Re(a rho^3) >= 0 with a = +i reads sin(3 theta) <= 0, with a = -i
    // sin(3 theta) >= 0; each is a union of three sectors of opening pi/3.
    if (a == Direction::plus_i) return {kPi / 3, kPi, 5 * kPi / 3};
    return {0.0, 2 * kPi / 3, 4 * kPi / 3};
}

/// Log-envelope of the dominant boundary-term exponentials over x in [0,1]:
/// products exp(s i w^a rho) * exp(s i w^b rho x), a != b, with s = -1 for
/// the form III family, s = +1 for form II, and both for form IV.
double numerator_log_envelope(const CanonicalForm& cf, Complex rho) {
    double im[3];
    for (int r = 0; r < 3; ++r) {
        const auto w = omega_pow(r);
        const Complex wr(static_cast<double>(w.real()), static_cast<double>(w.imag()));
        im[r] = (wr * rho).imag();
    }
    auto family_env = [&](double sign) {
        double best = -1e300;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                best = std::max(best, sign * im[a] + std::max(0.0, sign * im[b]));
            }
        return best;
    };
    switch (cf.form()) {
        case Form::II: return family_env(-1.0);
        case Form::III: return family_env(+1.0);
        case Form::IV: return std::max(family_env(-1.0), family_env(+1.0));
        case Form::I: break;
    }
    throw ValidationError("form I has no growth audit");
}

} // namespace

std::string class_name(ClassLabel c) {
    switch (c) {
        case ClassLabel::I: return "I";
        case ClassLabel::II: return "II";
        case ClassLabel::III: return "III";
        case ClassLabel::IVa: return "IVa";
        case ClassLabel::IVb: return "IVb";
        case ClassLabel::IVc: return "IVc";
    }
    return "?";
}

std::pair<bool, bool> conditioning(const CanonicalForm& cf) {
    switch (cf.form()) {
        case Form::I: return {false, false};
        case Form::II: return {true, false};
        case Form::III: return {false, true};
        case Form::IV: return {true, true};
    }
    return {false, false};
}

ClassLabel classify(const CanonicalForm& cf) {
    switch (cf.form()) {
        case Form::I: return ClassLabel::I;
        case Form::II: return ClassLabel::II;
        case Form::III: return ClassLabel::III;
        case Form::IV: break;
    }
    const double ay = std::abs(cf.Y());
    if (std::abs(ay - 1.0) <= 1e-12 * std::max(1.0, ay)) return ClassLabel::IVb;
    return ay < 1.0 ? ClassLabel::IVa : ClassLabel::IVc;
}

double distance_to_decay_region(Complex sigma, Direction a) {
    double best = 1e300;
    for (double alpha : decay_region_sector_starts(a))
        best = std::min(best, distance_to_sector(sigma, alpha));
    return best;
}

bool zero_bound_check(const std::vector<ZeroRecord>& zeros, Direction a,
                      const BoundTestConfig& cfg) {
    std::vector<double> d;
    {
        std::vector<const ZeroRecord*> sorted;
        for (const auto& z : zeros)
            if (!z.at_origin) sorted.push_back(&z);
        std::sort(sorted.begin(), sorted.end(),
                  [](const ZeroRecord* x, const ZeroRecord* y) {
                      return std::abs(x->value) < std::abs(y->value);
                  });
        for (const auto* z : sorted)
            d.push_back(distance_to_decay_region(z->value, a));
    }
    const int n = static_cast<int>(d.size());
    if (n < 5)
        throw ValidationError("zero_bound_check needs at least 5 indexed zeros");

    bool mono = true;
    for (int k = cfg.mono_from_k + 1; k <= n; ++k) {
        const double cur = k * static_cast<double>(k) * d[k - 1];
        const double prev = (k - 1.0) * (k - 1.0) * d[k - 2];
        if (cur > prev * (1 + 1e-9) + 1e-12) {
            mono = false;
            break;
        }
    }
    if (mono) return true;

    if (n < cfg.small_from_k) return false;
    for (int k = cfg.small_from_k; k <= n; ++k)
        if (d[k - 1] >= cfg.small_dk) return false;
    return true;
}

std::vector<SectorGrowth> sector_growth_audit(const CanonicalForm& cf,
                                              int samples) {
    if (!cf.has_bracket())
        throw ValidationError("form I has no growth audit");
    if (samples < 8)
        throw ValidationError("sector_growth_audit needs at least 8 radii");

    std::vector<SectorGrowth> out;
    for (int m = 0; m < 6; ++m) {
        const double lo = m * kPi / 3, hi = (m + 1) * kPi / 3;
        const double mid = (lo + hi) / 2;

        bool decided = false, decays = false;
        for (double jitter : {0.0, 0.0262, -0.0262, 0.0524, -0.0524, 0.0786,
                              -0.0786, 0.1048, -0.1048}) {
            const double theta = mid + jitter;
            std::vector<double> log_ratio;
            bool clean = true;
            for (int i = 0; i < samples; ++i) {
                const double r = 8.0 * std::pow(1.38, i);
                const Complex rho(r * std::cos(theta), r * std::sin(theta));
                const auto br =
                    bracket_scaled(cf, std::complex<long double>(rho.real(), rho.imag()));
                const double mag = static_cast<double>(std::abs(br.value));
                // Too close to a zero line: Defn of conditioning requires
                // decay away from the zeros, so resample with jitter.
                if (mag < 1e-7) {
                    clean = false;
                    break;
                }
                const double log_bracket =
                    static_cast<double>(br.log_scale) + std::log(mag);
                // The x-integration against smooth data contributes one
                // inverse power of |rho| to the boundary terms.
                log_ratio.push_back(numerator_log_envelope(cf, rho) -
                                    std::log(r) - log_bracket);
            }
            if (!clean) continue;
            decays = log_ratio.back() - log_ratio.front() < -1.2;
            decided = true;
            break;
        }
        if (!decided)
            throw NumericalError(
                "sector growth audit could not find a sample ray clear of "
                "zeros in sector " + std::to_string(m + 1));
        out.push_back(SectorGrowth{lo, hi, decays});
    }
    return out;
}

std::pair<bool, bool> audit_conditioning(const std::vector<SectorGrowth>& audit) {
    if (audit.size() != 6)
        throw ValidationError("audit must cover the six sectors");
    // Growth region for +i: sectors 1, 3, 5 (0-based 0, 2, 4); for -i the
    // other three.
    bool plus = true, minus = true;
    for (int m = 0; m < 6; ++m) {
        if (m % 2 == 0)
            plus = plus && audit[m].decays;
        else
            minus = minus && audit[m].decays;
    }
    return {plus, minus};
}

Verdict verdict_from_parts(const CanonicalForm& cf,
                           const std::vector<ZeroRecord>& zeros,
                           const BoundTestConfig& cfg) {
    Verdict v;
    std::tie(v.conditioned_plus, v.conditioned_minus) = conditioning(cf);
    if (cf.form() == Form::I) {
        // No nonzero zeros: the location bound holds vacuously.
        v.bound_plus = v.bound_minus = true;
    } else {
        v.bound_plus = zero_bound_check(zeros, Direction::plus_i, cfg);
        v.bound_minus = zero_bound_check(zeros, Direction::minus_i, cfg);
    }
    v.wellposed_plus = v.conditioned_plus && v.bound_plus;
    v.wellposed_minus = v.conditioned_minus && v.bound_minus;
    return v;
}

Verdict verdict(const ProblemSpec& spec, const AnalysisConfig& cfg) {
    const CanonicalForm cf = canonical_form(spec);
    std::vector<ZeroRecord> zeros;
    if (cf.form() != Form::I)
        zeros = family_zeros(cf, cfg.k_depth, cfg.search);
    return verdict_from_parts(cf, zeros, cfg.bound);
}

} // namespace ibvp3
