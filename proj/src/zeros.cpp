#include "ibvp3/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ibvp3 {

namespace {

using CLD = std::complex<long double>;

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
constexpr long double kEdgeFloor = 1e-7L;   // |scaled bracket| below this on a
                                            // contour counts as near-singular
constexpr int kSimpsonMaxDepth = 30;
constexpr double kOriginRadius = 1e-8;

std::string fmt_complex(Complex z) {
    std::ostringstream s;
    s << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return s.str();
}

struct NearSingularContour {};

CLD to_cld(Complex z) { return CLD(z.real(), z.imag()); }
Complex to_cd(CLD z) {
    return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

/// Logarithmic-derivative integrand along a straight segment a + (b-a) t.
class EdgeIntegrand {
public:
    EdgeIntegrand(const CanonicalForm& cf, CLD a, CLD b) : cf_(cf), a_(a), d_(b - a) {}

    CLD operator()(long double t) const {
        const auto br = bracket_scaled(cf_, a_ + d_ * t);
        if (std::abs(br.value) < kEdgeFloor) throw NearSingularContour{};
        return br.derivative / br.value * d_;
    }

private:
    const CanonicalForm& cf_;
    CLD a_, d_;
};

template <typename F>
CLD adaptive_simpson_rec(const F& f, long double t0, long double t2, CLD f0,
                         CLD f1, CLD f2, CLD whole, long double tol, int depth) {
    const long double tm = (t0 + t2) / 2;
    const long double h = (t2 - t0) / 2;
    const CLD fl = f((t0 + tm) / 2);
    const CLD fr = f((tm + t2) / 2);
    const CLD left = (h / 6) * (f0 + 4.0L * fl + f1);
    const CLD right = (h / 6) * (f1 + 4.0L * fr + f2);
    const CLD delta = left + right - whole;
    if (std::abs(delta) <= 15 * tol) return left + right + delta / 15.0L;
    if (depth >= kSimpsonMaxDepth) throw NearSingularContour{};
    return adaptive_simpson_rec(f, t0, tm, f0, fl, f1, left, tol / 2, depth + 1) +
           adaptive_simpson_rec(f, tm, t2, f1, fr, f2, right, tol / 2, depth + 1);
}

template <typename F>
CLD adaptive_simpson(const F& f, long double t0, long double t1, long double tol) {
    const CLD f0 = f(t0);
    const CLD fm = f((t0 + t1) / 2);
    const CLD f1v = f(t1);
    const CLD whole = ((t1 - t0) / 6) * (f0 + 4.0L * fm + f1v);
    return adaptive_simpson_rec(f, t0, t1, f0, fm, f1v, whole, tol, 0);
}

/// Contour integral of bracket'/bracket over the box boundary,
/// counterclockwise. Throws NearSingularContour when an edge runs too close
/// to a zero.
CLD boundary_log_derivative_integral(const CanonicalForm& cf, const Box& box) {
    const CLD corners[5] = {
        CLD(box.re_lo, box.im_lo), CLD(box.re_hi, box.im_lo),
        CLD(box.re_hi, box.im_hi), CLD(box.re_lo, box.im_hi),
        CLD(box.re_lo, box.im_lo)};
    CLD total(0.0L, 0.0L);
    for (int e = 0; e < 4; ++e) {
        const CLD a = corners[e], b = corners[e + 1];
        const EdgeIntegrand f(cf, a, b);
        // Long edges are pre-split so the adaptive rule starts from panels
        // comparable to the zero spacing.
        const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / 1.5L)));
        for (int p = 0; p < panels; ++p) {
            const long double t0 = static_cast<long double>(p) / panels;
            const long double t1 = static_cast<long double>(p + 1) / panels;
            total += adaptive_simpson(f, t0, t1, 2e-4L / panels);
        }
    }
    return total;
}

int integer_winding(CLD integral, double tol) {
    const CLD w = integral / CLD(0.0L, 2 * std::numbers::pi_v<long double>);
    const long long n = std::llround(static_cast<double>(w.real()));
    if (std::abs(w - CLD(static_cast<long double>(n), 0.0L)) > tol)
        throw NearSingularContour{};
    return static_cast<int>(n);
}

struct NewtonResult {
    CLD root;
    long double residual = 1e30L;
    bool converged = false;
};

NewtonResult newton_refine(const CanonicalForm& cf, CLD seed,
                           const ZeroSearchOptions& opts) {
    NewtonResult best;
    CLD z = seed;
    const long double eps_step = 4e-19L;
    for (int it = 0; it < opts.newton_cap; ++it) {
        const auto br = bracket_scaled(cf, z);
        const long double res = std::abs(br.value);
        if (res < best.residual) {
            best.residual = res;
            best.root = z;
        }
        if (std::abs(br.derivative) == 0.0L) break;
        const CLD step = br.value / br.derivative;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(z) > 1e6L) break;
        if (std::abs(step) <= eps_step * (1.0L + std::abs(z))) {
            const auto fin = bracket_scaled(cf, z);
            if (std::abs(fin.value) < best.residual) {
                best.residual = std::abs(fin.value);
                best.root = z;
            }
            break;
        }
    }
    best.converged = best.residual <= opts.residual_tol;
    return best;
}

/// Candidate prediction set for labeling: all rotations of both families up
/// to the index that could reach radiuserately beyond |z|.
struct Prediction {
    Family family;
    int j;
    int k;
    Complex value;
};

std::vector<Prediction> predictions_near(const CanonicalForm& cf, double radius) {
    std::vector<Prediction> out;
    if (!cf.has_bracket()) return out;
    const double spacing = cf.form() == Form::IV ? 2 * kPi : 2 * kPi / kSqrt3;
    const int k_hi = static_cast<int>(std::ceil(radius / spacing)) + 3;
    std::vector<Family> families{Family::lambda};
    if (cf.form() == Form::IV) families.push_back(Family::mu);
    for (Family fam : families) {
        for (int k = 1; k <= k_hi; ++k) {
            const Complex base = asymptotic_zero(cf, fam, k);
            for (int j = 0; j < 3; ++j) {
                const Complex rot = to_cd(omega_pow(j)) * base;
                if (std::abs(rot) <= radius + 2.0)
                    out.push_back(Prediction{fam, j, k, rot});
            }
        }
    }
    return out;
}

ZeroRecord label_root(const CanonicalForm& cf, CLD root, long double residual,
                      const std::vector<Prediction>& preds,
                      const ZeroSearchOptions& opts,
                      std::vector<std::string>& diagnostics) {
    ZeroRecord rec;
    rec.value = to_cd(root);
    rec.residual = static_cast<double>(residual);
    rec.provenance = Provenance::refined;
    if (std::abs(rec.value) <= kOriginRadius) {
        rec.at_origin = true;
        rec.k = 0;
        return rec;
    }
    double best = 1e300;
    const Prediction* hit = nullptr;
    for (const auto& p : preds) {
        const double d = std::abs(p.value - rec.value);
        // Ties resolve toward the smaller k, lambda before mu, smaller j.
        if (d < best - 1e-12) {
            best = d;
            hit = &p;
        }
    }
    if (hit != nullptr && best <= opts.match_radius) {
        rec.family = hit->family;
        rec.j = hit->j;
        rec.k = hit->k;
    } else {
        rec.k = 0;
        diagnostics.push_back("unmatched zero at " + fmt_complex(rec.value) +
                              " (no asymptotic prediction within " +
                              std::to_string(opts.match_radius) + ")");
    }
    return rec;
}

} // namespace

std::string family_name(Family f) {
    return f == Family::lambda ? "lambda" : "mu";
}

Complex asymptotic_zero(const CanonicalForm& cf, Family family, int k) {
    if (k < 1) throw ValidationError("zero index k must be >= 1");
    switch (cf.form()) {
        case Form::I:
            throw ValidationError("form I: no nonzero zeros");
        case Form::II:
        case Form::III: {
            if (family == Family::mu)
                throw ValidationError("no mu family for forms II/III");
            const double t = (2.0 * k - 1.0 - 2.0 * cf.W() / 3.0) * kPi / kSqrt3;
            return cf.form() == Form::II ? Complex(0.0, t) : Complex(0.0, -t);
        }
        case Form::IV: {
            const double y = std::log(std::abs(cf.Y()));
            double x = 0.0;
            if (cf.Y() > 0) {
                x = (2.0 * k - 1.0 + 2.0 * cf.W() / 3.0) * kPi;
            } else {
                const int wp = cf.W() == 1 ? -2 : (cf.W() == -1 ? -1 : 0);
                x = (2.0 * k + 2.0 * wp / 3.0) * kPi;
            }
            return Complex(family == Family::lambda ? x : -x, y);
        }
    }
    throw ValidationError("unreachable form");
}

double asymptotic_error_rate(const CanonicalForm& cf) {
    switch (cf.form()) {
        case Form::I:
            throw ValidationError("form I: no zero asymptotics");
        case Form::II:
        case Form::III:
            return cf.X() == Complex(0.0, 0.0) ? kSqrt3 * kPi : kPi / kSqrt3;
        case Form::IV:
            return kSqrt3 * kPi;
    }
    throw ValidationError("unreachable form");
}

WindingResult winding_number(const CanonicalForm& cf, const Box& box,
                             const ZeroSearchOptions& opts) {
    if (!(box.re_lo < box.re_hi && box.im_lo < box.im_hi))
        throw ValidationError("degenerate box");
    for (int attempt = 0; attempt <= opts.max_edge_perturbations; ++attempt) {
        const Box b = box.inflated(0.0137 * attempt);
        try {
            const CLD integral = boundary_log_derivative_integral(cf, b);
            return WindingResult{integer_winding(integral, opts.winding_tol), b};
        } catch (const NearSingularContour&) {
            continue;
        }
    }
    throw NumericalError(
        "winding count not an integer within quadrature tolerance: box edges "
        "remain too close to a zero after the maximum number of perturbations");
}

FindZerosResult find_zeros(const CanonicalForm& cf, const Box& box,
                           const ZeroSearchOptions& opts) {
    if (!cf.has_bracket())
        throw ValidationError("form I has no bracket zeros to search for");

    FindZerosResult result;
    const WindingResult wr = winding_number(cf, box, opts);
    result.winding = wr.count;
    result.box_used = wr.box_used;
    const Box& b = wr.box_used;

    const double corner_radius =
        std::max({std::hypot(b.re_lo, b.im_lo), std::hypot(b.re_lo, b.im_hi),
                  std::hypot(b.re_hi, b.im_lo), std::hypot(b.re_hi, b.im_hi)});
    const auto preds = predictions_near(cf, corner_radius);

    std::vector<CLD> roots;
    std::vector<long double> residuals;
    auto add_root = [&](const NewtonResult& nr) {
        if (!nr.converged) return;
        const Complex z = to_cd(nr.root);
        if (!b.contains(z)) return;
        for (size_t i = 0; i < roots.size(); ++i) {
            if (std::abs(nr.root - roots[i]) <=
                1e-6L * (1.0L + std::abs(nr.root))) {
                if (nr.residual < residuals[i]) {
                    roots[i] = nr.root;
                    residuals[i] = nr.residual;
                }
                return;
            }
        }
        roots.push_back(nr.root);
        residuals.push_back(nr.residual);
    };

    auto run_grid = [&](double step) {
        const int nx = std::clamp(
            static_cast<int>(std::ceil((b.re_hi - b.re_lo) / step)) + 1, 4, 161);
        const int ny = std::clamp(
            static_cast<int>(std::ceil((b.im_hi - b.im_lo) / step)) + 1, 4, 161);
        std::vector<long double> mag(static_cast<size_t>(nx) * ny);
        auto at = [&](int ix, int iy) -> long double& {
            return mag[static_cast<size_t>(iy) * nx + ix];
        };
        auto node = [&](int ix, int iy) {
            return CLD(b.re_lo + (b.re_hi - b.re_lo) * ix / (nx - 1.0L),
                       b.im_lo + (b.im_hi - b.im_lo) * iy / (ny - 1.0L));
        };
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                at(ix, iy) = std::abs(bracket_scaled(cf, node(ix, iy)).value);
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                bool local_min = true;
                for (int dy = -1; dy <= 1 && local_min; ++dy)
                    for (int dx = -1; dx <= 1 && local_min; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int jx = ix + dx, jy = iy + dy;
                        if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
                        if (at(jx, jy) < at(ix, iy)) local_min = false;
                    }
                if (local_min)
                    add_root(newton_refine(cf, node(ix, iy), opts));
            }
        }
    };

    for (const auto& p : preds)
        if (b.inflated(0.8).contains(p.value))
            add_root(newton_refine(cf, to_cld(p.value), opts));

    double step = opts.grid_step;
    run_grid(step);
    int rounds = 0;
    while (static_cast<int>(roots.size()) != result.winding && rounds < 2) {
        step /= 2;
        run_grid(step);
        ++rounds;
    }

    if (static_cast<int>(roots.size()) > result.winding)
        throw NumericalError(
            "more refined roots than the certified winding count (" +
            std::to_string(roots.size()) + " vs " +
            std::to_string(result.winding) + ")");

    if (static_cast<int>(roots.size()) < result.winding) {
        // A deficit that full multiplicity accounting explains is reported
        // as a diagnostic; anything else is a genuine failure.
        int total = 0;
        for (const auto& r : roots) {
            double gap = 0.05;
            for (const auto& other : roots)
                if (&other != &r)
                    gap = std::min(gap, static_cast<double>(std::abs(r - other)) / 3.0);
            const Box tiny = Box::centered(to_cd(r), std::max(gap, 1e-4));
            total += winding_number(cf, tiny, opts).count;
        }
        if (total == result.winding && !roots.empty()) {
            result.diagnostics.push_back(
                "possible multiple zero: winding count " +
                std::to_string(result.winding) + " over " +
                std::to_string(roots.size()) + " distinct roots");
        } else {
            throw NumericalError(
                "argument-principle count " + std::to_string(result.winding) +
                " does not match " + std::to_string(roots.size()) +
                " refined roots in the box");
        }
    }

    for (size_t i = 0; i < roots.size(); ++i)
        result.zeros.push_back(
            label_root(cf, roots[i], residuals[i], preds, opts, result.diagnostics));

    std::sort(result.zeros.begin(), result.zeros.end(),
              [](const ZeroRecord& a, const ZeroRecord& b2) {
                  const double ma = std::abs(a.value), mb = std::abs(b2.value);
                  if (ma != mb) return ma < mb;
                  if (a.value.real() != b2.value.real())
                      return a.value.real() < b2.value.real();
                  return a.value.imag() < b2.value.imag();
              });
    return result;
}

ZeroRecord refine_family_zero(const CanonicalForm& cf, Family family, int k,
                              const ZeroSearchOptions& opts) {
    const Complex pred = asymptotic_zero(cf, family, k);
    const NewtonResult nr = newton_refine(cf, to_cld(pred), opts);
    if (!nr.converged)
        throw NumericalError("Newton refinement did not converge for " +
                             family_name(family) + "_" + std::to_string(k));
    const Complex root = to_cd(nr.root);
    if (std::abs(root) <= kOriginRadius)
        throw ZeroMergedWithOrigin(family_name(family) + "_" + std::to_string(k) +
                                   " coincides with the origin zero for this form");
    if (std::abs(root - pred) > opts.match_radius)
        throw NumericalError("Newton refinement escaped the prediction basin for " +
                             family_name(family) + "_" + std::to_string(k));

    const double hw = std::min(1.2, 0.8 * std::abs(root));
    const WindingResult wr = winding_number(cf, Box::centered(root, hw), opts);
    if (wr.count != 1)
        throw NumericalError("certification failed for " + family_name(family) +
                             "_" + std::to_string(k) + ": winding count " +
                             std::to_string(wr.count) + " in the root box");

    ZeroRecord rec;
    rec.family = family;
    rec.j = 0;
    rec.k = k;
    rec.value = root;
    rec.residual = static_cast<double>(nr.residual);
    rec.provenance = Provenance::refined;
    return rec;
}

std::vector<ZeroRecord> family_zeros(const CanonicalForm& cf, int depth,
                                     const ZeroSearchOptions& opts) {
    std::vector<ZeroRecord> out;
    if (!cf.has_bracket()) return out;
    std::vector<Family> families{Family::lambda};
    if (cf.form() == Form::IV) families.push_back(Family::mu);
    for (Family fam : families) {
        for (int k = 1; k <= depth; ++k) {
            try {
                const ZeroRecord rec = refine_family_zero(cf, fam, k, opts);
                bool duplicate = false;
                for (const auto& have : out)
                    if (std::abs(have.value - rec.value) <=
                        1e-8 * (1.0 + std::abs(rec.value)))
                        duplicate = true;
                if (!duplicate) out.push_back(rec);
            } catch (const ZeroMergedWithOrigin&) {
                // Slot absorbed by the origin zero; the family starts later.
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
        const double ma = std::abs(a.value), mb = std::abs(b.value);
        if (ma != mb) return ma < mb;
        return a.family < b.family;
    });
    return out;
}

AsymptoticsReport validate_asymptotics(const CanonicalForm& cf, int k_max,
                                       Family family,
                                       const ZeroSearchOptions& opts) {
    AsymptoticsReport report;
    if (cf.form() == Form::I) return report;
    if (k_max < 3)
        throw ValidationError("validate_asymptotics requires k_max >= 3");

    for (int k = 1; k <= k_max; ++k) {
        try {
            const ZeroRecord rec = refine_family_zero(cf, family, k, opts);
            const Complex pred = asymptotic_zero(cf, family, k);
            report.errors.emplace_back(k, std::abs(rec.value - pred));
        } catch (const ZeroMergedWithOrigin&) {
            // No nonzero zero in this slot; the fit uses the ones present.
        }
    }

    // Least-squares slope of log error against k, over k >= 2 (the first
    // zero routinely sits outside the asymptotic regime).
    double sk = 0, se = 0, skk = 0, ske = 0;
    int n = 0;
    for (const auto& [k, err] : report.errors) {
        if (k < 2) continue;
        const double le = std::log(std::max(err, 1e-18));
        sk += k;
        se += le;
        skk += static_cast<double>(k) * k;
        ske += k * le;
        ++n;
    }
    if (n >= 2)
        report.fitted_rate = -(n * ske - sk * se) / (n * skk - sk * sk);
    return report;
}

} // namespace ibvp3
