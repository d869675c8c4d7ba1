#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ibvp3/canonical.hpp"

namespace ibvp3 {

/// Zero family. The nonzero zeros of the determinant are exactly
/// {w^j lambda_k, w^j mu_k} for j in {0,1,2}, k >= 1, with the mu family
/// present only for form IV. The distinguished zero at the origin (from the
/// monomial factor) is reported separately with at_origin set.
enum class Family { lambda, mu };

enum class Provenance { asymptotic, refined };

std::string family_name(Family f);

struct ZeroRecord {
    Family family = Family::lambda;
    int j = 0;              // rotation index, 0..2
    int k = 0;              // series index; 0 means origin or unmatched
    Complex value{0.0, 0.0};
    double residual = 0.0;  // |bracket| at value, relative to the dominant
                            // exponential scale of the bracket
    Provenance provenance = Provenance::refined;
    bool at_origin = false;
};

/// Axis-aligned rectangle in the complex plane.
struct Box {
    double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;

    bool contains(Complex z) const {
        return re_lo < z.real() && z.real() < re_hi && im_lo < z.imag() &&
               z.imag() < im_hi;
    }
    Box inflated(double d) const {
        return Box{re_lo - d, re_hi + d, im_lo - d, im_hi + d};
    }
    static Box centered(Complex c, double half_width) {
        return Box{c.real() - half_width, c.real() + half_width,
                   c.imag() - half_width, c.imag() + half_width};
    }
};

struct ZeroSearchOptions {
    double residual_tol = 1e-12;   // scaled-residual acceptance for a root
    int newton_cap = 50;           // Newton iteration limit
    double grid_step = 0.4;        // coarse-scan spacing for low-lying zeros
    int max_edge_perturbations = 6;
    double winding_tol = 1e-3;     // distance to an integer before rounding
    double match_radius = 1.5;     // root-to-prediction labeling radius
};

/// Raised when a family slot has no nonzero zero: Newton from the k-th
/// asymptotic seed falls into the zero at the origin. This happens for a few
/// low-k slots of specific forms (the origin zero has higher multiplicity
/// there and the family indexing effectively starts later).
class ZeroMergedWithOrigin : public NumericalError {
public:
    explicit ZeroMergedWithOrigin(const std::string& what) : NumericalError(what) {}
};

/// Leading asymptotic term for the k-th zero of the given family:
///   II : i (2k - 1 - 2W/3) pi / sqrt(3)
///   III: the negative of the form II value
///   IV : +-(2k - 1 + 2W/3) pi + i log|Y|  (Y > 0)
///        +-(2k + 2W'/3) pi   + i log|Y|  (Y < 0; W' in {-2,-1,0}, W' = W mod 3)
/// Forms II/III lie on the imaginary axis and carry no mu family.
Complex asymptotic_zero(const CanonicalForm& cf, Family family, int k);

/// Decay rate r of the asymptotic correction O(exp(-r k)):
/// sqrt(3) pi for forms II/III with X = 0 and for form IV,
/// pi / sqrt(3) for forms II/III with X != 0.
double asymptotic_error_rate(const CanonicalForm& cf);

/// Winding number of the bracket around the box boundary, computed by
/// adaptive quadrature of bracket'/bracket. Perturbs (inflates) the box when
/// the integrand is near-singular on an edge; the box actually used is
/// returned. Throws NumericalError when no perturbation yields a clean
/// integer count.
struct WindingResult {
    int count = 0;
    Box box_used;
};

WindingResult winding_number(const CanonicalForm& cf, const Box& box,
                             const ZeroSearchOptions& opts = {});

struct FindZerosResult {
    std::vector<ZeroRecord> zeros;  // refined, labeled, sorted by modulus
    int winding = 0;                // certified count over box_used
    Box box_used;
    std::vector<std::string> diagnostics;
};

/// All zeros of the bracket inside the box: argument-principle count over
/// the boundary, Newton refinement from asymptotic seeds and a coarse grid
/// scan, and labeling by nearest asymptotic prediction. The number of
/// refined roots always equals the winding count (a deficit that is
/// explained by multiplicity produces a diagnostic instead).
FindZerosResult find_zeros(const CanonicalForm& cf, const Box& box,
                           const ZeroSearchOptions& opts = {});

/// Newton-refine the k-th zero of a family from its asymptotic seed and
/// certify it by a unit winding count over a small box around the root.
ZeroRecord refine_family_zero(const CanonicalForm& cf, Family family, int k,
                              const ZeroSearchOptions& opts = {});

/// Refined representatives (rotation index 0) of every family, k = 1..depth,
/// sorted by modulus. Empty for form I.
std::vector<ZeroRecord> family_zeros(const CanonicalForm& cf, int depth,
                                     const ZeroSearchOptions& opts = {});

/// Per-k distance between refined and asymptotic zeros, plus the fitted
/// exponential decay rate of that error (least-squares slope of log error
/// against k, taken over k >= 2).
struct AsymptoticsReport {
    std::vector<std::pair<int, double>> errors; // (k, |refined - asymptotic|)
    double fitted_rate = 0.0;
};

AsymptoticsReport validate_asymptotics(const CanonicalForm& cf, int k_max,
                                       Family family = Family::lambda,
                                       const ZeroSearchOptions& opts = {});

} // namespace ibvp3
