#include "ibvp3/canonical.hpp"

#include <array>
#include <cmath>

namespace ibvp3 {

namespace {

const long double kSqrt3 = std::sqrt(3.0L);

using CLD = std::complex<long double>;

constexpr double kZeroTol = 1e-12; // relative tolerance for "is this formula value zero"

bool nearly_zero(double value, double scale) {
    return std::abs(value) <= kZeroTol * std::max(1e-300, scale);
}

} // namespace

std::complex<long double> omega_pow(int n) {
    static const std::array<CLD, 3> table = {
        CLD(1.0L, 0.0L),
        CLD(-0.5L, kSqrt3 / 2.0L),
        CLD(-0.5L, -kSqrt3 / 2.0L),
    };
    return table[((n % 3) + 3) % 3];
}

std::string form_name(Form f) {
    switch (f) {
        case Form::I: return "I";
        case Form::II: return "II";
        case Form::III: return "III";
        case Form::IV: return "IV";
    }
    return "?";
}

CanonicalForm::CanonicalForm(Form f, int mdeg, int W, Complex X, double Y)
    : form_(f), mdeg_(mdeg), W_(W), X_(X), Y_(Y) {
    if (mdeg_ < 1 || mdeg_ > 5)
        throw ValidationError("canonical form: monomial degree must be 1..5");
    if (W_ < -1 || W_ > 1)
        throw ValidationError("canonical form: W must be -1, 0 or 1");
    if (X_ != Complex(0.0, 0.0) && W_ != 0)
        throw ValidationError(
            "canonical form: a nonzero X requires W = 0 (otherwise the zero "
            "set is not invariant under rotation by a cube root of unity)");
    if (form_ == Form::IV) {
        if (Y_ == 0.0 || !std::isfinite(Y_))
            throw ValidationError("canonical form IV: Y must be real and nonzero");
    }
}

CanonicalForm CanonicalForm::form_i(int mdeg) {
    return CanonicalForm(Form::I, mdeg, 0, Complex(0, 0), 0.0);
}
CanonicalForm CanonicalForm::form_ii(int mdeg, int W, Complex X) {
    return CanonicalForm(Form::II, mdeg, W, X, 0.0);
}
CanonicalForm CanonicalForm::form_iii(int mdeg, int W, Complex X) {
    return CanonicalForm(Form::III, mdeg, W, X, 0.0);
}
CanonicalForm CanonicalForm::form_iv(int mdeg, int W, Complex X, double Y) {
    return CanonicalForm(Form::IV, mdeg, W, X, Y);
}

bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    if (a.form() != b.form() || a.monomial_degree() != b.monomial_degree())
        return false;
    if (a.form() == Form::I) return true;
    if (a.W() != b.W() || a.X() != b.X()) return false;
    if (a.form() == Form::IV) return a.Y() == b.Y();
    return true;
}

PseudoPeriodicParams pseudo_periodic_params(double b1, double b2, double b3) {
    for (double b : {b1, b2, b3})
        if (b == 0.0 || !std::isfinite(b))
            throw ValidationError(
                "pseudo-periodic coupling constants must be real and nonzero");
    PseudoPeriodicParams p{};
    p.beta = b1 * b2 + b2 * b3 + b3 * b1;
    p.beta_prime = b1 + b2 + b3;
    p.beta_dprime = 3.0 * (b1 * b2 * b3 + 1.0);

    int zeros = 0;
    if (nearly_zero(p.beta, std::abs(b1 * b2) + std::abs(b2 * b3) + std::abs(b3 * b1)))
        ++zeros;
    if (nearly_zero(p.beta_prime, std::abs(b1) + std::abs(b2) + std::abs(b3)))
        ++zeros;
    if (nearly_zero(p.beta_dprime, 3.0 * std::abs(b1 * b2 * b3) + 3.0))
        ++zeros;
    if (zeros >= 2)
        throw ValidationError(
            "pseudo-periodic constants produce two vanishing symmetric "
            "functions; impossible for real nonzero couplings");
    return p;
}

namespace {

struct Pattern {
    int coupled = 0;
    std::vector<int> coupled_orders;
    std::vector<int> left_orders;
    std::vector<int> right_orders;
};

Pattern row_pattern(const ProblemSpec& spec) {
    Pattern p;
    for (const auto& row : spec.rows) {
        switch (row.side) {
            case Side::coupled:
                ++p.coupled;
                p.coupled_orders.push_back(row.order);
                break;
            case Side::left: p.left_orders.push_back(row.order); break;
            case Side::right: p.right_orders.push_back(row.order); break;
        }
    }
    return p;
}

int monomial_degree_of(const ProblemSpec& spec) {
    int d = 0;
    for (const auto& row : spec.rows) d += row.order;
    return d;
}

/// W for a same-order pair versus the remaining row: the pair order one
/// below the odd row's order (mod 3) gives W = +1, one above gives W = -1.
int w_from_orders(int pair_order, int odd_order) {
    int diff = ((odd_order - pair_order) % 3 + 3) % 3;
    if (diff == 1) return 1;
    if (diff == 2) return -1;
    throw ValidationError("internal: same-order triple escaped validation");
}

CanonicalForm dispatch_uncoupled(const ProblemSpec& spec, const Pattern& p) {
    const int mdeg = monomial_degree_of(spec);
    const size_t nl = p.left_orders.size();

    if (nl == 3 || nl == 0)
        return CanonicalForm::form_i(mdeg);

    // Locate a same-order pair, if any. After validation such a pair is
    // always one left row and one right row.
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (spec.rows[i].order != spec.rows[j].order) continue;
            const int odd_order = spec.rows[3 - i - j].order;
            const int W = w_from_orders(spec.rows[i].order, odd_order);
            return nl == 2 ? CanonicalForm::form_ii(mdeg, W, Complex(0, 0))
                           : CanonicalForm::form_iii(mdeg, W, Complex(0, 0));
        }
    }

    // All orders distinct.
    return nl == 2 ? CanonicalForm::form_ii(mdeg, 0, Complex(0, 0))
                   : CanonicalForm::form_iii(mdeg, 0, Complex(0, 0));
}

CanonicalForm dispatch_one_coupling(const ProblemSpec& spec, const Pattern& p) {
    const int mdeg = monomial_degree_of(spec);
    const double b1 = spec.couplings[0];

    if (p.left_orders.size() == 2)
        return CanonicalForm::form_ii(mdeg, 0, Complex(3.0 / b1, 0.0));
    if (p.right_orders.size() == 2)
        return CanonicalForm::form_iii(mdeg, 0, Complex(3.0 * b1, 0.0));

    // One uncoupled row at each endpoint.
    const int ol = p.left_orders[0], orr = p.right_orders[0];
    const int oc = p.coupled_orders[0];
    if (ol != orr)
        return CanonicalForm::form_iv(mdeg, 0, Complex(0, 0), b1);
    // Same-order uncoupled pair. With the (1, -beta) row normalization the
    // matching Y is +b1; this sign is pinned by the coupled Dirichlet-
    // Neumann family, whose zeros must track (2k - 1/3) pi + i log(beta).
    return CanonicalForm::form_iv(mdeg, w_from_orders(ol, oc), Complex(0, 0), b1);
}

CanonicalForm dispatch_two_couplings(const ProblemSpec& spec, const Pattern& p) {
    const int mdeg = monomial_degree_of(spec);
    const double b1 = spec.couplings[0], b2 = spec.couplings[1];
    const double sum = b1 + b2, prod = b1 * b2;
    const bool sum_zero = nearly_zero(sum, std::abs(b1) + std::abs(b2));
    const bool odd_right = p.right_orders.size() == 1;

    if (odd_right) {
        if (sum_zero)
            return CanonicalForm::form_ii(mdeg, 0, Complex(3.0 * prod, 0.0));
        return CanonicalForm::form_iv(mdeg, 0, Complex(3.0 * prod, 0.0), sum);
    }
    if (sum_zero)
        return CanonicalForm::form_iii(mdeg, 0, Complex(3.0 / prod, 0.0));
    return CanonicalForm::form_iv(mdeg, 0, Complex(3.0 / sum, 0.0), prod / sum);
}

CanonicalForm dispatch_three_couplings(const ProblemSpec& spec) {
    const int mdeg = monomial_degree_of(spec);
    const auto pp = pseudo_periodic_params(spec.couplings[0], spec.couplings[1],
                                           spec.couplings[2]);
    const double b1 = spec.couplings[0], b2 = spec.couplings[1],
                 b3 = spec.couplings[2];
    const bool beta_zero =
        nearly_zero(pp.beta, std::abs(b1 * b2) + std::abs(b2 * b3) + std::abs(b3 * b1));
    const bool beta_prime_zero =
        nearly_zero(pp.beta_prime, std::abs(b1) + std::abs(b2) + std::abs(b3));

    if (beta_zero)
        return CanonicalForm::form_ii(mdeg, 0,
                                      Complex(pp.beta_dprime / pp.beta_prime, 0.0));
    if (beta_prime_zero)
        return CanonicalForm::form_iii(mdeg, 0,
                                       Complex(pp.beta_dprime / pp.beta, 0.0));
    return CanonicalForm::form_iv(mdeg, 0,
                                  Complex(pp.beta_dprime / pp.beta_prime, 0.0),
                                  pp.beta / pp.beta_prime);
}

} // namespace

CanonicalForm canonical_form(const ProblemSpec& spec) {
    const Pattern p = row_pattern(spec);
    switch (p.coupled) {
        case 0: return dispatch_uncoupled(spec, p);
        case 1: return dispatch_one_coupling(spec, p);
        case 2: return dispatch_two_couplings(spec, p);
        case 3: return dispatch_three_couplings(spec);
        default: break;
    }
    throw ValidationError("internal: coupling count outside 0..3");
}

BracketScaled bracket_scaled(const CanonicalForm& cf, std::complex<long double> rho) {
    if (!cf.has_bracket())
        throw ValidationError("form I has no bracket factor");

    // Terms coef * exp(expo * rho); at most 6 plus the constant X.
    std::array<CLD, 6> coef;
    std::array<CLD, 6> expo;
    int n = 0;
    const CLD i_unit(0.0L, 1.0L);
    const bool plus_family = cf.form() == Form::II || cf.form() == Form::IV;
    const bool minus_family = cf.form() == Form::III || cf.form() == Form::IV;
    const long double y = static_cast<long double>(cf.Y());
    for (int r = 0; r < 3; ++r) {
        const CLD wr = omega_pow(r);
        const CLD wWr = omega_pow(cf.W() * r);
        if (plus_family) {
            coef[n] = wWr;
            expo[n] = i_unit * wr;
            ++n;
        }
        if (minus_family) {
            coef[n] = (cf.form() == Form::IV) ? wWr * y : wWr;
            expo[n] = -i_unit * wr;
            ++n;
        }
    }

    const CLD x(static_cast<long double>(cf.X().real()),
                static_cast<long double>(cf.X().imag()));
    const bool has_x = cf.X() != Complex(0.0, 0.0);

    long double m = has_x ? std::log(std::abs(x)) : -1e30L;
    std::array<CLD, 6> z;
    for (int t = 0; t < n; ++t) {
        z[t] = expo[t] * rho;
        const long double mag = z[t].real() + std::log(std::abs(coef[t]));
        if (mag > m) m = mag;
    }

    BracketScaled out{};
    out.log_scale = m;
    CLD value = has_x ? x * std::exp(-m) : CLD(0.0L, 0.0L);
    CLD deriv(0.0L, 0.0L);
    for (int t = 0; t < n; ++t) {
        const CLD e = std::exp(z[t] - m);
        value += coef[t] * e;
        deriv += coef[t] * expo[t] * e;
    }
    out.value = value;
    out.derivative = deriv;
    return out;
}

Complex bracket_eval(const CanonicalForm& cf, Complex rho) {
    const auto b = bracket_scaled(cf, std::complex<long double>(rho.real(), rho.imag()));
    const CLD v = b.value * std::exp(CLD(b.log_scale, 0.0L));
    return Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

Complex bracket_derivative(const CanonicalForm& cf, Complex rho) {
    const auto b = bracket_scaled(cf, std::complex<long double>(rho.real(), rho.imag()));
    const CLD v = b.derivative * std::exp(CLD(b.log_scale, 0.0L));
    return Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

FourthOrderCriterion fourth_order_pseudoperiodic(double b1, double b2, double b3,
                                                 double b4) {
    for (double b : {b1, b2, b3, b4})
        if (b == 0.0 || !std::isfinite(b))
            throw ValidationError(
                "fourth-order criterion requires four nonzero real constants");
    FourthOrderCriterion out{};
    const double prod = b1 * b2 * b3 * b4;
    out.numerator =
        (b1 + b2 + b3 + b4) + prod * (1.0 / b1 + 1.0 / b2 + 1.0 / b3 + 1.0 / b4);
    out.denominator = b1 * b2 + b2 * b3 + b3 * b4 + b4 * b1 +
                      2.0 * (b1 * b3 + b2 * b4);
    const double den_scale = std::abs(b1 * b2) + std::abs(b2 * b3) +
                             std::abs(b3 * b4) + std::abs(b4 * b1) +
                             2.0 * (std::abs(b1 * b3) + std::abs(b2 * b4));
    if (nearly_zero(out.denominator, den_scale)) {
        out.ill_posed = true;
        return out;
    }
    out.ill_posed = std::abs(out.numerator / out.denominator) > 0.5;
    return out;
}

bool fourth_order_pseudoperiodic_illposed(double b1, double b2, double b3,
                                          double b4) {
    return fourth_order_pseudoperiodic(b1, b2, b3, b4).ill_posed;
}

} // namespace ibvp3
