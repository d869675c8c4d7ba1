#pragma once

#include <complex>

#include "ibvp3/problem.hpp"

namespace ibvp3 {

/// Structure tag of the characteristic determinant. The determinant factors
/// as monomial * bracket, where the bracket is
///   I:    (no bracket; the monomial is the whole determinant)
///   II:   X + sum_r w^{W r} exp( i w^r rho)
///   III:  X + sum_r w^{W r} exp(-i w^r rho)
///   IV:   X + sum_r w^{W r} (exp(i w^r rho) + Y exp(-i w^r rho))
/// with w = exp(2 pi i / 3), r = 0, 1, 2.
enum class Form { I, II, III, IV };

std::string form_name(Form f);

/// Canonical form of the characteristic determinant: the form tag, the
/// degree of the monomial factor, and the bracket parameters. W is in
/// {-1, 0, 1}; a nonzero X only occurs with W = 0 (otherwise the zero set
/// would lose its rotational symmetry). Y is real and nonzero, form IV only.
class CanonicalForm {
public:
    static CanonicalForm form_i(int monomial_degree);
    static CanonicalForm form_ii(int monomial_degree, int W, Complex X);
    static CanonicalForm form_iii(int monomial_degree, int W, Complex X);
    static CanonicalForm form_iv(int monomial_degree, int W, Complex X, double Y);

    Form form() const { return form_; }
    int monomial_degree() const { return mdeg_; }
    int W() const { return W_; }
    Complex X() const { return X_; }
    double Y() const { return Y_; }
    bool has_bracket() const { return form_ != Form::I; }

private:
    CanonicalForm(Form f, int mdeg, int W, Complex X, double Y);
    Form form_;
    int mdeg_;
    int W_;
    Complex X_;
    double Y_;
};

bool operator==(const CanonicalForm& a, const CanonicalForm& b);

/// Symmetric functions of three pseudo-periodic coupling constants:
///   beta        = b1 b2 + b2 b3 + b3 b1
///   beta_prime  = b1 + b2 + b3
///   beta_dprime = 3 (b1 b2 b3 + 1)
/// For real nonzero inputs at most one of the three may vanish.
struct PseudoPeriodicParams {
    double beta;
    double beta_prime;
    double beta_dprime;
};

PseudoPeriodicParams pseudo_periodic_params(double b1, double b2, double b3);

/// Canonical form of the determinant for a validated spec, by table lookup
/// on coupling count, side placement and order pattern.
CanonicalForm canonical_form(const ProblemSpec& spec);

/// Scaled bracket evaluation. The bracket grows like exp(c |rho|); value and
/// derivative are returned divided by exp(log_scale), where log_scale is the
/// log-magnitude of the dominant term, so both stay O(1) near zeros.
struct BracketScaled {
    std::complex<long double> value;
    std::complex<long double> derivative;
    long double log_scale;
};

BracketScaled bracket_scaled(const CanonicalForm& cf, std::complex<long double> rho);

/// Unscaled bracket value (may overflow to inf for large |rho|; prefer
/// bracket_scaled for numerics). Throws for form I.
Complex bracket_eval(const CanonicalForm& cf, Complex rho);

/// Unscaled bracket derivative. Throws for form I.
Complex bracket_derivative(const CanonicalForm& cf, Complex rho);

/// Ill-posedness criterion for 4th-order pseudo-periodic problems with
/// coupling constants b1..b4 (all nonzero):
///   beta = [sum b_i + (prod b_i) sum(1/b_i)]
///        / [b1 b2 + b2 b3 + b3 b4 + b4 b1 + 2 (b1 b3 + b2 b4)]
/// The problem is ill-posed iff |beta| > 1/2 or the denominator vanishes.
struct FourthOrderCriterion {
    double numerator;
    double denominator;
    bool ill_posed;
};

FourthOrderCriterion fourth_order_pseudoperiodic(double b1, double b2,
                                                 double b3, double b4);

bool fourth_order_pseudoperiodic_illposed(double b1, double b2, double b3,
                                          double b4);

/// Primitive cube root of unity, and its integer powers.
std::complex<long double> omega_pow(int n);
inline std::complex<long double> omega() { return omega_pow(1); }

} // namespace ibvp3
