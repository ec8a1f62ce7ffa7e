#pragma once

#include "qsd/specfun.hpp"

namespace qsd {

/// A solved barrier level: A, the smallest eigenvalue lambda, xi = sqrt(1 - 8 lambda)
/// (positive imaginary when lambda > 1/8), the normalizer C and the eigencondition
/// residual |W_{1,xi/2}(2/A)|. Immutable once built.
class EigenSystem {
public:
    double A() const noexcept { return A_; }
    double lambda() const noexcept { return lambda_; }
    Complex xi() const noexcept { return xi_; }
    /// 1 - xi without cancellation (8 lambda / (1 + xi) for real xi).
    Complex one_minus_xi() const noexcept { return one_minus_xi_; }
    double C() const noexcept { return C_; }
    double residual() const noexcept { return residual_; }
    /// |W_{0,xi/2}(2/A)|, the scale the residual is judged against.
    double scale() const noexcept { return scale_; }
    bool xi_is_real() const noexcept { return xi_.imag() == 0.0; }

    /// Builds a system for an arbitrary (A, lambda) without solving; used to
    /// probe the sensitivity of downstream checks to an off-root lambda.
    static EigenSystem at(double A, double lambda);

    /// Copy with lambda (and xi, residual) replaced but the normalizer kept
    /// from this system: a drifted-state fault for the verify hook.
    EigenSystem with_lambda(double lambda) const;

private:
    EigenSystem(double A, double lambda, Complex xi, Complex one_minus_xi, double C,
                double residual, double scale)
        : A_(A), lambda_(lambda), xi_(xi), one_minus_xi_(one_minus_xi), C_(C),
          residual_(residual), scale_(scale) {}

    double A_;
    double lambda_;
    Complex xi_;
    Complex one_minus_xi_;
    double C_;
    double residual_;
    double scale_;
};

struct LambdaBracket {
    double lo;
    double hi;
};

/// lo = 1/A + 1/(A(A+1)), hi = 1/A + (1 + sqrt(4A+1))/(2A^2).
LambdaBracket lambda_bounds(double A);

inline constexpr double min_barrier = 0.01;
inline constexpr double max_barrier = 1e6;

/// Smallest positive root of Re W_{1,xi(lambda)/2}(2/A) = 0. tol is relative
/// to lambda.
EigenSystem solve_lambda(double A, double tol = 1e-12);

/// sqrt(1 - 8 lambda) for lambda <= 1/8, i sqrt(8 lambda - 1) above.
Complex xi_of_lambda(double lambda);

/// Eigencondition function g(lambda) = Re W_{1,xi/2}(2/A); throws
/// ConsistencyError if the imaginary part is not negligible.
double eigen_function(double A, double lambda);

/// C = 1 / (e^{-1/A} W_{0,xi/2}(2/A)).
double normalizer(double A, Complex xi);

/// Same constant through Kummer's function:
/// (1-xi)/(2 Gamma(1-xi)) (A/2)^{(1+xi)/2} Gamma((1-xi)/2) 1F1(-(1+xi)/2; 1-xi; 2/A).
/// Valid for either sign of xi at an eigenvalue.
double normalizer_kummer(double A, Complex xi);

}  // namespace qsd
