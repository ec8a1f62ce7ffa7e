#pragma once

#include "qsd/spectral.hpp"

namespace qsd {

/// Below this x the factor e^{-1/x} underflows and the density is taken as 0.
inline constexpr double underflow_cutoff = 1.0 / 700.0;

struct DensityPoint {
    double x;
    double pdf;
    double cdf;
};

/// Quasi-stationary density on [0, A]; exact 0 at both ends.
/// Throws DomainError outside [0, A].
double qsd_pdf(const EigenSystem& eig, double x);

/// Quasi-stationary distribution function: 0 for x <= 0, 1 for x >= A.
/// Rounding overshoot within 1e-12 is clamped; anything larger raises
/// ConsistencyError.
double qsd_cdf(const EigenSystem& eig, double x);

/// log q_A(x) for 0 < x < A, computed without forming e^{-1/x}.
double qsd_log_pdf(const EigenSystem& eig, double x);

DensityPoint density_point(const EigenSystem& eig, double x);

/// Unnormalized density numerator e^{-1/x} x^{-1} W_{1,xi/2}(2/x), x > 0.
double pdf_numerator(Complex xi, double x);

/// Limiting law h(x) = 2/x^2 e^{-2/x}, H(x) = e^{-2/x} (zero for x <= 0).
double stationary_pdf(double x);
double stationary_cdf(double x);

}  // namespace qsd
