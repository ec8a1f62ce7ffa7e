#pragma once

#include "qsd/distribution.hpp"
#include "qsd/spectral.hpp"

#include <functional>

namespace qsd {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    double underflow_cutoff = qsd::underflow_cutoff;

    /// Throws DomainError unless both tolerances are positive,
    /// max_subdivisions >= 10 and the cutoff is positive.
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // summed |K15 - G7| over the final panels
    int panels = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. The interval
/// is first cut into log-spaced panels when a > 0; the panel with the
/// largest error is bisected until the summed error meets
/// max(abs_tol, rel_tol |value|). Panel contributions are summed in
/// left-to-right order. Throws ToleranceNotMetError when the budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec = {});

/// int x^s q_A(x) dx over [cutoff, A].
QuadResult quad_moment_detailed(const EigenSystem& eig, double s, const QuadratureSpec& spec = {});
double quad_moment(const EigenSystem& eig, double s, const QuadratureSpec& spec = {});

/// int log(x) q_A(x) dx over [cutoff, A].
double quad_log_moment(const EigenSystem& eig, const QuadratureSpec& spec = {});

/// |int q_A - 1|.
double normalization_check(const EigenSystem& eig, const QuadratureSpec& spec = {});

/// log10 of cutoff * sup_{x <= cutoff} x^s q_A(x), a bound on the excised
/// head. Throws ConsistencyError if the integrand is not increasing across
/// the first panel, which the bound relies on.
double head_log10_bound(const EigenSystem& eig, double s, const QuadratureSpec& spec = {});

}  // namespace qsd
