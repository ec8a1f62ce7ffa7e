#pragma once

#include <complex>
#include <optional>

namespace qsd {

/// Complex scalar used for every kernel argument and result. Quantities that
/// are real by theory still travel as Complex so that the imaginary-xi regime
/// needs no separate code path.
using Complex = std::complex<double>;

/// Truncation policy for the hypergeometric power series.
struct SeriesControl {
    double rel_tol = 1e-15;
    int consecutive_small_terms = 3;
    int max_terms = 10000;

    /// Throws DomainError unless rel_tol > 0, max_terms >= 10 and
    /// consecutive_small_terms >= 1.
    void validate() const;
};

/// True when |im| <= tol * max(1, |re|).
bool is_effectively_real(Complex v, double tol = 1e-10);

/// Throws OverflowError if either component is NaN or infinite.
Complex require_finite(Complex v, const char* what);

Complex gamma(Complex z);
/// 1/Gamma(z); exactly zero at the poles of Gamma.
Complex reciprocal_gamma(Complex z);
/// Principal-branch-free log Gamma: exp(log_gamma(z)) == gamma(z), but the
/// imaginary part is only defined modulo 2*pi.
Complex log_gamma(Complex z);
Complex digamma(Complex z);

/// Rising factorial (z)_n.
Complex pochhammer(Complex z, int n);

/// Kummer series 1F1(a; b; z), ascending order, term-ratio recurrence.
Complex kummer_1f1(Complex a, Complex b, Complex z, const SeriesControl& ctl = {});

/// 2F2(a1, a2; b1, b2; z) by the same series machinery as kummer_1f1.
Complex hyp_2f2(Complex a1, Complex a2, Complex b1, Complex b2, Complex z,
                const SeriesControl& ctl = {});

/// M_{kappa,b}(z) = z^{1/2+b} e^{-z/2} 1F1(1/2 + b - kappa; 1 + 2b; z), z > 0.
Complex whittaker_m(Complex kappa, Complex b, Complex z);

/// Whittaker W_{kappa,b}(z) for real z > 0.
///
/// Small z uses the M-connection formula
///   W = Gamma(-2b)/Gamma(1/2-b-kappa) M_{kappa,b} + Gamma(2b)/Gamma(1/2+b-kappa) M_{kappa,-b};
/// when 2b sits within 1e-3 of an integer the pole pair is removed by
/// averaging the same formula over a small circle in b (Cauchy mean), which
/// is exact for this entire function of b. Larger z switches to the
/// asymptotic series when it converges to full precision, otherwise to the
/// Laplace integral of Tricomi U, or for large imaginary b to stepping the
/// differential equation inward.
Complex whittaker_w(Complex kappa, Complex b, Complex z);

/// z^{-kappa} e^{z/2} W_{kappa,b}(z), finite where W itself underflows.
Complex whittaker_w_scaled(Complex kappa, Complex b, Complex z);

/// dW_{kappa,b}/dz from W_{kappa+1,b} = (z/2 - kappa) W_{kappa,b} - z W'.
Complex whittaker_w_dz(Complex kappa, Complex b, Complex z);

/// Individual W evaluation routes, exposed for cross-checking.
namespace whittaker_route {

/// Connection formula, including the near-integer 2b contour mean.
Complex connection(Complex kappa, Complex b, double z);

/// z^{-kappa} e^{z/2} W via the asymptotic series, if it reaches full
/// precision before the terms start to grow.
std::optional<Complex> asymptotic_scaled(Complex kappa, Complex b, double z);

/// z^{-kappa} e^{z/2} W via the Laplace integral of U(a, 1+2b, z), computed
/// with double-exponential quadrature and shifted to Re a >= 1 by the
/// backward a-recurrence.
Complex integral_scaled(Complex kappa, Complex b, double z);

/// z^{-kappa} e^{z/2} W by Taylor-stepping the Whittaker equation inward
/// from a point where the asymptotic series is exact; W is recessive at
/// infinity so the inward direction is stable. Used for large imaginary b,
/// where the Laplace integrand oscillates.
Complex ode_scaled(Complex kappa, Complex b, double z);

/// |Im b| above which the ODE route replaces the Laplace integral.
inline constexpr double ode_min_imag_index = 3.0;

/// Below this z the connection formula is used.
inline constexpr double connection_max_z = 2.0;


}  // namespace whittaker_route

}  // namespace qsd
