#include "qsd/distribution.hpp"

#include "qsd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsd {

namespace {

constexpr double kClampBand = 1e-12;

double real_checked(Complex v, const char* what) {
    if (!is_effectively_real(v, 1e-9)) {
        throw ConsistencyError(std::string(what) + ": imaginary part not negligible");
    }
    return v.real();
}

// e^{log_scale} e^{-1/x} [x^{-1}] W_{kappa,b}(2/x) with all exponentials
// combined, so the product stays representable for small x.
double kernel(double kappa, Complex b, double x, bool divide_by_x, double log_scale = 0.0) {
    const double z = 2.0 / x;
    const Complex s = whittaker_w_scaled(kappa, b, z);
    // e^{-1/x} z^kappa e^{-z/2} = z^kappa e^{-z}
    double log_f = kappa * std::log(z) - z + log_scale;
    if (divide_by_x) {
        log_f -= std::log(x);
    }
    return std::exp(log_f) * real_checked(s, "distribution kernel");
}

}  // namespace

double pdf_numerator(Complex xi, double x) {
    if (!(x > 0.0)) {
        throw DomainError("pdf_numerator: x must be positive");
    }
    return kernel(1.0, 0.5 * xi, x, true);
}

double qsd_pdf(const EigenSystem& eig, double x) {
    if (!(x >= 0.0 && x <= eig.A())) {
        throw DomainError("qsd_pdf: x must lie in [0, A]");
    }
    if (x < underflow_cutoff || x == eig.A()) {
        return 0.0;
    }
    return kernel(1.0, 0.5 * eig.xi(), x, true, std::log(eig.C()));
}

double qsd_cdf(const EigenSystem& eig, double x) {
    if (std::isnan(x)) {
        throw DomainError("qsd_cdf: x is NaN");
    }
    if (x >= eig.A()) {
        return 1.0;
    }
    if (x < underflow_cutoff) {
        return 0.0;
    }
    const double q = kernel(0.0, 0.5 * eig.xi(), x, false, std::log(eig.C()));
    if (q < -kClampBand || q > 1.0 + kClampBand) {
        throw ConsistencyError("qsd_cdf: value outside [0, 1]");
    }
    return std::min(1.0, std::max(0.0, q));
}

double qsd_log_pdf(const EigenSystem& eig, double x) {
    if (!(x > 0.0 && x < eig.A())) {
        throw DomainError("qsd_log_pdf: x must lie in (0, A)");
    }
    const double z = 2.0 / x;
    const double s = real_checked(whittaker_w_scaled(1.0, 0.5 * eig.xi(), z), "qsd_log_pdf");
    return std::log(eig.C()) + std::log(z) - z - std::log(x) + std::log(std::abs(s));
}

DensityPoint density_point(const EigenSystem& eig, double x) {
    return {x, qsd_pdf(eig, x), qsd_cdf(eig, x)};
}

double stationary_pdf(double x) {
    if (!(x > 0.0)) {
        return 0.0;
    }
    return 2.0 / (x * x) * std::exp(-2.0 / x);
}

double stationary_cdf(double x) {
    if (!(x > 0.0)) {
        return 0.0;
    }
    return std::exp(-2.0 / x);
}

}  // namespace qsd
