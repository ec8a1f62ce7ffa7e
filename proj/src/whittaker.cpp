#include "qsd/errors.hpp"
#include "qsd/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qsd {

namespace {

constexpr double kPi = std::numbers::pi;

double require_positive_real(Complex z, const char* name) {
    if (z.imag() != 0.0 || !(z.real() > 0.0) || !std::isfinite(z.real())) {
        throw DomainError(std::string(name) + ": z must be real and positive");
    }
    return z.real();
}

// W is even in b; fixing Re b >= 0 (ties broken on Im b) makes W(b) and
// W(-b) bitwise identical.
Complex canonical_index(Complex b) {
    if (b.real() < 0.0 || (b.real() == 0.0 && b.imag() < 0.0)) {
        return -b;
    }
    return b;
}

Complex whittaker_m_unchecked(Complex kappa, Complex b, double z) {
    const Complex f = kummer_1f1(0.5 + b - kappa, 1.0 + 2.0 * b, z);
    return std::exp((0.5 + b) * std::log(z) - 0.5 * z) * f;
}

// Plain connection formula; 2b must be away from the integers.
Complex connection_generic(Complex kappa, Complex b, double z) {
    const Complex c1 = gamma(-2.0 * b) * reciprocal_gamma(0.5 - b - kappa);
    const Complex c2 = gamma(2.0 * b) * reciprocal_gamma(0.5 + b - kappa);
    Complex t1 = 0.0;
    Complex t2 = 0.0;
    if (c1 != Complex(0.0)) {
        t1 = c1 * whittaker_m_unchecked(kappa, b, z);
    }
    if (c2 != Complex(0.0)) {
        t2 = c2 * whittaker_m_unchecked(kappa, -b, z);
    }
    return t1 + t2;
}

constexpr double kNearIntegerBand = 1e-3;   // |2b - n| below this is treated as degenerate
constexpr double kContourRadius = 5e-3;     // radius of the circle in b
constexpr int kContourNodes = 16;

}  // namespace

Complex whittaker_m(Complex kappa, Complex b, Complex z) {
    const double x = require_positive_real(z, "whittaker_m");
    const Complex denom = 1.0 + 2.0 * b;
    const double n = std::round(denom.real());
    if (n <= 0.0 && std::abs(denom - Complex(n, 0.0)) < 1e-12) {
        throw UndefinedError("whittaker_m: undefined when -2b is a positive integer");
    }
    return require_finite(whittaker_m_unchecked(kappa, b, x), "whittaker_m");
}

namespace whittaker_route {

Complex connection(Complex kappa, Complex b, double z) {
    b = canonical_index(b);
    const Complex two_b = 2.0 * b;
    const double n = std::round(two_b.real());
    const Complex d = b - 0.5 * n;
    if (std::abs(2.0 * d) >= kNearIntegerBand) {
        return connection_generic(kappa, b, z);
    }
    // W(b) = (1/2 pi i) \oint W(zeta)/(zeta - b) d zeta over |zeta - n/2| = r,
    // trapezoidal in the angle; the error is O((|d|/r)^N).
    const Complex centre(0.5 * n, 0.0);
    Complex acc = 0.0;
    for (int j = 0; j < kContourNodes; ++j) {
        const double theta = 2.0 * kPi * (j + 0.5) / kContourNodes;
        const Complex offset = kContourRadius * Complex(std::cos(theta), std::sin(theta));
        acc += connection_generic(kappa, centre + offset, z) * offset / (offset - d);
    }
    return acc / static_cast<double>(kContourNodes);
}

namespace {

struct ScaledPair {
    Complex value;  // S(z) = z^{-kappa} e^{z/2} W
    Complex slope;  // dS/dz
};

// z^{-kappa} e^{z/2} W ~ sum_n (a)_n (a - c + 1)_n / n! (-1/z)^n,
// a = 1/2 + b - kappa, a - c + 1 = 1/2 - b - kappa.
std::optional<ScaledPair> asymptotic_pair(Complex kappa, Complex b, double z) {
    const Complex p = 0.5 + b - kappa;
    const Complex q = 0.5 - b - kappa;
    Complex sum = 1.0;
    Complex slope = 0.0;
    Complex term = 1.0;
    double prev = 1.0;
    for (int n = 0; n < 2000; ++n) {
        const double dn = static_cast<double>(n);
        term *= (p + dn) * (q + dn) / ((dn + 1.0) * -z);
        const double mag = std::abs(term);
        if (mag == 0.0) {
            return ScaledPair{sum, slope};
        }
        if (n > 0 && mag > prev) {
            return std::nullopt;
        }
        sum += term;
        slope -= (dn + 1.0) * term / z;
        if (mag <= 1e-17 * std::abs(sum)) {
            return ScaledPair{sum, slope};
        }
        prev = mag;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Complex> asymptotic_scaled(Complex kappa, Complex b, double z) {
    if (auto r = asymptotic_pair(kappa, b, z)) {
        return r->value;
    }
    return std::nullopt;
}

Complex ode_scaled(Complex kappa, Complex b, double z) {
    // Start far out where the asymptotic series is exact to rounding.
    double z0 = std::max(2.0 * z, 2.0 * std::abs(b) + 50.0);
    std::optional<ScaledPair> start;
    for (int tries = 0; tries < 12 && !(start = asymptotic_pair(kappa, b, z0)); ++tries) {
        z0 *= 2.0;
    }
    if (!start) {
        throw NonConvergenceError("whittaker_w: no convergent starting point for the ODE route");
    }
    // W = e^{log_scale} y with W(z0) = z0^kappa e^{-z0/2} S(z0).
    Complex log_scale = kappa * std::log(z0) - 0.5 * z0;
    Complex y = start->value;
    Complex dy = (kappa / z0 - 0.5) * start->value + start->slope;

    // z^2 W'' = (z^2/4 - kappa z + b^2 - 1/4) W, Taylor-stepped about each centre.
    const Complex beta = b * b - 0.25;
    double zc = z0;
    constexpr int max_order = 80;
    while (zc > z) {
        const Complex q0 = 0.25 * zc * zc - kappa * zc + beta;
        const double rate = std::sqrt(std::abs(q0)) / zc;
        const double h = -std::min({zc - z, 1.0 / std::max(rate, 1e-3), 0.125 * zc});
        const double p0 = zc * zc;
        const double p1 = 2.0 * zc;
        const Complex q1 = 0.5 * zc - kappa;
        constexpr double q2 = 0.25;
        Complex a_m2 = 0.0;
        Complex a_m1 = 0.0;
        Complex a_n = y;
        Complex a_n1 = dy;
        Complex val = a_n + a_n1 * h;
        Complex der = a_n1;
        double hn = h;  // h^{n+1} for the current a_n1
        int small = 0;
        for (int n = 0; n < max_order; ++n) {
            const double dn = static_cast<double>(n);
            const Complex a_n2 = (q0 * a_n + q1 * a_m1 + q2 * a_m2 - p1 * (dn + 1.0) * dn * a_n1 -
                                  dn * (dn - 1.0) * a_n) /
                                 (p0 * (dn + 2.0) * (dn + 1.0));
            const Complex dv = a_n2 * (hn * h);
            const Complex dd = (dn + 2.0) * a_n2 * hn;
            val += dv;
            der += dd;
            hn *= h;
            if (std::abs(dv) <= 1e-17 * std::abs(val) && std::abs(dd) <= 1e-17 * std::abs(der)) {
                if (++small >= 2) {
                    break;
                }
            } else {
                small = 0;
            }
            a_m2 = a_m1;
            a_m1 = a_n;
            a_n = a_n1;
            a_n1 = a_n2;
        }
        zc += h;
        const double norm = std::abs(val);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw NonConvergenceError("whittaker_w: ODE route lost the solution");
        }
        y = val / norm;
        dy = der / norm;
        log_scale += std::log(norm);
    }
    return std::exp(log_scale - kappa * std::log(z) + 0.5 * z) * y;
}

namespace {

struct LaplacePair {
    Complex lower;  // int e^-s s^(alpha-1) (1+s/z)^(c-alpha-1) ds
    Complex upper;  // same with alpha -> alpha + 1
};

// Exp-sinh quadrature, s = exp(pi/2 sinh t), step halving until the lower
// integral settles to 1e-15 relative.
LaplacePair laplace_integrals(Complex alpha, Complex c, double z) {
    const Complex expo = c - alpha - 1.0;
    auto integrand = [&](double t, Complex& lo, Complex& up) {
        const double ls = 0.5 * kPi * std::sinh(t);
        if (ls > 700.0) {
            lo = up = 0.0;
            return;
        }
        const double s = std::exp(ls);
        const double l1p = std::log1p(s / z);
        const double jac = s * 0.5 * kPi * std::cosh(t);
        const Complex f = std::exp(-s + (alpha - 1.0) * ls + expo * l1p) * jac;
        lo = f;
        up = f * (s / (1.0 + s / z));
    };
    constexpr double t_lo = -4.5;
    constexpr double t_hi = 4.0;
    double h = 0.25;
    Complex sum_lo = 0.0;
    Complex sum_up = 0.0;
    for (double t = t_lo; t <= t_hi + 1e-12; t += h) {
        Complex lo, up;
        integrand(t, lo, up);
        sum_lo += lo;
        sum_up += up;
    }
    Complex est_lo = sum_lo * h;
    Complex est_up = sum_up * h;
    for (int level = 0; level < 8; ++level) {
        // add midpoints of the current grid
        for (double t = t_lo + 0.5 * h; t < t_hi; t += h) {
            Complex lo, up;
            integrand(t, lo, up);
            sum_lo += lo;
            sum_up += up;
        }
        h *= 0.5;
        const Complex new_lo = sum_lo * h;
        const Complex new_up = sum_up * h;
        const bool settled = std::abs(new_lo - est_lo) <= 1e-15 * std::abs(new_lo) &&
                             std::abs(new_up - est_up) <= 1e-15 * std::abs(new_up);
        est_lo = new_lo;
        est_up = new_up;
        if (settled && level >= 1) {
            return {est_lo, est_up};
        }
    }
    return {est_lo, est_up};
}

}  // namespace

Complex integral_scaled(Complex kappa, Complex b, double z) {
    b = canonical_index(b);
    const Complex a = 0.5 + b - kappa;
    const Complex c = 1.0 + 2.0 * b;
    int shift = 0;
    if (a.real() < 1.0) {
        shift = static_cast<int>(std::ceil(1.0 - a.real()));
    }
    const Complex alpha = a + static_cast<double>(shift);
    const LaplacePair I = laplace_integrals(alpha, c, z);
    // Scaled U~(alpha) = z^alpha U(alpha, c, z) = I(alpha) / Gamma(alpha).
    const Complex rg = reciprocal_gamma(alpha);
    Complex u_hi = I.upper * rg / alpha;  // U~(alpha + 1)
    Complex u_cur = I.lower * rg;         // U~(alpha)
    for (int j = shift; j > 0; --j) {
        const Complex ac = a + static_cast<double>(j);
        // U(ac-1) = (2ac - c + z) U(ac) - ac (ac - c + 1) U(ac+1)
        const Complex u_lo = ((2.0 * ac - c + z) * u_cur - ac * (ac - c + 1.0) * u_hi / z) / z;
        u_hi = u_cur;
        u_cur = u_lo;
    }
    return u_cur;
}

}  // namespace whittaker_route

Complex whittaker_w_scaled(Complex kappa, Complex b, Complex z) {
    const double x = require_positive_real(z, "whittaker_w_scaled");
    Complex scaled;
    if (x <= whittaker_route::connection_max_z) {
        scaled = whittaker_route::connection(kappa, b, x) * std::exp(0.5 * x - kappa * std::log(x));
    } else if (auto asym = whittaker_route::asymptotic_scaled(kappa, b, x)) {
        scaled = *asym;
    } else if (std::abs(b.imag()) > whittaker_route::ode_min_imag_index) {
        scaled = whittaker_route::ode_scaled(kappa, b, x);
    } else {
        scaled = whittaker_route::integral_scaled(kappa, b, x);
    }
    return require_finite(scaled, "whittaker_w_scaled");
}

Complex whittaker_w(Complex kappa, Complex b, Complex z) {
    const double x = require_positive_real(z, "whittaker_w");
    if (x <= whittaker_route::connection_max_z) {
        return require_finite(whittaker_route::connection(kappa, b, x), "whittaker_w");
    }
    const Complex prefactor = std::exp(kappa * std::log(x) - 0.5 * x);
    if (prefactor == Complex(0.0)) {
        return 0.0;
    }
    return require_finite(prefactor * whittaker_w_scaled(kappa, b, z), "whittaker_w");
}

Complex whittaker_w_dz(Complex kappa, Complex b, Complex z) {
    const double x = require_positive_real(z, "whittaker_w_dz");
    const Complex w0 = whittaker_w(kappa, b, z);
    const Complex w1 = whittaker_w(kappa + 1.0, b, z);
    return ((0.5 * x - kappa) * w0 - w1) / x;
}

}  // namespace qsd
