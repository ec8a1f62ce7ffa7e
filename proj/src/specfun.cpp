#include "qsd/specfun.hpp"

#include "qsd/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace qsd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleTol = 1e-12;

// Godfrey's Lanczos coefficients, g = 607/128, n = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

bool near_nonpositive_integer(Complex z, double tol = kPoleTol) {
    const double n = std::round(z.real());
    return n <= 0.0 && std::abs(z - Complex(n, 0.0)) < tol;
}

// sin(pi z) and cos(pi z) with the real part reduced to [-1/2, 1/2] first, so
// that zeros at integers come out exact.
Complex sin_pi(Complex z) {
    const double n = std::round(z.real());
    const Complex r(z.real() - n, z.imag());
    const Complex v = std::sin(kPi * r);
    return std::fmod(n, 2.0) == 0.0 ? v : -v;
}

Complex cos_pi(Complex z) {
    const double n = std::round(z.real());
    const Complex r(z.real() - n, z.imag());
    const Complex v = std::cos(kPi * r);
    return std::fmod(n, 2.0) == 0.0 ? v : -v;
}

Complex lanczos_sum(Complex zm1) {
    Complex x = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) {
        x += kLanczos[k] / (zm1 + static_cast<double>(k));
    }
    return x;
}

// Gamma for Re z >= 1/2.
Complex gamma_right(Complex z) {
    const Complex zm1 = z - 1.0;
    const Complex t = zm1 + kLanczosG + 0.5;
    const Complex x = lanczos_sum(zm1);
    const double sqrt2pi = std::sqrt(2.0 * kPi);
    if (z.imag() == 0.0) {
        // Split the power so t^(z-1/2) does not overflow before e^-t pulls it back.
        const double tr = t.real();
        const double half = 0.5 * (zm1.real() + 0.5);
        const double p = std::pow(tr, half);
        return Complex(sqrt2pi * p * (std::exp(-tr) * p) * x.real(), 0.0);
    }
    return sqrt2pi * std::exp((zm1 + 0.5) * std::log(t) - t) * x;
}

Complex log_gamma_right(Complex z) {
    const Complex zm1 = z - 1.0;
    const Complex t = zm1 + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(zm1));
}

// Asymptotic digamma for |z| >= 12, Re z > 0.
Complex digamma_asymptotic(Complex z) {
    const Complex w = 1.0 / (z * z);
    // B_{2k} / (2k) for k = 1..7
    constexpr std::array<double, 7> c = {
        1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
        1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
    };
    Complex tail = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        tail = (tail + *it) * w;
    }
    return std::log(z) - 0.5 / z - tail;
}

}  // namespace

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0) || max_terms < 10 || consecutive_small_terms < 1) {
        throw DomainError("SeriesControl: need rel_tol > 0, max_terms >= 10, "
                          "consecutive_small_terms >= 1");
    }
}

bool is_effectively_real(Complex v, double tol) {
    return std::abs(v.imag()) <= tol * std::max(1.0, std::abs(v.real()));
}

Complex require_finite(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw OverflowError(std::string(what) + ": result not representable");
    }
    return v;
}

Complex gamma(Complex z) {
    if (near_nonpositive_integer(z)) {
        throw PoleError("gamma: pole at nonpositive integer");
    }
    Complex v;
    if (z.real() < 0.5) {
        v = kPi / (sin_pi(z) * gamma_right(1.0 - z));
    } else {
        v = gamma_right(z);
    }
    return require_finite(v, "gamma");
}

Complex reciprocal_gamma(Complex z) {
    const double n = std::round(z.real());
    if (n <= 0.0 && z == Complex(n, 0.0)) {
        return 0.0;
    }
    if (z.real() < 0.5) {
        // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi; finite even where Gamma is huge.
        return require_finite(sin_pi(z) * gamma_right(1.0 - z) / kPi, "reciprocal_gamma");
    }
    const Complex g = gamma_right(z);
    if (std::abs(g) == 0.0 || !std::isfinite(std::abs(g))) {
        return require_finite(std::exp(-log_gamma_right(z)), "reciprocal_gamma");
    }
    return 1.0 / g;
}

Complex log_gamma(Complex z) {
    if (near_nonpositive_integer(z)) {
        throw PoleError("log_gamma: pole at nonpositive integer");
    }
    if (z.real() < 0.5) {
        return std::log(kPi) - std::log(sin_pi(z)) - log_gamma_right(1.0 - z);
    }
    return log_gamma_right(z);
}

Complex digamma(Complex z) {
    if (near_nonpositive_integer(z)) {
        throw PoleError("digamma: pole at nonpositive integer");
    }
    if (z.real() < 0.5) {
        // psi(z) = psi(1 - z) - pi cot(pi z)
        return digamma(1.0 - z) - kPi * cos_pi(z) / sin_pi(z);
    }
    Complex shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    return require_finite(digamma_asymptotic(z) + shift, "digamma");
}

Complex pochhammer(Complex z, int n) {
    if (n < 0) {
        throw DomainError("pochhammer: n must be nonnegative");
    }
    Complex p = 1.0;
    for (int k = 0; k < n; ++k) {
        p *= z + static_cast<double>(k);
    }
    return require_finite(p, "pochhammer");
}

namespace {

// Ascending power series of pFq with p == q == N. The term after index n is
// term_n * prod(a_i + n) / prod(b_i + n) * z / (n + 1). Summation stops on an
// exact zero term (terminating series) or after consecutive_small_terms terms
// below rel_tol * |partial sum|.
template <std::size_t N>
Complex hyper_series(const std::array<Complex, N>& a, const std::array<Complex, N>& b, Complex z,
                     const SeriesControl& ctl, const char* name) {
    ctl.validate();
    Complex sum = 0.0;
    Complex term = 1.0;
    int small = 0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        sum += term;
        if (term == Complex(0.0)) {
            return require_finite(sum, name);
        }
        if (std::abs(term) < ctl.rel_tol * std::abs(sum)) {
            if (++small >= ctl.consecutive_small_terms) {
                return require_finite(sum, name);
            }
        } else {
            small = 0;
        }
        const double dn = static_cast<double>(n);
        Complex num = 1.0;
        for (const Complex& ai : a) {
            num *= ai + dn;
        }
        if (num == Complex(0.0)) {
            // next term vanishes identically: polynomial case
            return require_finite(sum, name);
        }
        Complex den = 1.0;
        for (const Complex& bi : b) {
            const Complex d = bi + dn;
            if (std::abs(d) < kPoleTol) {
                throw DenominatorPoleError(std::string(name) +
                                           ": denominator parameter at nonpositive integer");
            }
            den *= d;
        }
        term *= num / den * z / (dn + 1.0);
        if (!std::isfinite(std::abs(term))) {
            throw OverflowError(std::string(name) + ": series term overflow");
        }
    }
    throw NonConvergenceError(std::string(name) + ": max_terms reached");
}

}  // namespace

Complex kummer_1f1(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
    return hyper_series<1>({a}, {b}, z, ctl, "kummer_1f1");
}

Complex hyp_2f2(Complex a1, Complex a2, Complex b1, Complex b2, Complex z,
                const SeriesControl& ctl) {
    return hyper_series<2>({a1, a2}, {b1, b2}, z, ctl, "hyp_2f2");
}

}  // namespace qsd
