#include "qsd/spectral.hpp"

#include "qsd/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qsd {

namespace {

constexpr int kMaxWidenings = 8;
constexpr double kWidenFactor = 1.5;
constexpr int kMaxIterations = 200;
constexpr int kBracketScan = 128;
constexpr int kSubBracketSamples = 50;
constexpr double kSubBracketFloor = 1e-8;

void require_barrier(double A) {
    if (!(A >= min_barrier && A <= max_barrier)) {
        throw DomainError("barrier level A must lie in [0.01, 1e6]");
    }
}

double real_part_checked(Complex v, const char* what) {
    if (std::abs(v.imag()) >= 1e-9 * std::abs(v.real()) + 1e-12) {
        throw ConsistencyError(std::string(what) + ": imaginary part not negligible");
    }
    return v.real();
}

// Brent's method on [a, b] with fa * fb < 0; stops when the bracket is below
// tol * |b|.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double tol) {
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a;
    double fc = fa;
    double d = b - a;
    bool bisected = true;
    for (int it = 0; it < kMaxIterations; ++it) {
        if (fb == 0.0) {
            return b;
        }
        const double xtol = tol * std::abs(b) + 1e-300;
        if (std::abs(b - a) <= xtol) {
            return b;
        }
        double s;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double m = 0.25 * (3.0 * a + b);
        const bool outside = !((s > std::min(m, b) && s < std::max(m, b)));
        const bool slow = bisected ? std::abs(s - b) >= 0.5 * std::abs(b - c)
                                   : std::abs(s - b) >= 0.5 * std::abs(c - d);
        const bool tiny = bisected ? std::abs(b - c) < xtol : std::abs(c - d) < xtol;
        if (outside || slow || tiny) {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        const double fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if ((fa < 0.0) != (fs < 0.0)) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    throw NonConvergenceError("solve_lambda: iteration cap reached");
}

}  // namespace

EigenSystem EigenSystem::at(double A, double lambda) {
    if (!(A > 0.0) || !(lambda > 0.0) || !std::isfinite(A) || !std::isfinite(lambda)) {
        throw DomainError("EigenSystem: A and lambda must be positive");
    }
    const Complex xi = xi_of_lambda(lambda);
    const Complex z = 2.0 / A;
    const Complex w1 = whittaker_w(1.0, 0.5 * xi, z);
    const Complex w0 = whittaker_w(0.0, 0.5 * xi, z);
    const double C = normalizer(A, xi);
    const Complex omx = xi.imag() == 0.0 ? Complex(8.0 * lambda / (1.0 + xi.real()), 0.0) : 1.0 - xi;
    return EigenSystem(A, lambda, xi, omx, C, std::abs(w1), std::abs(w0));
}

EigenSystem EigenSystem::with_lambda(double lambda) const {
    EigenSystem out = at(A_, lambda);
    out.C_ = C_;
    return out;
}

LambdaBracket lambda_bounds(double A) {
    if (!(A > 0.0) || !std::isfinite(A)) {
        throw DomainError("lambda_bounds: A must be positive");
    }
    const double lo = 1.0 / A + 1.0 / (A * (A + 1.0));
    const double hi = 1.0 / A + (1.0 + std::sqrt(4.0 * A + 1.0)) / (2.0 * A * A);
    return {lo, hi};
}

Complex xi_of_lambda(double lambda) {
    const double r = 1.0 - 8.0 * lambda;
    if (r >= 0.0) {
        return {std::sqrt(r), 0.0};
    }
    return {0.0, std::sqrt(-r)};
}

double eigen_function(double A, double lambda) {
    const Complex xi = xi_of_lambda(lambda);
    return real_part_checked(whittaker_w(1.0, 0.5 * xi, 2.0 / A), "eigen_function");
}

EigenSystem solve_lambda(double A, double tol) {
    require_barrier(A);
    if (!(tol >= 1e-14 && tol <= 1e-6)) {
        throw DomainError("solve_lambda: tol must lie in [1e-14, 1e-6]");
    }
    const LambdaBracket br = lambda_bounds(A);
    auto g = [A](double l) { return eigen_function(A, l); };

    // The bracket can hold several roots for small A; scan it and refine the
    // first sign change.
    const double lo = br.lo;
    double hi = br.hi;
    const double glo = g(lo);
    double a = lo;
    double ga = glo;
    double b = 0.0;
    double gb = 0.0;
    bool found = glo == 0.0;
    double seg_lo = lo;
    for (int widen = 0; !found; ++widen) {
        if (widen > kMaxWidenings) {
            throw BracketError("solve_lambda: no sign change on the widened bracket");
        }
        for (int i = 1; i <= kBracketScan && !found; ++i) {
            b = seg_lo + (hi - seg_lo) * i / kBracketScan;
            gb = g(b);
            if (gb == 0.0 || (gb < 0.0) != (ga < 0.0)) {
                found = true;
            } else {
                a = b;
                ga = gb;
            }
        }
        if (!found) {
            seg_lo = hi;
            hi *= kWidenFactor;
        }
    }

    // No sign change may occur below the lower bound.
    const double floor = std::min(kSubBracketFloor, 0.5 * lo);
    const double step = std::log(lo / floor) / kSubBracketSamples;
    for (int i = 0; i < kSubBracketSamples; ++i) {
        const double l = floor * std::exp(step * i);
        const double gl = g(l);
        if (gl != 0.0 && glo != 0.0 && (gl < 0.0) != (glo < 0.0)) {
            throw ConsistencyError("solve_lambda: sign change below the lower bound");
        }
    }

    double lambda;
    if (glo == 0.0) {
        lambda = lo;
    } else if (gb == 0.0) {
        lambda = b;
    } else {
        lambda = brent(g, a, b, ga, gb, tol);
    }
    return EigenSystem::at(A, lambda);
}

double normalizer(double A, Complex xi) {
    const Complex w0 = whittaker_w(0.0, 0.5 * xi, 2.0 / A);
    const double c = 1.0 / (std::exp(-1.0 / A) * real_part_checked(w0, "normalizer"));
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ConsistencyError("normalizer: nonpositive normalizing constant");
    }
    return c;
}

double normalizer_kummer(double A, Complex xi) {
    const Complex pre = (1.0 - xi) * 0.5 * reciprocal_gamma(1.0 - xi) *
                        std::exp(0.5 * (1.0 + xi) * std::log(0.5 * A)) * gamma(0.5 * (1.0 - xi));
    const Complex f = kummer_1f1(-0.5 * (1.0 + xi), 1.0 - xi, 2.0 / A);
    return real_part_checked(pre * f, "normalizer_kummer");
}

}  // namespace qsd
