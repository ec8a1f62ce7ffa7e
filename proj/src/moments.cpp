#include "qsd/moments.hpp"

#include "qsd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace qsd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kContourNodes = 16;

struct Evaluated {
    Complex value;
    MomentMethod method;
    int shift;
};

void require_order(double s) {
    if (!(s >= min_order && s <= max_order)) {
        throw DomainError("moment order must lie in [-50, 50]");
    }
}

bool is_nonnegative_integer(double s) { return s >= 0.0 && s == std::floor(s); }

// 1 + sign xi, without cancellation for real xi near 1.
Complex one_plus_signed_xi(const EigenSystem& eig, int sign) {
    return sign > 0 ? 2.0 - eig.one_minus_xi() : eig.one_minus_xi();
}

void require_real_xi(const EigenSystem& eig, const char* what) {
    if (!eig.xi_is_real()) {
        throw RegimeError(std::string(what) + ": xi is imaginary (lambda > 1/8)");
    }
    if (eig.xi().real() == 0.0) {
        throw RegimeError(std::string(what) + ": xi = 0, the two singular families merge");
    }
}

// s(s-1) + 2 lambda = (s - 1 + h)(s - h), h = (1 - xi)/2.
Complex quadratic(Complex s, Complex h) { return (s - 1.0 + h) * (s - h); }

Complex regular_formula(double A, double lambda, Complex h, double C, Complex s) {
    const Complex z = 2.0 / A;
    const Complex a_pow_s = std::exp(s * std::log(A));
    const Complex f = hyp_2f2(1.0, -s, (2.0 - s) - h, (1.0 - s) + h, z);
    const Complex t1 = 2.0 * lambda * a_pow_s / quadratic(s, h) * f;
    const Complex rg = reciprocal_gamma(-s);
    if (rg == Complex(0.0)) {
        return t1;
    }
    const Complex t2 = C * std::exp(s * std::log(2.0)) * gamma((1.0 - s) - h) * gamma(h - s) * rg;
    return t1 + t2;
}

// Mean of the regular formula over a circle around s; exact for the entire
// function s -> M_s and free of the pole pairs sitting on the real axis.
Complex contour_mean(const EigenSystem& eig, double s) {
    const Complex h = 0.5 * eig.one_minus_xi();
    Complex acc = 0.0;
    for (int j = 0; j < kContourNodes; ++j) {
        const double theta = 2.0 * kPi * (j + 0.5) / kContourNodes;
        const Complex node = s + singular_contour_radius * Complex(std::cos(theta), std::sin(theta));
        acc += regular_formula(eig.A(), eig.lambda(), h, eig.C(), node);
    }
    return acc / static_cast<double>(kContourNodes);
}

Complex singular_base_value(const EigenSystem& eig, int sign, const SeriesControl& ctl) {
    ctl.validate();
    const Complex op = one_plus_signed_xi(eig, sign);
    const Complex p = -0.5 * op;   // -1/2 - sign xi/2
    const Complex q = 2.0 - op;    // 1 - sign xi
    const double z = 2.0 / eig.A();
    const double log_z = std::log(z);
    Complex psi1 = digamma(1.0);
    Complex psi2 = digamma(q);
    Complex psi3 = digamma(p);
    Complex term = 1.0;
    Complex sum = 0.0;
    int small = 0;
    for (int j = 0; j < ctl.max_terms; ++j) {
        const Complex contrib = term * (psi1 + psi2 - psi3 - log_z);
        sum += contrib;
        if (std::abs(contrib) < ctl.rel_tol * std::abs(sum)) {
            if (++small >= ctl.consecutive_small_terms) {
                const Complex signed_xi = op - 1.0;
                const Complex pre = 2.0 * eig.lambda() / signed_xi * std::exp(0.5 * op * std::log(eig.A()));
                return require_finite(pre * sum, "moment_singular_base");
            }
        } else {
            small = 0;
        }
        const double dj = static_cast<double>(j);
        term *= (p + dj) * z / ((dj + 1.0) * (q + dj));
        psi1 += 1.0 / (1.0 + dj);
        psi2 += 1.0 / (q + dj);
        psi3 += 1.0 / (p + dj);
    }
    throw NonConvergenceError("moment_singular_base: max_terms reached");
}

Complex singular_shifted_value(const EigenSystem& eig, int sign, int k, Complex base) {
    const Complex op = one_plus_signed_xi(eig, sign);  // 1 + sign xi
    const double A = eig.A();
    // sum_{j<k} (-A/2)^j j! (op)_j / (2 + op/2)_j
    Complex sum = 0.0;
    Complex t = 1.0;
    for (int j = 0; j < k; ++j) {
        sum += t;
        const double dj = static_cast<double>(j);
        t *= -0.5 * A * (dj + 1.0) * (op + dj) / (2.0 + 0.5 * op + dj);
    }
    const Complex tail = 2.0 * eig.lambda() / (2.0 + op) * std::exp((1.0 + 0.5 * op) * std::log(A)) * sum;
    Complex pre = 1.0;
    for (int j = 0; j < k; ++j) {
        const double dj = static_cast<double>(j);
        pre *= -2.0 * (1.0 + 0.5 * op + dj) / ((dj + 1.0) * (op + dj));
    }
    return require_finite(pre * (base - tail), "moment_singular_shifted");
}

Evaluated evaluate(const EigenSystem& eig, double s) {
    require_order(s);
    const Complex h = 0.5 * eig.one_minus_xi();
    if (is_nonnegative_integer(s)) {
        return {regular_formula(eig.A(), eig.lambda(), h, eig.C(), s), MomentMethod::regular_2F2, 0};
    }
    double best = INFINITY;
    int best_sign = 0;
    int best_k = 0;
    for (int sign : {1, -1}) {
        const Complex s0 = 0.5 * one_plus_signed_xi(eig, sign);
        const int k = static_cast<int>(std::round(s - s0.real()));
        if (k < 0) {
            continue;
        }
        const double d = std::abs(Complex(s, 0.0) - (s0 + static_cast<double>(k)));
        if (d < best) {
            best = d;
            best_sign = sign;
            best_k = k;
        }
    }
    const bool merged = eig.xi_is_real() && eig.xi().real() == 0.0;
    if (best <= singular_match_tol && eig.xi_is_real() && !merged) {
        const Complex base = singular_base_value(eig, best_sign, {});
        if (best_k == 0) {
            return {base, MomentMethod::singular_base, 0};
        }
        return {singular_shifted_value(eig, best_sign, best_k, base), MomentMethod::singular_shifted,
                best_k};
    }
    if (best < singular_band) {
        return {contour_mean(eig, s), MomentMethod::regular_2F2, 0};
    }
    return {regular_formula(eig.A(), eig.lambda(), h, eig.C(), s), MomentMethod::regular_2F2, 0};
}

double real_value(Complex v, double* im_residue, const char* what) {
    const double re = v.real();
    const double im = std::abs(v.imag());
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw OverflowError(std::string(what) + ": moment not representable");
    }
    if (im > 1e-9 * std::max(1.0, std::abs(re))) {
        throw ConsistencyError(std::string(what) + ": imaginary residue too large");
    }
    if (im_residue) {
        *im_residue = im;
    }
    return re;
}

double residual_with(const EigenSystem& eig, double s, double m_s, double m_prev) {
    const Complex h = 0.5 * eig.one_minus_xi();
    const double coeff = 0.5 * quadratic(s, h).real();
    const double rhs = eig.lambda() * std::pow(eig.A(), s);
    return std::abs(coeff * m_s + s * m_prev - rhs);
}

std::optional<double> residual_for(const EigenSystem& eig, double s, double m_s) {
    if (s - 1.0 < min_order) {
        return std::nullopt;
    }
    const double prev = real_value(evaluate(eig, s - 1.0).value, nullptr, "recurrence_residual");
    return residual_with(eig, s, m_s, prev);
}

MomentResult make_result(const EigenSystem& eig, double s, Complex v, MomentMethod method, int shift,
                         const char* what) {
    MomentResult r;
    r.s = s;
    r.method = method;
    r.shift = shift;
    r.value = real_value(v, &r.im_residue, what);
    r.recurrence_residual = residual_for(eig, s, r.value);
    return r;
}

}  // namespace

std::string method_name(const MomentResult& r) {
    switch (r.method) {
        case MomentMethod::regular_2F2:
            return "regular_2F2";
        case MomentMethod::singular_base:
            return "singular_base";
        case MomentMethod::singular_shifted:
            return "singular_shifted(" + std::to_string(r.shift) + ")";
        case MomentMethod::integer_closed_form:
            return "integer_closed_form";
        case MomentMethod::special_value:
            return "special_value";
    }
    return "unknown";
}

Complex moment_regular(const EigenSystem& eig, Complex s, int xi_sign) {
    if (xi_sign > 0) {
        return regular_formula(eig.A(), eig.lambda(), 0.5 * eig.one_minus_xi(), eig.C(), s);
    }
    // h -> (1 + xi)/2 and the normalizer rebuilt from -xi
    const double c = normalizer(eig.A(), -eig.xi());
    return regular_formula(eig.A(), eig.lambda(), 1.0 - 0.5 * eig.one_minus_xi(), c, s);
}

MomentResult moment_integer(const EigenSystem& eig, int n) {
    if (n < 0) {
        throw DomainError("moment_integer: n must be nonnegative");
    }
    require_order(n);
    MomentResult r;
    r.s = n;
    r.method = MomentMethod::integer_closed_form;
    if (n == 0) {
        r.value = 1.0;
        r.recurrence_residual = 0.0;
        return r;
    }
    const Complex h = 0.5 * eig.one_minus_xi();
    const double s = n;
    const Complex f = hyp_2f2(1.0, -s, (2.0 - s) - h, (1.0 - s) + h, 2.0 / eig.A());
    const Complex v = 2.0 * eig.lambda() * std::pow(eig.A(), s) / quadratic(s, h) * f;
    r.value = real_value(v, &r.im_residue, "moment_integer");
    const double prev = moment_integer(eig, n - 1).value;
    r.recurrence_residual = residual_with(eig, s, r.value, prev);
    return r;
}

MomentResult moment_frac(const EigenSystem& eig, double s) {
    const Evaluated e = evaluate(eig, s);
    return make_result(eig, s, e.value, e.method, e.shift, "moment_frac");
}

double singular_order(const EigenSystem& eig, int sign, int k) {
    require_real_xi(eig, "singular_order");
    if (k < 0) {
        throw DomainError("singular_order: k must be nonnegative");
    }
    return 0.5 * one_plus_signed_xi(eig, sign).real() + k;
}

MomentResult moment_singular_base(const EigenSystem& eig, int sign, const SeriesControl& ctl) {
    require_real_xi(eig, "moment_singular_base");
    const double s = singular_order(eig, sign);
    return make_result(eig, s, singular_base_value(eig, sign, ctl), MomentMethod::singular_base, 0,
                       "moment_singular_base");
}

MomentResult moment_singular_shifted(const EigenSystem& eig, int sign, int k, const SeriesControl& ctl) {
    require_real_xi(eig, "moment_singular_shifted");
    if (k < 1) {
        throw DomainError("moment_singular_shifted: k must be positive");
    }
    const double s = singular_order(eig, sign, k);
    require_order(s);
    const Complex v = singular_shifted_value(eig, sign, k, singular_base_value(eig, sign, ctl));
    return make_result(eig, s, v, MomentMethod::singular_shifted, k, "moment_singular_shifted");
}

MomentResult moment_special_value(const EigenSystem& eig, int sign) {
    if (!eig.xi_is_real()) {
        throw RegimeError("moment_special_value: order is complex when lambda > 1/8");
    }
    const Complex op = one_plus_signed_xi(eig, sign);
    const double s = 0.5 * op.real() - 1.0;
    const Complex v = (2.0 - op) * 0.25 * std::exp(0.5 * op * std::log(eig.A()));
    return make_result(eig, s, v, MomentMethod::special_value, 0, "moment_special_value");
}

double special_value_ratio(const EigenSystem& eig, int sign) {
    if (!eig.xi_is_real()) {
        throw RegimeError("special_value_ratio: order is complex when lambda > 1/8");
    }
    const double A = eig.A();
    const Complex op = one_plus_signed_xi(eig, sign);
    // xi/2 - sign/2, up to the sign that W ignores
    const Complex b = 0.5 * (2.0 - op);
    const Complex z = 2.0 / A;
    const Complex ratio = whittaker_w(0.5, b, z) / whittaker_w(0.0, 0.5 * eig.xi(), z);
    const Complex v = std::sqrt(0.5 * A) * std::exp((0.5 * op - 1.0) * std::log(A)) * ratio;
    return real_value(v, nullptr, "special_value_ratio");
}

double recurrence_residual(const EigenSystem& eig, double s) {
    require_order(s);
    require_order(s - 1.0);
    const double m = real_value(evaluate(eig, s).value, nullptr, "recurrence_residual");
    const double prev = real_value(evaluate(eig, s - 1.0).value, nullptr, "recurrence_residual");
    return residual_with(eig, s, m, prev);
}

double log_moment(const EigenSystem& eig) {
    const double m = moment_frac(eig, -1.0).value;
    return std::log(eig.A()) - (m - 0.5) / eig.lambda();
}

double limit_moment(double s) {
    if (!(s < 1.0)) {
        throw DomainError("limit_moment: the limit is finite only for s < 1");
    }
    return std::pow(2.0, s) * gamma(1.0 - s).real();
}

}  // namespace qsd
