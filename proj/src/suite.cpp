#include "qsd/suite.hpp"

#include "qsd/distribution.hpp"
#include "qsd/errors.hpp"
#include "qsd/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <string>

namespace qsd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double rel_diff(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

class Collector {
public:
    Collector(SuiteResult& out, std::string prefix) : out_(out), prefix_(std::move(prefix)) {}

    void check(const std::string& name, double residual, double tol) {
        out_.checks.push_back(make_check(prefix_ + name, residual, tol));
    }

    void flag(const std::string& name, bool pass, double residual, double tol) {
        out_.checks.push_back({prefix_ + name, pass, residual, tol});
    }

    void result(const std::string& name, double v, Provenance p, std::string method = {}) {
        out_.results.push_back({prefix_ + name, v, p, std::move(method)});
    }

    // Runs body; a thrown error turns into a failed check carrying the message.
    void guarded(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            out_.checks.push_back({prefix_ + name + " [" + e.what() + "]", false, kNaN, 0.0});
        }
    }

    void note_im(double im) { out_.max_im_residue = std::max(out_.max_im_residue, im); }

private:
    SuiteResult& out_;
    std::string prefix_;
};

}  // namespace

bool SuiteResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

SuiteResult verify_barrier(const EigenSystem& eig, const QuadratureSpec& quad) {
    SuiteResult out;
    const double A = eig.A();
    const double lambda = eig.lambda();
    const Complex xi = eig.xi();
    const Complex z = 2.0 / A;
    Collector c(out, fmt("A=%.17g/", A));

    c.result("lambda", lambda, Provenance::closed_form);
    c.result("xi_re", xi.real(), Provenance::closed_form);
    c.result("xi_im", xi.imag(), Provenance::closed_form);
    c.result("C", eig.C(), Provenance::closed_form);

    // spectral
    c.guarded("bracket", [&] {
        const LambdaBracket b = lambda_bounds(A);
        const bool inside = lambda > b.lo && lambda < b.hi;
        const double outside = inside ? 0.0 : std::max(b.lo - lambda, lambda - b.hi);
        c.flag("bracket", inside, outside, 0.0);
    });
    c.check("eigencondition", eig.residual() / std::max(eig.scale(), 1e-300), 1e-9);
    c.check("xi_round_trip", std::abs(xi * xi + 8.0 * lambda - 1.0), 1e-12);
    c.guarded("normalizer_dual", [&] {
        const double plus = normalizer_kummer(A, xi);
        const double minus = normalizer_kummer(A, -xi);
        c.check("normalizer_dual(+xi)", rel_diff(plus, eig.C()), 1e-8);
        c.check("normalizer_dual(-xi)", rel_diff(minus, eig.C()), 1e-8);
        c.check("normalizer_dual(+xi,-xi)", rel_diff(plus, minus), 1e-8);
        c.check("normalizer_sign_flip", rel_diff(normalizer(A, -xi), eig.C()), 1e-10);
    });
    c.guarded("derivative_identity", [&] {
        const Complex w = whittaker_w(0.0, 0.5 * xi, z);
        const Complex dw = whittaker_w_dz(0.0, 0.5 * xi, z);
        c.check("derivative_identity", rel_diff(dw, 0.5 * w), 1e-8);
    });
    c.guarded("gamma_product_identity", [&] {
        const Complex w = whittaker_w(0.0, 0.5 * xi, z);
        const Complex m = whittaker_m(1.0, 0.5 * xi, z);
        const Complex lhs = lambda * A * gamma(0.5 * (xi - 1.0)) * w * m;
        c.check("gamma_product_identity", rel_diff(lhs, -gamma(xi + 1.0)), 1e-8);
    });

    // normalization and distribution
    c.guarded("normalization", [&] {
        const double n = normalization_check(eig, quad);
        c.result("normalization_defect", n, Provenance::quadrature);
        c.check("normalization", n, 1e-10);
    });
    c.guarded("endpoints", [&] {
        const double worst = std::max({std::abs(qsd_cdf(eig, 0.0)), std::abs(qsd_cdf(eig, A) - 1.0),
                                       std::abs(qsd_pdf(eig, A)), std::abs(qsd_pdf(eig, 0.0))});
        c.flag("endpoints", worst == 0.0, worst, 0.0);
    });
    c.guarded("cdf_derivative", [&] {
        const double h = 1e-5 * A;
        double worst = 0.0;
        // bulk points; in the far left tail a step of 1e-5 A is too coarse for e^{-2/x}
        for (int i = 0; i < 20; ++i) {
            const double x = A * (0.2 + 0.75 * i / 19.0);
            const double numeric = (qsd_cdf(eig, x + h) - qsd_cdf(eig, x - h)) / (2.0 * h);
            worst = std::max(worst, rel_diff(numeric, qsd_pdf(eig, x)));
        }
        c.check("cdf_derivative", worst, 1e-6);
    });
    c.guarded("domination", [&] {
        double violation = 0.0;
        double prev = 0.0;
        double monotone = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = A * (i + 1) / 1000.0;
            const double q = qsd_cdf(eig, x);
            violation = std::max(violation, stationary_cdf(x) - q);
            monotone = std::max(monotone, prev - q);
            prev = q;
        }
        c.flag("domination", violation <= 0.0, std::max(violation, 0.0), 0.0);
        c.flag("cdf_monotone", monotone <= 0.0, std::max(monotone, 0.0), 0.0);
    });

    // moments against the oracle
    std::vector<double> orders = verify_orders;
    if (eig.xi_is_real() && xi.real() != 0.0) {
        for (int sign : {1, -1}) {
            orders.push_back(singular_order(eig, sign, 0));
            orders.push_back(singular_order(eig, sign, 1));
        }
    }
    for (double s : orders) {
        const std::string tag = fmt("(s=%.17g)", s);
        c.guarded("moment" + tag, [&] {
            const MomentResult m = moment_frac(eig, s);
            const double q = quad_moment(eig, s, quad);
            c.result("M" + tag, m.value, Provenance::closed_form, method_name(m));
            c.result("M_quad" + tag, q, Provenance::quadrature);
            c.check("oracle" + tag, rel_diff(m.value, q), 1e-8);
            if (m.recurrence_residual) {
                const double scale = std::max(1.0, lambda * std::pow(A, s));
                c.check("recurrence" + tag, *m.recurrence_residual / scale, 1e-8);
            }
            c.flag("positive" + tag, m.value > 0.0, m.value, 0.0);
            c.check("im_residue" + tag, m.im_residue, 1e-9 * std::max(1.0, std::abs(m.value)));
            c.note_im(m.im_residue);
            c.check("head_bound" + tag, head_log10_bound(eig, s, quad), -300.0);
        });
    }
    c.guarded("xi_sign_invariance", [&] {
        double worst = 0.0;
        for (double s : {-0.7, 0.3, 2.5}) {
            worst = std::max(worst, rel_diff(moment_regular(eig, s, -1), moment_regular(eig, s, 1)));
        }
        c.check("xi_sign_invariance", worst, 1e-9);
    });

    // integer moments
    c.guarded("integer", [&] {
        double worst = 0.0;
        for (int n = 0; n <= 8; ++n) {
            const MomentResult mi = moment_integer(eig, n);
            const MomentResult mf = moment_frac(eig, n);
            worst = std::max(worst, rel_diff(mf.value, mi.value));
            c.note_im(std::max(mi.im_residue, mf.im_residue));
        }
        c.check("integer_consistency", worst, 1e-10);
        const double m1 = moment_frac(eig, 1.0).value;
        c.check("first_moment", rel_diff(m1, A - 1.0 / lambda), 1e-10);
    });

    // special values and singular branch
    if (eig.xi_is_real() && xi.real() != 0.0) {
        for (int sign : {1, -1}) {
            const std::string tag = sign > 0 ? "(+)" : "(-)";
            c.guarded("special_value" + tag, [&] {
                const MomentResult sv = moment_special_value(eig, sign);
                const MomentResult mf = moment_frac(eig, sv.s);
                c.check("special_value" + tag, rel_diff(mf.value, sv.value), 1e-9);
                c.check("special_value_ratio" + tag, rel_diff(special_value_ratio(eig, sign), sv.value),
                        1e-9);
            });
            c.guarded("singular_continuity" + tag, [&] {
                const double s0 = singular_order(eig, sign);
                const double base = moment_singular_base(eig, sign).value;
                const double e1 = std::abs(moment_frac(eig, s0 + 1e-2).value - base);
                const double e2 = std::abs(moment_frac(eig, s0 + 1e-3).value - base);
                c.check("singular_continuity" + tag, e2 / std::max(e1, 1e-300), 1.0);
            });
        }
    }

    // log-moment
    c.guarded("log_moment", [&] {
        const double closed = log_moment(eig);
        const double q = quad_log_moment(eig, quad);
        c.result("log_moment", closed, Provenance::closed_form);
        c.result("log_moment_quad", q, Provenance::quadrature);
        c.check("log_moment", std::abs(closed - q) / std::max(1.0, std::abs(q)), 1e-7);
        c.flag("log_moment_below_log_A", closed < std::log(A), closed - std::log(A), 0.0);
    });

    c.result("max_im_residue", out.max_im_residue, Provenance::identity);
    c.check("realness", out.max_im_residue, 1e-10);
    return out;
}

}  // namespace qsd
