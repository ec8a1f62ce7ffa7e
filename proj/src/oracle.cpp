#include "qsd/oracle.hpp"

#include "qsd/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace qsd {

namespace {

constexpr int kInitialPanels = 16;

// Kronrod 15-point nodes on [0, 1] (node 0 last) and weights; the Gauss
// 7-point rule uses the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Panel& l, const Panel& r) const {
        if (l.error != r.error) {
            return l.error < r.error;
        }
        return l.a > r.a;
    }
};

Panel kronrod(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = kWgk[7] * fc;
    double g = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double pair = f(c - dx) + f(c + dx);
        k += kWgk[i] * pair;
        if (i % 2 == 1) {
            g += kWg[i / 2] * pair;
        }
    }
    k *= h;
    g *= h;
    if (!std::isfinite(k)) {
        throw OverflowError("integrate: non-finite integrand");
    }
    return {a, b, k, std::abs(k - g)};
}

double ordered_sum(std::vector<Panel> panels, double Panel::*field) {
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    double acc = 0.0;
    for (const Panel& p : panels) {
        acc += p.*field;
    }
    return acc;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 10 || !(underflow_cutoff > 0.0)) {
        throw DomainError("QuadratureSpec: need positive tolerances, max_subdivisions >= 10 and a "
                          "positive cutoff");
    }
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec) {
    spec.validate();
    if (!(b > a)) {
        throw DomainError("integrate: need a < b");
    }
    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    double value = 0.0;
    double error = 0.0;
    const bool logspace = a > 0.0;
    for (int i = 0; i < kInitialPanels; ++i) {
        double lo;
        double hi;
        if (logspace) {
            const double r = std::log(b / a);
            lo = a * std::exp(r * i / kInitialPanels);
            hi = i + 1 == kInitialPanels ? b : a * std::exp(r * (i + 1) / kInitialPanels);
        } else {
            lo = a + (b - a) * i / kInitialPanels;
            hi = i + 1 == kInitialPanels ? b : a + (b - a) * (i + 1) / kInitialPanels;
        }
        if (i == 0) {
            lo = a;
        }
        Panel p = kronrod(f, lo, hi);
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    int panels = kInitialPanels;
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
        if (panels >= spec.max_subdivisions) {
            std::vector<Panel> all;
            while (!heap.empty()) {
                all.push_back(heap.top());
                heap.pop();
            }
            throw ToleranceNotMetError("integrate: subdivision budget exhausted",
                                       ordered_sum(all, &Panel::value), ordered_sum(all, &Panel::error));
        }
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = kronrod(f, worst.a, mid);
        const Panel right = kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    std::vector<Panel> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    return {ordered_sum(all, &Panel::value), ordered_sum(all, &Panel::error), panels};
}

QuadResult quad_moment_detailed(const EigenSystem& eig, double s, const QuadratureSpec& spec) {
    if (!(s >= -50.0 && s <= 50.0)) {
        throw DomainError("quad_moment: order must lie in [-50, 50]");
    }
    auto f = [&eig, s](double x) { return std::pow(x, s) * qsd_pdf(eig, x); };
    return integrate(f, spec.underflow_cutoff, eig.A(), spec);
}

double quad_moment(const EigenSystem& eig, double s, const QuadratureSpec& spec) {
    return quad_moment_detailed(eig, s, spec).value;
}

double quad_log_moment(const EigenSystem& eig, const QuadratureSpec& spec) {
    auto f = [&eig](double x) { return std::log(x) * qsd_pdf(eig, x); };
    return integrate(f, spec.underflow_cutoff, eig.A(), spec).value;
}

double normalization_check(const EigenSystem& eig, const QuadratureSpec& spec) {
    return std::abs(quad_moment(eig, 0.0, spec) - 1.0);
}

double head_log10_bound(const EigenSystem& eig, double s, const QuadratureSpec& spec) {
    spec.validate();
    const double c = spec.underflow_cutoff;
    auto log_f = [&eig, s](double x) { return s * std::log(x) + qsd_log_pdf(eig, x); };
    double prev = log_f(c);
    for (int i = 1; i <= 8; ++i) {
        const double cur = log_f(c * (1.0 + 0.125 * i));
        if (!(cur > prev)) {
            throw ConsistencyError("head_log10_bound: integrand not increasing near the cutoff");
        }
        prev = cur;
    }
    return (std::log(c) + log_f(c)) / std::log(10.0);
}

}  // namespace qsd
