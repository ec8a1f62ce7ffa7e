#include "qsd/distribution.hpp"
#include "qsd/errors.hpp"
#include "qsd/oracle.hpp"
#include "reference_values.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace qsd;

namespace {

const EigenSystem& system_at(double A) {
    static std::map<double, EigenSystem> cache;
    auto it = cache.find(A);
    if (it == cache.end()) {
        it = cache.emplace(A, solve_lambda(A)).first;
    }
    return it->second;
}

}  // namespace

TEST_SUITE("distribution") {

TEST_CASE("density and distribution function against high-precision values") {
    for (const auto& r : ref::density_table) {
        const EigenSystem& eig = system_at(r.A);
        INFO("A=" << r.A << " x=" << r.x);
        CHECK(std::abs(qsd_pdf(eig, r.x) - r.pdf) / r.pdf < 1e-10);
        CHECK(std::abs(qsd_cdf(eig, r.x) - r.cdf) / r.cdf < 1e-10);
        const DensityPoint p = density_point(eig, r.x);
        CHECK(p.pdf == qsd_pdf(eig, r.x));
        CHECK(p.cdf == qsd_cdf(eig, r.x));
    }
}

TEST_CASE("endpoints and cutoff") {
    for (double A : {1.0, 20.0}) {
        const EigenSystem& eig = system_at(A);
        CHECK(qsd_cdf(eig, 0.0) == 0.0);
        CHECK(qsd_cdf(eig, A) == 1.0);
        CHECK(qsd_cdf(eig, 2 * A) == 1.0);
        CHECK(qsd_pdf(eig, 0.0) == 0.0);
        CHECK(qsd_pdf(eig, A) == 0.0);
        CHECK(qsd_pdf(eig, 0.5 * underflow_cutoff) == 0.0);
        // the pdf vanishes continuously at the absorbing barrier
        CHECK(qsd_pdf(eig, A * (1 - 1e-9)) < 1e-6);
    }
}

TEST_CASE("domain errors") {
    const EigenSystem& eig = system_at(20.0);
    CHECK_THROWS_AS(qsd_pdf(eig, -1.0), DomainError);
    CHECK_THROWS_AS(qsd_pdf(eig, 21.0), DomainError);
    CHECK_THROWS_AS(qsd_pdf(eig, NAN), DomainError);
    CHECK_THROWS_AS(qsd_cdf(eig, NAN), DomainError);
    CHECK_THROWS_AS(qsd_log_pdf(eig, 0.0), DomainError);
    CHECK_THROWS_AS(pdf_numerator(eig.xi(), 0.0), DomainError);
}

TEST_CASE("monotone cdf dominating the stationary law") {
    for (double A : {1.0, 5.0, 20.0, 100.0}) {
        const EigenSystem& eig = system_at(A);
        double prev = 0.0;
        for (int i = 1; i <= 400; ++i) {
            const double x = A * i / 400.0;
            const double q = qsd_cdf(eig, x);
            CHECK(q >= prev);
            CHECK(q >= stationary_cdf(x));
            CHECK(qsd_pdf(eig, x) >= 0.0);
            prev = q;
        }
    }
}

TEST_CASE("cdf derivative matches the pdf") {
    for (double A : {1.0, 20.0}) {
        const EigenSystem& eig = system_at(A);
        // bulk points with a step tied to A
        for (int i = 0; i < 20; ++i) {
            const double x = A * (0.2 + 0.75 * i / 19.0);
            const double h = 1e-5 * A;
            const double fd = (qsd_cdf(eig, x + h) - qsd_cdf(eig, x - h)) / (2 * h);
            CHECK(std::abs(fd - qsd_pdf(eig, x)) / qsd_pdf(eig, x) < 1e-6);
        }
        // left tail, where the natural length scale is x^2
        for (double x : {0.03, 0.05, 0.1}) {
            const double h = 1e-4 * x * x;
            const double fd = (qsd_cdf(eig, x + h) - qsd_cdf(eig, x - h)) / (2 * h);
            CHECK(std::abs(fd - qsd_pdf(eig, x)) / qsd_pdf(eig, x) < 1e-6);
        }
    }
}

TEST_CASE("log pdf") {
    const EigenSystem& eig = system_at(5.0);
    for (double x : {0.01, 0.2, 1.0, 4.0}) {
        CHECK(std::abs(qsd_log_pdf(eig, x) - std::log(qsd_pdf(eig, x))) < 1e-12);
    }
    // far below the density cutoff the log stays finite
    CHECK(std::isfinite(qsd_log_pdf(eig, 1e-4)));
    CHECK(qsd_log_pdf(eig, 1e-4) < -1e4);
}

TEST_CASE("pdf numerator scales by the normalizer") {
    const EigenSystem& eig = system_at(20.0);
    for (double x : {0.5, 3.0, 12.0}) {
        CHECK(std::abs(eig.C() * pdf_numerator(eig.xi(), x) - qsd_pdf(eig, x)) / qsd_pdf(eig, x) < 1e-13);
    }
}

TEST_CASE("numerator degenerates to the stationary density at zero eigenvalue") {
    for (double x : {0.01, 0.3, 1.0, 7.5, 60.0, 900.0}) {
        const double h = stationary_pdf(x);
        CHECK(std::abs(pdf_numerator(xi_of_lambda(0.0), x) - h) <= 1e-12 * h);
    }
}

TEST_CASE("stationary density integrates to one and has no mean") {
    const double c = underflow_cutoff;
    // tail beyond X is 1 - e^{-2/X}
    const double X = 1e6;
    const double mass = integrate(stationary_pdf, c, X).value + (1.0 - std::exp(-2.0 / X));
    CHECK(std::abs(mass - 1.0) < 1e-10);
    double prev = 0.0;
    for (double upper : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double mean = integrate([](double x) { return x * stationary_pdf(x); }, c, upper).value;
        CHECK(mean > prev + 4.0);
        prev = mean;
    }
}

TEST_CASE("stationary law") {
    CHECK(stationary_cdf(2.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(stationary_pdf(2.0) == doctest::Approx(0.5 * std::exp(-1.0)));
    CHECK(stationary_cdf(0.0) == 0.0);
    CHECK(stationary_pdf(-1.0) == 0.0);
}

}  // TEST_SUITE
