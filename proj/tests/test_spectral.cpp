#include "qsd/errors.hpp"
#include "qsd/spectral.hpp"
#include "reference_values.hpp"

#include <doctest.h>

#include <cmath>

using namespace qsd;

TEST_SUITE("spectral") {

TEST_CASE("eigenvalue and normalizer against high-precision roots") {
    for (const auto& r : ref::eigen_table) {
        const EigenSystem eig = solve_lambda(r.A);
        INFO("A=" << r.A);
        CHECK(std::abs(eig.lambda() - r.lambda) / r.lambda < 1e-11);
        CHECK(std::abs(eig.C() - r.C) / r.C < 1e-11);
    }
}

TEST_CASE("bracket and eigencondition") {
    for (double A : {0.01, 0.05, 0.5, 1.0, 5.0, 20.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
        const EigenSystem eig = solve_lambda(A);
        const LambdaBracket b = lambda_bounds(A);
        INFO("A=" << A);
        CHECK(eig.lambda() > b.lo);
        CHECK(eig.lambda() < b.hi);
        CHECK(eig.residual() < 1e-9 * eig.scale());
    }
    const LambdaBracket b100 = lambda_bounds(100.0);
    CHECK(b100.lo == doctest::Approx(0.010099).epsilon(1e-4));
    CHECK(b100.hi == doctest::Approx(0.011051).epsilon(1e-4));
}

TEST_CASE("eigenvalue decreases with the barrier and lambda A tends to 1") {
    double prev = INFINITY;
    for (double A : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0, 1e3, 1e4, 1e5}) {
        const double l = solve_lambda(A).lambda();
        CHECK(l < prev);
        prev = l;
    }
    double prev_gap = INFINITY;
    for (double A : {1e2, 1e3, 1e4, 1e5}) {
        const double gap = std::abs(solve_lambda(A).lambda() * A - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("imaginary spectral parameter above one eighth") {
    const EigenSystem eig = solve_lambda(1.0);
    CHECK(eig.lambda() > 1.5);
    CHECK(eig.lambda() < 2.6181);
    CHECK_FALSE(eig.xi_is_real());
    CHECK(eig.xi().real() == 0.0);
    CHECK(std::abs(eig.xi() * eig.xi() + 8.0 * eig.lambda() - 1.0) < 1e-12);
    CHECK(solve_lambda(20.0).xi_is_real());
}

TEST_CASE("xi of lambda") {
    CHECK(xi_of_lambda(0.125) == Complex(0.0, 0.0));
    CHECK(xi_of_lambda(0.0) == Complex(1.0, 0.0));
    CHECK(xi_of_lambda(0.0625).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(xi_of_lambda(2.0).imag() == doctest::Approx(std::sqrt(15.0)));
}

TEST_CASE("solver tolerance is relative and validated") {
    const EigenSystem loose = solve_lambda(20.0, 1e-6);
    const EigenSystem tight = solve_lambda(20.0, 1e-14);
    CHECK(std::abs(loose.lambda() - tight.lambda()) / tight.lambda() < 1e-6);
    CHECK_THROWS_AS(solve_lambda(20.0, 1e-3), DomainError);
    CHECK_THROWS_AS(solve_lambda(20.0, 1e-16), DomainError);
}

TEST_CASE("barrier domain") {
    CHECK_THROWS_AS(solve_lambda(0.001), DomainError);
    CHECK_THROWS_AS(solve_lambda(2e6), DomainError);
    CHECK_THROWS_AS(solve_lambda(NAN), DomainError);
    CHECK_THROWS_AS(lambda_bounds(-1.0), DomainError);
}

TEST_CASE("normalizer forms agree at the eigenvalue") {
    for (double A : {1.0, 5.0, 20.0, 100.0}) {
        const EigenSystem eig = solve_lambda(A);
        INFO("A=" << A);
        CHECK(std::abs(normalizer(A, -eig.xi()) - eig.C()) / eig.C() < 1e-10);
        if (eig.xi_is_real()) {
            CHECK(std::abs(normalizer_kummer(A, eig.xi()) - eig.C()) / eig.C() < 1e-8);
            CHECK(std::abs(normalizer_kummer(A, -eig.xi()) - eig.C()) / eig.C() < 1e-8);
        }
    }
    // the normalizer tends to 1 for a remote barrier
    CHECK(std::abs(solve_lambda(1e4).C() - 1.0) < std::abs(solve_lambda(1e2).C() - 1.0));
}

TEST_CASE("identities at the eigenvalue") {
    for (double A : {5.0, 20.0, 100.0}) {
        const EigenSystem eig = solve_lambda(A);
        const Complex b = 0.5 * eig.xi();
        const double z = 2.0 / A;
        const Complex w = whittaker_w(0.0, b, z);
        INFO("A=" << A);
        CHECK(std::abs(whittaker_w_dz(0.0, b, z) - 0.5 * w) / std::abs(w) < 1e-8);
        const Complex lhs = eig.lambda() * A * gamma(0.5 * (eig.xi() - 1.0)) * w * whittaker_m(1.0, b, z);
        const Complex rhs = -gamma(eig.xi() + 1.0);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-8);
        // contiguous neighbours of W_0 collapse onto it at the root
        for (int sign : {1, -1}) {
            const Complex up = whittaker_w(0.5, b + 0.5 * sign, z);
            const Complex expect = 0.5 * (1.0 + static_cast<double>(sign) * eig.xi()) * std::sqrt(0.5 * A) * w;
            CHECK(std::abs(up - expect) / std::abs(expect) < 1e-9);
        }
    }
}

TEST_CASE("eigen function changes sign at the root") {
    const EigenSystem eig = solve_lambda(5.0);
    CHECK(eigen_function(5.0, eig.lambda() * (1 - 1e-6)) * eigen_function(5.0, eig.lambda() * (1 + 1e-6)) < 0);
}

TEST_CASE("off-root systems") {
    const EigenSystem eig = solve_lambda(5.0);
    const EigenSystem off = EigenSystem::at(5.0, eig.lambda() * 1.01);
    CHECK(off.residual() > 1e-4 * off.scale());
    const EigenSystem drifted = eig.with_lambda(eig.lambda() * 1.01);
    CHECK(drifted.C() == eig.C());
    CHECK(drifted.lambda() == eig.lambda() * 1.01);
    CHECK(drifted.residual() == off.residual());
    CHECK_THROWS_AS(EigenSystem::at(5.0, -1.0), DomainError);
}

}  // TEST_SUITE
