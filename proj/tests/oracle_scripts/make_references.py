"""Regenerates tests/reference_values.hpp from arbitrary-precision evaluations.

Everything here is computed independently of the C++ library: special
functions via mpmath, eigenvalues by a sign-change scan plus bisection on
Re W_{1,xi/2}(2/A), moments and log-moments by tanh-sinh quadrature of the
density.  Run from the repository root:

    python3 tests/oracle_scripts/make_references.py > tests/reference_values.hpp
"""

import mpmath as mp

mp.mp.dps = 40


def _fmt(v):
    v = mp.mpf(v)
    if v == 0:
        return "0.0"
    return mp.nstr(v, 20, strip_zeros=False)


def cplx(v):
    v = mp.mpc(v)
    return "{%s, %s}" % (_fmt(v.real), _fmt(v.imag))


def xi_of(lam):
    return mp.sqrt(mp.mpc(1 - 8 * lam))


def g(A, lam):
    return mp.re(mp.whitw(1, xi_of(lam) / 2, 2 / A))


def solve(A):
    A = mp.mpf(A)
    lo = 1 / A + 1 / (A * (A + 1))
    hi = 1 / A + (1 + mp.sqrt(4 * A + 1)) / (2 * A**2)
    n = 128
    pts = [lo + (hi - lo) * i / n for i in range(n + 1)]
    vals = [g(A, p) for p in pts]
    for i in range(n):
        if vals[i] == 0:
            return pts[i]
        if vals[i] * vals[i + 1] < 0:
            a, b, fa = pts[i], pts[i + 1], vals[i]
            for _ in range(140):
                m = (a + b) / 2
                fm = g(A, m)
                if fm * fa > 0:
                    a, fa = m, fm
                else:
                    b = m
            return (a + b) / 2
    raise RuntimeError("no sign change for A=%s" % A)


def normalizer(A, xi):
    return mp.re(1 / (mp.exp(-1 / A) * mp.whitw(0, xi / 2, 2 / A)))


def density(A, xi, C):
    def q(x):
        return C / x * mp.exp(-1 / x) * mp.re(mp.whitw(1, xi / 2, 2 / x))
    return q


def integral(f, A):
    lo = mp.mpf(1) / 1000
    nodes = [lo, A / 100, A / 20, A / 5, A / 2, A]
    nodes = sorted(set(n for n in nodes if n >= lo))
    return mp.quad(f, nodes)


def main():
    out = []
    w = out.append
    w("// Generated by tests/oracle_scripts/make_references.py; do not edit.")
    w("#pragma once")
    w("")
    w("#include <complex>")
    w("")
    w("namespace qsd::ref {")
    w("")

    # special functions
    w("inline const std::complex<double> gamma_03_07i = %s;" % cplx(mp.gamma(mp.mpc(0.3, 0.7))))
    w("inline const std::complex<double> log_gamma_03_07i = %s;" % cplx(mp.loggamma(mp.mpc(0.3, 0.7))))
    w("inline constexpr double digamma_025 = %s;" % _fmt(mp.digamma(0.25)))
    w("inline const std::complex<double> digamma_2_3i = %s;" % cplx(mp.digamma(mp.mpc(2, 3))))
    w("inline constexpr double gamma_m2_5 = %s;" % _fmt(mp.gamma(-2.5)))
    w("inline constexpr double log_gamma_150 = %s;" % _fmt(mp.loggamma(150)))
    w("inline constexpr double kummer_05_15_2 = %s;" % _fmt(mp.hyp1f1(0.5, 1.5, 2)))
    w("inline constexpr double kummer_m3_05_7 = %s;" % _fmt(mp.hyp1f1(-3, 0.5, 7)))
    w("inline constexpr double hyp2f2_sample = %s;  // 2F2(1, -0.7; 1.3, 2.1; 0.1)"
      % _fmt(mp.hyp2f2(1, -0.7, 1.3, 2.1, 0.1)))
    w("")

    w("struct WhittakerRef {")
    w("    double kappa;")
    w("    std::complex<double> b;")
    w("    double z;")
    w("    std::complex<double> w;")
    w("};")
    w("")
    w("inline const WhittakerRef whittaker_w_table[] = {")
    cases = []
    for k in [0, 0.5, 1]:
        for b in [mp.mpf("0.3"), mp.mpf("0.4999"), mp.mpf("0.5"), mp.mpc(0, "0.2"), mp.mpc(0, "2.5"),
                  mp.mpc(0, "8"), mp.mpc("0.3", "0.1")]:
            for z in [mp.mpf("0.02"), mp.mpf("0.3"), mp.mpf("1.5"), mp.mpf("2.5"), mp.mpf("6"),
                      mp.mpf("20"), mp.mpf("80"), mp.mpf("400")]:
                cases.append((k, b, z))
    # large imaginary index beyond z = 200 (tiny barriers)
    for k in [0, 1]:
        for b in [mp.mpc(0, 60), mp.mpc(0, 107)]:
            for z in [mp.mpf(250), mp.mpf(500), mp.mpf(1200)]:
                cases.append((k, b, z))
    for k, b, z in cases:
        v = mp.whitw(k, b, z)
        w("    {%s, %s, %s, %s}," % (_fmt(k), cplx(b), _fmt(z), cplx(v)))
    w("};")
    w("")
    w("inline const WhittakerRef whittaker_m_table[] = {")
    for k, b, z in [(1, mp.mpf("0.3"), mp.mpf("0.1")), (1, mp.mpc(0, "1.2"), mp.mpf("2")),
                    (0.5, mp.mpf("0.45"), mp.mpf("3")), (0, mp.mpf("0.1"), mp.mpf("0.5"))]:
        w("    {%s, %s, %s, %s}," % (_fmt(k), cplx(b), _fmt(z), cplx(mp.whitm(k, b, z))))
    w("};")
    w("")

    # eigen systems
    w("struct EigenRef {")
    w("    double A;")
    w("    double lambda;")
    w("    double C;")
    w("};")
    w("")
    w("inline constexpr EigenRef eigen_table[] = {")
    systems = {}
    for A in ["0.05", "0.1", "0.5", "1", "5", "20", "100", "1000", "10000"]:
        Am = mp.mpf(A)
        lam = solve(Am)
        xi = xi_of(lam)
        C = normalizer(Am, xi)
        systems[A] = (Am, lam, xi, C)
        w("    {%s, %s, %s}," % (A, _fmt(lam), _fmt(C)))
    w("};")
    w("")

    # moments by quadrature of the density
    w("struct MomentRef {")
    w("    double A;")
    w("    double s;")
    w("    double value;")
    w("};")
    w("")
    w("inline constexpr MomentRef moment_table[] = {")
    for A in ["1", "20", "100"]:
        Am, lam, xi, C = systems[A]
        q = density(Am, xi, C)
        for s in ["-2", "-0.7", "0.3", "0.5", "2", "3.7", "5"]:
            sm = mp.mpf(s)
            v = integral(lambda x: x**sm * q(x), Am)
            w("    {%s, %s, %s}," % (A, s, _fmt(v)))
    w("};")
    w("")

    # singular orders 1/2 + sign xi/2 + k (real xi only)
    w("struct SingularRef {")
    w("    double A;")
    w("    int sign;")
    w("    int k;")
    w("    double s;")
    w("    double value;")
    w("};")
    w("")
    w("inline constexpr SingularRef singular_table[] = {")
    for A in ["20", "100"]:
        Am, lam, xi, C = systems[A]
        q = density(Am, xi, C)
        for sign in [1, -1]:
            for k in [0, 1]:
                sm = mp.re((1 + sign * xi) / 2) + k
                v = integral(lambda x: x**sm * q(x), Am)
                w("    {%s, %d, %d, %s, %s}," % (A, sign, k, _fmt(sm), _fmt(v)))
    w("};")
    w("")

    w("struct LogMomentRef {")
    w("    double A;")
    w("    double value;")
    w("};")
    w("")
    w("inline constexpr LogMomentRef log_moment_table[] = {")
    for A in ["1", "20", "100"]:
        Am, lam, xi, C = systems[A]
        q = density(Am, xi, C)
        w("    {%s, %s}," % (A, _fmt(integral(lambda x: mp.log(x) * q(x), Am))))
    w("};")
    w("")

    w("struct DensityRef {")
    w("    double A;")
    w("    double x;")
    w("    double pdf;")
    w("    double cdf;")
    w("};")
    w("")
    w("inline constexpr DensityRef density_table[] = {")
    for A, xs in [("1", ["0.1", "0.5", "0.9"]), ("20", ["0.05", "2", "5", "19"]), ("100", ["1", "50"])]:
        Am, lam, xi, C = systems[A]
        for x in xs:
            xm = mp.mpf(x)
            pdf = density(Am, xi, C)(xm)
            cdf = C * mp.exp(-1 / xm) * mp.re(mp.whitw(0, xi / 2, 2 / xm))
            w("    {%s, %s, %s, %s}," % (A, x, _fmt(pdf), _fmt(cdf)))
    w("};")
    w("")
    w("}  // namespace qsd::ref")
    print("\n".join(out))


if __name__ == "__main__":
    main()
