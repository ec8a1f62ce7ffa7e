#pragma once

#include "qsd/spectral.hpp"

#include <optional>
#include <string>

namespace qsd {

enum class MomentMethod {
    regular_2F2,
    singular_base,
    singular_shifted,
    integer_closed_form,
    special_value,
};

struct MomentResult {
    double s = 0.0;
    double value = 0.0;
    MomentMethod method = MomentMethod::regular_2F2;
    int shift = 0;  // k for singular_shifted
    /// |(s(s-1)/2 + lambda) M_s + s M_{s-1} - lambda A^s|; empty when M_{s-1}
    /// is outside the order range.
    std::optional<double> recurrence_residual;
    double im_residue = 0.0;
};

/// "regular_2F2", "singular_base", "singular_shifted(k)", ...
std::string method_name(const MomentResult& r);

inline constexpr double min_order = -50.0;
inline constexpr double max_order = 50.0;

/// |s - s*| at or below which an order counts as singular.
inline constexpr double singular_match_tol = 1e-12;
/// |s - s*| below which the regular formula is replaced by its mean over a
/// circle of radius singular_contour_radius around s.
inline constexpr double singular_band = 1e-3;
inline constexpr double singular_contour_radius = 5e-2;

/// Integer moment through the terminating 2F2 series; M_0 = 1 exactly.
MomentResult moment_integer(const EigenSystem& eig, int n);

/// Fractional moment of any order in [-50, 50], dispatching between the
/// regular closed form and the singular branches.
MomentResult moment_frac(const EigenSystem& eig, double s);

/// Regular closed form
///   2 lambda A^s / (s(s-1) + 2 lambda) 2F2(1, -s; 3/2 + xi/2 - s, 3/2 - xi/2 - s; 2/A)
///   + C 2^s Gamma(1/2 + xi/2 - s) Gamma(1/2 - xi/2 - s) / Gamma(-s)
/// evaluated as is (complex s allowed). xi_sign = -1 substitutes -xi and the
/// normalizer recomputed from it.
Complex moment_regular(const EigenSystem& eig, Complex s, int xi_sign = 1);

/// Orders 1/2 + sign xi/2 + k of the singular family; throws RegimeError
/// unless xi is real and nonzero.
double singular_order(const EigenSystem& eig, int sign, int k = 0);

/// M at 1/2 + sign xi/2 by the digamma series.
MomentResult moment_singular_base(const EigenSystem& eig, int sign, const SeriesControl& ctl = {});

/// M at 1/2 + sign xi/2 + k, k >= 1, from the base value.
MomentResult moment_singular_shifted(const EigenSystem& eig, int sign, int k,
                                      const SeriesControl& ctl = {});

/// M at -1/2 + sign xi/2 in closed form (1 - sign xi)/4 A^{1/2 + sign xi/2}.
/// Throws RegimeError when xi is imaginary.
MomentResult moment_special_value(const EigenSystem& eig, int sign);

/// The same special value as sqrt(A/2) A^{-1/2 + sign xi/2}
/// W_{1/2, xi/2 - sign/2}(2/A) / W_{0, xi/2}(2/A).
double special_value_ratio(const EigenSystem& eig, int sign);

/// Throws DomainError if s or s - 1 is outside the order range.
double recurrence_residual(const EigenSystem& eig, double s);

/// E[log X] = log A - (M_{-1} - 1/2) / lambda.
double log_moment(const EigenSystem& eig);

/// Limit of M_s as A grows: 2^s Gamma(1 - s), s < 1.
double limit_moment(double s);

}  // namespace qsd
