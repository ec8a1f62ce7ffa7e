#pragma once

#include "qsd/oracle.hpp"
#include "qsd/report.hpp"
#include "qsd/spectral.hpp"

#include <vector>

namespace qsd {

/// Orders checked against the quadrature oracle for every barrier level.
inline const std::vector<double> verify_orders = {-2.0, -0.7, 0.3, 1.0, 2.0, 3.7, 5.0};

struct SuiteResult {
    std::vector<ResultEntry> results;
    std::vector<CheckEntry> checks;
    double max_im_residue = 0.0;

    bool all_pass() const;
};

/// Runs every per-barrier invariant on eig: bracket and eigencondition,
/// normalization, normalizer and identity checks, moment/oracle agreement,
/// recurrences, integer and special values, log-moment, distribution
/// properties and realness. Check names are prefixed with "A=<A>/".
/// Checks that need a real xi are skipped when xi is imaginary.
SuiteResult verify_barrier(const EigenSystem& eig, const QuadratureSpec& quad = {});

}  // namespace qsd
