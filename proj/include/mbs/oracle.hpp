#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mbs/rational.hpp"
#include "mbs/root_system.hpp"

namespace mbs {

// The requested configuration cannot be certified by truncated summation
// (some hyperplane carries total exponent < 2, so the defining series is not
// absolutely convergent).
struct OracleNotApplicable : std::domain_error {
    explicit OracleNotApplicable(const std::string& what) : std::domain_error(what) {}
};

struct OracleConfig {
    long radius = 200;          // max |n_i| over dual-lattice basis coefficients
    unsigned precision = 64;    // working mantissa bits; > 64 switches to quad
    bool pair_symmetrize = true;
};

struct OracleResult {
    double value = 0;           // real part of the truncated sum
    double error_estimate = 0;  // |S_M - S_{M/2}|, a crude (non-rigorous) tail proxy
    long radius = 0;
    unsigned long long terms = 0;  // regular lattice points actually summed
};

// Truncated summation of the defining series over the box |n_i| <= radius in
// the dual-lattice basis, restricted to regular points.
OracleResult direct_sum(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s,
                        const std::vector<Rational>& v, const OracleConfig& cfg);

struct CompareReport {
    bool pass = false;
    double relative_error = 0;
    std::string detail;
};

// Certification check: relative agreement between the exact engine value and
// the oracle sum, with an absolute floor guarding the near-zero case.
CompareReport compare(const Rational& engine, const OracleResult& oracle, double rel_tol);

}  // namespace mbs
