#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mbs/rational.hpp"
#include "mbs/root_system.hpp"

namespace mbs {

// An exact multiple of an even power of pi: coeff * pi^pi_power.
struct PiValue {
    Rational coeff;
    unsigned pi_power = 0;
};

// Marked-surface data: genus plus a list of marking points, stored in the
// ambient e-coordinates of the family (type A uses rank+1 sum-zero
// coordinates).
struct MarkingSet {
    int genus = 0;
    std::vector<std::vector<Rational>> points;

    int count() const { return static_cast<int>(points.size()); }
};

struct InvalidMarking : std::domain_error {
    explicit InvalidMarking(const std::string& what) : std::domain_error(what) {}
};

// Simple coroots H_{alpha_i} of the family, in e-coordinates.
std::vector<std::vector<Rational>> simple_coroots(const RootSystemSpec& sys);

// Converts a point given as coefficients on the simple coroots,
// a = sum_i c_i H_{alpha_i}, into e-coordinates.
std::vector<Rational> point_from_coroot_coeffs(const RootSystemSpec& sys,
                                               const std::vector<Rational>& coeffs);

// Strict fundamental-alcove membership: alpha_i(a) > 0 for the simple roots
// and theta(a) < 1 for the highest root.  On failure *why (if given) receives
// the violated inequality.
bool in_alcove(const RootSystemSpec& sys, const std::vector<Rational>& a,
               std::string* why = nullptr);

// The series W(Phi(G), P, g, s)(a): for s = 0 (g >= 2) the Bernoulli series
// with uniform exponents 2g-2 at v = 0; for s >= 1 the signed sum over W^s of
// series values with uniform exponents 2g-2+s at sum_j w_j a_j.  All
// evaluations share one deterministic limit direction.
Rational witten_series(const RootSystemSpec& sys, const MarkingSet& markings);

// Volume constant 2^{p(2g-2+s)} (fq)^{g-1} |Z| (-1)^{(g-1)|Phi|} / |W|.
Rational c_vol(const RootSystemSpec& sys, int genus, int num_markings);

// Symplectic volume c_vol * witten_series.
Rational volume(const RootSystemSpec& sys, const MarkingSet& markings);

// One-marking shortcut: (fq)^{g-1} |Z| 2^{p(2g-1)} (-1)^{(g-1)|Phi|} *
// B(Phi_{2g-1}, coroot lattice)(a).
Rational volume_one_marking(const RootSystemSpec& sys, int genus,
                            const std::vector<Rational>& a);

// Zeta value at v = 0 for even exponents that are constant on each root
// length class: |W|^{-1} 2^S (-1)^{S/2} B(Phi_s, coroot lattice)(0) * pi^S.
PiValue zeta_even(const RootSystemSpec& sys, const ExponentMap& s);

// Multiple zeta value zeta_r(2k, ..., 2k) (depth r, uniform even weight 2k).
PiValue mzv(int depth, unsigned two_k);

// Exact SU(2) Verlinde number at level ell with marking t*alpha scaled so
// t*ell is a positive integer; 0 < t < 1/2, genus >= 1.
Rational verlinde_su2(const Rational& t, long ell, int genus);

}  // namespace mbs
