#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbs/polynomial.hpp"
#include "mbs/root_system.hpp"

namespace mbs {

// Evaluation at a point lying on an admissible affine wall was requested in
// value mode.
struct NonRegularPoint : std::domain_error {
    explicit NonRegularPoint(const std::string& what) : std::domain_error(what) {}
};

// A user-supplied limit direction pairs to zero against a basis functional.
struct GenericityFailure : std::domain_error {
    explicit GenericityFailure(const std::string& what) : std::domain_error(what) {}
};

// Value-mode evaluation of the multiple Bernoulli series B(Phi, Lambda)(v)
// normalized as in the residue formula (the (2 i pi)^S factors are part of
// the series definition).  Requires v regular; throws NonRegularPoint.
Rational bernoulli_eval(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s,
                        const std::vector<Rational>& v);

// One-sided limit value lim_{eps->0+} B(v + eps*delta).  With no delta the
// default direction (reciprocal primes, deterministically perturbed until
// generic) is used; an explicitly supplied non-generic delta throws
// GenericityFailure.
Rational bernoulli_limit(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s,
                         const std::vector<Rational>& v,
                         const std::optional<std::vector<Rational>>& delta = std::nullopt);

// The default limit direction before perturbation (documented for
// reproducibility; type A directions are projected to the sum-zero subspace).
std::vector<Rational> default_direction(const RootSystemSpec& sys);

// Polynomial (in the ambient coordinates of v) that agrees with B on the tope
// containing sample (one-sidedly selected by the limit direction when the
// sample sits on a wall of an inner coset term).
Polynomial tope_polynomial(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s,
                           const std::vector<Rational>& sample,
                           const std::optional<std::vector<Rational>>& delta = std::nullopt);

// Closed-form step polynomial: sum of terms
//   coeff * prod_k frac(scale_k * <form_k, v> + shift_k)^{exp_k}.
struct StepFactor {
    std::vector<Rational> form;
    Rational scale;
    Rational shift;
    unsigned exp;
};
struct StepTerm {
    Rational coeff;
    std::vector<StepFactor> factors;
};
struct StepPolynomial {
    int ambient_dim = 0;
    std::vector<StepTerm> terms;

    Rational eval(const std::vector<Rational>& v) const;
    size_t term_count() const { return terms.size(); }
};

StepPolynomial step_polynomial(const RootSystemSpec& sys, Lattice lattice, const ExponentMap& s);

}  // namespace mbs
