#include "doctest.h"
#include "mbs/residue.hpp"
#include "mbs/root_system.hpp"

using namespace mbs;

namespace {

// Res^sigma applied to the simple fraction of tau: both bases are expressed
// in sigma-coordinates via the exact dual functionals.
Rational res_simple_fraction(const OrderedBasis& sigma, const OrderedBasis& tau) {
    std::vector<DenFactor> den;
    for (const auto& phi : tau.alphas) den.push_back({c_coeffs(sigma, phi), 1});
    return iterated_residue_general(static_cast<int>(sigma.alphas.size()),
                                    Polynomial(Rational(1)), den);
}

}  // namespace

TEST_CASE("univariate residues") {
    Polynomial t = Polynomial::variable(0);
    Polynomial num = Polynomial(Rational(3)) + Rational(5) * t + Rational(7) * (t * t);
    CHECK(iterated_residue_general(1, num, {{{Rational(1)}, 1}}) == 3);
    CHECK(iterated_residue_general(1, num, {{{Rational(1)}, 2}}) == 5);
    CHECK(iterated_residue_general(1, num, {{{Rational(1)}, 3}}) == 7);
    CHECK(iterated_residue_general(1, num, {{{Rational(1)}, 4}}) == 0);
    // Scaling the form divides the residue by the scale power.
    CHECK(iterated_residue_general(1, num, {{{Rational(2)}, 2}}) == Rational(5, 4));
}

TEST_CASE("homogeneity forces many residues to vanish") {
    // 1/(t1 t2 (t1+t2)) is homogeneous of degree -3 != -2, so its iterated
    // residue vanishes: the function is a derivative and the functional
    // factors through the total-residue projection.
    std::vector<DenFactor> den = {{{Rational(1), Rational(0)}, 1},
                                  {{Rational(0), Rational(1)}, 1},
                                  {{Rational(1), Rational(1)}, 1}};
    CHECK(iterated_residue_general(2, Polynomial(Rational(1)), den) == 0);
    // Restoring degree -2 with a linear numerator makes it nonzero.
    Polynomial t1 = Polynomial::variable(0);
    CHECK(iterated_residue_general(2, t1, den) != 0);
}

TEST_CASE("bivariate residue with a mixed factor") {
    // Res_{t1} Res_{t2} (t2 + t2^2)/(t1 t2 (t1+t2)): expanding
    // 1/(t1+t2) = 1/t1 - t2/t1^2 + ..., the t2^{-1}+... bookkeeping gives
    // exact cancellations that the engine must reproduce.
    Polynomial t2 = Polynomial::variable(1);
    std::vector<DenFactor> den = {{{Rational(1), Rational(0)}, 1},
                                  {{Rational(0), Rational(1)}, 2},
                                  {{Rational(1), Rational(1)}, 1}};
    // num = t2: f = 1/(t1 t2 (t1+t2)), degree -3 -> 0.
    CHECK(iterated_residue_general(2, t2, den) == 0);
    // num = t2^2: f = 1/(t1 (t1+t2)), Res_{t2} has no pole -> 0.
    CHECK(iterated_residue_general(2, t2 * t2, den) == 0);
}

TEST_CASE("product engine agrees with the general engine") {
    // Denominator t1^3 t2^2 (t1+t2)(t1-t2) with exp-todd numerator factors:
    // the batched product eliminator and the general Laurent expansion must
    // produce identical rationals.
    const unsigned cap = 5;
    auto f1 = exp_todd_coeffs(Rational(1, 15), cap);
    auto f2 = exp_todd_coeffs(Rational(1, 30), cap);
    std::vector<DenFactor> den = {{{Rational(1), Rational(0)}, 3},
                                  {{Rational(0), Rational(1)}, 2},
                                  {{Rational(1), Rational(1)}, 1},
                                  {{Rational(1), Rational(-1)}, 1}};
    auto got = residue_product<Rational>(2, den, {{f1, f2}});
    Polynomial num;
    Polynomial t1 = Polynomial::variable(0), t2 = Polynomial::variable(1);
    for (unsigned a = 0; a <= cap; ++a)
        for (unsigned b = 0; b <= cap; ++b)
            num += Polynomial::monomial(f1[a] * f2[b], {a, b});
    CHECK(got[0] == iterated_residue_general(2, num, den));
    CHECK(got[0] != 0);
}

TEST_CASE("batched slots match independent runs") {
    std::vector<DenFactor> den = {{{Rational(1), Rational(0)}, 2},
                                  {{Rational(0), Rational(1)}, 1},
                                  {{Rational(1), Rational(1)}, 1}};
    auto fa = exp_todd_coeffs(Rational(1, 7), 4);
    auto fb = exp_todd_coeffs(Rational(2, 7), 4);
    auto fc = exp_todd_coeffs(Rational(3, 7), 4);
    auto batched = residue_product<Rational>(2, den, {{fa, fb}, {fc, fb}, {fa, fa}});
    CHECK(batched[0] == residue_product<Rational>(2, den, {{fa, fb}})[0]);
    CHECK(batched[1] == residue_product<Rational>(2, den, {{fc, fb}})[0]);
    CHECK(batched[2] == residue_product<Rational>(2, den, {{fa, fa}})[0]);
}

TEST_CASE("form canonicalization") {
    auto cf = detail::canonicalize_form({Rational(-2, 3), Rational(4, 3)});
    CHECK(cf.form == Vec{Rational(1), Rational(-2)});
    CHECK(cf.scale == Rational(-2, 3));
    CHECK_THROWS_AS(detail::canonicalize_form({Rational(0), Rational(0)}),
                    std::invalid_argument);
}

TEST_CASE("diagonal-set duality for core arrangements") {
    for (const auto* core : {&a_core(2), &a_core(3), &bc_core(2)}) {
        for (const auto& sigma : core->bases)
            for (const auto& tau : core->bases) {
                Rational expect = sigma.equation_indices == tau.equation_indices ? 1 : 0;
                CHECK(res_simple_fraction(sigma, tau) == expect);
            }
    }
}
