#include <random>

#include "doctest.h"
#include "mbs/szenes.hpp"

using namespace mbs;

namespace {

RootSystemSpec spec(char f, int r) { return make_spec(parse_family(std::string(1, f)), r); }

// Deterministic random rational in (-2, 2) with denominator <= 9973.
std::vector<Rational> random_point(std::mt19937& rng, const RootSystemSpec& sys, bool sum_zero) {
    std::uniform_int_distribution<int> num(-9967, 9967);
    std::uniform_int_distribution<int> den(101, 9973);
    std::vector<Rational> v;
    for (int i = 0; i < sys.ambient_dim(); ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        v.push_back(q);
    }
    if (sum_zero) {
        Rational s(0);
        for (size_t i = 0; i + 1 < v.size(); ++i) s += v[i];
        v.back() = -s;
    }
    return v;
}

ExponentMap exps(const RootSystemSpec& sys, std::vector<unsigned> s) {
    ExponentMap m{std::move(s)};
    REQUIRE(m.s.size() == positive_roots(sys).size());
    return m;
}

}  // namespace

TEST_CASE("locked values for the evaluation pipelines") {
    // C_2, coroot lattice, s = {e1: 2, e2: 1, e1+e2: 1, e1-e2: 1}.
    auto c2 = spec('C', 2);
    CHECK(bernoulli_eval(c2, Lattice::CorootC, exps(c2, {2, 1, 1, 1}),
                         {Rational(1, 15), Rational(1, 30)}) ==
          Rational("-276037/5832000000"));

    // B_2 coset pipeline with the mirrored exponents (roots e1-e2, e2, e1+e2,
    // e1 carry 1,1,1,2; canonical B order is e1-e2, e1+e2, e1, e2).
    auto b2 = spec('B', 2);
    ExponentMap sb{std::vector<unsigned>(4, 0)};
    sb.s[static_cast<size_t>(parse_root_label(b2, "e1-e2"))] = 1;
    sb.s[static_cast<size_t>(parse_root_label(b2, "e2"))] = 1;
    sb.s[static_cast<size_t>(parse_root_label(b2, "e1+e2"))] = 1;
    sb.s[static_cast<size_t>(parse_root_label(b2, "e1"))] = 2;
    CHECK(bernoulli_eval(b2, Lattice::CorootB, sb, {Rational(1, 15), Rational(1, 30)}) ==
          Rational("-1910137/46656000000"));

    // A_2 uniform 10 at the origin (limit mode).
    auto a2 = spec('A', 2);
    CHECK(bernoulli_limit(a2, Lattice::CorootA, uniform_exponents(a2, 10), {0, 0, 0}) ==
          Rational("-27739097/4174671932121099276691439616000000"));
}

TEST_CASE("A_4 values, mixed and uniform exponents") {
    auto a4 = spec('A', 4);
    // Lex order e1-e2, e1-e3, e1-e4, e1-e5, e2-e3, ..., e4-e5.
    CHECK(bernoulli_limit(a4, Lattice::CorootA,
                          exps(a4, {6, 6, 6, 6, 4, 2, 2, 2, 2, 2}),
                          std::vector<Rational>(5, 0)) ==
          Rational("-665817571/2081416538897698301902069565296214016000000000"));
    CHECK(bernoulli_limit(a4, Lattice::CorootA, uniform_exponents(a4, 4),
                          std::vector<Rational>(5, 0)) ==
          Rational("3998447009863/19318834119102098604968210835862034086625280000000000"));
}

TEST_CASE("value mode requires a regular point") {
    auto a2 = spec('A', 2);
    CHECK_THROWS_AS(
        bernoulli_eval(a2, Lattice::CorootA, uniform_exponents(a2, 2), {0, 0, 0}),
        NonRegularPoint);
    // Limit mode agrees with value mode at regular points.
    std::vector<Rational> v{Rational(1, 5), Rational(1, 7), Rational(-12, 35)};
    CHECK(bernoulli_eval(a2, Lattice::CorootA, uniform_exponents(a2, 2), v) ==
          bernoulli_limit(a2, Lattice::CorootA, uniform_exponents(a2, 2), v));
}

TEST_CASE("explicit non-generic limit directions are rejected") {
    auto a2 = spec('A', 2);
    // The zero direction pairs to zero against every basis functional.
    std::vector<Rational> bad{0, 0, 0};
    CHECK_THROWS_AS(bernoulli_limit(a2, Lattice::CorootA, uniform_exponents(a2, 2),
                                    {0, 0, 0}, bad),
                    GenericityFailure);
}

TEST_CASE("periodicity modulo the lattice") {
    std::mt19937 rng(20240817);
    for (auto [sys, lat] : std::vector<std::pair<RootSystemSpec, Lattice>>{
             {spec('A', 2), Lattice::CorootA},
             {spec('A', 2), Lattice::CoweightA},
             {spec('C', 2), Lattice::CorootC},
             {spec('B', 2), Lattice::CorootB}}) {
        auto s = uniform_exponents(sys, 2);
        auto L = lattice_basis(sys, lat);
        for (int trial = 0; trial < 3; ++trial) {
            auto v = random_point(rng, sys, sys.family == Family::A);
            auto ref = bernoulli_eval(sys, lat, s, v);
            for (const auto& lam : L) {
                auto w = v;
                for (size_t i = 0; i < w.size(); ++i) w[i] += lam[i];
                CHECK(bernoulli_eval(sys, lat, s, w) == ref);
            }
        }
    }
}

TEST_CASE("Weyl symmetry for uniform even exponents") {
    std::mt19937 rng(5);
    for (auto [sys, lat] : std::vector<std::pair<RootSystemSpec, Lattice>>{
             {spec('A', 2), Lattice::CorootA}, {spec('C', 2), Lattice::CorootC}}) {
        auto s = uniform_exponents(sys, 2);
        auto v = random_point(rng, sys, sys.family == Family::A);
        auto ref = bernoulli_eval(sys, lat, s, v);
        for (const auto& w : weyl_elements(sys))
            CHECK(bernoulli_eval(sys, lat, s, weyl_apply(w, v)) == ref);
    }
}

TEST_CASE("tope polynomial matches pointwise evaluation on its tope") {
    auto c2 = spec('C', 2);
    auto s = exps(c2, {2, 1, 1, 1});
    std::vector<Rational> sample{Rational(1, 15), Rational(1, 30)};
    Polynomial p = tope_polynomial(c2, Lattice::CorootC, s, sample);
    CHECK(p.eval(sample) == Rational("-276037/5832000000"));
    CHECK(p.total_degree() <= s.total());
    // A nearby point in the same tope evaluates identically.
    std::vector<Rational> near{Rational(1, 15) + Rational(1, 100000),
                               Rational(1, 30) + Rational(1, 300000)};
    CHECK(p.eval(near) == bernoulli_eval(c2, Lattice::CorootC, s, near));
}

TEST_CASE("step polynomial agrees with direct evaluation") {
    std::mt19937 rng(99);
    auto c2 = spec('C', 2);
    auto s = exps(c2, {2, 1, 1, 1});
    StepPolynomial sp = step_polynomial(c2, Lattice::CorootC, s);
    CHECK(sp.eval({Rational(1, 15), Rational(1, 30)}) == Rational("-276037/5832000000"));
    for (int trial = 0; trial < 10; ++trial) {
        auto v = random_point(rng, c2, false);
        if (!is_regular(c2, Lattice::CorootC, v)) continue;
        CHECK(sp.eval(v) == bernoulli_eval(c2, Lattice::CorootC, s, v));
    }
}

TEST_CASE("D pipeline is consistent with the A realization of D_3") {
    // D_3 ~ A_3: uniform exponents give equal series at the origin.
    auto d3 = spec('D', 3);
    auto a3 = spec('A', 3);
    CHECK(bernoulli_limit(d3, Lattice::CorootD, uniform_exponents(d3, 2),
                          std::vector<Rational>(3, 0)) ==
          bernoulli_limit(a3, Lattice::CorootA, uniform_exponents(a3, 2),
                          std::vector<Rational>(4, 0)));
}

TEST_CASE("default limit direction is deterministic") {
    auto a2 = spec('A', 2);
    auto d1 = default_direction(a2);
    auto d2 = default_direction(a2);
    CHECK(d1 == d2);
    Rational s(0);
    for (const auto& x : d1) s += x;
    CHECK(s == 0);  // type A directions live in the sum-zero subspace
}
