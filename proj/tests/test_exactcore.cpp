#include "doctest.h"
#include "mbs/bernoulli.hpp"
#include "mbs/linalg.hpp"
#include "mbs/polynomial.hpp"
#include "mbs/rational.hpp"
#include "mbs/series.hpp"

using namespace mbs;

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("+2/4") == Rational(1, 2));
    CHECK(format_rational(Rational(-10, 4)) == "-5/2");
    CHECK(format_rational(Rational(8, 2)) == "4");
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("2x"), std::invalid_argument);
}

TEST_CASE("floor and fractional part") {
    CHECK(floor_int(Rational(-1, 2)) == -1);
    CHECK(frac(Rational(-1, 2)) == Rational(1, 2));
    CHECK(frac(Rational(7, 3)) == Rational(1, 3));
    CHECK(frac(Rational(-5)) == 0);
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == Rational(-1, 2));
    CHECK(bernoulli_number(2) == Rational(1, 6));
    CHECK(bernoulli_number(12) == Rational(-691, 2730));
    for (unsigned n = 3; n <= 19; n += 2) CHECK(bernoulli_number(n) == 0);
}

TEST_CASE("bernoulli polynomials") {
    // B_n(0) = B_n and, for n >= 2, B_n(1) = B_n.
    for (unsigned n = 0; n <= 8; ++n) CHECK(bernoulli_poly(n, 0) == bernoulli_number(n));
    for (unsigned n = 2; n <= 8; ++n) CHECK(bernoulli_poly(n, 1) == bernoulli_number(n));
    // Difference equation B_n(x+1) - B_n(x) = n x^{n-1}.
    const Rational x(3, 7);
    for (unsigned n = 1; n <= 8; ++n)
        CHECK(bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) ==
              Rational(n) * pow_rational(x, static_cast<long>(n) - 1));
    // Symmetry B_n(1-x) = (-1)^n B_n(x).
    for (unsigned n = 0; n <= 8; ++n)
        CHECK(bernoulli_poly(n, 1 - x) == (n % 2 ? -bernoulli_poly(n, x) : bernoulli_poly(n, x)));
}

TEST_CASE("todd and exponential coefficient tables") {
    auto t = todd_coeffs(6);
    CHECK(t[0] == 1);
    CHECK(t[1] == Rational(-1, 2));
    CHECK(t[2] == Rational(1, 12));
    CHECK(t[3] == 0);
    // exp_todd(u) is the convolution of exp(u t) and the todd factor; at u=0
    // it must collapse to the todd table.
    CHECK(exp_todd_coeffs(0, 6) == todd_coeffs(6));
    // Coefficient-wise identity: sum_k exp_todd_k(u) = value of both factors
    // at t=1 truncated consistency is not exact, so instead check degree-1:
    // exp_todd_1(u) = u - 1/2.
    CHECK(exp_todd_coeffs(Rational(2, 3), 3)[1] == Rational(2, 3) - Rational(1, 2));
}

TEST_CASE("polynomial arithmetic") {
    Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1);
    Polynomial p = (x + y).pow(2);
    CHECK(p == x * x + Rational(2) * (x * y) + y * y);
    CHECK(p.total_degree() == 2);
    CHECK(p.eval({Rational(1, 2), Rational(1, 3)}) == Rational(25, 36));
    // Substitution: (x+y)^2 with x -> x - y collapses to x^2.
    CHECK(p.subst({x - y, y}) == x * x);
    CHECK((p - p).is_zero());
    CHECK(Polynomial(Rational(0)).is_zero());
}

TEST_CASE("truncated series cap") {
    Polynomial x = Polynomial::variable(0);
    TruncSeries s(x + Polynomial(Rational(1)), 3);
    auto p = (s * s * s * s).poly();  // (1+x)^4 truncated at degree 3
    CHECK(p.eval({Rational(1)}) == 1 + 4 + 6 + 4);
    CHECK(p.total_degree() == 3);
}

TEST_CASE("exact linear algebra") {
    Mat m = {{1, 2}, {3, 4}};
    CHECK(determinant(m) == -2);
    CHECK(rank_of(m) == 2);
    CHECK(rank_of(Mat{{1, 2}, {2, 4}}) == 1);
    auto x = solve_square(m, {Rational(5), Rational(11)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);
    CHECK(!solve_square(Mat{{1, 1}, {1, 1}}, {Rational(0), Rational(1)}).has_value());
    CHECK(dot({Rational(1, 2), Rational(3)}, {Rational(4), Rational(1, 3)}) == 3);
}
