#include <doctest.h>

#include <arithdiff/errors.hpp>
#include <arithdiff/json_io.hpp>
#include <arithdiff/modular.hpp>

#include "support.hpp"

using namespace arithdiff;

namespace
{

EllipticCurveQ curve_11a1()
{
    return {0, -1, 1, -10, -20, "11a1"};
}

// Affine solutions of the Weierstrass equation plus the point at infinity.
long brute_count(const EllipticCurveQ &e, long p)
{
    auto m = [p](const Integer &x) {
        Integer r = x % p;
        return r < 0 ? r + p : r;
    };
    long count = 1;
    for (long x = 0; x < p; ++x) {
        for (long y = 0; y < p; ++y) {
            const Integer X(x), Y(y);
            const Integer lhs = Y * Y + e.a1 * X * Y + e.a3 * Y;
            const Integer rhs = X * X * X + e.a2 * X * X + e.a4 * X + e.a6;
            count += m(lhs - rhs) == 0 ? 1 : 0;
        }
    }
    return count;
}

// q prod (1 - q^n)^2 (1 - q^{11n})^2 below q^trunc.
std::vector<Integer> eta_product_11(long trunc)
{
    std::vector<Integer> c(static_cast<std::size_t>(trunc), 0);
    c[1] = 1;
    auto times_one_minus = [&](long k) {
        for (long i = trunc - 1; i >= k; --i) {
            c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - k)];
        }
    };
    for (long n = 1; n < trunc; ++n) {
        times_one_minus(n);
        times_one_minus(n);
        if (11 * n < trunc) {
            times_one_minus(11 * n);
            times_one_minus(11 * n);
        }
    }
    return c;
}

} // namespace

TEST_SUITE("modular")
{
    TEST_CASE("Bernoulli numbers and divisor sums")
    {
        CHECK(bernoulli(1) == Rational(-1, 2));
        CHECK(bernoulli(2) == Rational(1, 6));
        CHECK(bernoulli(4) == Rational(-1, 30));
        CHECK(bernoulli(12) == Rational(-691, 2730));
        CHECK(bernoulli(7) == 0);
        CHECK(divisor_sigma(3, 2) == 9);
        CHECK(divisor_sigma(5, 12) == 1 + 32 + 243 + 1024 + 7776 + 248832);
        CHECK_THROWS_AS(divisor_sigma(3, 0), DomainError);
    }

    TEST_CASE("Eisenstein series")
    {
        const auto e4 = eisenstein(4, 10).series;
        CHECK(e4.coefficient(0) == 1);
        CHECK(e4.coefficient(1) == 240);
        CHECK(e4.coefficient(2) == 2160);
        const auto e6 = eisenstein(6, 10).series;
        CHECK(e6.coefficient(1) == -504);
        CHECK(e6.coefficient(2) == -16632);
        CHECK_THROWS_AS(eisenstein(5, 10), DomainError);
        CHECK_THROWS_AS(eisenstein(2, 10), DomainError);
    }

    TEST_CASE("E_{p-1} is 1 mod p")
    {
        for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
            const auto e = eisenstein(static_cast<int>(p - 1), 30).series;
            CHECK(e.coefficient(0) == 1);
            for (long n = 1; n < 30; ++n) {
                const Rational c = e.coefficient(n);
                // Denominators come from Bernoulli numerators (3617 for p = 17),
                // so the congruence is p-adic.
                CHECK(valuation(c, p) >= 1);
            }
        }
    }

    TEST_CASE("discriminant and j")
    {
        const auto delta = discriminant_delta(40).series;
        CHECK(delta.coefficient(0) == 0);
        CHECK(delta.coefficient(1) == 1);
        CHECK(delta.coefficient(2) == -24);
        CHECK(delta.coefficient(3) == 252);
        CHECK(delta.coefficient(4) == -1472);

        const auto e4 = eisenstein(4, 40).series, e6 = eisenstein(6, 40).series;
        const auto lhs = e4 * e4 * e4 - e6 * e6;
        for (long n = 0; n < 40; ++n) {
            CHECK(lhs.coefficient(n) == 1728 * delta.coefficient(n));
        }

        const auto j = j_invariant(30, 5, 8);
        CHECK(j.valuation() == -1);
        CHECK(j.coefficient(-1) == PadicTrunc::from_rational(5, 8, Rational(1)));
        CHECK(j.coefficient(0) == PadicTrunc::from_rational(5, 8, Rational(744)));
        CHECK(j.coefficient(1) == PadicTrunc::from_rational(5, 8, Rational(196884)));
        const auto jd = j * reduce_mod(delta.truncated(30), 5, 8);
        const auto e43 = reduce_mod((e4 * e4 * e4).truncated(30), 5, 8);
        CHECK(jd == e43);
    }

    TEST_CASE("point counts for 11a1")
    {
        const auto e = curve_11a1();
        CHECK(e.discriminant() == -161051);
        CHECK(ap_point_count(e, 5) == 1);
        CHECK(ap_point_count(e, 7) == -2);
        for (long p = 2; p <= 97; ++p) {
            if (!is_prime(p) || p == 11) {
                continue;
            }
            CHECK(count_points(e, p) == brute_count(e, p));
            const Integer a = ap_point_count(e, p);
            CHECK(a * a <= 4 * p);
        }
        CHECK_THROWS_AS(ap_point_count(e, 11), DomainError);
    }

    TEST_CASE("newform coefficients against the eta product")
    {
        const auto fx = curve_fixture_from_json(read_json_file(support::data_path("11a1.json")));
        CHECK(fx.curve.label == "11a1");
        const auto an = newform_coefficients(fx, 60);
        const auto eta = eta_product_11(61);
        for (long n = 1; n <= 60; ++n) {
            CHECK(an[static_cast<std::size_t>(n)] == eta[static_cast<std::size_t>(n)]);
        }
        CHECK(an[1] == 1);
        CHECK(an[25] == -4);
        CHECK(an[25] == an[5] * an[5] - 5);
        CHECK_THROWS_AS(an_multiplicative({{2, Integer(1)}}, {}, 3), DomainError);
    }
}
