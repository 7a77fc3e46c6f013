#include <doctest.h>

#include <arithdiff/errors.hpp>
#include <arithdiff/qseries.hpp>

#include "support.hpp"

using namespace arithdiff;

namespace
{

RationalSeries poly(SeriesVar v, std::vector<long> c, long low, long order)
{
    std::vector<Rational> r;
    for (long x : c) {
        r.emplace_back(x);
    }
    return RationalSeries(v, {}, low, std::move(r), order);
}

RationalSeries random_series(SeriesVar v, long low, long order, long height)
{
    std::vector<Rational> c;
    for (long n = low; n < order; ++n) {
        c.push_back(support::random_integral_at({5}, height));
    }
    return RationalSeries(v, {}, low, std::move(c), order);
}

PadicSeries padic(const RationalSeries &s, long p, int m)
{
    return reduce_mod(s, p, m);
}

} // namespace

TEST_SUITE("qseries")
{
    TEST_CASE("products and inverses")
    {
        const auto a = poly(SeriesVar::q, {1, 1}, 0, 10);
        const auto b = poly(SeriesVar::q, {1, -1}, 0, 10);
        CHECK(a * b == poly(SeriesVar::q, {1, 0, -1}, 0, 10));

        const auto inv = b.invert();
        CHECK(inv.order() == 10);
        for (long n = 0; n < 10; ++n) {
            CHECK(inv.coefficient(n) == 1);
        }

        const auto u = poly(SeriesVar::q, {3, 1, 4, 1, 5}, 0, 12);
        const auto qu = poly(SeriesVar::q, {3, 1, 4, 1, 5}, 1, 13);
        const auto lhs = qu.invert();
        const auto rhs = poly(SeriesVar::q, {1}, -1, kUnbounded) * u.invert();
        CHECK(lhs.valuation() == -1);
        CHECK(lhs == rhs.truncated(lhs.order()));
        CHECK((lhs * qu).truncated(lhs.order() + 1 - 1) == poly(SeriesVar::q, {1}, 0, lhs.order()));

        const auto five = padic(poly(SeriesVar::q, {5, 1}, 0, 6), 5, 4);
        CHECK_THROWS_AS(five.invert(), NotInvertible);
    }

    TEST_CASE("log1p")
    {
        const auto t = poly(SeriesVar::t, {1}, 1, 5);
        const auto l = log1p(t);
        CHECK(l.coefficient(1) == 1);
        CHECK(l.coefficient(2) == Rational(-1, 2));
        CHECK(l.coefficient(3) == Rational(1, 3));
        CHECK(l.coefficient(4) == Rational(-1, 4));
        CHECK(log1p(RationalSeries(SeriesVar::t, {}, 5)).is_zero());

        const auto x = poly(SeriesVar::t, {2, 1}, 1, 4);
        CHECK(log1p(x) == log1p(poly(SeriesVar::t, {1}, 1, 4)).map_coefficients(CoeffRing<Rational>{}, [](const Rational &c) {
                  return Rational(2 * c);
              }));
        CHECK_THROWS_AS(log1p(poly(SeriesVar::t, {1, 1}, 0, 4)), DomainError);
    }

    TEST_CASE("exp of log returns the argument")
    {
        for (int s = 0; s < 10; ++s) {
            const auto x = random_series(SeriesVar::t, 1, 12, 20);
            CHECK(support::exp_series(log1p(x)) == (poly(SeriesVar::t, {1}, 0, 12) + x));
        }
    }

    TEST_CASE("pow_weight")
    {
        const auto u = poly(SeriesVar::t, {1, 1}, 0, 10);
        CHECK(pow_weight(u, 2) == poly(SeriesVar::t, {1, 2, 1}, 0, 10));
        const auto inv = pow_weight(u, -1);
        for (long n = 0; n < 10; ++n) {
            CHECK(inv.coefficient(n) == (n % 2 == 0 ? 1 : -1));
        }

        const auto pu = padic(u, 5, 6);
        const auto gamma = PadicTrunc::from_rational(5, 6, Rational(6));
        CHECK(pow_weight(pu, gamma) == padic(pow_weight(u, 6), 5, 6));

        for (int s = 0; s < 10; ++s) {
            const auto w = poly(SeriesVar::t, {1}, 0, 14) + random_series(SeriesVar::t, 1, 14, 9);
            const long g1 = support::uniform(-4, 4), g2 = support::uniform(-4, 4);
            CHECK(pow_weight(w, g1 + g2) == pow_weight(w, g1) * pow_weight(w, g2));
        }
        CHECK_THROWS_AS(pow_weight(padic(poly(SeriesVar::t, {2, 1}, 0, 6), 5, 6), gamma), DomainError);
    }

    TEST_CASE("frobenius substitution")
    {
        CHECK(poly(SeriesVar::q, {1}, 1, 10).frobenius_sub(5) == poly(SeriesVar::q, {1}, 5, 50));
        CHECK(poly(SeriesVar::q, {1, 1, 1}, 0, 10).frobenius_sub(2) == poly(SeriesVar::q, {1, 0, 1, 0, 1}, 0, 20));
        CHECK(poly(SeriesVar::q, {1}, -1, 10).frobenius_sub(3) == poly(SeriesVar::q, {1}, -3, 30));
        for (int s = 0; s < 10; ++s) {
            const auto a = random_series(SeriesVar::q, 0, 8, 30), b = random_series(SeriesVar::q, -1, 8, 30);
            CHECK((a + b).frobenius_sub(3) == a.frobenius_sub(3) + b.frobenius_sub(3));
            CHECK((a * b).frobenius_sub(3) == a.frobenius_sub(3) * b.frobenius_sub(3));
        }
    }

    TEST_CASE("delta0")
    {
        CHECK(delta0(poly(SeriesVar::q, {1}, 1, 20), 5, 6).is_zero());
        const Rational c(17);
        const auto dc = delta0(poly(SeriesVar::q, {17}, 0, 20), 5, 6);
        CHECK(dc.coefficient(0) == PadicTrunc::from_rational(5, 6, fermat_delta(c, 5)));
        const auto d = delta0(poly(SeriesVar::q, {1, 1}, 0, 20), 5, 6);
        CHECK(d == padic(poly(SeriesVar::q, {0, -1, -2, -2, -1}, 0, 20), 5, 6));

        for (int s = 0; s < 10; ++s) {
            const auto a = padic(random_series(SeriesVar::q, 0, 10, 40), 5, 8);
            const auto b = padic(random_series(SeriesVar::q, 0, 10, 40), 5, 8);
            const auto da = delta0(a, 5), db = delta0(b, 5);
            const auto five = PadicSeries::constant(SeriesVar::q, a.ring(), a.ring().from_int(5), kUnbounded);
            CHECK(delta0(a + b, 5) == da + db + cp_polynomial(a, b, 5));
            CHECK(delta0(a * b, 5) == a.pow(5) * db + b.pow(5) * da + five * da * db);
        }
    }
}
