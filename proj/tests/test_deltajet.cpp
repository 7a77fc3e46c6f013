#include <doctest.h>

#include <arithdiff/deltajet.hpp>
#include <arithdiff/errors.hpp>

#include "support.hpp"

using namespace arithdiff;

namespace
{

const CoeffRing<Rational> kQ;

RationalJet var(long p, SeriesVar base, int index, long bound = kUnbounded)
{
    return RationalJet::variable(p, base, kQ, index, bound);
}

RationalJet cst(long p, SeriesVar base, const Rational &c, long bound = kUnbounded)
{
    return RationalJet::constant(p, base, kQ, c, bound);
}

// Random t-side series with p-integral coefficients, jet order <= 2, known
// below `bound`.
RationalJet random_jet(long p, long bound, int terms)
{
    TruncatedPoly<Rational> poly(kQ, bound);
    for (int s = 0; s < terms; ++s) {
        Monomial m;
        const int e0 = static_cast<int>(support::uniform(0, 4));
        const int e1 = static_cast<int>(support::uniform(0, 1));
        const int e2 = static_cast<int>(support::uniform(0, 1)) * static_cast<int>(support::uniform(0, 1));
        m = jet_monomial(p, kBaseGenerator, 0, e0) * jet_monomial(p, kBaseGenerator, 1, e1)
            * jet_monomial(p, kBaseGenerator, 2, e2);
        if (m.weight() < bound) {
            poly.add_term(m, support::random_integral_at({p}, 9));
        }
    }
    return RationalJet(p, SeriesVar::t, 2, std::move(poly));
}

bool divisible_by_p(const RationalJet &f)
{
    for (const auto &[m, c] : f.poly().terms()) {
        if (!is_p_integral(c / f.prime(), f.prime())) {
            return false;
        }
    }
    return true;
}

// Drops the terms whose q' exponent exceeds `degree`.
RationalJet cut_qprime(const RationalJet &f, int degree)
{
    TruncatedPoly<Rational> poly(kQ, f.bound());
    for (const auto &[m, c] : f.poly().terms()) {
        if (m.exponent(jet_key(kBaseGenerator, 1)) <= degree) {
            poly.add_term(m, c);
        }
    }
    return RationalJet(f.prime(), f.base(), f.order(), std::move(poly));
}

} // namespace

TEST_SUITE("deltajet")
{
    TEST_CASE("phi on generators and constants")
    {
        for (long p : {2L, 5L, 7L}) {
            const auto q = var(p, SeriesVar::q, 0);
            CHECK(q.phi() == q.pow(p) + var(p, SeriesVar::q, 1).scaled(Rational(p)));
            CHECK(q.phi().order() == 1);
            CHECK(cst(p, SeriesVar::q, Rational(11)).phi() == cst(p, SeriesVar::q, Rational(11)));
        }
    }

    TEST_CASE("phi of 1/q against the geometric series")
    {
        const CoeffRing<PadicTrunc> ring{5, 3};
        const auto q = PadicJet::variable(5, SeriesVar::q, ring, 0);
        const auto qp = PadicJet::variable(5, SeriesVar::q, ring, 1);
        const auto lhs = q.pow(-1).phi();
        const auto u = qp * q.pow(-5);
        const auto one = PadicJet::constant(5, SeriesVar::q, ring, ring.from_int(1));
        const auto rhs = q.pow(-5) * (one - u.scaled(ring.from_int(5)) + (u * u).scaled(ring.from_int(25)));
        CHECK(lhs == rhs);
    }

    TEST_CASE("delta examples")
    {
        const auto q = var(5, SeriesVar::q, 0);
        CHECK(q.delta() == var(5, SeriesVar::q, 1));
        CHECK(q.delta_n(2) == var(5, SeriesVar::q, 2));
        CHECK(cst(5, SeriesVar::q, Rational(1)).delta_n(3).is_zero());
        CHECK(cst(5, SeriesVar::q, Rational(2)).delta() == cst(5, SeriesVar::q, Rational(-6)));
        CHECK(cst(3, SeriesVar::q, Rational(2)).delta_n(2) == cst(3, SeriesVar::q, Rational(2)));

        const auto lq = q.scaled(Rational(6));
        const auto residual = lq.delta() - var(5, SeriesVar::q, 1) - q.pow(5);
        CHECK(divisible_by_p(residual));
        // Non-integral input is allowed; the output is then not p-integral either.
        CHECK_FALSE(cst(5, SeriesVar::q, Rational(1, 5)).delta().all_p_integral());
    }

    TEST_CASE("phi is a Frobenius lift and delta a p-derivation")
    {
        for (long p : {5L, 7L}) {
            const long bound = 3 * p;
            for (int s = 0; s < 6; ++s) {
                const auto f = random_jet(p, bound, 6), g = random_jet(p, bound, 6);
                CHECK((f + g).phi() == f.phi() + g.phi());
                CHECK((f * g).phi() == f.phi() * g.phi());
                CHECK(divisible_by_p(f.phi() - f.pow(p)));

                const auto df = f.delta(), dg = g.delta();
                CHECK((f + g).delta() == df + dg + cp_polynomial(f, g, p));
                CHECK((f * g).delta() == f.pow(p) * dg + g.pow(p) * df + (df * dg).scaled(Rational(p)));
                CHECK(f.phi().delta() == f.delta().phi());
            }
        }
    }

    TEST_CASE("weight action")
    {
        const long p = 5, bound = 40;
        const auto u = cst(p, SeriesVar::t, Rational(1), bound) + var(p, SeriesVar::t, 0, bound);
        CHECK(weight_action(u, Weight::single({1})) == u);
        CHECK(weight_action(u, Weight::single({-1, -1})) == (u * u.phi()).invert());

        const auto q = var(p, SeriesVar::q, 0);
        CHECK(weight_action(q, Weight::single({-1, 1})) == q.phi() * q.pow(-1));

        const std::vector<Weight> ws{Weight::single({1}), Weight::single({-1, 1}), Weight::single({2, 0, -1}),
                                     Weight::single({0, 1, 1}), Weight::single({-2})};
        for (const auto &a : ws) {
            for (const auto &b : ws) {
                CHECK(weight_action(u, a + b) == weight_action(u, a) * weight_action(u, b));
            }
        }
    }

    TEST_CASE("Psi on the Fourier side")
    {
        for (long p : {5L, 7L}) {
            CHECK(psi_fourier_coefficient(p, 1) == 1);
            CHECK(psi_fourier_coefficient(p, 2) == Rational(-p, 2));
            for (long n = 1; n <= 25; ++n) {
                const int v = valuation(psi_fourier_coefficient(p, n), p);
                CHECK(v == n - 1 - valuation(Integer(n), p));
                CHECK(v >= 0);
            }
        }
        // Terms with p^8 | coefficient vanish after reduction.
        const auto psi = psi_fourier(5, 8, 30);
        std::size_t live = 0;
        for (long n = 1; n <= 30; ++n) {
            live += n - 1 - valuation(Integer(n), 5) < 8 ? 1 : 0;
        }
        CHECK(psi.poly().size() == live);
    }

    TEST_CASE("exp(p Psi) q^p = q^p + p q'")
    {
        const long p = 5;
        const int window = 30;
        const auto x = psi_fourier_exact(p, window).scaled(Rational(p));
        auto sum = cst(p, SeriesVar::q, Rational(1));
        auto power = sum;
        Rational factorial = 1;
        for (int k = 1; k <= window; ++k) {
            power = cut_qprime(power * x, window);
            factorial *= k;
            sum = sum + power.scaled(1 / factorial);
        }
        const auto q = var(p, SeriesVar::q, 0);
        const auto lhs = reduce_mod(cut_qprime(sum * q.pow(p), window), 8);
        const auto rhs = reduce_mod(q.pow(p) + var(p, SeriesVar::q, 1).scaled(Rational(p)), 8);
        CHECK(lhs == rhs);
    }

    TEST_CASE("Psi on the Serre-Tate side")
    {
        const auto psi = psi_serretate(5, 12);
        CHECK(psi.poly().coefficient(jet_monomial(5, kBaseGenerator, 1)) == 1);
        CHECK(psi.poly().coefficient(jet_monomial(5, kBaseGenerator, 0)) == -1);
        CHECK(psi.poly().coefficient(jet_monomial(5, kBaseGenerator, 0, 2)) == Rational(1, 2));
        CHECK(psi.all_p_integral());

        for (long p : {5L, 7L}) {
            const long bound = 20;
            CHECK(fourier_to_serretate(psi_fourier_exact(p, bound), bound) == psi_serretate(p, bound));
        }
    }

    TEST_CASE("lemma xlaphi")
    {
        for (long p : {2L, 3L, 5L, 7L}) {
            for (int n : {1, 2}) {
                const auto symbolic = lemma_xlaphi_check(p, n, std::nullopt);
                CHECK_MESSAGE(symbolic.pass, symbolic.detail);
                for (long v : {0L, 1L}) {
                    const auto r = lemma_xlaphi_check(p, n, v);
                    CHECK_MESSAGE(r.pass, r.detail);
                }
            }
        }
    }

    TEST_CASE("lemma logder")
    {
        CHECK(lemma_logder_check(5, 1, 1).pass);
        CHECK(lemma_logder_check(5, 2, 3).pass);
        CHECK(lemma_logder_check(7, 1, 2).pass);
        const auto trivial = lemma_logder_check(5, 2, 0);
        CHECK(trivial.pass);
        CHECK(trivial.residual_terms == 0);
    }

    TEST_CASE("log1p on jets")
    {
        const auto t = var(5, SeriesVar::t, 0, 6);
        const auto l = log1p(t);
        CHECK(l.poly().coefficient(jet_monomial(5, kBaseGenerator, 0, 3)) == Rational(1, 3));
        CHECK_THROWS_AS(log1p(cst(5, SeriesVar::t, Rational(1), 6)), DomainError);
    }
}
