#ifndef ARITHDIFF_MODULAR_HPP
#define ARITHDIFF_MODULAR_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include <arithdiff/qseries.hpp>
#include <arithdiff/rational.hpp>

namespace arithdiff
{

// A level-1 q-expansion: coefficients of q^n for n < series.order().
struct QExpansion {
    int weight = 0;
    long level = 1;
    RationalSeries series{SeriesVar::q, {}, 0};

    Rational coefficient(long n) const
    {
        return series.coefficient(n);
    }
};

// B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(int n);
Rational bernoulli(int n);
Integer divisor_sigma(int k, long n);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, known below q^trunc.
QExpansion eisenstein(int k, long trunc);
// Delta = q prod (1 - q^n)^24, known below q^trunc.
QExpansion discriminant_delta(long trunc);
// j = E_4^3 / Delta with coefficients in Z/p^M.
PadicSeries j_invariant(long trunc, long p, int modulus_exponent);

struct EllipticCurveQ {
    Integer a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    std::string label;

    Integer discriminant() const;
};

// #E(F_p) including the point at infinity.
long count_points(const EllipticCurveQ &e, long p);
// a_p = p + 1 - #E(F_p) at a prime of good reduction.
Integer ap_point_count(const EllipticCurveQ &e, long p);

// a_0..a_nmax (a_0 = 0) from prime values by multiplicativity and the Hecke
// recursion; a_{l^r} = a_l^r at the bad primes.
std::vector<Integer> an_multiplicative(const std::map<long, Integer> &ap, const std::set<long> &bad_primes,
                                       long nmax);

struct CurveFixture {
    EllipticCurveQ curve;
    // Externally supplied a_l at primes of bad reduction.
    std::map<long, Integer> bad_primes;
};

// a_0..a_nmax with good-prime values from point counting.
std::vector<Integer> newform_coefficients(const CurveFixture &fixture, long nmax);

} // namespace arithdiff

#endif
