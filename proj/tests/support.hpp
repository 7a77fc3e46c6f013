#ifndef ARITHDIFF_TESTS_SUPPORT_HPP
#define ARITHDIFF_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include <arithdiff/arith.hpp>
#include <arithdiff/qseries.hpp>

namespace support
{

using arithdiff::Integer;
using arithdiff::Rational;

inline std::mt19937_64 &rng()
{
    static std::mt19937_64 gen(20261019);
    return gen;
}

inline long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

// n/d with |n| <= height, 1 <= d <= height and d prime to every p.
inline Rational random_integral_at(const std::vector<long> &primes, long height)
{
    for (;;) {
        const long d = uniform(1, height);
        bool ok = true;
        for (long p : primes) {
            ok = ok && d % p != 0;
        }
        if (ok) {
            Rational x(uniform(-height, height), d);
            x.canonicalize();
            return x;
        }
    }
}

inline std::string data_path(const std::string &name)
{
    return std::string(ARITHDIFF_DATA_DIR) + "/" + name;
}

// exp(x) = sum x^k/k! for x with positive valuation; kept out of the
// library because it does not preserve p-integrality.
inline arithdiff::RationalSeries exp_series(const arithdiff::RationalSeries &x)
{
    auto sum = arithdiff::RationalSeries::constant(x.var(), {}, Rational(1), x.order());
    auto power = sum;
    Rational factorial = 1;
    for (long k = 1; k < x.order() + 1; ++k) {
        power = (power * x).truncated(x.order());
        if (power.is_zero()) {
            break;
        }
        factorial *= k;
        sum = sum + power.map_coefficients(arithdiff::CoeffRing<Rational>{},
                                           [&](const Rational &c) { return Rational(c / factorial); });
    }
    return sum;
}

} // namespace support

#endif
