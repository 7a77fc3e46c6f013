#ifndef ARITHDIFF_RATIONAL_HPP
#define ARITHDIFF_RATIONAL_HPP

#include <climits>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace arithdiff
{

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kInfiniteValuation = INT_MAX;

bool is_prime(long n);

// p-adic valuation; kInfiniteValuation for zero.
int valuation(const Integer &n, long p);
int valuation(const Rational &x, long p);

// True when the denominator of x is prime to p.
bool is_p_integral(const Rational &x, long p);
bool is_integral_at(const Rational &x, const std::vector<long> &primes);

// n/d in lowest terms.
inline Rational ratio(const Integer &n, const Integer &d)
{
    Rational x(n, d);
    x.canonicalize();
    return x;
}

Integer ipow(long base, unsigned long exp);
Rational pow(const Rational &x, unsigned long exp);

// Decimal "n/d" (always with an explicit denominator).
std::string to_string(const Rational &x);
// Accepts "n/d" or "n".
Rational parse_rational(std::string_view text);

} // namespace arithdiff

#endif
