#include <arithdiff/rational.hpp>

#include <algorithm>

#include <arithdiff/errors.hpp>

namespace arithdiff
{

bool is_prime(long n)
{
    if (n < 2) {
        return false;
    }
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

int valuation(const Integer &n, long p)
{
    if (sgn(n) == 0) {
        return kInfiniteValuation;
    }
    Integer m = n;
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p)) != 0) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

int valuation(const Rational &x, long p)
{
    if (sgn(x) == 0) {
        return kInfiniteValuation;
    }
    return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

bool is_p_integral(const Rational &x, long p)
{
    return mpz_divisible_ui_p(x.get_den_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

bool is_integral_at(const Rational &x, const std::vector<long> &primes)
{
    return std::all_of(primes.begin(), primes.end(), [&](long p) { return is_p_integral(x, p); });
}

Integer ipow(long base, unsigned long exp)
{
    Integer result;
    Integer b(base);
    mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exp);
    return result;
}

Rational pow(const Rational &x, unsigned long exp)
{
    Rational result;
    mpz_pow_ui(result.get_num_mpz_t(), x.get_num_mpz_t(), exp);
    mpz_pow_ui(result.get_den_mpz_t(), x.get_den_mpz_t(), exp);
    return result;
}

std::string to_string(const Rational &x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text)
{
    const std::string s(text);
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(s));
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (sgn(den) == 0) {
            throw UsageError("zero denominator in rational '" + s + "'");
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument &) {
        throw UsageError("malformed rational '" + s + "'");
    }
}

} // namespace arithdiff
