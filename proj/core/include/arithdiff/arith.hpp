#ifndef ARITHDIFF_ARITH_HPP
#define ARITHDIFF_ARITH_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <arithdiff/errors.hpp>
#include <arithdiff/padic.hpp>
#include <arithdiff/rational.hpp>

namespace arithdiff
{

// An exact rational whose denominator is prime to every prime of the
// active set, i.e. an element of Z_(P).
class LocalizedRational
{
public:
    LocalizedRational(Rational value, std::vector<long> primes);

    const Rational &value() const noexcept
    {
        return value_;
    }
    const std::vector<long> &primes() const noexcept
    {
        return primes_;
    }
    bool contains_prime(long p) const;

    LocalizedRational operator-() const;
    friend LocalizedRational operator+(const LocalizedRational &a, const LocalizedRational &b);
    friend LocalizedRational operator-(const LocalizedRational &a, const LocalizedRational &b);
    friend LocalizedRational operator*(const LocalizedRational &a, const LocalizedRational &b);
    friend bool operator==(const LocalizedRational &a, const LocalizedRational &b)
    {
        return a.value_ == b.value_ && a.primes_ == b.primes_;
    }

    std::string to_string() const
    {
        return arithdiff::to_string(value_);
    }

private:
    Rational value_;
    std::vector<long> primes_;
};

// w = sum_i a_i phi_P^i, keyed by the multi-index i (a single component for
// one prime).
class Weight
{
public:
    Weight() = default;
    explicit Weight(std::map<std::vector<int>, long> coefficients);
    // w = sum_i a[i] phi^i for a single prime.
    static Weight single(const std::vector<long> &a);

    const std::map<std::vector<int>, long> &coefficients() const noexcept
    {
        return coefficients_;
    }
    long coefficient(const std::vector<int> &index) const;
    long degree() const;
    // Componentwise maximum of the support (empty for w = 0).
    std::vector<int> order() const;

    friend Weight operator+(const Weight &a, const Weight &b);
    friend Weight operator-(const Weight &a, const Weight &b);
    friend bool operator==(const Weight &, const Weight &) = default;

private:
    std::map<std::vector<int>, long> coefficients_;
};

// Fermat quotient (x - x^p)/p; the Frobenius lift is the identity on
// these coefficient domains.
Rational fermat_delta(const Rational &a, long p);
LocalizedRational fermat_delta(const LocalizedRational &a, long p);
PadicTrunc fermat_delta(const PadicTrunc &a, long p);

// Ring-generic helpers used by the polynomial identities below.
inline Rational times_integer(const Rational &x, const Integer &n)
{
    return x * Rational(n);
}
inline Integer times_integer(const Integer &x, const Integer &n)
{
    return x * n;
}
inline PadicTrunc times_integer(const PadicTrunc &x, const Integer &n)
{
    return x * PadicTrunc(x.prime(), x.modulus_exponent(), n);
}
inline LocalizedRational times_integer(const LocalizedRational &x, const Integer &n)
{
    return LocalizedRational(x.value() * Rational(n), x.primes());
}

template <typename R>
R power(const R &x, unsigned long n)
{
    if (n == 0) {
        throw DomainError("power: zero exponent needs a unit element");
    }
    R result = x;
    R base = x;
    --n;
    while (n > 0) {
        if (n & 1UL) {
            result = result * base;
        }
        n >>= 1U;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

Integer binomial(long n, long k);

// C_p(X,Y) = (X^p + Y^p - (X+Y)^p)/p, evaluated through its integer
// coefficients -sum_{0<j<p} (binom(p,j)/p) X^j Y^{p-j}; no division occurs.
template <typename R>
R cp_polynomial(const R &x, const R &y, long p)
{
    if (p < 2 || !is_prime(p)) {
        throw DomainError("cp_polynomial: p must be prime");
    }
    std::vector<R> xp{x};
    std::vector<R> yp{y};
    for (long j = 2; j < p; ++j) {
        xp.push_back(xp.back() * x);
        yp.push_back(yp.back() * y);
    }
    std::optional<R> acc;
    for (long j = 1; j < p; ++j) {
        const Integer c = -(binomial(p, j) / p);
        R term = times_integer(xp[j - 1] * yp[p - j - 1], c);
        acc = acc ? *acc + term : term;
    }
    return *acc;
}

// C_{p1,p2}(X0,X1,X2). With x1 = delta_{p1} x0 and x2 = delta_{p2} x0 this
// equals delta_{p1}(delta_{p2} x0) - delta_{p2}(delta_{p1} x0).
template <typename R>
R cross_prime_commutator(const R &x0, const R &x1, const R &x2, long p1, long p2)
{
    if (p1 == p2 || !is_prime(p1) || !is_prime(p2)) {
        throw DomainError("cross_prime_commutator: need two distinct primes");
    }
    // C_{q}(A, s*B)/s = -sum_{0<j<q} (binom(q,j)/q) s^{q-j-1} A^j B^{q-j}.
    auto scaled_cp = [](const R &a, const R &b, long q, long s) {
        std::vector<R> ap{a};
        std::vector<R> bp{b};
        for (long j = 2; j < q; ++j) {
            ap.push_back(ap.back() * a);
            bp.push_back(bp.back() * b);
        }
        std::optional<R> acc;
        for (long j = 1; j < q; ++j) {
            const Integer c = -(binomial(q, j) / q) * ipow(s, static_cast<unsigned long>(q - j - 1));
            R term = times_integer(ap[j - 1] * bp[q - j - 1], c);
            acc = acc ? *acc + term : term;
        }
        return *acc;
    };
    const R a1 = power(x0, static_cast<unsigned long>(p1));
    const R a2 = power(x0, static_cast<unsigned long>(p2));
    // delta_{p1}(p2)/p2 = (1 - p2^{p1-1})/p1, and symmetrically.
    const Integer k1 = (1 - ipow(p2, static_cast<unsigned long>(p1 - 1))) / p1;
    const Integer k2 = (1 - ipow(p1, static_cast<unsigned long>(p2 - 1))) / p2;
    R result = scaled_cp(a1, x1, p2, p1);
    result = result + times_integer(scaled_cp(a2, x2, p1, p2), Integer(-1));
    result = result + times_integer(power(x2, static_cast<unsigned long>(p1)), Integer(-k1));
    result = result + times_integer(power(x1, static_cast<unsigned long>(p2)), k2);
    return result;
}

// binom(gamma, k) as a p-adic integer; loses v_p(k!) digits.
PadicTrunc padic_binomial(const PadicTrunc &gamma, long k);

struct ResidueDatum {
    long prime;
    int exponent;
    Integer residue;
};

struct Reconstruction {
    Rational value;
    Integer modulus;
    Integer height_bound;
};

// Combines the residues by CRT and returns the unique n/d with |n|, d at
// most the height bound (default floor(sqrt(m/2))). std::nullopt when no
// such rational exists or the requested bound exceeds floor(sqrt(m/2)).
std::optional<Reconstruction> try_rational_reconstruct(const std::vector<ResidueDatum> &residues,
                                                       std::optional<Integer> height_bound = std::nullopt);

// Throws ReconstructionFailure instead of returning nullopt.
LocalizedRational rational_reconstruct(const std::vector<ResidueDatum> &residues,
                                       std::optional<Integer> height_bound = std::nullopt);

// Reduces x into each (prime, exponent) slot.
std::vector<ResidueDatum> reduce_residues(const Rational &x, const std::vector<std::pair<long, int>> &slots);

} // namespace arithdiff

#endif
