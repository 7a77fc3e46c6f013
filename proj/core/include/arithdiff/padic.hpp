#ifndef ARITHDIFF_PADIC_HPP
#define ARITHDIFF_PADIC_HPP

#include <string>

#include <arithdiff/rational.hpp>

namespace arithdiff
{

// A p-adic integer known modulo p^digits, stored as a residue modulo p^M.
//
// The residue is always reduced mod p^M, but only its lowest `digits`
// digits are meaningful. Division by p consumes one digit.
class PadicTrunc
{
public:
    PadicTrunc() = default;
    PadicTrunc(long p, int modulus_exponent, const Integer &value);
    PadicTrunc(long p, int modulus_exponent, const Integer &residue, int digits);

    // x must be p-integral.
    static PadicTrunc from_rational(long p, int modulus_exponent, const Rational &x);

    long prime() const noexcept
    {
        return p_;
    }
    int modulus_exponent() const noexcept
    {
        return m_;
    }
    const Integer &residue() const noexcept
    {
        return residue_;
    }
    int digits() const noexcept
    {
        return digits_;
    }

    // Representative in (-p^M/2, p^M/2].
    Integer symmetric_lift() const;

    bool is_zero() const;
    bool is_unit() const;
    // Capped at digits().
    int valuation() const;

    PadicTrunc operator-() const;
    PadicTrunc &operator+=(const PadicTrunc &other);
    PadicTrunc &operator-=(const PadicTrunc &other);
    PadicTrunc &operator*=(const PadicTrunc &other);
    friend PadicTrunc operator+(PadicTrunc a, const PadicTrunc &b)
    {
        return a += b;
    }
    friend PadicTrunc operator-(PadicTrunc a, const PadicTrunc &b)
    {
        return a -= b;
    }
    friend PadicTrunc operator*(PadicTrunc a, const PadicTrunc &b)
    {
        return a *= b;
    }

    PadicTrunc pow(unsigned long e) const;
    PadicTrunc divide_by_p() const;
    PadicTrunc inverse() const;
    // Exact division by a nonzero integer, consuming v_p(n) digits.
    PadicTrunc divide_exact(long n) const;
    PadicTrunc with_digits(int digits) const;

    // Compares residues modulo p^min(digits).
    friend bool operator==(const PadicTrunc &a, const PadicTrunc &b);

    std::string to_string() const;

private:
    void check_compatible(const PadicTrunc &other) const;
    Integer modulus() const;

    long p_ = 2;
    int m_ = 1;
    Integer residue_ = 0;
    int digits_ = 1;
};

} // namespace arithdiff

#endif
