#ifndef ARITHDIFF_COEFF_RING_HPP
#define ARITHDIFF_COEFF_RING_HPP

#include <string>

#include <arithdiff/errors.hpp>
#include <arithdiff/padic.hpp>
#include <arithdiff/rational.hpp>

namespace arithdiff
{

// Coefficient-domain context used by the series kernels. Series carry one
// of these so that constants can be created without a sample element.
template <typename C>
struct CoeffRing;

template <>
struct CoeffRing<Rational> {
    Rational from_int(long n) const
    {
        return Rational(n);
    }
    Rational from_rational(const Rational &x) const
    {
        return x;
    }
    bool is_exact_zero(const Rational &c) const
    {
        return sgn(c) == 0;
    }
    bool is_zero(const Rational &c) const
    {
        return sgn(c) == 0;
    }
    bool is_unit(const Rational &c) const
    {
        return sgn(c) != 0;
    }
    // Nothing in Q is topologically nilpotent.
    bool is_small(const Rational &) const
    {
        return false;
    }
    Rational inverse(const Rational &c) const
    {
        if (sgn(c) == 0) {
            throw NotInvertible("division by zero rational");
        }
        return 1 / c;
    }
    Rational divide_exact(const Rational &c, long n) const
    {
        return c / n;
    }
    std::string to_string(const Rational &c) const
    {
        return arithdiff::to_string(c);
    }
    bool operator==(const CoeffRing &) const
    {
        return true;
    }
};

template <>
struct CoeffRing<PadicTrunc> {
    long p = 5;
    int modulus_exponent = 8;

    PadicTrunc from_int(long n) const
    {
        return PadicTrunc(p, modulus_exponent, Integer(n));
    }
    PadicTrunc from_rational(const Rational &x) const
    {
        return PadicTrunc::from_rational(p, modulus_exponent, x);
    }
    // Zero to full precision. A term that is zero only to fewer digits must be
    // kept, or a later lookup would report an exact zero.
    bool is_exact_zero(const PadicTrunc &c) const
    {
        return c.digits() >= modulus_exponent && c.is_zero();
    }
    bool is_zero(const PadicTrunc &c) const
    {
        return c.is_zero();
    }
    bool is_unit(const PadicTrunc &c) const
    {
        return c.is_unit();
    }
    bool is_small(const PadicTrunc &c) const
    {
        return !c.is_unit();
    }
    PadicTrunc inverse(const PadicTrunc &c) const
    {
        return c.inverse();
    }
    PadicTrunc divide_exact(const PadicTrunc &c, long n) const
    {
        return c.divide_exact(n);
    }
    std::string to_string(const PadicTrunc &c) const
    {
        return c.residue().get_str();
    }
    bool operator==(const CoeffRing &other) const
    {
        return p == other.p && modulus_exponent == other.modulus_exponent;
    }
};

} // namespace arithdiff

#endif
