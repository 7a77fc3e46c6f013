#include <arithdiff/padic.hpp>

#include <algorithm>
#include <map>
#include <utility>

#include <arithdiff/errors.hpp>

namespace arithdiff
{

namespace
{

// Pure memo of p^M; each thread keeps its own table.
const Integer &cached_modulus(long p, int m)
{
    thread_local std::map<std::pair<long, int>, Integer> table;
    auto it = table.find({p, m});
    if (it == table.end()) {
        it = table.emplace(std::make_pair(p, m), ipow(p, static_cast<unsigned long>(m))).first;
    }
    return it->second;
}

Integer reduce(const Integer &x, const Integer &mod)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    return r;
}

} // namespace

PadicTrunc::PadicTrunc(long p, int modulus_exponent, const Integer &value)
    : PadicTrunc(p, modulus_exponent, value, modulus_exponent)
{
}

PadicTrunc::PadicTrunc(long p, int modulus_exponent, const Integer &residue, int digits)
    : p_(p), m_(modulus_exponent), digits_(digits)
{
    if (!is_prime(p)) {
        throw DomainError("PadicTrunc: " + std::to_string(p) + " is not prime");
    }
    if (modulus_exponent < 1) {
        throw DomainError("PadicTrunc: modulus exponent must be positive");
    }
    if (digits < 0 || digits > modulus_exponent) {
        throw DomainError("PadicTrunc: guaranteed digits out of range");
    }
    residue_ = reduce(residue, modulus());
}

PadicTrunc PadicTrunc::from_rational(long p, int modulus_exponent, const Rational &x)
{
    if (!is_p_integral(x, p)) {
        throw IntegralityViolation("rational " + arithdiff::to_string(x) + " is not " + std::to_string(p)
                                   + "-integral");
    }
    const Integer &mod = cached_modulus(p, modulus_exponent);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), mod.get_mpz_t());
    return PadicTrunc(p, modulus_exponent, Integer(x.get_num() * inv));
}

Integer PadicTrunc::modulus() const
{
    return cached_modulus(p_, m_);
}

Integer PadicTrunc::symmetric_lift() const
{
    const Integer &mod = cached_modulus(p_, m_);
    Integer r = residue_;
    if (2 * r > mod) {
        r -= mod;
    }
    return r;
}

bool PadicTrunc::is_zero() const
{
    if (digits_ == 0) {
        return true;
    }
    return mpz_divisible_p(residue_.get_mpz_t(), cached_modulus(p_, digits_).get_mpz_t()) != 0;
}

bool PadicTrunc::is_unit() const
{
    return digits_ > 0 && mpz_divisible_ui_p(residue_.get_mpz_t(), static_cast<unsigned long>(p_)) == 0;
}

int PadicTrunc::valuation() const
{
    if (is_zero()) {
        return digits_;
    }
    return std::min(arithdiff::valuation(residue_, p_), digits_);
}

void PadicTrunc::check_compatible(const PadicTrunc &other) const
{
    if (p_ != other.p_ || m_ != other.m_) {
        throw DomainError("PadicTrunc: mismatched prime or modulus");
    }
}

PadicTrunc PadicTrunc::operator-() const
{
    return PadicTrunc(p_, m_, Integer(-residue_), digits_);
}

PadicTrunc &PadicTrunc::operator+=(const PadicTrunc &other)
{
    check_compatible(other);
    residue_ += other.residue_;
    const Integer &mod = cached_modulus(p_, m_);
    if (residue_ >= mod) {
        residue_ -= mod;
    }
    digits_ = std::min(digits_, other.digits_);
    return *this;
}

PadicTrunc &PadicTrunc::operator-=(const PadicTrunc &other)
{
    check_compatible(other);
    residue_ -= other.residue_;
    if (sgn(residue_) < 0) {
        residue_ += cached_modulus(p_, m_);
    }
    digits_ = std::min(digits_, other.digits_);
    return *this;
}

PadicTrunc &PadicTrunc::operator*=(const PadicTrunc &other)
{
    check_compatible(other);
    // a + O(p^da) times b + O(p^db) is known mod p^min(da + v(b), db + v(a)).
    const int va = valuation(), vb = other.valuation();
    residue_ *= other.residue_;
    mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), cached_modulus(p_, m_).get_mpz_t());
    digits_ = std::min({m_, digits_ + vb, other.digits_ + va});
    return *this;
}

PadicTrunc PadicTrunc::pow(unsigned long e) const
{
    Integer r;
    mpz_powm_ui(r.get_mpz_t(), residue_.get_mpz_t(), e, cached_modulus(p_, m_).get_mpz_t());
    return PadicTrunc(p_, m_, r, digits_);
}

PadicTrunc PadicTrunc::divide_by_p() const
{
    if (digits_ == 0) {
        throw PrecisionExhausted("no guaranteed " + std::to_string(p_) + "-adic digits left to divide by p");
    }
    if (mpz_divisible_ui_p(residue_.get_mpz_t(), static_cast<unsigned long>(p_)) == 0) {
        throw IntegralityViolation("residue " + residue_.get_str() + " is not divisible by " + std::to_string(p_));
    }
    Integer r;
    mpz_divexact_ui(r.get_mpz_t(), residue_.get_mpz_t(), static_cast<unsigned long>(p_));
    return PadicTrunc(p_, m_, r, digits_ - 1);
}

PadicTrunc PadicTrunc::inverse() const
{
    if (!is_unit()) {
        throw NotInvertible("p-adic value " + residue_.get_str() + " is not a unit");
    }
    Integer inv;
    mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), cached_modulus(p_, m_).get_mpz_t());
    return PadicTrunc(p_, m_, inv, digits_);
}

PadicTrunc PadicTrunc::divide_exact(long n) const
{
    if (n == 0) {
        throw DomainError("PadicTrunc: division by zero");
    }
    PadicTrunc result = *this;
    long unit = n;
    while (unit % p_ == 0) {
        unit /= p_;
        result = result.divide_by_p();
    }
    return result * PadicTrunc(p_, m_, Integer(unit)).inverse();
}

PadicTrunc PadicTrunc::with_digits(int digits) const
{
    return PadicTrunc(p_, m_, residue_, std::min(digits, digits_));
}

bool operator==(const PadicTrunc &a, const PadicTrunc &b)
{
    if (a.p_ != b.p_ || a.m_ != b.m_) {
        return false;
    }
    const int g = std::min(a.digits_, b.digits_);
    if (g == 0) {
        return true;
    }
    Integer diff = a.residue_ - b.residue_;
    return mpz_divisible_p(diff.get_mpz_t(), cached_modulus(a.p_, g).get_mpz_t()) != 0;
}

std::string PadicTrunc::to_string() const
{
    return residue_.get_str() + " + O(" + std::to_string(p_) + "^" + std::to_string(digits_) + ")";
}

} // namespace arithdiff
