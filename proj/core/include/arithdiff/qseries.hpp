#ifndef ARITHDIFF_QSERIES_HPP
#define ARITHDIFF_QSERIES_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <arithdiff/arith.hpp>
#include <arithdiff/coeff_ring.hpp>
#include <arithdiff/errors.hpp>
#include <arithdiff/padic.hpp>
#include <arithdiff/polynomial.hpp>
#include <arithdiff/rational.hpp>

namespace arithdiff
{

// q: Laurent variable on the Fourier side; t: power-series variable on the
// Serre-Tate side (q = 1 + t).
enum class SeriesVar { q, t };

std::string to_string(SeriesVar v);
SeriesVar parse_series_var(const std::string &s);

// Truncated one-variable series sum_{v <= n < N} a_n x^n over a coefficient
// domain. Terms at exponent >= N are unknown.
template <typename C>
class Series1
{
public:
    using Ring = CoeffRing<C>;

    Series1(SeriesVar var, Ring ring, long order) : var_(var), ring_(std::move(ring)), low_(order), order_(order) {}

    // coefficients[i] is the coefficient of x^(low + i).
    Series1(SeriesVar var, Ring ring, long low, std::vector<C> coefficients, long order)
        : var_(var), ring_(std::move(ring)), low_(low), coeffs_(std::move(coefficients)), order_(order)
    {
        normalize();
    }

    static Series1 monomial(SeriesVar var, const Ring &ring, long exponent, const C &c, long order)
    {
        return Series1(var, ring, exponent, {c}, order);
    }
    static Series1 constant(SeriesVar var, const Ring &ring, const C &c, long order)
    {
        return monomial(var, ring, 0, c, order);
    }

    SeriesVar var() const noexcept
    {
        return var_;
    }
    const Ring &ring() const noexcept
    {
        return ring_;
    }
    long order() const noexcept
    {
        return order_;
    }
    bool is_zero() const noexcept
    {
        return coeffs_.empty();
    }
    // Exponent of the first nonzero term (order() for the zero series).
    long valuation() const noexcept
    {
        return coeffs_.empty() ? order_ : low_;
    }

    C coefficient(long n) const
    {
        if (n >= order_) {
            throw DomainError("coefficient requested beyond truncation order");
        }
        if (n < low_ || n >= low_ + static_cast<long>(coeffs_.size())) {
            return ring_.from_int(0);
        }
        return coeffs_[static_cast<std::size_t>(n - low_)];
    }

    // (exponent, coefficient) pairs of the nonzero terms.
    std::vector<std::pair<long, C>> terms() const
    {
        std::vector<std::pair<long, C>> out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!ring_.is_zero(coeffs_[i])) {
                out.emplace_back(low_ + static_cast<long>(i), coeffs_[i]);
            }
        }
        return out;
    }

    Series1 truncated(long order) const
    {
        Series1 s = *this;
        s.order_ = std::min(order_, order);
        s.normalize();
        return s;
    }

    Series1 operator-() const
    {
        Series1 s = *this;
        for (auto &c : s.coeffs_) {
            c = -c;
        }
        return s;
    }

    friend Series1 operator+(const Series1 &a, const Series1 &b)
    {
        return combine(a, b, false);
    }
    friend Series1 operator-(const Series1 &a, const Series1 &b)
    {
        return combine(a, b, true);
    }

    friend Series1 operator*(const Series1 &a, const Series1 &b)
    {
        a.check_compatible(b);
        const long order = std::min(saturating_add(a.order_, b.valuation()), saturating_add(b.order_, a.valuation()));
        if (a.is_zero() || b.is_zero()) {
            return Series1(a.var_, a.ring_, order);
        }
        const long low = a.low_ + b.low_;
        const long len = std::clamp(order - low, 0L, static_cast<long>(a.coeffs_.size() + b.coeffs_.size() - 1));
        std::vector<C> out(static_cast<std::size_t>(len), a.ring_.from_int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.ring_.is_zero(a.coeffs_[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size() && static_cast<long>(i + j) < len; ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Series1(a.var_, a.ring_, low, std::move(out), order);
    }

    Series1 scaled(const C &s) const
    {
        Series1 r = *this;
        for (auto &c : r.coeffs_) {
            c *= s;
        }
        r.normalize();
        return r;
    }

    // Inverse of a series whose leading coefficient is a unit.
    Series1 invert() const
    {
        if (is_zero()) {
            throw NotInvertible("cannot invert the zero series");
        }
        if (!ring_.is_unit(coeffs_.front())) {
            throw NotInvertible("leading coefficient is not a unit");
        }
        if (var_ == SeriesVar::t && low_ != 0) {
            throw NotInvertible("power series in t with positive valuation is not a unit");
        }
        if (order_ >= kUnbounded) {
            if (coeffs_.size() == 1) {
                return monomial(var_, ring_, -low_, ring_.inverse(coeffs_.front()), kUnbounded);
            }
            throw NotInvertible("inverse of an untruncated polynomial needs a truncation order");
        }
        // u = x^v * w with w(0) a unit; 1/w by the usual recursion.
        const long len = order_ - low_;
        const C w0_inv = ring_.inverse(coeffs_.front());
        std::vector<C> inv(static_cast<std::size_t>(len), ring_.from_int(0));
        for (long n = 0; n < len; ++n) {
            C acc = n == 0 ? ring_.from_int(1) : ring_.from_int(0);
            for (long k = 1; k <= n && k < static_cast<long>(coeffs_.size()); ++k) {
                acc -= coeffs_[static_cast<std::size_t>(k)] * inv[static_cast<std::size_t>(n - k)];
            }
            inv[static_cast<std::size_t>(n)] = acc * w0_inv;
        }
        // 1/u is known below (order - low) - low.
        return Series1(var_, ring_, -low_, std::move(inv), len - low_);
    }

    Series1 pow(long n) const
    {
        if (n < 0) {
            return invert().pow(-n);
        }
        Series1 result = constant(var_, ring_, ring_.from_int(1), kUnbounded);
        Series1 base = *this;
        while (n > 0) {
            if (n & 1L) {
                result = result * base;
            }
            n >>= 1;
            if (n > 0) {
                base = base * base;
            }
        }
        return result;
    }

    // x -> x^p; the coefficient Frobenius is the identity.
    Series1 frobenius_sub(long p) const
    {
        if (!is_prime(p)) {
            throw DomainError("frobenius_sub: p must be prime");
        }
        const long order = saturating_mul(order_, p);
        if (is_zero()) {
            return Series1(var_, ring_, order);
        }
        std::vector<C> out((coeffs_.size() - 1) * static_cast<std::size_t>(p) + 1, ring_.from_int(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            out[i * static_cast<std::size_t>(p)] = coeffs_[i];
        }
        return Series1(var_, ring_, low_ * p, std::move(out), order);
    }

    template <typename D, typename F>
    Series1<D> map_coefficients(const CoeffRing<D> &ring, F &&fn) const
    {
        std::vector<D> out;
        out.reserve(coeffs_.size());
        for (const auto &c : coeffs_) {
            out.push_back(fn(c));
        }
        return Series1<D>(var_, ring, low_, std::move(out), order_);
    }

    friend bool operator==(const Series1 &a, const Series1 &b)
    {
        if (a.var_ != b.var_) {
            return false;
        }
        const long order = std::min(a.order_, b.order_);
        const long from = std::min(a.valuation(), b.valuation());
        for (long n = from; n < order; ++n) {
            if (!(a.coefficient(n) == b.coefficient(n))) {
                return false;
            }
        }
        return true;
    }

private:
    static Series1 combine(const Series1 &a, const Series1 &b, bool subtract)
    {
        a.check_compatible(b);
        const long order = std::min(a.order_, b.order_);
        const long low = std::min(a.valuation(), b.valuation());
        const long high = std::max(a.low_ + static_cast<long>(a.coeffs_.size()), b.low_ + static_cast<long>(b.coeffs_.size()));
        const long len = std::max(0L, std::min(order, high) - low);
        std::vector<C> out(static_cast<std::size_t>(len), a.ring_.from_int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            const long n = a.low_ + static_cast<long>(i);
            if (n < order) {
                out[static_cast<std::size_t>(n - low)] += a.coeffs_[i];
            }
        }
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            const long n = b.low_ + static_cast<long>(i);
            if (n < order) {
                if (subtract) {
                    out[static_cast<std::size_t>(n - low)] -= b.coeffs_[i];
                } else {
                    out[static_cast<std::size_t>(n - low)] += b.coeffs_[i];
                }
            }
        }
        return Series1(a.var_, a.ring_, low, std::move(out), order);
    }

    void check_compatible(const Series1 &other) const
    {
        if (var_ != other.var_ || !(ring_ == other.ring_)) {
            throw DomainError("series over different variables or coefficient rings");
        }
    }

    void normalize()
    {
        const long max_len = std::max(0L, order_ - low_);
        if (static_cast<long>(coeffs_.size()) > max_len) {
            coeffs_.resize(static_cast<std::size_t>(max_len), ring_.from_int(0));
        }
        std::size_t lead = 0;
        while (lead < coeffs_.size() && ring_.is_zero(coeffs_[lead])) {
            ++lead;
        }
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        low_ += static_cast<long>(lead);
        while (!coeffs_.empty() && ring_.is_zero(coeffs_.back())) {
            coeffs_.pop_back();
        }
        if (coeffs_.empty()) {
            low_ = order_;
        }
        if (var_ == SeriesVar::t && !coeffs_.empty() && low_ < 0) {
            throw DomainError("t-series cannot have negative exponents");
        }
    }

    SeriesVar var_;
    Ring ring_;
    long low_ = 0;
    std::vector<C> coeffs_;
    long order_;
};

using RationalSeries = Series1<Rational>;
using PadicSeries = Series1<PadicTrunc>;

template <typename C>
Series1<C> times_integer(const Series1<C> &x, const Integer &n)
{
    return x.map_coefficients(x.ring(), [&](const C &c) { return times_integer(c, n); });
}

// log(1 + x) = sum_{n>=1} (-1)^{n-1} x^n / n for x of positive valuation.
RationalSeries log1p(const RationalSeries &x);

// (1 + x)^gamma for a unit u = 1 + x; exact for integer gamma.
RationalSeries pow_weight(const RationalSeries &u, long gamma);
PadicSeries pow_weight(const PadicSeries &u, long gamma);
// p-adic exponent: sum_k binom(gamma, k) (u - 1)^k; u must be 1 + (positive valuation).
PadicSeries pow_weight(const PadicSeries &u, const PadicTrunc &gamma);

// delta_0(a) = (a(q^p) - a^p)/p with coefficients reduced into Z/p^M.
PadicSeries delta0(const RationalSeries &a, long p, int modulus_exponent);
PadicSeries delta0(const PadicSeries &a, long p);

PadicSeries reduce_mod(const RationalSeries &a, long p, int modulus_exponent);

} // namespace arithdiff

#endif
