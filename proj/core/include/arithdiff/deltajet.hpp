#ifndef ARITHDIFF_DELTAJET_HPP
#define ARITHDIFF_DELTAJET_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <arithdiff/arith.hpp>
#include <arithdiff/coeff_ring.hpp>
#include <arithdiff/errors.hpp>
#include <arithdiff/polynomial.hpp>
#include <arithdiff/qseries.hpp>

namespace arithdiff
{

// Variables of a single-prime jet ring. Generator 0 is the base variable
// (q, t or z) of weight 1; generator 1 is an auxiliary coefficient
// generator of weight 0 (a free delta-ring element adjoined to the
// coefficients). Jet index j has weight  w_g * p^j.
inline constexpr int kBaseGenerator = 0;
inline constexpr int kAuxGenerator = 1;

constexpr VarKey jet_key(int generator, int index)
{
    return static_cast<VarKey>(generator * 64 + index);
}
constexpr int key_generator(VarKey key)
{
    return static_cast<int>(key / 64);
}
constexpr int key_jet_index(VarKey key)
{
    return static_cast<int>(key % 64);
}

long jet_weight(long p, int generator, int index);
Monomial jet_monomial(long p, int generator, int index, int exponent = 1);

// Truncated element of R((q))^[q',...,q^(r)]^ (base q, Laurent in q) or of
// Q[[t]][t',...,t^(r)] (base t). Truncation is by weighted degree with
// wt(q) = 1 and wt(q^(i)) = p^i, so that phi multiplies weights by p.
template <typename C>
class JetSeries
{
public:
    using Ring = CoeffRing<C>;
    using Poly = TruncatedPoly<C>;

    JetSeries(long p, SeriesVar base, int order, Poly poly) : p_(p), base_(base), order_(order), poly_(std::move(poly))
    {
        if (!is_prime(p)) {
            throw DomainError("JetSeries: " + std::to_string(p) + " is not prime");
        }
        if (order < 0) {
            throw DomainError("JetSeries: negative jet order");
        }
        validate();
    }

    static JetSeries constant(long p, SeriesVar base, const Ring &ring, const C &c, long bound = kUnbounded)
    {
        return JetSeries(p, base, 0, Poly::constant(ring, c, bound));
    }
    // The jet variable x^(index) of the given generator.
    static JetSeries variable(long p, SeriesVar base, const Ring &ring, int index, long bound = kUnbounded,
                              int generator = kBaseGenerator)
    {
        return JetSeries(p, base, index, Poly::term(ring, jet_monomial(p, generator, index), ring.from_int(1), bound));
    }

    long prime() const noexcept
    {
        return p_;
    }
    SeriesVar base() const noexcept
    {
        return base_;
    }
    int order() const noexcept
    {
        return order_;
    }
    const Poly &poly() const noexcept
    {
        return poly_;
    }
    const Ring &ring() const noexcept
    {
        return poly_.ring();
    }
    long bound() const noexcept
    {
        return poly_.bound();
    }
    bool is_zero() const noexcept
    {
        return poly_.is_zero();
    }

    // Largest jet index of the base generator appearing in a nonzero term
    // (-1 for a constant).
    int max_base_jet_index() const
    {
        int r = -1;
        for (const auto &[m, c] : poly_.terms()) {
            for (const auto &[key, e] : m.factors()) {
                if (key_generator(key) == kBaseGenerator) {
                    r = std::max(r, key_jet_index(key));
                }
            }
        }
        return r;
    }

    JetSeries with_order(int order) const
    {
        return JetSeries(p_, base_, order, poly_);
    }
    JetSeries truncated(long bound) const
    {
        return JetSeries(p_, base_, order_, poly_.truncated(bound));
    }

    JetSeries operator-() const
    {
        return JetSeries(p_, base_, order_, -poly_);
    }
    friend JetSeries operator+(const JetSeries &a, const JetSeries &b)
    {
        a.check_compatible(b);
        return JetSeries(a.p_, a.base_, std::max(a.order_, b.order_), a.poly_ + b.poly_);
    }
    friend JetSeries operator-(const JetSeries &a, const JetSeries &b)
    {
        a.check_compatible(b);
        return JetSeries(a.p_, a.base_, std::max(a.order_, b.order_), a.poly_ - b.poly_);
    }
    friend JetSeries operator*(const JetSeries &a, const JetSeries &b)
    {
        a.check_compatible(b);
        return JetSeries(a.p_, a.base_, std::max(a.order_, b.order_), a.poly_ * b.poly_);
    }
    friend bool operator==(const JetSeries &a, const JetSeries &b)
    {
        return a.p_ == b.p_ && a.base_ == b.base_ && a.poly_ == b.poly_;
    }

    JetSeries scaled(const C &s) const
    {
        return JetSeries(p_, base_, order_, poly_.scaled(s));
    }

    JetSeries invert() const
    {
        return JetSeries(p_, base_, order_, poly_.inverse(invertible_predicate()));
    }

    JetSeries pow(long n) const
    {
        if (n < 0) {
            return invert().pow(-n);
        }
        return JetSeries(p_, base_, order_, poly_.pow(static_cast<unsigned long>(n)));
    }

    // The Frobenius lift: x^(i) -> (x^(i))^p + p x^(i+1) on every generator,
    // coefficients fixed. Raises the jet order by one.
    JetSeries phi() const
    {
        const Ring &ring = poly_.ring();
        const long p = p_;
        auto image = [&](VarKey key) {
            const int g = key_generator(key);
            const int i = key_jet_index(key);
            Poly img = Poly::term(ring, jet_monomial(p, g, i, static_cast<int>(p)), ring.from_int(1));
            img.add_term(jet_monomial(p, g, i + 1), ring.from_int(p));
            return img;
        };
        Poly out = poly_.substitute(image, saturating_mul(poly_.bound(), p_), invertible_predicate());
        return JetSeries(p_, base_, order_ + 1, std::move(out));
    }

    // delta(f) = (phi(f) - f^p)/p.
    JetSeries delta() const
    {
        const bool integral_input = all_p_integral();
        Poly diff = phi().poly_ - poly_.pow(static_cast<unsigned long>(p_));
        Poly quotient = diff.divided_by(p_);
        JetSeries out(p_, base_, order_ + 1, std::move(quotient));
        if (integral_input && !out.all_p_integral()) {
            throw IntegralityViolation("delta: (phi(f) - f^p)/p is not p-integral");
        }
        return out;
    }

    JetSeries delta_n(int n) const
    {
        if (n < 0) {
            throw DomainError("delta_n: negative iteration count");
        }
        JetSeries f = *this;
        for (int i = 0; i < n; ++i) {
            f = f.delta();
        }
        return f;
    }

    bool all_p_integral() const;

    // Monomials that may be inverted: powers of q on the Fourier side; only
    // 1 on the power-series side.
    auto invertible_predicate() const
    {
        const bool laurent = base_ == SeriesVar::q;
        return [laurent](const Monomial &m) {
            if (m.is_one()) {
                return true;
            }
            if (!laurent) {
                return false;
            }
            return std::all_of(m.factors().begin(), m.factors().end(),
                               [](const Monomial::Factor &f) { return f.first == jet_key(kBaseGenerator, 0); });
        };
    }

private:
    void validate() const
    {
        for (const auto &[m, c] : poly_.terms()) {
            for (const auto &[key, e] : m.factors()) {
                if (key_jet_index(key) > order_) {
                    throw OrderBudgetExceeded("JetSeries: term uses a jet variable beyond the order");
                }
                const bool base_var = key == jet_key(kBaseGenerator, 0);
                if (e < 0 && !(base_var && base_ == SeriesVar::q)) {
                    throw DomainError("JetSeries: negative exponent on a non-invertible variable");
                }
            }
        }
    }

    void check_compatible(const JetSeries &other) const
    {
        if (p_ != other.p_ || base_ != other.base_) {
            throw DomainError("JetSeries: operands over different primes or bases");
        }
    }

    long p_;
    SeriesVar base_;
    int order_;
    Poly poly_;
};

template <>
inline bool JetSeries<Rational>::all_p_integral() const
{
    return std::all_of(poly_.terms().begin(), poly_.terms().end(),
                       [&](const auto &kv) { return is_p_integral(kv.second, p_); });
}

template <>
inline bool JetSeries<PadicTrunc>::all_p_integral() const
{
    return true;
}

using RationalJet = JetSeries<Rational>;
using PadicJet = JetSeries<PadicTrunc>;

template <typename C>
JetSeries<C> times_integer(const JetSeries<C> &x, const Integer &n)
{
    return x.scaled(times_integer(x.ring().from_int(1), n));
}

// u^w = prod_i phi^i(u)^{a_i} for w = sum_i a_i phi^i.
template <typename C>
JetSeries<C> weight_action(const JetSeries<C> &u, const Weight &w)
{
    const std::vector<int> ord = w.order();
    if (!ord.empty() && ord.size() != 1) {
        throw DomainError("weight_action: single-prime weight expected");
    }
    const int top = ord.empty() ? 0 : ord[0];
    std::vector<JetSeries<C>> frobs{u};
    for (int i = 0; i < top; ++i) {
        frobs.push_back(frobs.back().phi());
    }
    // The product is only known below the smallest bound among the factors
    // used, so each factor is cut there before inverting or raising.
    long bound = kUnbounded;
    for (int i = 0; i <= top; ++i) {
        if (w.coefficient({i}) != 0) {
            bound = std::min(bound, frobs[static_cast<std::size_t>(i)].bound());
        }
    }
    JetSeries<C> result = JetSeries<C>::constant(u.prime(), u.base(), u.ring(), u.ring().from_int(1));
    for (int i = 0; i <= top; ++i) {
        const long a = w.coefficient({i});
        if (a != 0) {
            result = result * frobs[static_cast<std::size_t>(i)].truncated(bound).pow(a);
        }
    }
    return result.with_order(u.order() + top);
}

PadicJet reduce_mod(const RationalJet &f, int modulus_exponent);

// log(1 + y) for y of positive minimal weight and finite bound.
RationalJet log1p(const RationalJet &y);

// (-1)^{n-1} p^{n-1} / n, the coefficient of (q'/q^p)^n in Psi.
Rational psi_fourier_coefficient(long p, long n);

// Psi = sum_{n <= window} (-1)^{n-1} n^{-1} p^{n-1} (q'/q^p)^n, reduced mod p^M.
PadicJet psi_fourier(long p, int modulus_exponent, long window);
RationalJet psi_fourier_exact(long p, long window);

// Psi = (1/p)(phi - p) log(1 + t), truncated below weighted degree N.
RationalJet psi_serretate(long p, long bound);

// Image under q -> 1 + t, q^(i) -> delta^i(1 + t), truncated below `bound`.
// The input must be complete below the bound after substitution.
template <typename C>
JetSeries<C> fourier_to_serretate(const JetSeries<C> &f, long bound)
{
    if (f.base() != SeriesVar::q) {
        throw DomainError("fourier_to_serretate: input must be a q-series");
    }
    const long p = f.prime();
    const auto &ring = f.ring();
    using J = JetSeries<C>;
    std::vector<J> images;
    J one_plus_t = J::constant(p, SeriesVar::t, ring, ring.from_int(1), bound)
                   + J::variable(p, SeriesVar::t, ring, 0, bound);
    images.push_back(one_plus_t);
    for (int i = 1; i <= f.order(); ++i) {
        images.push_back(images.back().delta());
    }
    auto image = [&](VarKey key) {
        if (key_generator(key) != kBaseGenerator) {
            throw DomainError("fourier_to_serretate: auxiliary generators are not supported");
        }
        return images[static_cast<std::size_t>(key_jet_index(key))].poly();
    };
    auto pred = images.front().invertible_predicate();
    auto out = f.poly().substitute(image, bound, pred);
    return J(p, SeriesVar::t, f.order(), std::move(out));
}

struct LemmaReport {
    std::string name;
    long p = 0;
    int n = 0;
    bool pass = false;
    std::size_t residual_terms = 0;
    // First residual term violating the claimed filtration, if any.
    std::optional<std::string> witness;
    std::string detail;
};

std::string monomial_to_string(const Monomial &m, SeriesVar base);

// delta^n(z^phi/z - varphi) against z^{-p^n}(z^(n))^p - z^{p^{n+1}-2p^n} z^(n)
// modulo O(n-1) + pO(n+1). varphi == nullopt adjoins a symbolic element.
LemmaReport lemma_xlaphi_check(long p, int n, std::optional<long> varphi);

// delta^n(lambda z) - z^(n) - a z^{p^n} in p O(n) for lambda = 1 + p^n a.
LemmaReport lemma_logder_check(long p, int n, long a);

} // namespace arithdiff

#endif
