#ifndef ARITHDIFF_POLYNOMIAL_HPP
#define ARITHDIFF_POLYNOMIAL_HPP

#include <algorithm>
#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <arithdiff/coeff_ring.hpp>
#include <arithdiff/errors.hpp>

namespace arithdiff
{

// Weighted-degree bound meaning "exact, no truncation".
inline constexpr long kUnbounded = LONG_MAX / 4;

inline long saturating_add(long a, long b)
{
    if (a >= kUnbounded || b >= kUnbounded) {
        return kUnbounded;
    }
    return std::min(a + b, kUnbounded);
}

inline long saturating_mul(long a, long k)
{
    if (a >= kUnbounded) {
        return kUnbounded;
    }
    if (k > 0 && a > kUnbounded / k) {
        return kUnbounded;
    }
    return a * k;
}

using VarKey = std::uint32_t;

// A Laurent monomial over integer-keyed variables. Every variable carries a
// weight; the monomial caches its total weighted degree. Ordering is by
// weight first so that iteration visits low-weight terms first.
class Monomial
{
public:
    using Factor = std::pair<VarKey, int>;

    Monomial() = default;

    static Monomial variable(VarKey key, long weight, int exponent = 1)
    {
        Monomial m;
        if (exponent != 0) {
            m.factors_.emplace_back(key, exponent);
            m.weight_ = weight * exponent;
        }
        return m;
    }

    const std::vector<Factor> &factors() const noexcept
    {
        return factors_;
    }
    long weight() const noexcept
    {
        return weight_;
    }
    bool is_one() const noexcept
    {
        return factors_.empty();
    }

    int exponent(VarKey key) const
    {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), key,
                                   [](const Factor &f, VarKey k) { return f.first < k; });
        return (it != factors_.end() && it->first == key) ? it->second : 0;
    }

    Monomial inverse() const
    {
        Monomial m = *this;
        for (auto &f : m.factors_) {
            f.second = -f.second;
        }
        m.weight_ = -weight_;
        return m;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial m;
        m.weight_ = a.weight_ + b.weight_;
        m.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
                m.factors_.push_back(*i++);
            } else if (i == a.factors_.end() || j->first < i->first) {
                m.factors_.push_back(*j++);
            } else {
                const int e = i->second + j->second;
                if (e != 0) {
                    m.factors_.emplace_back(i->first, e);
                }
                ++i;
                ++j;
            }
        }
        return m;
    }

    friend bool operator==(const Monomial &a, const Monomial &b)
    {
        return a.factors_ == b.factors_;
    }
    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b)
    {
        if (auto c = a.weight_ <=> b.weight_; c != 0) {
            return c;
        }
        return a.factors_ <=> b.factors_;
    }

private:
    std::vector<Factor> factors_;
    long weight_ = 0;
};

// Sparse multivariate Laurent series truncated at a weighted degree: every
// monomial of weight >= bound() is unknown. Exact polynomials use
// kUnbounded. Arithmetic propagates the strongest honest bound.
template <typename C>
class TruncatedPoly
{
public:
    using Ring = CoeffRing<C>;
    using TermMap = std::map<Monomial, C>;

    explicit TruncatedPoly(Ring ring = {}, long bound = kUnbounded) : ring_(std::move(ring)), bound_(bound) {}

    static TruncatedPoly constant(const Ring &ring, const C &c, long bound = kUnbounded)
    {
        return term(ring, Monomial{}, c, bound);
    }
    static TruncatedPoly term(const Ring &ring, const Monomial &m, const C &c, long bound = kUnbounded)
    {
        TruncatedPoly f(ring, bound);
        f.add_term(m, c);
        return f;
    }

    const Ring &ring() const noexcept
    {
        return ring_;
    }
    long bound() const noexcept
    {
        return bound_;
    }
    const TermMap &terms() const noexcept
    {
        return terms_;
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    std::size_t size() const noexcept
    {
        return terms_.size();
    }

    std::optional<long> min_weight() const
    {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return terms_.begin()->first.weight();
    }

    // Lowest weight at which anything (known or not) can be nonzero.
    long effective_min_weight() const
    {
        return terms_.empty() ? bound_ : terms_.begin()->first.weight();
    }

    C coefficient(const Monomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? ring_.from_int(0) : it->second;
    }

    void add_term(const Monomial &m, const C &c)
    {
        if (m.weight() >= bound_ || ring_.is_exact_zero(c)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (ring_.is_exact_zero(it->second)) {
                terms_.erase(it);
            }
        }
    }

    void set_bound(long bound)
    {
        bound_ = std::min(bound_, bound);
        while (!terms_.empty() && std::prev(terms_.end())->first.weight() >= bound_) {
            terms_.erase(std::prev(terms_.end()));
        }
    }

    TruncatedPoly truncated(long bound) const
    {
        TruncatedPoly f = *this;
        f.set_bound(bound);
        return f;
    }

    TruncatedPoly operator-() const
    {
        TruncatedPoly f = *this;
        for (auto &[m, c] : f.terms_) {
            c = -c;
        }
        return f;
    }

    TruncatedPoly &operator+=(const TruncatedPoly &other)
    {
        check_ring(other);
        set_bound(other.bound_);
        for (const auto &[m, c] : other.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    TruncatedPoly &operator-=(const TruncatedPoly &other)
    {
        check_ring(other);
        set_bound(other.bound_);
        for (const auto &[m, c] : other.terms_) {
            add_term(m, -c);
        }
        return *this;
    }
    friend TruncatedPoly operator+(TruncatedPoly a, const TruncatedPoly &b)
    {
        return a += b;
    }
    friend TruncatedPoly operator-(TruncatedPoly a, const TruncatedPoly &b)
    {
        return a -= b;
    }

    // Product; the result is known below min(N_a + v_b, N_b + v_a), further
    // capped at `cap`.
    static TruncatedPoly multiply(const TruncatedPoly &a, const TruncatedPoly &b, long cap = kUnbounded)
    {
        a.check_ring(b);
        const long bound = std::min({saturating_add(a.bound_, b.effective_min_weight()),
                                     saturating_add(b.bound_, a.effective_min_weight()), cap});
        TruncatedPoly f(a.ring_, bound);
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                if (ma.weight() + mb.weight() >= bound) {
                    // b is weight-sorted; later terms are heavier.
                    break;
                }
                f.add_term(ma * mb, ca * cb);
            }
        }
        return f;
    }
    friend TruncatedPoly operator*(const TruncatedPoly &a, const TruncatedPoly &b)
    {
        return multiply(a, b);
    }

    TruncatedPoly scaled(const C &s) const
    {
        TruncatedPoly f(ring_, bound_);
        for (const auto &[m, c] : terms_) {
            f.add_term(m, c * s);
        }
        return f;
    }

    TruncatedPoly times_monomial(const Monomial &mono) const
    {
        TruncatedPoly f(ring_, saturating_add(bound_, mono.weight()));
        for (const auto &[m, c] : terms_) {
            f.add_term(m * mono, c);
        }
        return f;
    }

    // Divides every coefficient exactly by n.
    TruncatedPoly divided_by(long n) const
    {
        TruncatedPoly f(ring_, bound_);
        for (const auto &[m, c] : terms_) {
            f.add_term(m, ring_.divide_exact(c, n));
        }
        return f;
    }

    TruncatedPoly pow(unsigned long n, long cap = kUnbounded) const
    {
        TruncatedPoly result = constant(ring_, ring_.from_int(1), cap);
        TruncatedPoly base = truncated(cap);
        while (n > 0) {
            if (n & 1UL) {
                result = multiply(result, base, cap);
            }
            n >>= 1U;
            if (n > 0) {
                base = multiply(base, base, cap);
            }
        }
        return result;
    }

    // Inverse of lead * (1 + g) as lead^{-1} * sum (-g)^k. The lead is the
    // lowest-weight term with a unit coefficient; every term of g must have
    // positive weight or a topologically nilpotent coefficient.
    template <typename InvertiblePred>
    TruncatedPoly inverse(InvertiblePred &&invertible_monomial) const
    {
        const Monomial *lead = nullptr;
        const C *lead_coeff = nullptr;
        for (const auto &[m, c] : terms_) {
            if (!ring_.is_unit(c)) {
                continue;
            }
            if (lead == nullptr) {
                lead = &m;
                lead_coeff = &c;
            } else if (m.weight() == lead->weight()) {
                throw NotInvertible("series has several unit terms of minimal weight");
            } else {
                break;
            }
        }
        if (lead == nullptr) {
            throw NotInvertible("series has no unit coefficient");
        }
        if (!invertible_monomial(*lead)) {
            throw NotInvertible("leading monomial is not invertible in this ring");
        }
        const Monomial lead_inv = lead->inverse();
        const C c_inv = ring_.inverse(*lead_coeff);
        const TruncatedPoly normalizer = term(ring_, lead_inv, c_inv);

        TruncatedPoly g = multiply(*this, normalizer);
        g -= constant(ring_, ring_.from_int(1));
        bool needs_truncation = false;
        for (const auto &[m, c] : g.terms_) {
            const bool small = ring_.is_small(c);
            if (m.weight() <= 0 && !small) {
                throw NotInvertible("series is not a unit: non-nilpotent term of non-positive weight");
            }
            if (!small) {
                needs_truncation = true;
            }
        }
        if (needs_truncation && g.bound_ >= kUnbounded) {
            throw NotInvertible("inverse needs a weighted-degree truncation");
        }
        const TruncatedPoly minus_g = -g;
        TruncatedPoly sum = constant(ring_, ring_.from_int(1));
        TruncatedPoly power = sum;
        for (;;) {
            // 1/(1 + g) is only known below the bound of g.
            power = multiply(power, minus_g, g.bound_);
            if (power.is_zero()) {
                sum.set_bound(power.bound_);
                break;
            }
            sum += power;
        }
        return multiply(sum, normalizer);
    }

    // Ring homomorphism fixing coefficients and sending each variable to
    // image(key). Negative exponents use the inverse of the image.
    template <typename ImageFn, typename InvertiblePred>
    TruncatedPoly substitute(ImageFn &&image, long hom_bound, InvertiblePred &&invertible_monomial) const
    {
        TruncatedPoly result(ring_, hom_bound);
        std::map<VarKey, std::vector<TruncatedPoly>> positive;
        std::map<VarKey, std::vector<TruncatedPoly>> negative;
        auto power_of = [&](VarKey key, int e) -> const TruncatedPoly & {
            auto &table = e > 0 ? positive[key] : negative[key];
            const int n = e > 0 ? e : -e;
            if (table.empty()) {
                table.push_back(e > 0 ? TruncatedPoly(image(key))
                                      : TruncatedPoly(image(key)).inverse(invertible_monomial));
            }
            while (static_cast<int>(table.size()) < n) {
                table.push_back(multiply(table.back(), table.front(), result.bound_));
            }
            return table[static_cast<std::size_t>(n - 1)];
        };
        for (const auto &[m, c] : terms_) {
            TruncatedPoly prod = constant(ring_, c);
            for (const auto &[key, e] : m.factors()) {
                prod = multiply(prod, power_of(key, e), result.bound_);
            }
            result += prod;
        }
        return result;
    }

    // Renames variables through key_map(key) -> (new key, new weight).
    template <typename KeyMap>
    TruncatedPoly rename(KeyMap &&key_map, long bound) const
    {
        TruncatedPoly f(ring_, bound);
        for (const auto &[m, c] : terms_) {
            Monomial out;
            for (const auto &[key, e] : m.factors()) {
                const auto [k2, w2] = key_map(key);
                out = out * Monomial::variable(k2, w2, e);
            }
            f.add_term(out, c);
        }
        return f;
    }

    template <typename D, typename F>
    TruncatedPoly<D> map_coefficients(const CoeffRing<D> &ring, F &&fn) const
    {
        TruncatedPoly<D> f(ring, bound_);
        for (const auto &[m, c] : terms_) {
            f.add_term(m, fn(c));
        }
        return f;
    }

    // Equality on the range known to both operands.
    friend bool operator==(const TruncatedPoly &a, const TruncatedPoly &b)
    {
        const long bound = std::min(a.bound_, b.bound_);
        for (const auto &[m, c] : a.terms_) {
            if (m.weight() >= bound) {
                break;
            }
            if (!(c == b.coefficient(m))) {
                return false;
            }
        }
        for (const auto &[m, c] : b.terms_) {
            if (m.weight() >= bound) {
                break;
            }
            if (!(c == a.coefficient(m))) {
                return false;
            }
        }
        return true;
    }

private:
    void check_ring(const TruncatedPoly &other) const
    {
        if (!(ring_ == other.ring_)) {
            throw DomainError("series over different coefficient rings");
        }
    }

    Ring ring_;
    long bound_;
    TermMap terms_;
};

} // namespace arithdiff

#endif
