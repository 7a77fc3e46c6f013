#ifndef ARITHDIFF_MULTIPRIME_HPP
#define ARITHDIFF_MULTIPRIME_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <arithdiff/arith.hpp>
#include <arithdiff/coeff_ring.hpp>
#include <arithdiff/deltajet.hpp>
#include <arithdiff/errors.hpp>
#include <arithdiff/polynomial.hpp>
#include <arithdiff/qseries.hpp>

namespace arithdiff
{

using MultiIndex = std::vector<int>;

// Shared tables for one prime set P = {p_1..p_d} and truncation bound N.
//
// Two coordinate systems live on the same variable keys:
//   x_i = delta_P^i(b) = delta_{p_1}^{i_1} ... delta_{p_d}^{i_d}(b), the jet
//   coordinates in which series are stored, and
//   T_i = phi_P^i(b), in which every phi_{p_k} is the index shift i -> i+e_k.
// Both have weight P^i = prod p_k^{i_k}. Only indices with P^i < N exist;
// heavier variables vanish in the truncated ring.
//
// Prime indices k are 1-based in the public interface.
class MultiPrimeFrame
{
public:
    using Poly = TruncatedPoly<Rational>;

    MultiPrimeFrame(std::vector<long> primes, long bound, SeriesVar base = SeriesVar::t,
                    std::optional<MultiIndex> budget = std::nullopt);

    static std::shared_ptr<const MultiPrimeFrame> make(std::vector<long> primes, long bound,
                                                       SeriesVar base = SeriesVar::t,
                                                       std::optional<MultiIndex> budget = std::nullopt)
    {
        return std::make_shared<const MultiPrimeFrame>(std::move(primes), bound, base, std::move(budget));
    }

    const std::vector<long> &primes() const noexcept
    {
        return primes_;
    }
    std::size_t dimension() const noexcept
    {
        return primes_.size();
    }
    long prime(int k) const;
    long bound() const noexcept
    {
        return bound_;
    }
    SeriesVar base() const noexcept
    {
        return base_;
    }
    const MultiIndex &budget() const noexcept
    {
        return budget_;
    }
    // Live indices, lightest first.
    const std::vector<MultiIndex> &indices() const noexcept
    {
        return indices_;
    }
    bool same_shape(const MultiPrimeFrame &other) const
    {
        return primes_ == other.primes_ && bound_ == other.bound_ && base_ == other.base_;
    }

    static VarKey key(const MultiIndex &i);
    MultiIndex index(VarKey key) const;
    long weight(const MultiIndex &i) const;
    Monomial variable(const MultiIndex &i, int exponent = 1) const;
    MultiIndex unit(int k) const;

    // x_i written in the T coordinates, and T_i written in the x coordinates.
    const Poly &x_in_T(const MultiIndex &i) const;
    const Poly &T_in_x(const MultiIndex &i) const;
    // phi_{p_k}(x_i) in the x coordinates; zero when its weight reaches N.
    const Poly &phi_image(int k, const MultiIndex &i) const;

    Poly to_x(const Poly &in_T, long bound) const;
    Poly to_T(const Poly &in_x, long bound) const;
    // T_i -> T_{i+e_k} on a polynomial in the T coordinates.
    Poly shift(const Poly &in_T, int k, long bound) const;

private:
    void build_tables();

    std::vector<long> primes_;
    long bound_;
    SeriesVar base_;
    MultiIndex budget_;
    std::vector<MultiIndex> indices_;
    std::map<MultiIndex, Poly> x_in_T_;
    std::map<MultiIndex, Poly> T_in_x_;
    std::vector<std::map<MultiIndex, Poly>> phi_image_;
    Poly zero_;
};

using FramePtr = std::shared_ptr<const MultiPrimeFrame>;

std::string multi_index_to_string(const MultiIndex &i);
std::string multi_monomial_to_string(const MultiPrimeFrame &frame, const Monomial &m);

// Ring kind 0 is the common ring Z_(P)[[x_i]]; kind k >= 1 is the per-prime
// ring in which only p_k needs to stay out of denominators.
inline constexpr int kCommonRing = 0;

template <typename C>
class MultiJetSeries
{
public:
    using Ring = CoeffRing<C>;
    using Poly = TruncatedPoly<C>;

    MultiJetSeries(FramePtr frame, MultiIndex order, int ring_kind, Poly poly)
        : frame_(std::move(frame)), order_(std::move(order)), kind_(ring_kind), poly_(std::move(poly))
    {
        if (!frame_) {
            throw DomainError("MultiJetSeries: missing frame");
        }
        if (order_.size() != frame_->dimension()) {
            throw DomainError("MultiJetSeries: order vector has the wrong length");
        }
        for (std::size_t k = 0; k < order_.size(); ++k) {
            if (order_[k] < 0 || order_[k] > frame_->budget()[k]) {
                throw OrderBudgetExceeded("MultiJetSeries: order " + multi_index_to_string(order_)
                                          + " exceeds budget " + multi_index_to_string(frame_->budget()));
            }
        }
        if (kind_ < 0 || kind_ > static_cast<int>(frame_->dimension())) {
            throw DomainError("MultiJetSeries: ring kind out of range");
        }
        poly_.set_bound(frame_->bound());
        validate();
    }

    static MultiJetSeries constant(FramePtr frame, const Ring &ring, const C &c, int ring_kind = kCommonRing)
    {
        const MultiIndex zero(frame->dimension(), 0);
        const long n = frame->bound();
        return MultiJetSeries(std::move(frame), zero, ring_kind, Poly::constant(ring, c, n));
    }
    static MultiJetSeries variable(FramePtr frame, const Ring &ring, const MultiIndex &i, int ring_kind = kCommonRing)
    {
        const long n = frame->bound();
        Poly poly = Poly::term(ring, frame->variable(i), ring.from_int(1), n);
        return MultiJetSeries(std::move(frame), i, ring_kind, std::move(poly));
    }

    const FramePtr &frame() const noexcept
    {
        return frame_;
    }
    const std::vector<long> &primes() const noexcept
    {
        return frame_->primes();
    }
    const MultiIndex &order() const noexcept
    {
        return order_;
    }
    int ring_kind() const noexcept
    {
        return kind_;
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

    MultiJetSeries with_ring_kind(int kind) const
    {
        return MultiJetSeries(frame_, order_, kind, poly_);
    }
    MultiJetSeries with_order(MultiIndex order) const
    {
        return MultiJetSeries(frame_, std::move(order), kind_, poly_);
    }
    MultiJetSeries truncated(long bound) const
    {
        return MultiJetSeries(frame_, order_, kind_, poly_.truncated(bound));
    }

    MultiJetSeries operator-() const
    {
        return MultiJetSeries(frame_, order_, kind_, -poly_);
    }
    friend MultiJetSeries operator+(const MultiJetSeries &a, const MultiJetSeries &b)
    {
        return MultiJetSeries(a.frame_, a.joined_order(b), a.joined_kind(b), a.poly_ + b.poly_);
    }
    friend MultiJetSeries operator-(const MultiJetSeries &a, const MultiJetSeries &b)
    {
        return MultiJetSeries(a.frame_, a.joined_order(b), a.joined_kind(b), a.poly_ - b.poly_);
    }
    friend MultiJetSeries operator*(const MultiJetSeries &a, const MultiJetSeries &b)
    {
        return MultiJetSeries(a.frame_, a.joined_order(b), a.joined_kind(b),
                              Poly::multiply(a.poly_, b.poly_, a.frame_->bound()));
    }
    friend bool operator==(const MultiJetSeries &a, const MultiJetSeries &b)
    {
        return a.frame_->same_shape(*b.frame_) && a.poly_ == b.poly_;
    }

    MultiJetSeries scaled(const C &s) const
    {
        return MultiJetSeries(frame_, order_, kind_, poly_.scaled(s));
    }
    MultiJetSeries pow(unsigned long n) const
    {
        return MultiJetSeries(frame_, order_, kind_, poly_.pow(n, frame_->bound()));
    }

private:
    void validate() const;

    MultiIndex joined_order(const MultiJetSeries &other) const
    {
        if (!frame_->same_shape(*other.frame_)) {
            throw DomainError("MultiJetSeries: operands over different frames");
        }
        MultiIndex r = order_;
        for (std::size_t k = 0; k < r.size(); ++k) {
            r[k] = std::max(r[k], other.order_[k]);
        }
        return r;
    }
    int joined_kind(const MultiJetSeries &other) const
    {
        if (kind_ == other.kind_ || other.kind_ == kCommonRing) {
            return kind_;
        }
        if (kind_ == kCommonRing) {
            return other.kind_;
        }
        throw DomainError("MultiJetSeries: operands live in different per-prime rings");
    }

    FramePtr frame_;
    MultiIndex order_;
    int kind_;
    Poly poly_;
};

template <>
inline void MultiJetSeries<Rational>::validate() const
{
    for (const auto &[m, c] : poly_.terms()) {
        const bool ok = kind_ == kCommonRing ? is_integral_at(c, frame_->primes())
                                             : is_p_integral(c, frame_->prime(kind_));
        if (!ok) {
            throw IntegralityViolation("coefficient " + to_string(c) + " of "
                                       + multi_monomial_to_string(*frame_, m) + " is outside the "
                                       + (kind_ == kCommonRing ? std::string("common ring")
                                                               : "ring localized at p=" + std::to_string(frame_->prime(kind_))));
        }
    }
}

template <>
inline void MultiJetSeries<PadicTrunc>::validate() const
{
    if (kind_ == kCommonRing || poly_.ring().p != frame_->prime(kind_)) {
        throw DomainError("MultiJetSeries: p-adic coefficients need the matching per-prime ring");
    }
}

using RationalMulti = MultiJetSeries<Rational>;
using PadicMulti = MultiJetSeries<PadicTrunc>;

inline RationalMulti times_integer(const RationalMulti &x, const Integer &n)
{
    return x.scaled(Rational(n));
}
inline PadicMulti times_integer(const PadicMulti &x, const Integer &n)
{
    return x.scaled(x.ring().from_rational(Rational(n)));
}

namespace detail
{
inline MultiIndex raised(MultiIndex r, int k)
{
    r[static_cast<std::size_t>(k - 1)] += 1;
    return r;
}
} // namespace detail

// phi_{p_k}: x_i -> phi_{p_k}(x_i) on every jet coordinate; coefficients
// are fixed.
template <typename C>
MultiJetSeries<C> phi_pk(const MultiJetSeries<C> &f, int k)
{
    const auto &frame = *f.frame();
    const MultiIndex order = detail::raised(f.order(), k);
    const auto &ring = f.ring();
    std::map<VarKey, TruncatedPoly<C>> cache;
    auto image = [&](VarKey key) -> TruncatedPoly<C> {
        auto it = cache.find(key);
        if (it == cache.end()) {
            const auto &src = frame.phi_image(k, frame.index(key));
            auto img = src.map_coefficients(ring, [&](const Rational &c) { return ring.from_rational(c); });
            it = cache.emplace(key, std::move(img)).first;
        }
        return it->second;
    };
    const long bound = std::min(saturating_mul(f.bound(), frame.prime(k)), frame.bound());
    auto out = f.poly().substitute(image, bound, [](const Monomial &m) { return m.is_one(); });
    return MultiJetSeries<C>(f.frame(), order, f.ring_kind(), std::move(out));
}

// delta_{p_k}(f) = (phi_{p_k}(f) - f^{p_k})/p_k. The quotient must land in
// the ring of f; otherwise IntegralityViolation.
template <typename C>
MultiJetSeries<C> delta_pk(const MultiJetSeries<C> &f, int k)
{
    const long p = f.frame()->prime(k);
    const auto diff = phi_pk(f, k) - f.pow(static_cast<unsigned long>(p));
    return MultiJetSeries<C>(f.frame(), detail::raised(f.order(), k), f.ring_kind(), diff.poly().divided_by(p));
}

// delta_P^i(f) in canonical order: delta_{p_d} first, delta_{p_1} last.
template <typename C>
MultiJetSeries<C> delta_multi(const MultiJetSeries<C> &f, const MultiIndex &i)
{
    MultiJetSeries<C> g = f;
    for (int k = static_cast<int>(i.size()); k >= 1; --k) {
        for (int n = 0; n < i[static_cast<std::size_t>(k - 1)]; ++n) {
            g = delta_pk(g, k);
        }
    }
    return g;
}

// Single-prime series in the k-th prime, with t^(j) -> x_{j e_k}.
template <typename C>
MultiJetSeries<C> embed(const JetSeries<C> &f, const FramePtr &frame, int k, int ring_kind)
{
    if (frame->prime(k) != f.prime()) {
        throw DomainError("embed: series prime differs from p_k");
    }
    if (frame->base() != f.base()) {
        throw DomainError("embed: series base variable differs from the frame");
    }
    auto key_map = [&](VarKey key) {
        if (key_generator(key) != kBaseGenerator) {
            throw DomainError("embed: auxiliary generators are not supported");
        }
        MultiIndex i(frame->dimension(), 0);
        i[static_cast<std::size_t>(k - 1)] = key_jet_index(key);
        return std::make_pair(MultiPrimeFrame::key(i), frame->weight(i));
    };
    MultiIndex order(frame->dimension(), 0);
    order[static_cast<std::size_t>(k - 1)] = f.order();
    auto poly = f.poly().rename(key_map, std::min(f.bound(), frame->bound()));
    return MultiJetSeries<C>(frame, order, ring_kind, std::move(poly));
}

// Coefficients reduced into Z/p_k^M; the per-prime ring kind becomes k.
PadicMulti reduce_mod(const RationalMulti &f, int k, int modulus_exponent);

// (1/(p_1...p_d)) (phi_{p_1} - p_1) ... (phi_{p_d} - p_d) log(1 + t).
RationalMulti build_fe0(const FramePtr &frame);
RationalMulti build_fe0(const std::vector<long> &primes, long bound);

// (-1)^{d-1} prod_{l != k} (1 - phi_{p_l}/p_l) applied to Psi_{p_k}, in the
// per-prime ring k.
RationalMulti build_fe_k(const FramePtr &frame, int k);
RationalMulti build_fe_k(const std::vector<long> &primes, int k, long bound);

using FamilyMember = std::variant<RationalMulti, PadicMulti>;

struct ContinuationFailure {
    Monomial monomial;
    std::string monomial_text;
    // One entry per family member: its coefficient at the monomial.
    std::vector<std::string> residues;
    std::string reason;
};

struct ContinuationResult {
    std::optional<RationalMulti> value;
    std::optional<ContinuationFailure> failure;
    bool ok() const noexcept
    {
        return value.has_value();
    }
};

// Finds the single Z_(P) series agreeing with every member of the family,
// or the first monomial at which none exists.
ContinuationResult continuation_check(const std::vector<FamilyMember> &family,
                                      std::optional<Integer> height_bound = std::nullopt);

struct BasisReport {
    std::vector<long> primes;
    MultiIndex r;
    long bound = 0;
    std::size_t vectors = 0;
    std::size_t rank = 0;
    std::size_t expected = 0;
    bool pass() const noexcept
    {
        return rank == expected;
    }
};

// Rank over Q of { phi_P^{s-e}(fe0) : e <= s <= r }, e = (1,...,1).
BasisReport basis_independence_check(const std::vector<long> &primes, const MultiIndex &r, long bound);

// Rank of a list of rational row vectors.
std::size_t rational_rank(std::vector<std::vector<Rational>> rows);

} // namespace arithdiff

#endif
