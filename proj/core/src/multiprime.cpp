#include <arithdiff/multiprime.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace arithdiff
{

namespace
{

constexpr int kIndexBits = 4;
constexpr int kMaxIndex = (1 << kIndexBits) - 1;
constexpr std::size_t kMaxPrimes = 7;

bool is_one_monomial(const Monomial &m)
{
    return m.is_one();
}

} // namespace

MultiPrimeFrame::MultiPrimeFrame(std::vector<long> primes, long bound, SeriesVar base, std::optional<MultiIndex> budget)
    : primes_(std::move(primes)), bound_(bound), base_(base), zero_(CoeffRing<Rational>{}, bound)
{
    if (primes_.empty() || primes_.size() > kMaxPrimes) {
        throw DomainError("prime set must have between 1 and " + std::to_string(kMaxPrimes) + " primes");
    }
    for (std::size_t a = 0; a < primes_.size(); ++a) {
        if (!is_prime(primes_[a])) {
            throw DomainError(std::to_string(primes_[a]) + " is not prime");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (primes_[a] == primes_[b]) {
                throw DomainError("primes must be pairwise distinct");
            }
        }
    }
    if (bound_ < 1 || bound_ >= kUnbounded) {
        throw DomainError("multi-prime series need a finite positive truncation bound");
    }
    budget_ = budget.value_or(MultiIndex(primes_.size(), kMaxIndex));
    if (budget_.size() != primes_.size()) {
        throw DomainError("order budget has the wrong length");
    }
    for (int b : budget_) {
        if (b < 0 || b > kMaxIndex) {
            throw DomainError("order budget entries must lie in [0, " + std::to_string(kMaxIndex) + "]");
        }
    }

    MultiIndex i(primes_.size(), 0);
    std::function<void(std::size_t, long)> enumerate = [&](std::size_t k, long w) {
        if (k == primes_.size()) {
            indices_.push_back(i);
            return;
        }
        long wk = w;
        for (int e = 0; e <= budget_[k] && wk < bound_; ++e) {
            i[k] = e;
            enumerate(k + 1, wk);
            wk = saturating_mul(wk, primes_[k]);
        }
        i[k] = 0;
    };
    enumerate(0, 1);
    std::sort(indices_.begin(), indices_.end(),
              [&](const MultiIndex &a, const MultiIndex &b) { return weight(a) < weight(b); });
    build_tables();
}

long MultiPrimeFrame::prime(int k) const
{
    if (k < 1 || k > static_cast<int>(primes_.size())) {
        throw DomainError("prime index " + std::to_string(k) + " out of range");
    }
    return primes_[static_cast<std::size_t>(k - 1)];
}

VarKey MultiPrimeFrame::key(const MultiIndex &i)
{
    VarKey key = 0;
    for (std::size_t k = 0; k < i.size(); ++k) {
        if (i[k] < 0 || i[k] > kMaxIndex) {
            throw OrderBudgetExceeded("jet index " + multi_index_to_string(i) + " is not representable");
        }
        key |= static_cast<VarKey>(i[k]) << (kIndexBits * k);
    }
    return key;
}

MultiIndex MultiPrimeFrame::index(VarKey key) const
{
    MultiIndex i(primes_.size());
    for (std::size_t k = 0; k < i.size(); ++k) {
        i[k] = static_cast<int>((key >> (kIndexBits * k)) & kMaxIndex);
    }
    return i;
}

long MultiPrimeFrame::weight(const MultiIndex &i) const
{
    long w = 1;
    for (std::size_t k = 0; k < i.size(); ++k) {
        for (int e = 0; e < i[k]; ++e) {
            w = saturating_mul(w, primes_[k]);
        }
    }
    return w;
}

Monomial MultiPrimeFrame::variable(const MultiIndex &i, int exponent) const
{
    return Monomial::variable(key(i), weight(i), exponent);
}

MultiIndex MultiPrimeFrame::unit(int k) const
{
    MultiIndex e(primes_.size(), 0);
    e[static_cast<std::size_t>(k - 1)] = 1;
    prime(k);
    return e;
}

const MultiPrimeFrame::Poly &MultiPrimeFrame::x_in_T(const MultiIndex &i) const
{
    auto it = x_in_T_.find(i);
    if (it == x_in_T_.end()) {
        if (weight(i) >= bound_) {
            return zero_;
        }
        throw OrderBudgetExceeded("jet index " + multi_index_to_string(i) + " exceeds the order budget");
    }
    return it->second;
}

const MultiPrimeFrame::Poly &MultiPrimeFrame::T_in_x(const MultiIndex &i) const
{
    auto it = T_in_x_.find(i);
    if (it == T_in_x_.end()) {
        if (weight(i) >= bound_) {
            return zero_;
        }
        throw OrderBudgetExceeded("jet index " + multi_index_to_string(i) + " exceeds the order budget");
    }
    return it->second;
}

const MultiPrimeFrame::Poly &MultiPrimeFrame::phi_image(int k, const MultiIndex &i) const
{
    const auto &table = phi_image_.at(static_cast<std::size_t>(k - 1));
    auto it = table.find(i);
    if (it == table.end()) {
        if (saturating_mul(weight(i), prime(k)) >= bound_) {
            return zero_;
        }
        throw OrderBudgetExceeded("phi_" + std::to_string(prime(k)) + " of x" + multi_index_to_string(i)
                                  + " exceeds the order budget");
    }
    return it->second;
}

MultiPrimeFrame::Poly MultiPrimeFrame::shift(const Poly &in_T, int k, long bound) const
{
    const long p = prime(k);
    auto key_map = [&](VarKey key) {
        MultiIndex i = index(key);
        i[static_cast<std::size_t>(k - 1)] += 1;
        return std::make_pair(MultiPrimeFrame::key(i), weight(i));
    };
    return in_T.rename(key_map, std::min(bound, saturating_mul(in_T.bound(), p)));
}

MultiPrimeFrame::Poly MultiPrimeFrame::to_x(const Poly &in_T, long bound) const
{
    auto image = [&](VarKey key) { return T_in_x(index(key)); };
    return in_T.substitute(image, std::min(bound, in_T.bound()), is_one_monomial);
}

MultiPrimeFrame::Poly MultiPrimeFrame::to_T(const Poly &in_x, long bound) const
{
    auto image = [&](VarKey key) { return x_in_T(index(key)); };
    return in_x.substitute(image, std::min(bound, in_x.bound()), is_one_monomial);
}

void MultiPrimeFrame::build_tables()
{
    const CoeffRing<Rational> ring;
    const MultiIndex zero(primes_.size(), 0);
    x_in_T_.emplace(zero, Poly::term(ring, variable(zero), Rational(1), bound_));
    T_in_x_.emplace(zero, Poly::term(ring, variable(zero), Rational(1), bound_));

    for (const MultiIndex &i : indices_) {
        if (i == zero) {
            continue;
        }
        // x_i = delta_{p_k}(x_{i - e_k}) for the first k with i_k > 0.
        const auto kk = static_cast<std::size_t>(std::find_if(i.begin(), i.end(), [](int e) { return e > 0; }) - i.begin());
        const int k = static_cast<int>(kk) + 1;
        const long p = primes_[kk];
        MultiIndex prev = i;
        prev[kk] -= 1;
        const Poly &xp = x_in_T_.at(prev);
        Poly xi = (shift(xp, k, bound_) - xp.pow(static_cast<unsigned long>(p), bound_)).divided_by(p);

        // x_i = T_i / P^i + R_i(T_j : j < i), so T_i = P^i (x_i - R_i(T(x))).
        const Rational lead(weight(i));
        Poly rest = xi;
        rest -= Poly::term(ring, variable(i), 1 / lead, bound_);
        Poly ti = Poly::term(ring, variable(i), Rational(1), bound_);
        ti -= to_x(rest, bound_);
        x_in_T_.emplace(i, std::move(xi));
        T_in_x_.emplace(i, ti.scaled(lead));
    }

    phi_image_.resize(primes_.size());
    for (std::size_t kk = 0; kk < primes_.size(); ++kk) {
        const int k = static_cast<int>(kk) + 1;
        for (const MultiIndex &i : indices_) {
            if (saturating_mul(weight(i), primes_[kk]) >= bound_) {
                continue;
            }
            if (i[kk] + 1 > budget_[kk]) {
                continue;
            }
            phi_image_[kk].emplace(i, to_x(shift(x_in_T_.at(i), k, bound_), bound_));
        }
    }
}

std::string multi_index_to_string(const MultiIndex &i)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < i.size(); ++k) {
        os << (k ? "," : "") << i[k];
    }
    os << ')';
    return os.str();
}

std::string multi_monomial_to_string(const MultiPrimeFrame &frame, const Monomial &m)
{
    if (m.is_one()) {
        return "1";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[key, e] : m.factors()) {
        os << (first ? "" : "*");
        first = false;
        const MultiIndex i = frame.index(key);
        if (std::any_of(i.begin(), i.end(), [](int x) { return x != 0; })) {
            os << 'd' << multi_index_to_string(i);
        }
        os << to_string(frame.base());
        if (e != 1) {
            os << '^' << e;
        }
    }
    return os.str();
}

PadicMulti reduce_mod(const RationalMulti &f, int k, int modulus_exponent)
{
    const CoeffRing<PadicTrunc> ring{f.frame()->prime(k), modulus_exponent};
    auto poly = f.poly().map_coefficients(ring, [&](const Rational &c) { return ring.from_rational(c); });
    return PadicMulti(f.frame(), f.order(), k, std::move(poly));
}

namespace
{

void require_fe_primes(const MultiPrimeFrame &frame)
{
    for (long p : frame.primes()) {
        if (p < 5) {
            throw DomainError("f^e expansions need primes >= 5, got " + std::to_string(p));
        }
    }
    if (frame.base() != SeriesVar::t) {
        throw DomainError("f^e expansions live on the t side");
    }
}

} // namespace

RationalMulti build_fe0(const FramePtr &frame)
{
    require_fe_primes(*frame);
    const CoeffRing<Rational> ring;
    const long n_bound = frame->bound();
    const std::size_t d = frame->dimension();
    TruncatedPoly<Rational> in_T(ring, n_bound);
    Integer prod = 1;
    for (long p : frame->primes()) {
        prod *= p;
    }
    // sum over subsets S of prod_{k not in S}(-p_k) log(1 + T_{e_S}).
    for (unsigned long mask = 0; mask < (1UL << d); ++mask) {
        MultiIndex j(d, 0);
        Integer c = 1;
        for (std::size_t k = 0; k < d; ++k) {
            if (mask & (1UL << k)) {
                j[k] = 1;
            } else {
                c *= -frame->primes()[k];
            }
        }
        const long w = frame->weight(j);
        for (long n = 1; saturating_mul(w, n) < n_bound; ++n) {
            const Rational coeff = ratio(c, Integer(n));
            in_T.add_term(frame->variable(j, static_cast<int>(n)), n % 2 == 1 ? coeff : Rational(-coeff));
        }
    }
    auto in_x = frame->to_x(in_T, n_bound).scaled(Rational(Integer(1), prod));
    return RationalMulti(frame, MultiIndex(d, 1), kCommonRing, std::move(in_x));
}

RationalMulti build_fe0(const std::vector<long> &primes, long bound)
{
    return build_fe0(MultiPrimeFrame::make(primes, bound));
}

RationalMulti build_fe_k(const FramePtr &frame, int k)
{
    require_fe_primes(*frame);
    const long pk = frame->prime(k);
    RationalMulti f = embed(psi_serretate(pk, frame->bound()), frame, k, k);
    for (int l = 1; l <= static_cast<int>(frame->dimension()); ++l) {
        if (l == k) {
            continue;
        }
        f = f - phi_pk(f, l).scaled(Rational(Integer(1), Integer(frame->prime(l))));
    }
    return frame->dimension() % 2 == 0 ? -f : f;
}

RationalMulti build_fe_k(const std::vector<long> &primes, int k, long bound)
{
    return build_fe_k(MultiPrimeFrame::make(primes, bound), k);
}

namespace
{

struct MemberView {
    const MultiPrimeFrame *frame;
    const MultiIndex *order;
    long bound;
};

MemberView view(const FamilyMember &m)
{
    return std::visit([](const auto &s) { return MemberView{s.frame().get(), &s.order(), s.bound()}; }, m);
}

} // namespace

ContinuationResult continuation_check(const std::vector<FamilyMember> &family, std::optional<Integer> height_bound)
{
    if (family.empty()) {
        throw DomainError("continuation_check: empty family");
    }
    const MemberView first = view(family.front());
    long bound = first.bound;
    FramePtr frame;
    std::set<Monomial> support;
    for (const auto &member : family) {
        const MemberView v = view(member);
        if (!v.frame->same_shape(*first.frame) || *v.order != *first.order) {
            throw DomainError("continuation_check: family members must share P, r and N");
        }
        bound = std::min(bound, v.bound);
        std::visit(
            [&](const auto &s) {
                if (!frame) {
                    frame = s.frame();
                }
                for (const auto &[m, c] : s.poly().terms()) {
                    support.insert(m);
                }
            },
            member);
    }

    const CoeffRing<Rational> ring;
    TruncatedPoly<Rational> out(ring, bound);
    ContinuationResult result;
    for (const Monomial &m : support) {
        if (m.weight() >= bound) {
            break;
        }
        std::optional<Rational> exact;
        bool exact_conflict = false;
        std::vector<ResidueDatum> residues;
        std::vector<std::string> shown;
        for (const auto &member : family) {
            if (const auto *r = std::get_if<RationalMulti>(&member)) {
                const Rational c = r->poly().coefficient(m);
                shown.push_back(to_string(c));
                if (exact && *exact != c) {
                    exact_conflict = true;
                }
                if (!exact) {
                    exact = c;
                }
            } else {
                const auto &s = std::get<PadicMulti>(member);
                const PadicTrunc c = s.poly().coefficient(m);
                residues.push_back({c.prime(), c.digits(), c.residue()});
                shown.push_back(c.residue().get_str() + " mod " + std::to_string(c.prime()) + "^"
                                + std::to_string(c.digits()));
            }
        }
        auto fail = [&](std::string reason) {
            result.failure = ContinuationFailure{m, multi_monomial_to_string(*frame, m), shown, std::move(reason)};
            return result;
        };
        Rational value;
        if (exact_conflict) {
            return fail("exact members disagree");
        }
        if (exact) {
            value = *exact;
            if (!is_integral_at(value, frame->primes())) {
                return fail("coefficient is not in Z_(P)");
            }
            for (const auto &r : residues) {
                const auto expected = reduce_residues(value, {{r.prime, r.exponent}});
                if (expected.front().residue != r.residue) {
                    return fail("p-adic member disagrees with the exact coefficient");
                }
            }
        } else {
            const auto rec = try_rational_reconstruct(residues, height_bound);
            if (!rec) {
                return fail("no rational of the allowed height matches the residues");
            }
            value = rec->value;
            if (!is_integral_at(value, frame->primes())) {
                return fail("reconstructed coefficient is not in Z_(P)");
            }
        }
        out.add_term(m, value);
    }
    result.value = RationalMulti(frame, *first.order, kCommonRing, std::move(out));
    return result;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (sgn(rows[r][col]) == 0) {
                continue;
            }
            const Rational factor = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < cols; ++c) {
                rows[r][c] -= factor * rows[rank][c];
            }
        }
        ++rank;
    }
    return rank;
}

BasisReport basis_independence_check(const std::vector<long> &primes, const MultiIndex &r, long bound)
{
    if (r.size() != primes.size()) {
        throw DomainError("basis check: order vector has the wrong length");
    }
    if (std::any_of(r.begin(), r.end(), [](int x) { return x < 1; })) {
        throw DomainError("basis check: need e <= r, i.e. every r_k >= 1");
    }
    const auto frame = MultiPrimeFrame::make(primes, bound);
    const RationalMulti fe0 = build_fe0(frame);

    std::vector<RationalMulti> images;
    std::function<void(std::size_t, const RationalMulti &)> walk = [&](std::size_t k, const RationalMulti &g) {
        if (k == r.size()) {
            images.push_back(g);
            return;
        }
        RationalMulti h = g;
        for (int e = 1; e <= r[k]; ++e) {
            walk(k + 1, h);
            if (e < r[k]) {
                h = phi_pk(h, static_cast<int>(k) + 1);
            }
        }
    };
    walk(0, fe0);

    std::set<Monomial> support;
    for (const auto &g : images) {
        for (const auto &[m, c] : g.poly().terms()) {
            support.insert(m);
        }
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto &g : images) {
        std::vector<Rational> row;
        row.reserve(support.size());
        for (const Monomial &m : support) {
            row.push_back(g.poly().coefficient(m));
        }
        rows.push_back(std::move(row));
    }

    BasisReport report;
    report.primes = primes;
    report.r = r;
    report.bound = bound;
    report.vectors = rows.size();
    report.expected = 1;
    for (int x : r) {
        report.expected *= static_cast<std::size_t>(x);
    }
    report.rank = rational_rank(std::move(rows));
    return report;
}

} // namespace arithdiff
