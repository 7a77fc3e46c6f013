#include <arithdiff/forms.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace arithdiff
{

PadicJet embed_qexpansion(const RationalSeries &f, long p, int modulus_exponent)
{
    if (f.var() != SeriesVar::q) {
        throw DomainError("embed_qexpansion: expected a q-expansion");
    }
    const CoeffRing<PadicTrunc> ring{p, modulus_exponent};
    TruncatedPoly<PadicTrunc> poly(ring, f.order());
    for (const auto &[n, c] : f.terms()) {
        poly.add_term(jet_monomial(p, kBaseGenerator, 0, static_cast<int>(n)), ring.from_rational(c));
    }
    return PadicJet(p, SeriesVar::q, 0, std::move(poly));
}

PadicJet delta_fourier_expand(const QExpansion &f, int n, long p, int modulus_exponent)
{
    return embed_qexpansion(f.series, p, modulus_exponent).delta_n(n);
}

RationalJet fsharp_exact(const std::vector<Integer> &an, const Integer &ap, long p, long window)
{
    if (!is_prime(p) || p < 5) {
        throw DomainError("fsharp: need a prime p >= 5, got " + std::to_string(p));
    }
    if (window < 1) {
        throw DomainError("fsharp: window must be positive");
    }
    if (static_cast<long>(an.size()) <= window) {
        throw DomainError("fsharp: a_n needed for every n <= " + std::to_string(window));
    }
    const long bound = window + 1;
    const CoeffRing<Rational> ring;
    const auto q = RationalJet::variable(p, SeriesVar::q, ring, 0, bound);
    const auto phi1 = q.phi().truncated(bound);
    const auto phi2 = phi1.phi().truncated(bound);
    const auto one = RationalJet::constant(p, SeriesVar::q, ring, Rational(1), bound);

    RationalJet sum = RationalJet::constant(p, SeriesVar::q, ring, Rational(0), bound);
    RationalJet pq = one, pphi1 = one, pphi2 = one;
    for (long n = 1; n <= window; ++n) {
        pq = (pq * q).truncated(bound);
        pphi1 = (pphi1 * phi1).truncated(bound);
        pphi2 = (pphi2 * phi2).truncated(bound);
        const Integer &a = an[static_cast<std::size_t>(n)];
        if (a == 0) {
            continue;
        }
        const RationalJet term = pphi2 - pphi1.scaled(Rational(ap)) + pq.scaled(Rational(p));
        sum = sum + term.scaled(ratio(a, Integer(n)));
    }
    const RationalJet out = sum.scaled(Rational(Integer(1), Integer(p))).with_order(2);
    for (const auto &[m, c] : out.poly().terms()) {
        if (!is_p_integral(c, p)) {
            throw IntegralityViolation("fsharp: coefficient " + to_string(c) + " of " + monomial_to_string(m, SeriesVar::q)
                                       + " is not " + std::to_string(p) + "-integral");
        }
    }
    return out;
}

PadicJet fsharp_expansion(const std::vector<Integer> &an, const Integer &ap, long p, int modulus_exponent, long window)
{
    return reduce_mod(fsharp_exact(an, ap, p, window), modulus_exponent);
}

namespace
{

void require_f2e_inputs(const std::vector<Integer> &an, const FramePtr &frame, const std::vector<Integer> &ap)
{
    if (frame->base() != SeriesVar::q) {
        throw DomainError("f2e expansions live on the q side");
    }
    if (ap.size() != frame->dimension()) {
        throw DomainError("f2e: need one a_p per prime of P");
    }
    if (static_cast<long>(an.size()) < frame->bound()) {
        throw DomainError("f2e: a_n needed for every n < " + std::to_string(frame->bound()));
    }
}

} // namespace

RationalMulti build_f2e0(const std::vector<Integer> &an, const FramePtr &frame, const std::vector<Integer> &ap)
{
    require_f2e_inputs(an, frame, ap);
    const std::size_t d = frame->dimension();
    const long n_bound = frame->bound();
    TruncatedPoly<Rational> in_T(CoeffRing<Rational>{}, n_bound);
    Integer prod = 1;
    for (long p : frame->primes()) {
        prod *= p;
    }
    // prod_k (T-shift_k^2 - a_k T-shift_k + p_k) acting on sum (a_n/n) T_0^n.
    MultiIndex j(d, 0);
    for (;;) {
        Integer c = 1;
        for (std::size_t k = 0; k < d; ++k) {
            c *= j[k] == 2 ? Integer(1) : j[k] == 1 ? Integer(-ap[k]) : Integer(frame->primes()[k]);
        }
        const long w = frame->weight(j);
        if (c != 0 && w < n_bound) {
            for (long n = 1; saturating_mul(w, n) < n_bound; ++n) {
                const Integer &a = an[static_cast<std::size_t>(n)];
                if (a != 0) {
                    in_T.add_term(frame->variable(j, static_cast<int>(n)), ratio(c * a, Integer(n)));
                }
            }
        }
        std::size_t k = 0;
        while (k < d && j[k] == 2) {
            j[k++] = 0;
        }
        if (k == d) {
            break;
        }
        ++j[k];
    }
    auto in_x = frame->to_x(in_T, n_bound).scaled(Rational(Integer(1), prod));
    return RationalMulti(frame, MultiIndex(d, 2), kCommonRing, std::move(in_x));
}

RationalMulti build_f2e_k(const std::vector<Integer> &an, const FramePtr &frame, const std::vector<Integer> &ap, int k)
{
    require_f2e_inputs(an, frame, ap);
    const long pk = frame->prime(k);
    RationalMulti f = embed(fsharp_exact(an, ap[static_cast<std::size_t>(k - 1)], pk, frame->bound() - 1), frame, k, k);
    for (int l = 1; l <= static_cast<int>(frame->dimension()); ++l) {
        if (l == k) {
            continue;
        }
        const Integer pl = frame->prime(l);
        const RationalMulti phi1 = phi_pk(f, l);
        const RationalMulti phi2 = phi_pk(phi1, l);
        f = f - phi1.scaled(ratio(ap[static_cast<std::size_t>(l - 1)], pl)) + phi2.scaled(Rational(Integer(1), pl));
    }
    return f;
}

namespace
{

template <typename C>
void compare_into(CovarianceReport &report, const TruncatedPoly<C> &lhs, const TruncatedPoly<C> &rhs,
                  const std::function<std::string(const Monomial &)> &show)
{
    const long bound = std::min(lhs.bound(), rhs.bound());
    std::set<Monomial> support;
    for (const auto &[m, c] : lhs.terms()) {
        support.insert(m);
    }
    for (const auto &[m, c] : rhs.terms()) {
        support.insert(m);
    }
    report.pass = true;
    for (const Monomial &m : support) {
        if (m.weight() >= bound) {
            break;
        }
        ++report.compared;
        const C a = lhs.coefficient(m);
        const C b = rhs.coefficient(m);
        if (!(a == b)) {
            report.pass = false;
            report.witness = show(m);
            report.lhs_coefficient = lhs.ring().to_string(a);
            report.rhs_coefficient = rhs.ring().to_string(b);
            break;
        }
    }
    if (report.compared == 0) {
        report.indeterminate = true;
        report.pass = false;
    }
}

void require_gamma(long gamma, const std::vector<long> &primes)
{
    if (gamma < 2) {
        throw DomainError("covariance: gamma must be an integer >= 2");
    }
    for (long p : primes) {
        const long r = gamma % p;
        if (r == 0 || r == 1) {
            throw DomainError("covariance: gamma = " + std::to_string(gamma) + " is " + std::to_string(r) + " mod "
                              + std::to_string(p));
        }
    }
}

Rational rational_power(long base, long e)
{
    const Rational b = pow(Rational(base), static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(1 / b) : b;
}

} // namespace

CovarianceReport covariance_check(const RationalMulti &f, long gamma, long nu)
{
    const auto &frame = f.frame();
    require_gamma(gamma, frame->primes());
    const CoeffRing<Rational> ring;
    const MultiIndex zero(frame->dimension(), 0);
    const auto b = RationalMulti::variable(frame, ring, zero);
    RationalMulti y0 = frame->base() == SeriesVar::t
                           ? (RationalMulti::constant(frame, ring, Rational(1)) + b).pow(static_cast<unsigned long>(gamma))
                                 - RationalMulti::constant(frame, ring, Rational(1))
                           : b.pow(static_cast<unsigned long>(gamma));

    std::map<MultiIndex, RationalMulti> ys;
    ys.emplace(zero, y0);
    std::function<const RationalMulti &(const MultiIndex &)> y_at = [&](const MultiIndex &i) -> const RationalMulti & {
        auto it = ys.find(i);
        if (it != ys.end()) {
            return it->second;
        }
        const auto kk = static_cast<std::size_t>(std::find_if(i.begin(), i.end(), [](int e) { return e > 0; }) - i.begin());
        MultiIndex prev = i;
        prev[kk] -= 1;
        RationalMulti next = delta_pk(y_at(prev), static_cast<int>(kk) + 1);
        return ys.emplace(i, std::move(next)).first->second;
    };
    auto image = [&](VarKey key) { return y_at(frame->index(key)).poly(); };
    const auto lhs = f.poly().substitute(image, f.bound(), [](const Monomial &m) { return m.is_one(); });
    const auto rhs = f.poly().scaled(rational_power(gamma, nu));

    CovarianceReport report;
    report.gamma = std::to_string(gamma);
    report.nu = nu;
    compare_into<Rational>(report, lhs, rhs, [&](const Monomial &m) { return multi_monomial_to_string(*frame, m); });
    return report;
}

CovarianceReport covariance_check(const RationalJet &f, long gamma, long nu)
{
    const auto frame = MultiPrimeFrame::make({f.prime()}, f.bound(), f.base());
    return covariance_check(embed(f, frame, 1, kCommonRing), gamma, nu);
}

CovarianceReport covariance_check(const PadicJet &f, const PadicTrunc &gamma, long nu)
{
    const long p = f.prime();
    if (f.base() != SeriesVar::t) {
        throw DomainError("p-adic covariance: t-side series expected");
    }
    if (f.bound() >= kUnbounded) {
        throw DomainError("p-adic covariance: series needs a truncation bound");
    }
    if (gamma.prime() != p || gamma.modulus_exponent() != f.ring().modulus_exponent) {
        throw DomainError("p-adic covariance: gamma must live in the coefficient ring of the series");
    }
    if (!gamma.is_unit() || (gamma - f.ring().from_int(1)).valuation() > 0) {
        throw DomainError("p-adic covariance: gamma must be a unit with gamma mod p != 1");
    }
    const auto &ring = f.ring();
    TruncatedPoly<PadicTrunc> y0(ring, f.bound());
    for (long k = 1; k < f.bound(); ++k) {
        y0.add_term(jet_monomial(p, kBaseGenerator, 0, static_cast<int>(k)), padic_binomial(gamma, k));
    }
    std::vector<PadicJet> ys{PadicJet(p, SeriesVar::t, 0, std::move(y0))};
    for (int i = 1; i <= f.order(); ++i) {
        ys.push_back(ys.back().delta());
    }
    auto image = [&](VarKey key) { return ys[static_cast<std::size_t>(key_jet_index(key))].poly(); };
    const auto lhs = f.poly().substitute(image, f.bound(), [](const Monomial &m) { return m.is_one(); });
    const PadicTrunc factor = nu >= 0 ? gamma.pow(static_cast<unsigned long>(nu))
                                      : gamma.inverse().pow(static_cast<unsigned long>(-nu));
    const auto rhs = f.poly().scaled(factor);

    CovarianceReport report;
    report.gamma = gamma.residue().get_str() + " mod " + std::to_string(p) + "^" + std::to_string(gamma.modulus_exponent());
    report.nu = nu;
    compare_into<PadicTrunc>(report, lhs, rhs, [](const Monomial &m) { return monomial_to_string(m, SeriesVar::t); });
    return report;
}

SpecialExpansions expansion_of_f1_fnatural(long p, long bound)
{
    if (!is_prime(p) || p < 5) {
        throw DomainError("special expansions need a prime p >= 5");
    }
    const RationalJet psi = psi_serretate(p, bound);
    const RationalJet one = RationalJet::constant(p, SeriesVar::t, CoeffRing<Rational>{}, Rational(1), bound);
    return {psi, one, psi};
}

} // namespace arithdiff
