// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <arithdiff/errors.hpp>
#include <arithdiff/forms.hpp>
#include <arithdiff/json_io.hpp>

using namespace arithdiff;

namespace
{

const CoeffRing<Rational> kQ;
std::mt19937_64 rng(1729);

long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Rational random_integral_at(const std::vector<long> &primes, long height)
{
    for (;;) {
        const long d = uniform(1, height);
        bool ok = true;
        for (long p : primes) {
            ok = ok && d % p != 0;
        }
        if (ok) {
            return ratio(Integer(uniform(-height, height)), Integer(d));
        }
    }
}

struct Outcome {
    bool pass = true;
    std::string note;

    void require(bool cond, const std::string &what)
    {
        if (!cond && pass) {
            pass = false;
            note = what;
        }
    }
};

bool delta_ring_axioms(Outcome &o)
{
    for (long p : {2L, 3L, 5L, 7L}) {
        for (int s = 0; s < 200; ++s) {
            const Rational a = random_integral_at({p}, 1000), b = random_integral_at({p}, 1000);
            const Rational da = fermat_delta(a, p), db = fermat_delta(b, p);
            o.require(fermat_delta(a + b, p) == da + db + cp_polynomial(a, b, p), "sum rule");
            o.require(fermat_delta(a * b, p) == pow(a, p) * db + pow(b, p) * da + p * da * db, "product rule");
            auto phi = [p](const Rational &x) { return Rational(pow(x, p) + p * fermat_delta(x, p)); };
            o.require(phi(a + b) == phi(a) + phi(b) && phi(a * b) == phi(a) * phi(b), "phi homomorphism");
            o.require(phi(a) == a, "phi is the identity on coefficients");
        }
    }
    return o.pass;
}

bool commutator(Outcome &o)
{
    const std::vector<long> primes{2, 3, 5, 7};
    for (int s = 0; s < 100; ++s) {
        const Rational a(uniform(-100000, 100000));
        for (long p : primes) {
            for (long q : primes) {
                if (p != q) {
                    const Rational dp = fermat_delta(a, p), dq = fermat_delta(a, q);
                    o.require(fermat_delta(dq, p) - fermat_delta(dp, q) == cross_prime_commutator(a, dp, dq, p, q),
                              "identity at a=" + to_string(a));
                }
            }
        }
    }
    const Rational a = 6, d2 = fermat_delta(a, 2), d3 = fermat_delta(a, 3);
    const Rational lhs = fermat_delta(d3, 2) - fermat_delta(d2, 3);
    const Rational rhs = cross_prime_commutator(a, d2, d3, 2, 3);
    o.require(lhs == -3605 && rhs == -3605, "worked case gave " + to_string(lhs) + " and " + to_string(rhs));
    o.note = o.pass ? "a=6, (2,3): both sides -3605" : o.note;
    return o.pass;
}

RationalJet cut_qprime(const RationalJet &f, int degree)
{
    TruncatedPoly<Rational> poly(kQ, f.bound());
    for (const auto &[m, c] : f.poly().terms()) {
        if (m.exponent(jet_key(kBaseGenerator, 1)) <= degree) {
            poly.add_term(m, c);
        }
    }
    return RationalJet(f.prime(), f.base(), f.order(), std::move(poly));
}

bool psi_identities(Outcome &o)
{
    const int window = 30;
    for (long p : {5L, 7L}) {
        for (long n = 1; n <= 25; ++n) {
            o.require(valuation(psi_fourier_coefficient(p, n), p) >= 0, "negative valuation");
        }
        const auto x = psi_fourier_exact(p, window).scaled(Rational(p));
        auto sum = RationalJet::constant(p, SeriesVar::q, kQ, Rational(1));
        auto power = sum;
        Rational factorial = 1;
        for (int k = 1; k <= window; ++k) {
            power = cut_qprime(power * x, window);
            factorial *= k;
            sum = sum + power.scaled(1 / factorial);
        }
        const auto q = RationalJet::variable(p, SeriesVar::q, kQ, 0);
        const auto qp = RationalJet::variable(p, SeriesVar::q, kQ, 1);
        o.require(reduce_mod(cut_qprime(sum * q.pow(p), window), 8) == reduce_mod(q.pow(p) + qp.scaled(Rational(p)), 8),
                  "exp(p Psi) q^p at p=" + std::to_string(p));
        o.require(fourier_to_serretate(psi_fourier_exact(p, window), window) == psi_serretate(p, window),
                  "q -> 1+t substitution at p=" + std::to_string(p));
    }
    return o.pass;
}

bool fe_agreement(Outcome &o)
{
    const auto frame = MultiPrimeFrame::make({5, 7}, 50);
    const auto fe0 = build_fe0(frame);
    o.require(build_fe_k(frame, 1) == fe0, "f^e_1 differs");
    o.require(build_fe_k(frame, 2) == fe0, "f^e_2 differs");
    for (const auto &[m, c] : fe0.poly().terms()) {
        o.require(gcd(c.get_den(), Integer(35)) == 1, "denominator shares a factor with 35");
    }
    if (o.pass) {
        o.note = std::to_string(fe0.poly().size()) + " terms";
    }
    return o.pass;
}

bool covariance(Outcome &o)
{
    const auto fe0 = build_fe0(std::vector<long>{5, 7}, 30);
    for (long gamma : {2L, 3L}) {
        o.require(covariance_check(psi_serretate(5, 30), gamma, 1).pass, "Psi_5");
        o.require(covariance_check(psi_serretate(7, 30), gamma, 1).pass, "Psi_7");
        o.require(covariance_check(fe0, gamma, 1).pass, "f^e_0");
    }
    const auto t = covariance_check(RationalJet::variable(5, SeriesVar::t, kQ, 0, 30), 2, 1);
    o.require(!t.pass && t.witness.has_value(), "F = t did not fail with a witness");

    const auto fx = curve_fixture_from_json(read_json_file(std::string(ARITHDIFF_DATA_DIR) + "/11a1.json"));
    const auto an = newform_coefficients(fx, 30);
    const auto f2e = build_f2e0(an, MultiPrimeFrame::make({5, 7}, 30, SeriesVar::q), {an[5], an[7]});
    for (long gamma : {2L, 3L}) {
        const auto r = covariance_check(f2e, gamma, 1);
        o.require(!r.pass && r.witness.has_value(), "f^{2e}_0 did not fail with a witness");
        if (o.pass) {
            o.note = "t fails at " + *t.witness + ", f^{2e}_0 fails at " + *r.witness;
        }
    }
    return o.pass;
}

bool uniqueness_rank(Outcome &o)
{
    const auto d2 = basis_independence_check({5, 7}, {2, 2}, 50);
    const auto d1 = basis_independence_check({5}, {2}, 30);
    o.require(d2.rank == 4, "rank " + std::to_string(d2.rank) + " for r=(2,2)");
    o.require(d1.rank == 2, "rank " + std::to_string(d1.rank) + " for d=1");
    if (o.pass) {
        o.note = "ranks 4 and 2";
    }
    return o.pass;
}

bool fsharp_integrality(Outcome &o)
{
    const auto fx = curve_fixture_from_json(read_json_file(std::string(ARITHDIFF_DATA_DIR) + "/11a1.json"));
    const auto an = newform_coefficients(fx, 40);
    try {
        const auto exact = fsharp_exact(an, an[13], 13, 30);
        o.require(exact.all_p_integral(), "non-integral coefficient");
        const auto reduced = fsharp_expansion(an, an[13], 13, 6, 30);
        o.require(reduced == reduce_mod(exact, 6), "reduction mismatch");
        if (o.pass) {
            o.note = std::to_string(reduced.poly().size()) + " retained terms";
        }
    } catch (const IntegralityViolation &e) {
        o.require(false, e.what());
    }
    const auto frame = MultiPrimeFrame::make({5, 13}, 40, SeriesVar::q);
    const std::vector<Integer> ap{an[5], an[13]};
    const auto f0 = build_f2e0(an, frame, ap);
    o.require(build_f2e_k(an, frame, ap, 1) == f0 && build_f2e_k(an, frame, ap, 2) == f0, "f^{2e}_k disagree");
    return o.pass;
}

bool lemmas(Outcome &o)
{
    for (auto [p, n] : {std::pair{5L, 1}, {5L, 2}, {7L, 1}}) {
        const auto r = lemma_xlaphi_check(p, n, std::nullopt);
        o.require(r.pass, "xlaphi " + r.detail);
    }
    for (auto [p, n, a] : {std::tuple{5L, 1, 1L}, {5L, 2, 3L}, {7L, 1, 2L}}) {
        const auto r = lemma_logder_check(p, n, a);
        o.require(r.pass, "logder " + r.detail);
    }
    return o.pass;
}

bool modular_data(Outcome &o)
{
    const auto e4 = eisenstein(4, 40).series, e6 = eisenstein(6, 40).series;
    const auto delta = discriminant_delta(40).series;
    const auto lhs = e4 * e4 * e4 - e6 * e6;
    for (long n = 0; n < 40; ++n) {
        o.require(lhs.coefficient(n) == 1728 * delta.coefficient(n), "E4^3 - E6^2 at q^" + std::to_string(n));
    }
    for (long p : {5L, 7L, 11L, 13L}) {
        const auto e = eisenstein(static_cast<int>(p - 1), 40).series;
        for (long n = 1; n < 40; ++n) {
            o.require(valuation(e.coefficient(n), p) >= 1, "E_{p-1} mod p");
        }
    }
    const EllipticCurveQ curve{0, -1, 1, -10, -20, "11a1"};
    o.require(ap_point_count(curve, 5) == 1 && ap_point_count(curve, 7) == -2, "a_5, a_7");
    for (long p = 2; p <= 97; ++p) {
        if (is_prime(p) && p != 11) {
            const Integer a = ap_point_count(curve, p);
            o.require(a * a <= 4 * p, "Hasse bound at " + std::to_string(p));
        }
    }
    return o.pass;
}

bool continuation(Outcome &o)
{
    const auto frame = MultiPrimeFrame::make({5, 7}, 40);
    const auto &idx = frame->indices();
    int detected = 0;
    for (int s = 0; s < 100; ++s) {
        TruncatedPoly<Rational> poly(kQ, frame->bound());
        MultiIndex order(2, 0);
        for (int k = 0; k < 8; ++k) {
            const auto &a = idx[static_cast<std::size_t>(uniform(0, static_cast<long>(idx.size()) - 1))];
            const Monomial m = frame->variable(a, static_cast<int>(uniform(1, 3)));
            if (m.weight() < frame->bound() && sgn(poly.coefficient(m)) == 0) {
                poly.add_term(m, random_integral_at({5, 7}, 10000));
                order = {std::max(order[0], a[0]), std::max(order[1], a[1])};
            }
        }
        const RationalMulti f0(frame, order, kCommonRing, std::move(poly));
        const std::vector<FamilyMember> family{reduce_mod(f0, 1, 8), reduce_mod(f0, 2, 8)};
        const auto ok = continuation_check(family, Integer(10000));
        o.require(ok.ok() && *ok.value == f0, "round trip " + std::to_string(s));
        if (f0.is_zero()) {
            continue;
        }
        auto it = f0.poly().terms().begin();
        std::advance(it, uniform(0, static_cast<long>(f0.poly().size()) - 1));
        const auto &member = std::get<PadicMulti>(family[static_cast<std::size_t>(s % 2)]);
        const PadicMulti bump(frame, member.order(), member.ring_kind(),
                              TruncatedPoly<PadicTrunc>::term(member.ring(), it->first, member.ring().from_int(1),
                                                              frame->bound()));
        std::vector<FamilyMember> faulty = family;
        faulty[static_cast<std::size_t>(s % 2)] = member + bump;
        const auto bad = continuation_check(faulty, Integer(10000));
        o.require(!bad.ok() && bad.failure->monomial == it->first, "perturbation " + std::to_string(s));
        detected += bad.ok() ? 0 : 1;
    }
    if (o.pass) {
        o.note = "100 round trips, " + std::to_string(detected) + " faults located";
    }
    return o.pass;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<bool(Outcome &)>>> criteria{
        {"delta-ring axioms, p in {2,3,5,7}", delta_ring_axioms},
        {"cross-prime commutator identity", commutator},
        {"Psi identities", psi_identities},
        {"f^e_k = f^e_0 for P={5,7}, N=50", fe_agreement},
        {"isogeny covariance", covariance},
        {"rank of phi_P translates", uniqueness_rank},
        {"f^sharp integrality and f^{2e} agreement (11a1)", fsharp_integrality},
        {"lemma suite", lemmas},
        {"modular data", modular_data},
        {"continuation round trip", continuation},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = criteria[i].second(o);
        } catch (const std::exception &e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        pass = pass && o.pass;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (pass ? "PASS " : "FAIL ") << (i + 1) << ": " << criteria[i].first << " (" << timing << ")";
        if (!o.note.empty()) {
            std::cout << " - " << o.note;
        }
        std::cout << "\n";
        failures += pass ? 0 : 1;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
