#include <arithdiff/deltajet.hpp>

#include <sstream>

namespace arithdiff
{

long jet_weight(long p, int generator, int index)
{
    if (generator != kBaseGenerator) {
        return 0;
    }
    long w = 1;
    for (int i = 0; i < index; ++i) {
        w = saturating_mul(w, p);
    }
    return w;
}

Monomial jet_monomial(long p, int generator, int index, int exponent)
{
    return Monomial::variable(jet_key(generator, index), jet_weight(p, generator, index), exponent);
}

PadicJet reduce_mod(const RationalJet &f, int modulus_exponent)
{
    const CoeffRing<PadicTrunc> ring{f.prime(), modulus_exponent};
    auto poly = f.poly().map_coefficients(ring, [&](const Rational &c) { return ring.from_rational(c); });
    return PadicJet(f.prime(), f.base(), f.order(), std::move(poly));
}

RationalJet log1p(const RationalJet &y)
{
    if (!y.is_zero() && y.poly().effective_min_weight() < 1) {
        throw DomainError("log1p: argument must have positive weight");
    }
    if (!y.is_zero() && y.bound() >= kUnbounded) {
        throw DomainError("log1p: argument needs a truncation bound");
    }
    RationalJet sum = RationalJet::constant(y.prime(), y.base(), y.ring(), Rational(0), y.bound());
    RationalJet power = y;
    for (long n = 1; !power.is_zero(); ++n) {
        sum = sum + power.scaled(Rational(n % 2 == 1 ? 1 : -1, n));
        power = (power * y).truncated(y.bound());
    }
    return sum.with_order(y.order());
}

Rational psi_fourier_coefficient(long p, long n)
{
    if (n < 1) {
        throw DomainError("psi_fourier_coefficient: n must be positive");
    }
    const Rational c = ratio(ipow(p, static_cast<unsigned long>(n - 1)), Integer(n));
    return n % 2 == 1 ? c : Rational(-c);
}

RationalJet psi_fourier_exact(long p, long window)
{
    if (!is_prime(p)) {
        throw DomainError("psi_fourier: " + std::to_string(p) + " is not prime");
    }
    if (window < 1) {
        throw DomainError("psi_fourier: window must be positive");
    }
    const CoeffRing<Rational> ring;
    TruncatedPoly<Rational> poly(ring);
    for (long n = 1; n <= window; ++n) {
        const int e = static_cast<int>(n);
        const Monomial u_n = jet_monomial(p, kBaseGenerator, 1, e) * jet_monomial(p, kBaseGenerator, 0, -e * static_cast<int>(p));
        poly.add_term(u_n, psi_fourier_coefficient(p, n));
    }
    return RationalJet(p, SeriesVar::q, 1, std::move(poly));
}

PadicJet psi_fourier(long p, int modulus_exponent, long window)
{
    return reduce_mod(psi_fourier_exact(p, window), modulus_exponent);
}

RationalJet psi_serretate(long p, long bound)
{
    if (bound < 1) {
        throw DomainError("psi_serretate: truncation bound must be positive");
    }
    const CoeffRing<Rational> ring;
    const RationalJet t = RationalJet::variable(p, SeriesVar::t, ring, 0, bound);
    const RationalJet phi_t = t.phi().truncated(bound);
    const RationalJet diff = log1p(phi_t) - log1p(t).scaled(Rational(p));
    RationalJet psi(p, SeriesVar::t, 1, diff.poly().divided_by(p));
    if (!psi.all_p_integral()) {
        throw IntegralityViolation("psi_serretate: result is not p-integral");
    }
    return psi;
}

std::string monomial_to_string(const Monomial &m, SeriesVar base)
{
    if (m.is_one()) {
        return "1";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[key, e] : m.factors()) {
        if (!first) {
            os << '*';
        }
        first = false;
        const int i = key_jet_index(key);
        os << (key_generator(key) == kBaseGenerator ? to_string(base) : std::string("v"));
        if (i > 0 && i < 3) {
            os << std::string(static_cast<std::size_t>(i), '\'');
        } else if (i >= 3) {
            os << "^(" << i << ')';
        }
        if (e != 1) {
            os << '^' << e;
        }
    }
    return os.str();
}

LemmaReport lemma_xlaphi_check(long p, int n, std::optional<long> varphi)
{
    if (!is_prime(p)) {
        throw DomainError("lemma xlaphi: " + std::to_string(p) + " is not prime");
    }
    if (n < 1) {
        throw DomainError("lemma xlaphi: n must be at least 1");
    }
    // delta^n loses n digits; one must remain to read the residual mod p.
    const CoeffRing<PadicTrunc> ring{p, n + 1};
    const auto base = SeriesVar::q;
    const PadicJet z = PadicJet::variable(p, base, ring, 0);
    const PadicJet z1 = PadicJet::variable(p, base, ring, 1);
    const PadicJet vphi = varphi ? PadicJet::constant(p, base, ring, ring.from_int(*varphi))
                                 : PadicJet::variable(p, base, ring, 0, kUnbounded, kAuxGenerator);

    const PadicJet f = z.pow(static_cast<long>(p) - 1) + (z1 * z.pow(-1)).scaled(ring.from_int(p)) - vphi;
    const PadicJet lhs = f.delta_n(n);

    const long pn = ipow(p, static_cast<unsigned long>(n)).get_si();
    const PadicJet zn = PadicJet::variable(p, base, ring, n);
    const PadicJet main = z.pow(-pn) * zn.pow(p) - z.pow(pn * p - 2 * pn) * zn;
    const PadicJet residual = lhs - main;

    LemmaReport report;
    report.name = "xlaphi";
    report.p = p;
    report.n = n;
    report.pass = true;
    for (const auto &[m, c] : residual.poly().terms()) {
        if (!c.is_unit()) {
            continue;
        }
        ++report.residual_terms;
        bool ok = true;
        for (const auto &[key, e] : m.factors()) {
            if (key_generator(key) == kBaseGenerator && key_jet_index(key) > n - 1) {
                ok = false;
            }
        }
        if (!ok && report.pass) {
            report.pass = false;
            report.witness = monomial_to_string(m, base) + " with coefficient " + c.residue().get_str();
        }
    }
    report.detail = report.pass ? "residual mod p involves only jets of order <= n-1"
                                : "residual mod p involves a jet of order >= n";
    return report;
}

LemmaReport lemma_logder_check(long p, int n, long a)
{
    if (!is_prime(p)) {
        throw DomainError("lemma logder: " + std::to_string(p) + " is not prime");
    }
    if (n < 1) {
        throw DomainError("lemma logder: n must be at least 1");
    }
    const CoeffRing<Rational> ring;
    const auto base = SeriesVar::q;
    const Integer pn = ipow(p, static_cast<unsigned long>(n));
    const Rational lambda = 1 + Rational(pn) * a;
    const RationalJet z = RationalJet::variable(p, base, ring, 0);
    const RationalJet lhs = z.scaled(lambda).delta_n(n);
    const RationalJet residual = lhs - RationalJet::variable(p, base, ring, n)
                                 - z.pow(pn.get_si()).scaled(Rational(a));

    LemmaReport report;
    report.name = "logder";
    report.p = p;
    report.n = n;
    report.pass = true;
    for (const auto &[m, c] : residual.poly().terms()) {
        ++report.residual_terms;
        const bool ok = is_p_integral(Rational(c / p), p) && c.get_den() == 1;
        if (!ok && report.pass) {
            report.pass = false;
            report.witness = monomial_to_string(m, base) + " with coefficient " + to_string(c);
        }
    }
    report.detail = report.pass ? "residual lies in p Z[z,...,z^(n)]" : "residual has a coefficient outside pZ";
    return report;
}

} // namespace arithdiff
