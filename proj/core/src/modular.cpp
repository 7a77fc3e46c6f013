#include <arithdiff/modular.hpp>

#include <arithdiff/arith.hpp>
#include <arithdiff/errors.hpp>

namespace arithdiff
{

std::vector<Rational> bernoulli_numbers(int n)
{
    if (n < 0) {
        throw DomainError("bernoulli: negative index");
    }
    std::vector<Rational> b{Rational(1)};
    for (int m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (int k = 0; k < m; ++k) {
            acc += Rational(binomial(m + 1, k)) * b[static_cast<std::size_t>(k)];
        }
        b.push_back(-acc / (m + 1));
    }
    return b;
}

Rational bernoulli(int n)
{
    return bernoulli_numbers(n).back();
}

Integer divisor_sigma(int k, long n)
{
    if (n < 1 || k < 0) {
        throw DomainError("divisor_sigma: need n >= 1 and k >= 0");
    }
    Integer s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) {
            continue;
        }
        s += ipow(d, static_cast<unsigned long>(k));
        if (d != n / d) {
            s += ipow(n / d, static_cast<unsigned long>(k));
        }
    }
    return s;
}

QExpansion eisenstein(int k, long trunc)
{
    if (k < 4 || k % 2 != 0) {
        throw DomainError("eisenstein: weight must be even and at least 4, got " + std::to_string(k));
    }
    if (trunc < 1) {
        throw DomainError("eisenstein: truncation must be positive");
    }
    const Rational scale = -Rational(2 * k) / bernoulli(k);
    std::vector<Rational> c{Rational(1)};
    for (long n = 1; n < trunc; ++n) {
        c.push_back(scale * Rational(divisor_sigma(k - 1, n)));
    }
    return {k, 1, RationalSeries(SeriesVar::q, {}, 0, std::move(c), trunc)};
}

QExpansion discriminant_delta(long trunc)
{
    if (trunc < 1) {
        throw DomainError("discriminant_delta: truncation must be positive");
    }
    // prod (1 - q^n) below q^(trunc-1), then the 24th power, then times q.
    const auto len = static_cast<std::size_t>(trunc - 1);
    std::vector<Integer> eta(len, 0);
    if (len > 0) {
        eta[0] = 1;
    }
    for (std::size_t n = 1; n < len; ++n) {
        for (std::size_t i = len; i-- > n;) {
            eta[i] -= eta[i - n];
        }
    }
    auto mul = [len](const std::vector<Integer> &a, const std::vector<Integer> &b) {
        std::vector<Integer> out(len, 0);
        for (std::size_t i = 0; i < len; ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; i + j < len; ++j) {
                out[i + j] += a[i] * b[j];
            }
        }
        return out;
    };
    std::vector<Integer> power = eta;
    for (int e = 1; e < 24; ++e) {
        power = mul(power, eta);
    }
    std::vector<Rational> c{Rational(0)};
    for (const auto &x : power) {
        c.emplace_back(x);
    }
    return {12, 1, RationalSeries(SeriesVar::q, {}, 0, std::move(c), trunc)};
}

PadicSeries j_invariant(long trunc, long p, int modulus_exponent)
{
    const auto e4 = eisenstein(4, trunc).series;
    const auto delta = discriminant_delta(trunc).series;
    const PadicSeries num = reduce_mod(e4 * e4 * e4, p, modulus_exponent);
    const PadicSeries den = reduce_mod(delta, p, modulus_exponent);
    return num * den.invert();
}

Integer EllipticCurveQ::discriminant() const
{
    const Integer b2 = a1 * a1 + 4 * a2;
    const Integer b4 = 2 * a4 + a1 * a3;
    const Integer b6 = a3 * a3 + 4 * a6;
    const Integer b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

namespace
{

long mod(const Integer &x, long p)
{
    Integer r = x % p;
    if (r < 0) {
        r += p;
    }
    return r.get_si();
}

} // namespace

long count_points(const EllipticCurveQ &e, long p)
{
    if (!is_prime(p)) {
        throw DomainError("count_points: " + std::to_string(p) + " is not prime");
    }
    const long a1 = mod(e.a1, p), a2 = mod(e.a2, p), a3 = mod(e.a3, p), a4 = mod(e.a4, p), a6 = mod(e.a6, p);
    long count = 1;
    if (p == 2) {
        for (long x = 0; x < p; ++x) {
            for (long y = 0; y < p; ++y) {
                const long lhs = y * y + a1 * x * y + a3 * y;
                const long rhs = x * x * x + a2 * x * x + a4 * x + a6;
                count += (lhs - rhs) % p == 0 ? 1 : 0;
            }
        }
        return count;
    }
    // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2.
    const Integer pz(p);
    for (long x = 0; x < p; ++x) {
        const Integer xx(x);
        const Integer lin = a1 * xx + a3;
        Integer d = 4 * (xx * xx * xx + a2 * xx * xx + a4 * xx + a6) + lin * lin;
        d %= pz;
        if (d < 0) {
            d += pz;
        }
        count += 1 + mpz_legendre(d.get_mpz_t(), pz.get_mpz_t());
    }
    return count;
}

Integer ap_point_count(const EllipticCurveQ &e, long p)
{
    if (!is_prime(p)) {
        throw DomainError("ap_point_count: " + std::to_string(p) + " is not prime");
    }
    const Integer disc = e.discriminant();
    if (disc == 0) {
        throw DomainError("ap_point_count: singular curve");
    }
    if (disc % p == 0) {
        throw DomainError("bad reduction at p=" + std::to_string(p) + "; supply a_p externally");
    }
    const Integer a = Integer(p + 1 - count_points(e, p));
    if (a * a > 4 * p) {
        throw DomainError("ap_point_count: Hasse bound violated at p=" + std::to_string(p));
    }
    return a;
}

std::vector<Integer> an_multiplicative(const std::map<long, Integer> &ap, const std::set<long> &bad_primes, long nmax)
{
    if (nmax < 0) {
        throw DomainError("an_multiplicative: negative bound");
    }
    const auto size = static_cast<std::size_t>(nmax + 1);
    std::vector<long> spf(size, 0);
    for (long i = 2; i <= nmax; ++i) {
        if (spf[static_cast<std::size_t>(i)] == 0) {
            for (long j = i; j <= nmax; j += i) {
                if (spf[static_cast<std::size_t>(j)] == 0) {
                    spf[static_cast<std::size_t>(j)] = i;
                }
            }
        }
    }
    std::vector<Integer> a(size, 0);
    if (nmax >= 1) {
        a[1] = 1;
    }
    for (long n = 2; n <= nmax; ++n) {
        const long l = spf[static_cast<std::size_t>(n)];
        long m = n;
        int r = 0;
        while (m % l == 0) {
            m /= l;
            ++r;
        }
        const long lr = n / m;
        if (m > 1) {
            a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(lr)] * a[static_cast<std::size_t>(m)];
            continue;
        }
        auto it = ap.find(l);
        if (it == ap.end()) {
            throw DomainError("an_multiplicative: missing a_" + std::to_string(l));
        }
        if (r == 1) {
            a[static_cast<std::size_t>(n)] = it->second;
        } else if (bad_primes.count(l) != 0) {
            a[static_cast<std::size_t>(n)] = it->second * a[static_cast<std::size_t>(n / l)];
        } else {
            a[static_cast<std::size_t>(n)] = it->second * a[static_cast<std::size_t>(n / l)]
                                             - l * a[static_cast<std::size_t>(n / l / l)];
        }
    }
    return a;
}

std::vector<Integer> newform_coefficients(const CurveFixture &fixture, long nmax)
{
    std::map<long, Integer> ap;
    std::set<long> bad;
    for (const auto &[l, value] : fixture.bad_primes) {
        bad.insert(l);
        ap[l] = value;
    }
    for (long l = 2; l <= nmax; ++l) {
        if (is_prime(l) && bad.count(l) == 0) {
            ap[l] = ap_point_count(fixture.curve, l);
        }
    }
    return an_multiplicative(ap, bad, nmax);
}

} // namespace arithdiff
