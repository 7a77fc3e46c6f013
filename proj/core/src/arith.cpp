#include <arithdiff/arith.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace arithdiff
{

// ---------------------------------------------------------------------------
// LocalizedRational

LocalizedRational::LocalizedRational(Rational value, std::vector<long> primes)
    : value_(std::move(value)), primes_(std::move(primes))
{
    value_.canonicalize();
    std::set<long> seen;
    for (long p : primes_) {
        if (!is_prime(p)) {
            throw DomainError("LocalizedRational: " + std::to_string(p) + " is not prime");
        }
        if (!seen.insert(p).second) {
            throw DomainError("LocalizedRational: repeated prime " + std::to_string(p));
        }
        if (!is_p_integral(value_, p)) {
            throw IntegralityViolation("LocalizedRational: " + arithdiff::to_string(value_)
                                       + " has denominator divisible by " + std::to_string(p));
        }
    }
}

bool LocalizedRational::contains_prime(long p) const
{
    return std::find(primes_.begin(), primes_.end(), p) != primes_.end();
}

LocalizedRational LocalizedRational::operator-() const
{
    return LocalizedRational(-value_, primes_);
}

namespace
{

void require_same_primes(const LocalizedRational &a, const LocalizedRational &b)
{
    if (a.primes() != b.primes()) {
        throw DomainError("LocalizedRational: operands have different prime sets");
    }
}

} // namespace

LocalizedRational operator+(const LocalizedRational &a, const LocalizedRational &b)
{
    require_same_primes(a, b);
    return LocalizedRational(a.value_ + b.value_, a.primes_);
}

LocalizedRational operator-(const LocalizedRational &a, const LocalizedRational &b)
{
    require_same_primes(a, b);
    return LocalizedRational(a.value_ - b.value_, a.primes_);
}

LocalizedRational operator*(const LocalizedRational &a, const LocalizedRational &b)
{
    require_same_primes(a, b);
    return LocalizedRational(a.value_ * b.value_, a.primes_);
}

// ---------------------------------------------------------------------------
// Weight

Weight::Weight(std::map<std::vector<int>, long> coefficients)
{
    std::size_t dim = 0;
    for (auto &[index, a] : coefficients) {
        if (dim == 0) {
            dim = index.size();
        } else if (index.size() != dim) {
            throw DomainError("Weight: multi-indices of different lengths");
        }
        if (std::any_of(index.begin(), index.end(), [](int i) { return i < 0; })) {
            throw DomainError("Weight: negative Frobenius exponent");
        }
        if (a != 0) {
            coefficients_.emplace(index, a);
        }
    }
}

Weight Weight::single(const std::vector<long> &a)
{
    std::map<std::vector<int>, long> c;
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[{static_cast<int>(i)}] = a[i];
    }
    return Weight(std::move(c));
}

long Weight::coefficient(const std::vector<int> &index) const
{
    auto it = coefficients_.find(index);
    return it == coefficients_.end() ? 0 : it->second;
}

long Weight::degree() const
{
    long d = 0;
    for (const auto &[index, a] : coefficients_) {
        d += a;
    }
    return d;
}

std::vector<int> Weight::order() const
{
    std::vector<int> ord;
    for (const auto &[index, a] : coefficients_) {
        if (ord.empty()) {
            ord = index;
        } else {
            for (std::size_t k = 0; k < ord.size(); ++k) {
                ord[k] = std::max(ord[k], index[k]);
            }
        }
    }
    return ord;
}

Weight operator+(const Weight &a, const Weight &b)
{
    auto c = a.coefficients_;
    for (const auto &[index, x] : b.coefficients_) {
        c[index] += x;
    }
    return Weight(std::move(c));
}

Weight operator-(const Weight &a, const Weight &b)
{
    auto c = a.coefficients_;
    for (const auto &[index, x] : b.coefficients_) {
        c[index] -= x;
    }
    return Weight(std::move(c));
}

// ---------------------------------------------------------------------------
// Fermat quotients

Rational fermat_delta(const Rational &a, long p)
{
    if (!is_prime(p)) {
        throw DomainError("fermat_delta: " + std::to_string(p) + " is not prime");
    }
    if (!is_p_integral(a, p)) {
        throw DomainError("fermat_delta: argument is not " + std::to_string(p) + "-integral");
    }
    Rational r = (a - pow(a, static_cast<unsigned long>(p))) / p;
    r.canonicalize();
    return r;
}

LocalizedRational fermat_delta(const LocalizedRational &a, long p)
{
    if (!a.contains_prime(p)) {
        throw DomainError("fermat_delta: prime " + std::to_string(p) + " is not in the active set");
    }
    return LocalizedRational(fermat_delta(a.value(), p), a.primes());
}

PadicTrunc fermat_delta(const PadicTrunc &a, long p)
{
    if (a.prime() != p) {
        throw DomainError("fermat_delta: p-adic carrier prime differs from " + std::to_string(p));
    }
    return (a - a.pow(static_cast<unsigned long>(p))).divide_by_p();
}

Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

PadicTrunc padic_binomial(const PadicTrunc &gamma, long k)
{
    if (k < 0) {
        throw DomainError("padic_binomial: k must be nonnegative");
    }
    const long p = gamma.prime();
    const int m = gamma.modulus_exponent();
    PadicTrunc numerator(p, m, Integer(1), gamma.digits());
    Integer unit_part = 1;
    int v = 0;
    for (long j = 0; j < k; ++j) {
        numerator *= gamma - PadicTrunc(p, m, Integer(j));
        long f = j + 1;
        while (f % p == 0) {
            f /= p;
            ++v;
        }
        unit_part *= f;
    }
    if (v > numerator.digits()) {
        throw PrecisionExhausted("padic_binomial: binom(gamma," + std::to_string(k) + ") needs "
                                 + std::to_string(v) + " digits of p-adic division");
    }
    for (int i = 0; i < v; ++i) {
        numerator = numerator.divide_by_p();
    }
    return numerator * PadicTrunc(p, m, unit_part).inverse();
}

// ---------------------------------------------------------------------------
// Rational reconstruction

std::vector<ResidueDatum> reduce_residues(const Rational &x, const std::vector<std::pair<long, int>> &slots)
{
    std::vector<ResidueDatum> out;
    out.reserve(slots.size());
    for (const auto &[p, e] : slots) {
        out.push_back({p, e, PadicTrunc::from_rational(p, e, x).residue()});
    }
    return out;
}

std::optional<Reconstruction> try_rational_reconstruct(const std::vector<ResidueDatum> &residues,
                                                       std::optional<Integer> height_bound)
{
    if (residues.empty()) {
        throw DomainError("rational_reconstruct: no residues supplied");
    }
    // Chinese remaindering over pairwise coprime prime powers.
    Integer r = 0;
    Integer m = 1;
    std::set<long> primes;
    for (const auto &d : residues) {
        if (!is_prime(d.prime) || d.exponent < 1) {
            throw DomainError("rational_reconstruct: bad residue slot");
        }
        if (!primes.insert(d.prime).second) {
            throw DomainError("rational_reconstruct: repeated prime " + std::to_string(d.prime));
        }
        const Integer mi = ipow(d.prime, static_cast<unsigned long>(d.exponent));
        Integer ri;
        mpz_fdiv_r(ri.get_mpz_t(), d.residue.get_mpz_t(), mi.get_mpz_t());
        // r + m*s = ri mod mi
        Integer minv;
        mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t());
        Integer s = ((ri - r) * minv);
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mi.get_mpz_t());
        r += m * s;
        m *= mi;
    }

    Integer limit;
    Integer half = m / 2;
    mpz_sqrt(limit.get_mpz_t(), half.get_mpz_t());
    Integer bound = height_bound.value_or(limit);
    if (bound > limit || sgn(bound) <= 0) {
        return std::nullopt;
    }

    // Half-extended Euclid on (m, r), stopping once the remainder drops to
    // the height bound.
    Integer r0 = m;
    Integer r1 = r;
    Integer s0 = 0;
    Integer s1 = 1;
    while (r1 > bound) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        Integer r2 = r0 - q * r1;
        Integer s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Integer num = r1;
    Integer den = s1;
    if (sgn(den) < 0) {
        num = -num;
        den = -den;
    }
    if (sgn(den) == 0 || den > bound || abs(num) > bound) {
        return std::nullopt;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) {
        return std::nullopt;
    }
    for (long p : primes) {
        if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)) != 0) {
            return std::nullopt;
        }
    }
    Rational value(num, den);
    value.canonicalize();
    return Reconstruction{value, m, bound};
}

LocalizedRational rational_reconstruct(const std::vector<ResidueDatum> &residues, std::optional<Integer> height_bound)
{
    auto rec = try_rational_reconstruct(residues, height_bound);
    if (!rec) {
        throw ReconstructionFailure("no rational within the height bound matches the residues");
    }
    std::vector<long> primes;
    for (const auto &d : residues) {
        primes.push_back(d.prime);
    }
    return LocalizedRational(rec->value, primes);
}

} // namespace arithdiff
