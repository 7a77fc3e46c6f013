#include <arithdiff/qseries.hpp>

namespace arithdiff
{

std::string to_string(SeriesVar v)
{
    return v == SeriesVar::q ? "q" : "t";
}

SeriesVar parse_series_var(const std::string &s)
{
    if (s == "q") {
        return SeriesVar::q;
    }
    if (s == "t") {
        return SeriesVar::t;
    }
    throw UsageError("series variable must be \"q\" or \"t\", got \"" + s + "\"");
}

RationalSeries log1p(const RationalSeries &x)
{
    if (!x.is_zero() && x.valuation() < 1) {
        throw DomainError("log1p: argument must have positive valuation");
    }
    if (x.order() >= kUnbounded && !x.is_zero()) {
        throw DomainError("log1p: argument needs a truncation order");
    }
    RationalSeries sum(x.var(), x.ring(), x.order());
    RationalSeries power = x;
    for (long n = 1; !power.is_zero(); ++n) {
        const Rational c(n % 2 == 1 ? 1 : -1, n);
        sum = sum + power.scaled(c);
        power = (power * x).truncated(x.order());
    }
    return sum.truncated(x.order());
}

RationalSeries pow_weight(const RationalSeries &u, long gamma)
{
    return u.pow(gamma);
}

PadicSeries pow_weight(const PadicSeries &u, long gamma)
{
    return u.pow(gamma);
}

PadicSeries pow_weight(const PadicSeries &u, const PadicTrunc &gamma)
{
    const auto &ring = u.ring();
    if (gamma.prime() != ring.p || gamma.modulus_exponent() != ring.modulus_exponent) {
        throw DomainError("pow_weight: exponent lives in a different p-adic ring");
    }
    const PadicSeries one = PadicSeries::constant(u.var(), ring, ring.from_int(1), kUnbounded);
    const PadicSeries x = u - one;
    if (!x.is_zero() && x.valuation() < 1) {
        throw DomainError("pow_weight: p-adic exponent needs u = 1 + (positive valuation)");
    }
    if (x.order() >= kUnbounded && !x.is_zero()) {
        throw DomainError("pow_weight: p-adic exponent needs a truncation order");
    }
    PadicSeries sum = one.truncated(u.order());
    PadicSeries power = x;
    for (long k = 1; !power.is_zero(); ++k) {
        sum = sum + power.scaled(padic_binomial(gamma, k));
        power = (power * x).truncated(x.order());
    }
    return sum;
}

PadicSeries reduce_mod(const RationalSeries &a, long p, int modulus_exponent)
{
    const CoeffRing<PadicTrunc> ring{p, modulus_exponent};
    return a.map_coefficients(ring, [&](const Rational &c) { return ring.from_rational(c); });
}

PadicSeries delta0(const PadicSeries &a, long p)
{
    if (a.ring().p != p) {
        throw DomainError("delta0: coefficient prime differs from p");
    }
    const PadicSeries diff = a.frobenius_sub(p) - a.pow(p);
    return diff.map_coefficients(diff.ring(), [](const PadicTrunc &c) { return c.divide_by_p(); });
}

PadicSeries delta0(const RationalSeries &a, long p, int modulus_exponent)
{
    return delta0(reduce_mod(a, p, modulus_exponent), p);
}

} // namespace arithdiff
