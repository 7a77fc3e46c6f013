#include <arithdiff/json_io.hpp>

#include <fstream>

namespace arithdiff
{

namespace
{

Json bound_json(long n)
{
    return n >= kUnbounded ? Json(nullptr) : Json(n);
}

long bound_from(const Json &j)
{
    if (!j.contains("N") || j.at("N").is_null()) {
        return kUnbounded;
    }
    return j.at("N").get<long>();
}

Json padic_block(long p, int m)
{
    return Json{{"p", p}, {"M", m}};
}

Json coeff_json(const Rational &c)
{
    return to_string(c);
}

Json coeff_json(const PadicTrunc &c)
{
    return c.residue().get_str();
}

CoeffRing<PadicTrunc> padic_ring_from(const Json &j)
{
    if (!j.contains("padic")) {
        throw UsageError("expected p-adic coefficients (missing \"padic\" block)");
    }
    const auto &b = j.at("padic");
    return {b.at("p").get<long>(), b.at("M").get<int>()};
}

PadicTrunc padic_coeff_from(const CoeffRing<PadicTrunc> &ring, const Json &residue, const Json &digits)
{
    return PadicTrunc(ring.p, ring.modulus_exponent, Integer(residue.get<std::string>()), digits.get<int>());
}

template <typename Fn>
auto guarded(Fn &&fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const Json::exception &e) {
        throw UsageError(std::string("malformed JSON input: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("malformed number in JSON input: ") + e.what());
    }
}

template <typename C>
Json series_terms(const Series1<C> &s)
{
    Json terms = Json::array();
    for (const auto &[n, c] : s.terms()) {
        Json t = Json::array({n, coeff_json(c)});
        if constexpr (std::is_same_v<C, PadicTrunc>) {
            t.push_back(c.digits());
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

template <typename C>
Json jet_json(const JetSeries<C> &f)
{
    Json terms = Json::array();
    for (const auto &[m, c] : f.poly().terms()) {
        long exponent = 0;
        Json jets = Json::array();
        for (int i = 0; i < f.order(); ++i) {
            jets.push_back(0);
        }
        for (const auto &[key, e] : m.factors()) {
            if (key_generator(key) != kBaseGenerator) {
                throw DomainError("series with auxiliary generators cannot be serialized");
            }
            const int i = key_jet_index(key);
            if (i == 0) {
                exponent = e;
            } else {
                jets[static_cast<std::size_t>(i - 1)] = e;
            }
        }
        Json t = Json::array({exponent, coeff_json(c), jets});
        if constexpr (std::is_same_v<C, PadicTrunc>) {
            t.push_back(c.digits());
        }
        terms.push_back(std::move(t));
    }
    Json out{{"var", to_string(f.base())}, {"p", f.prime()}, {"r", f.order()}, {"N", bound_json(f.bound())},
             {"terms", std::move(terms)}};
    if constexpr (std::is_same_v<C, PadicTrunc>) {
        out["padic"] = padic_block(f.ring().p, f.ring().modulus_exponent);
    }
    return out;
}

template <typename C>
Json multi_json(const MultiJetSeries<C> &f)
{
    const auto &frame = *f.frame();
    Json terms = Json::array();
    for (const auto &[m, c] : f.poly().terms()) {
        Json mono = Json::array();
        for (const auto &[key, e] : m.factors()) {
            mono.push_back(Json::array({frame.index(key), e}));
        }
        Json t = Json::array({std::move(mono), coeff_json(c)});
        if constexpr (std::is_same_v<C, PadicTrunc>) {
            t.push_back(c.digits());
        }
        terms.push_back(std::move(t));
    }
    Json out{{"P", frame.primes()},     {"r", f.order()},          {"N", bound_json(f.bound())},
             {"base", to_string(frame.base())}, {"ring", f.ring_kind()}, {"terms", std::move(terms)}};
    if (f.bound() != frame.bound()) {
        out["frame_N"] = frame.bound();
    }
    if constexpr (std::is_same_v<C, PadicTrunc>) {
        out["padic"] = padic_block(f.ring().p, f.ring().modulus_exponent);
    }
    return out;
}

template <typename C>
JetSeries<C> jet_from(const Json &j, const CoeffRing<C> &ring)
{
    const long p = j.at("p").get<long>();
    const SeriesVar base = parse_series_var(j.at("var").get<std::string>());
    const int r = j.at("r").get<int>();
    TruncatedPoly<C> poly(ring, bound_from(j));
    for (const auto &t : j.at("terms")) {
        Monomial m = jet_monomial(p, kBaseGenerator, 0, t.at(0).get<int>());
        const auto &jets = t.at(2);
        for (std::size_t i = 0; i < jets.size(); ++i) {
            m = m * jet_monomial(p, kBaseGenerator, static_cast<int>(i + 1), jets[i].get<int>());
        }
        if constexpr (std::is_same_v<C, PadicTrunc>) {
            poly.add_term(m, padic_coeff_from(ring, t.at(1), t.at(3)));
        } else {
            poly.add_term(m, parse_rational(t.at(1).get<std::string>()));
        }
    }
    return JetSeries<C>(p, base, r, std::move(poly));
}

template <typename C>
MultiJetSeries<C> multi_from(const Json &j, const CoeffRing<C> &ring)
{
    const auto primes = j.at("P").get<std::vector<long>>();
    const long n = bound_from(j);
    const long frame_n = j.contains("frame_N") ? j.at("frame_N").get<long>() : n;
    const SeriesVar base = j.contains("base") ? parse_series_var(j.at("base").get<std::string>()) : SeriesVar::t;
    const auto frame = MultiPrimeFrame::make(primes, frame_n, base);
    TruncatedPoly<C> poly(ring, n);
    for (const auto &t : j.at("terms")) {
        Monomial m;
        for (const auto &factor : t.at(0)) {
            m = m * frame->variable(factor.at(0).get<MultiIndex>(), factor.at(1).get<int>());
        }
        if constexpr (std::is_same_v<C, PadicTrunc>) {
            poly.add_term(m, padic_coeff_from(ring, t.at(1), t.at(2)));
        } else {
            poly.add_term(m, parse_rational(t.at(1).get<std::string>()));
        }
    }
    return MultiJetSeries<C>(frame, j.at("r").get<MultiIndex>(), j.value("ring", kCommonRing), std::move(poly));
}

} // namespace

Json to_json(const RationalSeries &s)
{
    return Json{{"var", to_string(s.var())}, {"N", bound_json(s.order())}, {"terms", series_terms(s)}};
}

Json to_json(const PadicSeries &s)
{
    return Json{{"var", to_string(s.var())},
                {"N", bound_json(s.order())},
                {"padic", padic_block(s.ring().p, s.ring().modulus_exponent)},
                {"terms", series_terms(s)}};
}

Json to_json(const QExpansion &f)
{
    Json out = to_json(f.series);
    out["weight"] = f.weight;
    out["level"] = f.level;
    return out;
}

Json to_json(const RationalJet &f)
{
    return jet_json(f);
}

Json to_json(const PadicJet &f)
{
    return jet_json(f);
}

Json to_json(const RationalMulti &f)
{
    return multi_json(f);
}

Json to_json(const PadicMulti &f)
{
    return multi_json(f);
}

Json to_json(const CovarianceReport &r)
{
    Json gamma = r.gamma;
    if (!r.gamma.empty() && r.gamma.find(' ') == std::string::npos) {
        gamma = std::stol(r.gamma);
    }
    Json out{{"gamma", gamma},
             {"nu", r.nu},
             {"pass", r.pass},
             {"indeterminate", r.indeterminate},
             {"compared", r.compared},
             {"witness", r.witness ? Json(*r.witness) : Json(nullptr)}};
    if (r.witness) {
        out["lhs_coefficient"] = r.lhs_coefficient;
        out["rhs_coefficient"] = r.rhs_coefficient;
    }
    return out;
}

Json to_json(const LemmaReport &r)
{
    return Json{{"name", r.name},
                {"p", r.p},
                {"n", r.n},
                {"pass", r.pass},
                {"residual_terms", r.residual_terms},
                {"witness", r.witness ? Json(*r.witness) : Json(nullptr)},
                {"detail", r.detail}};
}

Json to_json(const BasisReport &r)
{
    return Json{{"P", r.primes},          {"r", r.r},         {"N", r.bound}, {"vectors", r.vectors},
                {"rank", r.rank},         {"expected", r.expected}, {"pass", r.pass()}};
}

Json to_json(const ContinuationResult &r)
{
    Json out{{"ok", r.ok()}};
    out["value"] = r.value ? to_json(*r.value) : Json(nullptr);
    if (r.failure) {
        out["failure"] = Json{{"monomial", r.failure->monomial_text},
                              {"residues", r.failure->residues},
                              {"reason", r.failure->reason}};
    } else {
        out["failure"] = nullptr;
    }
    return out;
}

RationalSeries series_from_json(const Json &j)
{
    return guarded([&] {
        const SeriesVar var = parse_series_var(j.at("var").get<std::string>());
        const long order = bound_from(j);
        RationalSeries s(var, {}, order);
        for (const auto &t : j.at("terms")) {
            s = s + RationalSeries::monomial(var, {}, t.at(0).get<long>(), parse_rational(t.at(1).get<std::string>()),
                                             order);
        }
        return s;
    });
}

RationalJet rational_jet_from_json(const Json &j)
{
    return guarded([&] { return jet_from<Rational>(j, CoeffRing<Rational>{}); });
}

PadicJet padic_jet_from_json(const Json &j)
{
    return guarded([&] { return jet_from<PadicTrunc>(j, padic_ring_from(j)); });
}

RationalMulti rational_multi_from_json(const Json &j)
{
    return guarded([&] { return multi_from<Rational>(j, CoeffRing<Rational>{}); });
}

PadicMulti padic_multi_from_json(const Json &j)
{
    return guarded([&] { return multi_from<PadicTrunc>(j, padic_ring_from(j)); });
}

bool is_multi_json(const Json &j)
{
    return j.is_object() && j.contains("P");
}

bool is_padic_json(const Json &j)
{
    return j.is_object() && j.contains("padic");
}

CurveFixture curve_fixture_from_json(const Json &j)
{
    return guarded([&] {
        CurveFixture fx;
        const auto &c = j.at("curve");
        auto coeff = [&](const char *name) {
            const auto &v = c.at(name);
            return v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<long>());
        };
        fx.curve.a1 = coeff("a1");
        fx.curve.a2 = coeff("a2");
        fx.curve.a3 = coeff("a3");
        fx.curve.a4 = coeff("a4");
        fx.curve.a6 = coeff("a6");
        fx.curve.label = j.value("label", std::string());
        if (j.contains("bad_primes")) {
            for (const auto &[key, value] : j.at("bad_primes").items()) {
                fx.bad_primes[std::stol(key)] = Integer(value.get<long>());
            }
        }
        if (fx.curve.discriminant() == 0) {
            throw UsageError("curve fixture describes a singular curve");
        }
        return fx;
    });
}

Json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw UsageError(path + ": " + e.what());
    }
}

} // namespace arithdiff
