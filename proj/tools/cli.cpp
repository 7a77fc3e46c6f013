#include "cli.hpp"

#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include <arithdiff/arith.hpp>
#include <arithdiff/errors.hpp>
#include <arithdiff/json_io.hpp>

namespace arithdiff::cli
{

namespace
{

struct Payload {
    Json body;
    bool pass = true;
};

struct Common {
    std::string out_path;
    std::string golden_path;
};

struct Params {
    long p = 5;
    long n_bound = 30;
    int m = 8;
    int k = 1;
    int n = 1;
    int weight = 4;
    long window = 30;
    long nu = 1;
    long p1 = 2;
    long p2 = 3;
    long a = 1;
    long samples = 100;
    unsigned long seed = 1;
    std::optional<long> varphi;
    std::string gamma;
    std::string side = "fourier";
    std::string name;
    std::string curve;
    std::string value;
    std::string height;
    std::vector<std::string> inputs;
    std::vector<long> primes{5, 7};
    std::vector<int> r;
    bool exact = false;
};

void require_prime(long p, const char *what)
{
    if (!is_prime(p)) {
        throw UsageError(std::string(what) + " must be prime, got " + std::to_string(p));
    }
}

void require_primes(const std::vector<long> &primes)
{
    if (primes.empty()) {
        throw UsageError("--primes needs at least one prime");
    }
    for (long p : primes) {
        require_prime(p, "--primes entry");
    }
}

void require_k(int k, std::size_t d)
{
    if (k < 1 || static_cast<std::size_t>(k) > d) {
        throw UsageError("--k must lie in 1.." + std::to_string(d));
    }
}

Json single_input(const Params &prm)
{
    if (prm.inputs.size() != 1) {
        throw UsageError("expected exactly one --input file");
    }
    return read_json_file(prm.inputs.front());
}

CurveFixture load_curve(const Params &prm)
{
    if (prm.curve.empty()) {
        throw UsageError("--curve FILE is required");
    }
    return curve_fixture_from_json(read_json_file(prm.curve));
}

std::vector<Integer> ap_vector(const std::vector<Integer> &an, const std::vector<long> &primes)
{
    std::vector<Integer> ap;
    for (long p : primes) {
        ap.push_back(an[static_cast<std::size_t>(p)]);
    }
    return ap;
}

QExpansion qexpansion_input(const Params &prm)
{
    if (prm.inputs.empty()) {
        return eisenstein(prm.weight, prm.n_bound);
    }
    const Json j = single_input(prm);
    return {j.value("weight", 0), j.value("level", 1), series_from_json(j)};
}

long default_gamma(const std::vector<long> &primes)
{
    for (long g = 2;; ++g) {
        bool ok = true;
        for (long p : primes) {
            ok = ok && g % p != 0 && g % p != 1;
        }
        if (ok) {
            return g;
        }
    }
}

long integer_gamma(const Params &prm, const std::vector<long> &primes)
{
    if (prm.gamma.empty()) {
        return default_gamma(primes);
    }
    const Rational g = parse_rational(prm.gamma);
    if (g.get_den() != 1 || !g.get_num().fits_slong_p()) {
        throw UsageError("--gamma must be an integer for this input");
    }
    return g.get_num().get_si();
}

Payload report_payload(const CovarianceReport &r)
{
    return {to_json(r), r.pass && !r.indeterminate};
}

Payload cmd_psi(const Params &prm)
{
    require_prime(prm.p, "--p");
    if (prm.side == "serretate") {
        return {to_json(psi_serretate(prm.p, prm.n_bound))};
    }
    if (prm.side != "fourier") {
        throw UsageError("--side must be fourier or serretate");
    }
    if (prm.exact) {
        return {to_json(psi_fourier_exact(prm.p, prm.n_bound))};
    }
    return {to_json(psi_fourier(prm.p, prm.m, prm.n_bound))};
}

Payload cmd_fe0(const Params &prm)
{
    require_primes(prm.primes);
    return {to_json(build_fe0(prm.primes, prm.n_bound))};
}

Payload cmd_fe_k(const Params &prm)
{
    require_primes(prm.primes);
    require_k(prm.k, prm.primes.size());
    return {to_json(build_fe_k(prm.primes, prm.k, prm.n_bound))};
}

Payload cmd_f2e(const Params &prm, bool per_prime)
{
    require_primes(prm.primes);
    const auto fx = load_curve(prm);
    long nmax = prm.n_bound;
    for (long p : prm.primes) {
        nmax = std::max(nmax, p);
    }
    const auto an = newform_coefficients(fx, nmax);
    const auto frame = MultiPrimeFrame::make(prm.primes, prm.n_bound, SeriesVar::q);
    const auto ap = ap_vector(an, prm.primes);
    if (per_prime) {
        require_k(prm.k, prm.primes.size());
        return {to_json(build_f2e_k(an, frame, ap, prm.k))};
    }
    return {to_json(build_f2e0(an, frame, ap))};
}

Payload cmd_fsharp(const Params &prm)
{
    require_prime(prm.p, "--p");
    const auto fx = load_curve(prm);
    const auto an = newform_coefficients(fx, std::max(prm.window, prm.p));
    const Integer ap = an[static_cast<std::size_t>(prm.p)];
    if (prm.exact) {
        return {to_json(fsharp_exact(an, ap, prm.p, prm.window))};
    }
    return {to_json(fsharp_expansion(an, ap, prm.p, prm.m, prm.window))};
}

Payload cmd_eisenstein(const Params &prm)
{
    return {to_json(eisenstein(prm.weight, prm.n_bound))};
}

Payload cmd_delta_expand(const Params &prm)
{
    require_prime(prm.p, "--p");
    if (prm.n < 0) {
        throw UsageError("--n must be non-negative");
    }
    return {to_json(delta_fourier_expand(qexpansion_input(prm), prm.n, prm.p, prm.m))};
}

Payload cmd_delta0(const Params &prm)
{
    require_prime(prm.p, "--p");
    return {to_json(delta0(qexpansion_input(prm).series, prm.p, prm.m))};
}

Payload cmd_check_covariance(const Params &prm)
{
    const Json j = single_input(prm);
    if (is_multi_json(j)) {
        if (is_padic_json(j)) {
            throw UsageError("check-covariance expects exact multi-prime input");
        }
        const auto f = rational_multi_from_json(j);
        return report_payload(covariance_check(f, integer_gamma(prm, f.frame()->primes()), prm.nu));
    }
    if (is_padic_json(j)) {
        const auto f = padic_jet_from_json(j);
        const Rational g = prm.gamma.empty() ? Rational(default_gamma({f.prime()})) : parse_rational(prm.gamma);
        const auto gamma = PadicTrunc::from_rational(f.prime(), f.ring().modulus_exponent, g);
        return report_payload(covariance_check(f, gamma, prm.nu));
    }
    const auto f = rational_jet_from_json(j);
    return report_payload(covariance_check(f, integer_gamma(prm, {f.prime()}), prm.nu));
}

Payload cmd_check_continuation(const Params &prm)
{
    std::vector<FamilyMember> family;
    if (prm.inputs.empty()) {
        require_primes(prm.primes);
        const auto frame = MultiPrimeFrame::make(prm.primes, prm.n_bound);
        for (int k = 1; k <= static_cast<int>(prm.primes.size()); ++k) {
            const auto fk = build_fe_k(frame, k);
            if (prm.exact) {
                family.emplace_back(fk);
            } else {
                family.emplace_back(reduce_mod(fk, k, prm.m));
            }
        }
    }
    for (const auto &path : prm.inputs) {
        const Json j = read_json_file(path);
        if (!is_multi_json(j)) {
            throw UsageError(path + ": continuation members must be multi-prime series");
        }
        if (is_padic_json(j)) {
            family.emplace_back(padic_multi_from_json(j));
        } else {
            family.emplace_back(rational_multi_from_json(j));
        }
    }
    std::optional<Integer> height;
    if (!prm.height.empty()) {
        try {
            height = Integer(prm.height);
        } catch (const std::invalid_argument &) {
            throw UsageError("--height must be an integer");
        }
    }
    const auto result = continuation_check(family, height);
    return {to_json(result), result.ok()};
}

Json commutator_case(const Rational &a, long p1, long p2)
{
    const Rational d1 = fermat_delta(a, p1);
    const Rational d2 = fermat_delta(a, p2);
    const Rational lhs = fermat_delta(d2, p1) - fermat_delta(d1, p2);
    const Rational rhs = cross_prime_commutator(a, d1, d2, p1, p2);
    return Json{{"value", to_string(a)}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}, {"pass", lhs == rhs}};
}

Payload cmd_check_commutator(const Params &prm)
{
    require_prime(prm.p1, "--p1");
    require_prime(prm.p2, "--p2");
    if (prm.p1 == prm.p2) {
        throw UsageError("--p1 and --p2 must differ");
    }
    if (!prm.value.empty()) {
        const Rational a = parse_rational(prm.value);
        if (!is_integral_at(a, {prm.p1, prm.p2})) {
            throw UsageError("--value must be integral at p1 and p2");
        }
        Json c = commutator_case(a, prm.p1, prm.p2);
        c["p1"] = prm.p1;
        c["p2"] = prm.p2;
        const bool pass = c["pass"].get<bool>();
        return {std::move(c), pass};
    }
    if (prm.samples < 1) {
        throw UsageError("--samples must be positive");
    }
    std::mt19937_64 rng(prm.seed);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    Json failures = Json::array();
    for (long s = 0; s < prm.samples; ++s) {
        Json c = commutator_case(Rational(dist(rng)), prm.p1, prm.p2);
        if (!c["pass"].get<bool>()) {
            failures.push_back(std::move(c));
        }
    }
    const bool pass = failures.empty();
    return {Json{{"p1", prm.p1},
                 {"p2", prm.p2},
                 {"samples", prm.samples},
                 {"seed", prm.seed},
                 {"pass", pass},
                 {"failures", std::move(failures)}},
            pass};
}

Payload cmd_check_lemma(const Params &prm)
{
    require_prime(prm.p, "--p");
    if (prm.n < 1) {
        throw UsageError("--n must be at least 1");
    }
    LemmaReport r;
    if (prm.name == "xlaphi") {
        r = lemma_xlaphi_check(prm.p, prm.n, prm.varphi);
    } else if (prm.name == "logder") {
        r = lemma_logder_check(prm.p, prm.n, prm.a);
    } else {
        throw UsageError("--name must be xlaphi or logder");
    }
    return {to_json(r), r.pass};
}

Payload cmd_check_basis(const Params &prm)
{
    require_primes(prm.primes);
    MultiIndex r = prm.r;
    if (r.empty()) {
        r.assign(prm.primes.size(), 2);
    }
    if (r.size() != prm.primes.size()) {
        throw UsageError("--r needs one entry per prime");
    }
    const auto report = basis_independence_check(prm.primes, r, prm.n_bound);
    return {to_json(report), report.pass()};
}

Payload cmd_ap(const Params &prm)
{
    require_prime(prm.p, "--p");
    const auto fx = load_curve(prm);
    Json out{{"p", prm.p}};
    if (auto it = fx.bad_primes.find(prm.p); it != fx.bad_primes.end()) {
        out["a_p"] = it->second.get_str();
        out["source"] = "fixture";
        return {std::move(out)};
    }
    const Integer ap = ap_point_count(fx.curve, prm.p);
    out["a_p"] = ap.get_str();
    out["points"] = count_points(fx.curve, prm.p);
    out["source"] = "point_count";
    return {std::move(out)};
}

Json error_json(std::string_view code, const std::string &message)
{
    return Json{{"error", Json{{"code", std::string(code)}, {"message", message}}}};
}

int exit_for(ErrorCode code)
{
    return code == ErrorCode::usage || code == ErrorCode::domain ? kExitUsage : kExitFail;
}

int emit(const Payload &payload, const Common &common, std::ostream &out, std::ostream &err)
{
    const std::string text = payload.body.dump(2) + "\n";
    if (common.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(common.out_path);
        if (!file || !(file << text)) {
            throw UsageError("cannot write " + common.out_path);
        }
    }
    if (!common.golden_path.empty()) {
        const Json golden = read_json_file(common.golden_path);
        if (golden != payload.body) {
            err << "output differs from golden file " << common.golden_path << "\n";
            return kExitFail;
        }
    }
    return payload.pass ? kExitOk : kExitFail;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Arithmetic differential operators: builders and checkers with JSON I/O", "arithdiff"};
    app.require_subcommand(1);
    Params prm;
    Common common;
    std::function<Payload()> job;

    auto add = [&](const std::string &name, const std::string &help, std::function<Payload()> fn) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--out", common.out_path, "Write the JSON payload to FILE instead of stdout");
        sub->add_option("--golden", common.golden_path, "Compare the payload with FILE; exit 1 on mismatch");
        sub->callback([&job, fn]() { job = fn; });
        return sub;
    };

    auto *psi = add("psi", "Psi on the Fourier or Serre-Tate side", [&] { return cmd_psi(prm); });
    psi->add_option("--p", prm.p, "Prime")->required();
    psi->add_option("--side", prm.side, "fourier or serretate")->capture_default_str();
    psi->add_option("--N", prm.n_bound, "Fourier window (n <= N) or Serre-Tate weight bound")->capture_default_str();
    psi->add_option("--M", prm.m, "p-adic digits")->capture_default_str();
    psi->add_flag("--exact", prm.exact, "Exact rational Fourier coefficients");

    auto *fe0 = add("fe0", "f^e_0 on the common ring Z_(P)", [&] { return cmd_fe0(prm); });
    fe0->add_option("--primes", prm.primes, "Primes of P")->delimiter(',')->capture_default_str();
    fe0->add_option("--N", prm.n_bound, "Weight bound")->capture_default_str();

    auto *fek = add("fe-k", "f^e_k in the per-prime ring k", [&] { return cmd_fe_k(prm); });
    fek->add_option("--primes", prm.primes, "Primes of P")->delimiter(',')->capture_default_str();
    fek->add_option("--k", prm.k, "1-based prime index")->required();
    fek->add_option("--N", prm.n_bound, "Weight bound")->capture_default_str();

    for (bool per_prime : {false, true}) {
        auto *sub = add(per_prime ? "f2e-k" : "f2e0", per_prime ? "f^{2e}_k for a curve fixture" : "f^{2e}_0 for a curve fixture",
                        [&, per_prime] { return cmd_f2e(prm, per_prime); });
        sub->add_option("--curve", prm.curve, "Curve fixture JSON")->required();
        sub->add_option("--primes", prm.primes, "Primes of P")->delimiter(',')->capture_default_str();
        sub->add_option("--N", prm.n_bound, "Weight bound")->capture_default_str();
        if (per_prime) {
            sub->add_option("--k", prm.k, "1-based prime index")->required();
        }
    }

    auto *fsharp = add("fsharp", "f^sharp expansion for a curve fixture", [&] { return cmd_fsharp(prm); });
    fsharp->add_option("--curve", prm.curve, "Curve fixture JSON")->required();
    fsharp->add_option("--p", prm.p, "Prime >= 5")->required();
    fsharp->add_option("--window", prm.window, "Sum over n <= window")->capture_default_str();
    fsharp->add_option("--M", prm.m, "p-adic digits")->capture_default_str();
    fsharp->add_flag("--exact", prm.exact, "Exact rational coefficients");

    auto *eis = add("eisenstein", "Normalized Eisenstein series E_k", [&] { return cmd_eisenstein(prm); });
    eis->add_option("--k", prm.weight, "Even weight >= 4")->required();
    eis->add_option("--N", prm.n_bound, "Coefficients below q^N")->capture_default_str();

    for (bool full : {true, false}) {
        auto *sub = add(full ? "delta-expand" : "delta0",
                        full ? "delta^n of a q-expansion in the jet ring" : "(a(q^p) - a^p)/p of a q-expansion",
                        full ? std::function<Payload()>([&] { return cmd_delta_expand(prm); })
                             : std::function<Payload()>([&] { return cmd_delta0(prm); }));
        sub->add_option("--input", prm.inputs, "q-expansion JSON (defaults to E_k)");
        sub->add_option("--k", prm.weight, "Eisenstein weight when no input is given")->capture_default_str();
        sub->add_option("--N", prm.n_bound, "Truncation for the default E_k")->capture_default_str();
        sub->add_option("--p", prm.p, "Prime")->required();
        sub->add_option("--M", prm.m, "p-adic digits")->capture_default_str();
        if (full) {
            sub->add_option("--n", prm.n, "Number of delta applications")->capture_default_str();
        }
    }

    auto *cov = add("check-covariance", "Isogeny covariance of a series", [&] { return cmd_check_covariance(prm); });
    cov->add_option("--input", prm.inputs, "Series JSON")->required();
    cov->add_option("--gamma", prm.gamma, "gamma (default 2, or the least valid integer)");
    cov->add_option("--nu", prm.nu, "Expected weight exponent")->capture_default_str();

    auto *cont = add("check-continuation", "Analytic continuation across primes", [&] { return cmd_check_continuation(prm); });
    cont->add_option("--input", prm.inputs, "Family member JSON (repeatable); defaults to the f^e_k family");
    cont->add_option("--primes", prm.primes, "Primes of P for the default family")->delimiter(',')->capture_default_str();
    cont->add_option("--N", prm.n_bound, "Weight bound for the default family")->capture_default_str();
    cont->add_option("--M", prm.m, "p-adic digits for the default family")->capture_default_str();
    cont->add_flag("--exact", prm.exact, "Keep the default family exact");
    cont->add_option("--height", prm.height, "Height bound for rational reconstruction");

    auto *comm = add("check-commutator", "delta_p delta_q a - delta_q delta_p a = C_{p,q}",
                     [&] { return cmd_check_commutator(prm); });
    comm->add_option("--p1", prm.p1, "First prime")->capture_default_str();
    comm->add_option("--p2", prm.p2, "Second prime")->capture_default_str();
    comm->add_option("--value", prm.value, "Value a (omit for random samples)");
    comm->add_option("--samples", prm.samples, "Random samples")->capture_default_str();
    comm->add_option("--seed", prm.seed, "Random seed")->capture_default_str();

    auto *lemma = add("check-lemma", "Lemma checks on jet series", [&] { return cmd_check_lemma(prm); });
    lemma->add_option("--name", prm.name, "xlaphi or logder")->required();
    lemma->add_option("--p", prm.p, "Prime")->capture_default_str();
    lemma->add_option("--n", prm.n, "Jet order")->capture_default_str();
    lemma->add_option("--varphi", prm.varphi, "Integer value for varphi (xlaphi; symbolic when omitted)");
    lemma->add_option("--a", prm.a, "Exponent a (logder)")->capture_default_str();

    auto *basis = add("check-basis", "Rational rank of the phi_P translates of f^e_0", [&] { return cmd_check_basis(prm); });
    basis->add_option("--primes", prm.primes, "Primes of P")->delimiter(',')->capture_default_str();
    basis->add_option("--r", prm.r, "Order vector (default 2 per prime)")->delimiter(',');
    basis->add_option("--N", prm.n_bound, "Weight bound")->capture_default_str();

    auto *ap = add("ap", "a_p of a curve fixture", [&] { return cmd_ap(prm); });
    ap->add_option("--curve", prm.curve, "Curve fixture JSON")->required();
    ap->add_option("--p", prm.p, "Prime")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        out << error_json(error_code_name(ErrorCode::usage), e.what()).dump(2) << "\n";
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        return emit(job(), common, out, err);
    } catch (const Error &e) {
        out << error_json(error_code_name(e.code()), e.what()).dump(2) << "\n";
        err << e.what() << "\n";
        return exit_for(e.code());
    } catch (const std::exception &e) {
        out << error_json("internal", e.what()).dump(2) << "\n";
        err << e.what() << "\n";
        return kExitFail;
    }
}

} // namespace arithdiff::cli
