#ifndef ARITHDIFF_JSON_IO_HPP
#define ARITHDIFF_JSON_IO_HPP

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include <arithdiff/deltajet.hpp>
#include <arithdiff/forms.hpp>
#include <arithdiff/modular.hpp>
#include <arithdiff/multiprime.hpp>
#include <arithdiff/qseries.hpp>

namespace arithdiff
{

using Json = nlohmann::json;

// Rationals are written "n/d"; p-adic coefficients as the decimal residue
// plus a "padic" block {"p","M"} and a per-term digit count. A null "N"
// means no truncation.
Json to_json(const RationalSeries &s);
Json to_json(const PadicSeries &s);
Json to_json(const QExpansion &f);
// Terms are [q-exponent, coeff, [e_1..e_r]] with e_i the exponent of the
// i-th jet variable; p-adic terms append the digit count.
Json to_json(const RationalJet &f);
Json to_json(const PadicJet &f);
// Terms are [[[i-vector, exponent], ...], coeff]; p-adic terms append the
// digit count.
Json to_json(const RationalMulti &f);
Json to_json(const PadicMulti &f);
Json to_json(const CovarianceReport &r);
Json to_json(const LemmaReport &r);
Json to_json(const BasisReport &r);
Json to_json(const ContinuationResult &r);

RationalSeries series_from_json(const Json &j);
RationalJet rational_jet_from_json(const Json &j);
PadicJet padic_jet_from_json(const Json &j);
RationalMulti rational_multi_from_json(const Json &j);
PadicMulti padic_multi_from_json(const Json &j);

bool is_multi_json(const Json &j);
bool is_padic_json(const Json &j);

// {"curve":{"a1":..,"a2":..,"a3":..,"a4":..,"a6":..},"bad_primes":{"11":1}}
CurveFixture curve_fixture_from_json(const Json &j);

Json read_json_file(const std::string &path);

} // namespace arithdiff

#endif
