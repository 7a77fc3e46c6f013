#include <doctest.h>

#include <arithdiff/errors.hpp>
#include <arithdiff/json_io.hpp>

#include "support.hpp"

using namespace arithdiff;

TEST_SUITE("json_io")
{
    TEST_CASE("series round trip")
    {
        const auto e4 = eisenstein(4, 12);
        const Json j = to_json(e4);
        CHECK(j.at("weight") == 4);
        CHECK(j.at("N") == 12);
        CHECK(j.at("terms").at(1) == Json::array({1, "240/1"}));
        CHECK(series_from_json(j) == e4.series);
        CHECK(to_json(series_from_json(j)).at("terms") == j.at("terms"));
        const auto pj = to_json(j_invariant(10, 5, 6));
        CHECK(pj.at("padic").at("M") == 6);
    }

    TEST_CASE("jet round trip")
    {
        const auto psi = psi_serretate(5, 14);
        const Json j = to_json(psi);
        CHECK(rational_jet_from_json(j) == psi);
        CHECK(to_json(rational_jet_from_json(j)) == j);

        const auto pf = psi_fourier(7, 6, 10);
        const Json pj = to_json(pf);
        CHECK(is_padic_json(pj));
        CHECK(padic_jet_from_json(pj) == pf);
        CHECK(to_json(padic_jet_from_json(pj)) == pj);
        CHECK_THROWS_AS(padic_jet_from_json(j), UsageError);
    }

    TEST_CASE("multi-prime round trip")
    {
        const auto fe = build_fe_k(std::vector<long>{5, 7}, 2, 30);
        const Json j = to_json(fe);
        CHECK(is_multi_json(j));
        CHECK(j.at("ring") == 2);
        const auto back = rational_multi_from_json(j);
        CHECK(back == fe);
        CHECK(back.ring_kind() == 2);
        CHECK(to_json(back) == j);

        const auto red = reduce_mod(fe, 2, 5);
        CHECK(to_json(padic_multi_from_json(to_json(red))) == to_json(red));
    }

    TEST_CASE("reports")
    {
        const auto r = covariance_check(RationalJet::variable(5, SeriesVar::t, {}, 0, 20), 2, 1);
        const Json j = to_json(r);
        CHECK(j.at("gamma") == 2);
        CHECK(j.at("pass") == false);
        CHECK(j.at("witness") == "t^2");
        CHECK(to_json(lemma_logder_check(5, 1, 1)).at("pass") == true);
        CHECK(to_json(basis_independence_check({5}, {2}, 20)).at("rank") == 2);
    }

    TEST_CASE("malformed input")
    {
        CHECK_THROWS_AS(series_from_json(Json{{"var", "q"}, {"terms", 3}}), UsageError);
        CHECK_THROWS_AS(series_from_json(Json{{"var", "z"}, {"terms", Json::array()}}), Error);
        CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), UsageError);
        CHECK_THROWS_AS(curve_fixture_from_json(Json{{"curve", {{"a1", 0}, {"a2", 0}, {"a3", 0}, {"a4", 0}, {"a6", 0}}}}),
                        UsageError);
    }
}
