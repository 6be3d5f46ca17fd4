// SPDX-License-Identifier: Apache-2.0
//
// bdris - multiport models and RIS configuration solvers for full-duplex links
// Copyright (C) 2026 The bdris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include <bdris/scenario.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace bdris;
using std::numbers::pi;

namespace
{
    error_category category_of(const std::function<void()> &fn)
    {
        try
        {
            fn();
        }
        catch (const error &e)
        {
            return e.category();
        }
        FAIL("expected an error");
        return error_category::argument;
    }

    const sweep_row &row_at(const sweep_result &r, double phi)
    {
        return *std::min_element(r.rows.begin(), r.rows.end(), [phi](const sweep_row &a, const sweep_row &b)
                                 { return std::abs(a.phi_itu - phi) < std::abs(b.phi_itu - phi); });
    }

    const sweep_result &scheme(const experiment_output &o, const char *name)
    {
        for (const auto &s : o.sweeps)
            if (s.scheme == name)
                return s;
        throw std::runtime_error("scheme missing");
    }

    std::filesystem::path temp_dir(const std::string &name)
    {
        auto p = std::filesystem::temp_directory_path() / ("bdris_test_" + name);
        std::filesystem::remove_all(p);
        std::filesystem::create_directories(p);
        return p;
    }
}

TEST_CASE("parse_config - empty document gives the defaults")
{
    const scenario_config c = parse_config_string("");
    const scenario_config d;
    CHECK(c.n_i == 64);
    CHECK(c.zeta0_db == -30.0);
    CHECK(c.d0 == 1.0);
    CHECK(c.epsilon == 2.0);
    CHECK(c.d_bi == 30.0);
    CHECK(c.d_rdi == 5.0);
    CHECK(c.d_itu == 5.0);
    CHECK(c.sigma_d2 == Catch::Approx(dbm_to_watt(-80.0)).epsilon(1e-14));
    CHECK(c.sigma_u2 == Catch::Approx(dbm_to_watt(-80.0)).epsilon(1e-14));
    CHECK(c.p_d == 0.5);
    CHECK(c.p_u == 0.5);
    CHECK(c.sweep_points == d.sweep_points);
    CHECK(parse_config_string("{}").phi_bi == d.phi_bi);
}

TEST_CASE("parse_config - values and alternate noise units")
{
    const scenario_config c = parse_config_string(R"({"n_i": 16, "phi_itu": 1.0, "zeta0_db": -20, "sigma_u2_dbm": -90,
                                                      "design_with_ss": false, "sweep_points": 11})");
    CHECK(c.n_i == 16);
    CHECK(c.phi_itu == 1.0);
    CHECK(c.zeta0() == Catch::Approx(1e-2).epsilon(1e-14));
    CHECK(c.sigma_u2 == Catch::Approx(1e-12).epsilon(1e-12));
    CHECK_FALSE(c.design_with_ss);
    CHECK(c.sweep_points == 11);
    CHECK(parse_config_string(R"({"zeta0_db": -30})").zeta0() == Catch::Approx(1e-3).epsilon(1e-14));
}

TEST_CASE("parse_config - errors")
{
    CHECK(category_of([] { parse_config_string(R"({"phi_bi": 4.0})"); }) == error_category::config);
    CHECK(category_of([] { parse_config_string(R"({"phi_by": 1.0})"); }) == error_category::config);
    CHECK(category_of([] { parse_config_string(R"({"n_i": 2.5})"); }) == error_category::config);
    CHECK(category_of([] { parse_config_string(R"({"n_i": -3})"); }) == error_category::config);
    CHECK(category_of([] { parse_config_string(R"({"design_with_ss": 1})"); }) == error_category::config);
    CHECK(category_of([] { parse_config_string("[1, 2]"); }) == error_category::config);
    CHECK(category_of([] { parse_config("/nonexistent/bdris.json"); }) == error_category::io);
    try
    {
        parse_config_string("{\n  \"n_i\": 4,\n  \"phi_bi\" 1.0\n}", "cfg.json");
        FAIL("expected a parse error");
    }
    catch (const error &e)
    {
        CHECK(std::string(e.what()).rfind("cfg.json:3:", 0) == 0);
    }
    try
    {
        parse_config_string(R"({"phi_bi": 4.0})");
        FAIL("expected a validation error");
    }
    catch (const error &e)
    {
        CHECK(std::string(e.what()).find("phi_bi") != std::string::npos);
    }
}

TEST_CASE("parse_config - reads files")
{
    const auto dir = temp_dir("cfg");
    std::ofstream(dir / "c.json") << R"({"n_i": 8})";
    CHECK(parse_config(dir / "c.json").n_i == 8);
}

TEST_CASE("presets - lookup")
{
    CHECK(find_preset("fig7a", scenario_config{}).design_with_ss);
    CHECK_FALSE(find_preset("fig8a", scenario_config{}).design_with_ss);
    CHECK(find_preset("fig8a", scenario_config{}).eval_with_ss);
    CHECK(find_preset("fig4", scenario_config{}).kind == preset_kind::beam_pattern);
    CHECK(category_of([] { find_preset("fig99", scenario_config{}); }) == error_category::argument);
    scenario_config c;
    c.n_i = 8;
    c.design_with_ss = false;
    const preset p = find_preset("custom", c);
    CHECK(p.n_i == 8);
    CHECK_FALSE(p.design_with_ss);
}

TEST_CASE("run_sweep - fig7a reciprocal peak at the specular angle")
{
    const experiment_output out = run_sweep(scenario_config{}, "fig7a", 4);
    const sweep_result &rec = scheme(out, scheme_reciprocal);
    REQUIRE(rec.rows.size() == 721);
    const auto peak = std::max_element(rec.rows.begin(), rec.rows.end(), [](const sweep_row &a, const sweep_row &b)
                                       { return a.p_u_norm < b.p_u_norm; });
    CHECK(peak->p_u_norm == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(peak->phi_itu == Catch::Approx(5.0 * pi / 6.0).epsilon(1e-12));
    // The reciprocal uplink curve sits on its bound everywhere
    for (const auto &r : rec.rows)
    {
        scenario_config c = out.config;
        c.phi_itu = r.phi_itu;
        const channel_set ch = build_channels(c);
        const double bound = std::pow(std::abs(dot_t(ch.hbar_itu, ch.hbar_bi)) + 1.0, 2);
        REQUIRE(std::abs(r.p_u_norm - bound) < 1e-9);
    }
    for (std::size_t i = 1; i < rec.rows.size(); ++i)
        REQUIRE(rec.rows[i].phi_itu > rec.rows[i - 1].phi_itu);
}

TEST_CASE("run_sweep - fig6 aligned users")
{
    const experiment_output out = run_sweep(scenario_config{}, "fig6", 4);
    const sweep_row &r = row_at(scheme(out, scheme_nonreciprocal), pi / 2.0);
    CHECK(r.p_u_norm == Catch::Approx(1.0).margin(1e-6));
    CHECK(r.p_d_norm == Catch::Approx(1.0).margin(1e-6));
    for (const auto &row : scheme(out, scheme_reciprocal).rows)
        REQUIRE(std::abs(row.p_u_norm - 1.0) < 1e-9);
}

TEST_CASE("run_sweep - fig8a cancellation at the specular angle")
{
    const experiment_output out = run_sweep(scenario_config{}, "fig8a", 4);
    CHECK(row_at(scheme(out, scheme_reciprocal), 5.0 * pi / 6.0).p_u_norm < 1e-9);
    // The projection cannot map hbar_itu onto conj(hbar_bi) exactly while also serving the downlink,
    // so the non-reciprocal value is small but not zero (1.0363e-7, checked against a dense SVD)
    const double nr = row_at(scheme(out, scheme_nonreciprocal), 5.0 * pi / 6.0).p_u_norm;
    CHECK(nr == Catch::Approx(1.0363470899807372e-07).epsilon(1e-6));
}

TEST_CASE("run_sweep - thread count does not change results")
{
    scenario_config c;
    c.sweep_points = 37;
    const std::string a = sweep_csv(run_sweep(c, "fig10a", 1).sweeps);
    const std::string b = sweep_csv(run_sweep(c, "fig10a", 5).sweeps);
    CHECK(a == b);
}

TEST_CASE("sweep_csv - layout")
{
    sweep_result r{scheme_reciprocal, true, false, {}};
    for (int i = 0; i < 3; ++i)
        r.rows.push_back({0.1 * i, 1.0, 2.0, 3.0, 4.0, 0.5, 1.5});
    const std::string s = sweep_csv({r});
    std::istringstream in(s);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line))
        lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "scheme,design_ss,eval_ss,phi_itu,p_u_norm,p_d_norm,r_u,r_d,residual,sigma_trace");
    CHECK(lines[2].rfind("reciprocal,1,0,1.00000000000000006e-01,1.00000000000000000e+00,", 0) == 0);
    CHECK(sweep_csv({r}) == s);
    CHECK(category_of([] { sweep_csv({}); }) == error_category::argument);
}

TEST_CASE("emit_csv / emit_svg - files")
{
    const auto dir = temp_dir("emit");
    scenario_config c;
    c.sweep_points = 9;
    const experiment_output sweep = run_sweep(c, "fig9");
    emit_csv(sweep.sweeps, dir / "fig9.csv");
    emit_svg(sweep.sweeps, dir / "fig9.svg", sweep.setup.title, sweep.setup.kind);
    std::ifstream f(dir / "fig9.csv");
    std::size_t n = 0;
    for (std::string line; std::getline(f, line);)
        ++n;
    CHECK(n == 1 + 2 * 9);
    CHECK(std::filesystem::file_size(dir / "fig9.svg") > 0);
    CHECK(category_of([&] { emit_csv(sweep.sweeps, dir / "missing" / "x.csv"); }) == error_category::io);
}

TEST_CASE("beam preset - four panels")
{
    scenario_config c;
    c.sweep_points = 61;
    const experiment_output out = run_sweep(c, "fig4");
    REQUIRE(out.beams.size() == 4); // 2 positions x 2 schemes
    const std::string s = beam_svg(out.beams, out.setup.title);
    std::size_t panels = 0;
    for (std::size_t p = s.find("<g>"); p != std::string::npos; p = s.find("<g>", p + 1))
        ++panels;
    CHECK(panels == 4);
    CHECK(s.find("Impinging") != std::string::npos);
    CHECK(s.find("Reflected") != std::string::npos);
    CHECK(s.find("angle [deg]") != std::string::npos);
    const std::string csv = beam_csv(out.beams);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 61);
}
