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

#include <bdris/metrics.hpp>
#include <bdris/optimizers.hpp>

#include "test_util.hpp"

#include <algorithm>
#include <numbers>

using namespace bdris;
using std::numbers::pi;

namespace
{
    std::size_t argmax(const std::vector<double> &v)
    {
        return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    }
}

TEST_CASE("angle_grid")
{
    const auto g = angle_grid(721);
    CHECK(g.size() == 721);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == Catch::Approx(pi).epsilon(1e-15));
    CHECK(g[600] == Catch::Approx(5.0 * pi / 6.0).epsilon(1e-15));
    CHECK_THROWS_AS(angle_grid(1), error);
}

TEST_CASE("beam_patterns - matched surface is silent")
{
    scenario_config cfg;
    cfg.n_i = 16;
    const channel_set ch = build_channels(cfg);
    const auto p = beam_patterns(ch, cmat::identity(16), true, angle_grid(91));
    for (std::size_t i = 0; i < p.grid.size(); ++i)
    {
        REQUIRE(p.p_d_imp[i] == 0.0);
        REQUIRE(p.p_d_ref[i] == 0.0);
        REQUIRE(p.p_u_imp[i] == 0.0);
        REQUIRE(p.p_u_ref[i] == 0.0);
    }
}

TEST_CASE("beam_patterns - value at the design angles equals the strengths")
{
    scenario_config cfg;
    cfg.n_i = 16;
    cfg.phi_bi = pi / 4.0;
    cfg.phi_rdi = pi / 2.0;
    cfg.phi_itu = 3.0 * pi / 4.0; // grid points of angle_grid(5)
    const channel_set ch = build_channels(cfg);
    test_rng rng(7);
    const cmat theta = rng.unitary(16);
    const auto g = angle_grid(5);
    for (bool ss : {false, true})
    {
        const auto p = beam_patterns(ch, theta, ss, g);
        const auto s = normalized_strengths(ch, theta, ss);
        const double den = ss ? std::pow(std::abs(dot_t(ch.hbar_itu, ch.hbar_bi)) + 1.0, 2) : 1.0;
        CHECK(p.p_d_ref[2] * den == Catch::Approx(s.p_d_norm).epsilon(1e-10));
        CHECK(p.p_u_ref[1] * den == Catch::Approx(s.p_u_norm).epsilon(1e-10));
        CHECK(p.p_u_imp[3] * den == Catch::Approx(s.p_u_norm).epsilon(1e-10));
        CHECK(p.p_d_imp[1] * den == Catch::Approx(s.p_d_norm).epsilon(1e-10));
    }
}

TEST_CASE("beam_patterns - non-reciprocal design points at both users")
{
    scenario_config cfg;
    cfg.n_i = 16;
    const auto grid = angle_grid(721);
    const double step = grid[1];
    for (double phi_itu : {2.0 * pi / 3.0, pi / 2.0})
    {
        cfg.phi_itu = phi_itu;
        const channel_set ch = build_channels(cfg);
        const auto nr = beam_patterns(ch, nonreciprocal_design(ch, false).theta, false, grid);
        CHECK(std::abs(grid[argmax(nr.p_d_ref)] - cfg.phi_rdi) <= step);
        CHECK(std::abs(grid[argmax(nr.p_u_ref)] - cfg.phi_bi) <= step);
        const auto rc = beam_patterns(ch, reciprocal_design(cfg, ch, false).theta, false, grid);
        CHECK(std::abs(grid[argmax(rc.p_u_ref)] - cfg.phi_bi) <= step);
    }
    cfg.phi_itu = 2.0 * pi / 3.0;
    const channel_set ch = build_channels(cfg);
    const auto rc = beam_patterns(ch, reciprocal_design(cfg, ch, false).theta, false, grid);
    CHECK(std::abs(grid[argmax(rc.p_d_ref)] - cfg.phi_rdi) > step);
}

TEST_CASE("beam_patterns - rejects bad inputs")
{
    scenario_config cfg;
    cfg.n_i = 4;
    const channel_set ch = build_channels(cfg);
    CHECK_THROWS_AS(beam_patterns(ch, cmat::identity(3), true, angle_grid(3)), error);
    CHECK_THROWS_AS(beam_patterns(ch, cmat::identity(4), true, {4.0}), error);
}

TEST_CASE("normalized_strengths - specular geometry")
{
    scenario_config cfg;
    cfg.phi_itu = pi - cfg.phi_bi;
    const channel_set ch = build_channels(cfg);
    const cmat with = reciprocal_design(cfg, ch, true).theta;
    const cmat without = reciprocal_design(cfg, ch, false).theta;
    CHECK(normalized_strengths(ch, with, true).p_u_norm == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(normalized_strengths(ch, without, false).p_u_norm == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(normalized_strengths(ch, without, true).p_u_norm < 1e-20);
}

TEST_CASE("rates - closed form at unit gains")
{
    // With unit channels the rate reduces to log2(1 + P |s|^2 / (P' |i|^2 + sigma^2))
    scenario_config cfg;
    cfg.n_i = 2;
    cfg.zeta0_db = 0.0;
    cfg.d_bi = cfg.d_rdi = cfg.d_itu = 1.0;
    cfg.p_u = 1.0;
    cfg.p_d = 2.0;
    cfg.sigma_d2 = cfg.sigma_u2 = 0.5;
    const channel_set ch = build_channels(cfg);
    test_rng rng(3);
    const cmat theta = rng.unitary(2);
    const cmat m = theta - cmat::identity(2);
    const double s_d = std::norm(bilinear(ch.hbar_rdi, m, ch.hbar_bi)), i_d = std::norm(bilinear(ch.hbar_rdi, m, ch.hbar_itu));
    const double s_u = std::norm(bilinear(ch.hbar_bi, m, ch.hbar_itu)), i_u = std::norm(bilinear(ch.hbar_bi, m, ch.hbar_bi));
    const link_metrics lm = rates(ch, theta, cfg, true);
    CHECK(lm.r_d == Catch::Approx(std::log2(1.0 + 2.0 * s_d / (i_d + 0.5))).epsilon(1e-12));
    CHECK(lm.r_u == Catch::Approx(std::log2(1.0 + s_u / (2.0 * i_u + 0.5))).epsilon(1e-12));
    CHECK(lm.sir_d == Catch::Approx(2.0 * s_d / i_d).epsilon(1e-12));
}

TEST_CASE("rates - silent uplink user removes the downlink interference")
{
    scenario_config cfg;
    const channel_set ch = build_channels(cfg);
    const cmat theta = nonreciprocal_design(ch, true).theta;
    scenario_config quiet = cfg;
    quiet.p_u = 0.0;
    const link_metrics lm = rates(ch, theta, quiet, true);
    const double s = cfg.p_d * std::norm(bilinear(ch.h_rdi, theta - cmat::identity(64), ch.h_bi));
    CHECK(lm.r_d == Catch::Approx(std::log2(1.0 + s / cfg.sigma_d2)).epsilon(1e-12));
    CHECK(std::isinf(lm.sir_d));
    CHECK(lm.r_u == 0.0);
}

TEST_CASE("rates - monotone in the own transmit power")
{
    scenario_config cfg;
    const channel_set ch = build_channels(cfg);
    const cmat theta = nonreciprocal_design(ch, true).theta;
    double prev = -1.0;
    for (double p : {0.01, 0.1, 0.5, 1.0, 5.0})
    {
        cfg.p_d = p;
        const double r = rates(ch, theta, cfg, true).r_d;
        REQUIRE(r > prev);
        prev = r;
    }
}

TEST_CASE("rates - uplink user in the BS direction")
{
    scenario_config cfg;
    cfg.phi_itu = cfg.phi_bi;
    const channel_set ch = build_channels(cfg);
    const link_metrics lm = rates(ch, nonreciprocal_design(ch, false).theta, cfg, false);
    // Downlink signal and uplink interference share the same surface response
    CHECK(1.0 / lm.sir_d == Catch::Approx(ch.zeta_itu * cfg.p_u / (ch.zeta_bi * cfg.p_d)).epsilon(1e-9));
    CHECK(1.0 / lm.sir_d == Catch::Approx(36.0).epsilon(1e-9));
    CHECK(lm.r_d < 0.1);
}

TEST_CASE("rates - argument errors")
{
    scenario_config cfg;
    cfg.n_i = 4;
    const channel_set ch = build_channels(cfg);
    scenario_config bad = cfg;
    bad.sigma_d2 = 0.0;
    CHECK_THROWS_AS(rates(ch, cmat::identity(4), bad, true), error);
    CHECK_THROWS_AS(rates(ch, cmat::identity(5), cfg, true), error);
}
