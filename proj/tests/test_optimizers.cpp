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

#include <numbers>

using namespace bdris;
using std::numbers::pi;

namespace
{
    projection_targets random_targets(test_rng &rng, std::size_t n)
    {
        projection_targets t;
        t.x = rng.unit_columns(n);
        t.y = rng.unit_columns(n);
        return t;
    }

    // Gram determinant of an N x 2 matrix by Cauchy-Binet, exact zero for N = 1
    double gram_det(const cmat &a)
    {
        double d = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = i + 1; j < a.rows(); ++j)
                d += std::norm(a(i, 0) * a(j, 1) - a(j, 0) * a(i, 1));
        return d;
    }

    // Test-side ||X Y^H||_* = sqrt(s1^2 + s2^2 + 2 s1 s2) from ||X Y^H||_F^2 and the Gram determinants
    double nuclear_norm_xyh(const cmat &x, const cmat &y)
    {
        const double f2 = std::pow(frobenius_norm(x * y.adjoint()), 2);
        return std::sqrt(f2 + 2.0 * std::sqrt(gram_det(x) * gram_det(y)));
    }
}

TEST_CASE("reciprocal_closed_form - specular geometry with SS")
{
    scenario_config cfg;
    cfg.phi_itu = pi - cfg.phi_bi;
    const channel_set ch = build_channels(cfg);
    const ris_solution sol = reciprocal_design(cfg, ch, true);
    CHECK(sol.reciprocal);
    CHECK(unitarity_error(sol.theta) < 1e-12);
    CHECK(symmetry_error(sol.theta) == 0.0);
    CHECK(is_diagonal(sol.theta));
    const cplx a = uplink_alpha(ch);
    for (std::size_t k = 0; k < cfg.n_i; ++k)
        REQUIRE(std::abs(sol.theta(k, k) - a) < 1e-12);
    CHECK(normalized_strengths(ch, sol.theta, true).p_u_norm == Catch::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("reciprocal_closed_form - without SS reaches 1 everywhere")
{
    scenario_config cfg;
    test_rng rng(13);
    for (int t = 0; t < 50; ++t)
    {
        cfg.phi_bi = rng.uniform(0.0, pi);
        cfg.phi_itu = rng.uniform(0.0, pi);
        cfg.n_i = 1 + static_cast<std::size_t>(t);
        const channel_set ch = build_channels(cfg);
        const ris_solution sol = reciprocal_design(cfg, ch, false);
        REQUIRE(std::abs(normalized_strengths(ch, sol.theta, false).p_u_norm - 1.0) < 1e-9);
    }
}

TEST_CASE("reciprocal_closed_form - reaches the uplink bound with SS")
{
    scenario_config cfg;
    test_rng rng(19);
    for (int t = 0; t < 50; ++t)
    {
        cfg.phi_itu = rng.uniform(0.0, pi);
        const channel_set ch = build_channels(cfg);
        const double p = normalized_strengths(ch, reciprocal_design(cfg, ch, true).theta, true).p_u_norm;
        const double bound = std::pow(std::abs(dot_t(ch.hbar_itu, ch.hbar_bi)) + 1.0, 2);
        REQUIRE(std::abs(p - bound) < 1e-9);
        const strength_bounds b = strength_upper_bounds(ch, true);
        REQUIRE(std::abs(b.p_u_max / (ch.zeta_bi * ch.zeta_itu) - bound) < 1e-9);
    }
}

TEST_CASE("uplink / downlink alpha")
{
    scenario_config cfg;
    const channel_set ch = build_channels(cfg);
    const cplx au = uplink_alpha(ch), ad = downlink_alpha(ch);
    CHECK(std::abs(std::abs(au) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(ad) - 1.0) < 1e-14);
    // -h_bi^T h_itu alpha_U^* is real and nonnegative
    const cplx z = -dot_t(ch.h_bi, ch.h_itu) * std::conj(au);
    CHECK(std::abs(z.imag()) < 1e-20);
    CHECK(z.real() >= 0.0);
}

TEST_CASE("build_projection_targets - unit columns and SS-free alphas")
{
    scenario_config cfg;
    const channel_set ch = build_channels(cfg);
    const projection_targets t0 = build_projection_targets(ch, false);
    CHECK(t0.alpha_d == cplx(1.0));
    CHECK(t0.alpha_u == cplx(1.0));
    const projection_targets t = build_projection_targets(ch, true);
    for (std::size_t c = 0; c < 2; ++c)
    {
        CHECK(std::abs(norm2(t.x.col(c)) - 1.0) < 1e-12);
        CHECK(std::abs(norm2(t.y.col(c)) - 1.0) < 1e-12);
    }
    CHECK(std::abs(std::abs(t.alpha_d) - 1.0) < 1e-14);
    CHECK(std::abs(t.alpha_u - uplink_alpha(ch)) < 1e-14);
    CHECK(std::abs(t.alpha_d - downlink_alpha(ch)) < 1e-14);
}

TEST_CASE("build_projection_targets - vanishing inner product defaults alpha to 1")
{
    // cos(phi_bi) + cos(phi_itu) = 1 at N = 2 makes h_bi^T h_itu = (1 + e^{j pi}) / 2 = 0
    scenario_config cfg;
    cfg.n_i = 2;
    cfg.phi_bi = pi / 3.0;
    cfg.phi_itu = pi / 3.0;
    const channel_set ch = build_channels(cfg);
    const projection_targets t = build_projection_targets(ch, true);
    CHECK(t.alpha_u_defaulted);
    CHECK(t.alpha_u == cplx(1.0));
    const auto d = projection_diagnostics(t, cmat::identity(2));
    CHECK(d.alpha_u_defaulted);
}

TEST_CASE("procrustes_unitary - identical targets give zero residual")
{
    test_rng rng(29);
    projection_targets t = random_targets(rng, 8);
    t.x = t.y;
    const ris_solution sol = procrustes_unitary(t);
    CHECK(sol.diagnostics->residual < 1e-20);
    CHECK(unitarity_error(sol.theta) < 1e-12);
    CHECK_FALSE(sol.reciprocal);
}

TEST_CASE("procrustes_unitary - residual equals the nuclear-norm minimum")
{
    test_rng rng(31);
    for (std::size_t n : {1u, 2u, 3u, 4u, 16u, 64u})
        for (int trial = 0; trial < 100; ++trial)
        {
            const projection_targets t = random_targets(rng, n);
            const ris_solution sol = procrustes_unitary(t);
            const procrustes_diag &d = *sol.diagnostics;
            REQUIRE(unitarity_error(sol.theta) < 1e-10);
            REQUIRE(std::abs(d.residual - (4.0 - 2.0 * d.sigma_trace)) < 1e-9);
            REQUIRE(std::abs(d.sigma_trace - nuclear_norm_xyh(t.x, t.y)) < 1e-9);
            REQUIRE(d.trace_bound_holds(1e-9));
            REQUIRE(d.aligned_trace_bounds_hold(1e-9));
            // No other unitary does better
            const cmat other = rng.unitary(n);
            REQUIRE(d.residual <= projection_residual(t.x, t.y, other) + 1e-12);
        }
}

TEST_CASE("procrustes_unitary - rank-deficient targets")
{
    test_rng rng(37);
    projection_targets t = random_targets(rng, 6);
    t.y.set_col(1, t.y.col(0)); // both Y columns equal
    t.x.set_col(1, t.x.col(0));
    const ris_solution sol = procrustes_unitary(t);
    CHECK(sol.diagnostics->residual < 1e-20);
    CHECK(unitarity_error(sol.theta) < 1e-10);
    CHECK(std::abs(sol.diagnostics->aligned_trace() - 2.0) < 1e-12);

    // Aligned columns in one target and orthogonal ones in the other attain the lower bound sqrt(2)
    projection_targets u;
    u.x = cmat(4, 2);
    u.x(0, 0) = 1.0;
    u.x(0, 1) = 1.0;
    u.y = cmat(4, 2);
    u.y(0, 0) = 1.0;
    u.y(1, 1) = 1.0;
    const auto d = procrustes_unitary(u).diagnostics;
    CHECK(d->lower_bound_attained(1e-12));
    CHECK(std::abs(d->aligned_trace() - std::numbers::sqrt2) < 1e-12);
    CHECK(std::abs(d->residual - (4.0 - 2.0 * std::numbers::sqrt2)) < 1e-12);
}

TEST_CASE("procrustes_unitary - completion does not affect the objective")
{
    test_rng rng(41);
    const projection_targets t = random_targets(rng, 8);
    const ris_solution sol = procrustes_unitary(t);
    // Reflections fixing range(Y) change the completion but not Theta Y
    cmat theta = sol.theta;
    for (int k = 0; k < 3; ++k)
    {
        cvec w = rng.matrix(8, 1).col(0);
        for (std::size_t c = 0; c < 2; ++c)
        {
            cvec y = t.y.col(c);
            for (std::size_t j = 0; j < c; ++j) // orthonormalize Y on the fly
            {
                const cvec yj = t.y.col(j);
                const cplx p = dot_h(yj, y);
                for (std::size_t i = 0; i < 8; ++i)
                    y[i] -= p * yj[i];
            }
            const double ny = norm2(y);
            for (auto &x : y)
                x /= ny;
            const cplx p = dot_h(y, w);
            for (std::size_t i = 0; i < 8; ++i)
                w[i] -= p * y[i];
        }
        const double nw = norm2(w);
        cmat h = cmat::identity(8);
        for (std::size_t r = 0; r < 8; ++r)
            for (std::size_t c = 0; c < 8; ++c)
                h(r, c) -= 2.0 * w[r] * std::conj(w[c]) / (nw * nw);
        theta = theta * h;
    }
    CHECK(frobenius_norm(theta - sol.theta) > 1e-3);
    CHECK(unitarity_error(theta) < 1e-10);
    CHECK(std::abs(projection_residual(t.x, t.y, theta) - sol.diagnostics->residual) < 1e-10);
}

TEST_CASE("procrustes_unitary - aligned users give a symmetric-attainable optimum")
{
    scenario_config cfg;
    for (double phi : {0.2, pi / 2.0, 2.0})
    {
        cfg.phi_itu = cfg.phi_rdi = phi;
        const channel_set ch = build_channels(cfg);
        for (bool ss : {false, true})
        {
            const projection_targets t = build_projection_targets(ch, ss);
            // X = conj(Y) up to a per-column phase
            CHECK(std::abs(std::abs(dot_h(t.x.col(0), conj(t.y.col(1)))) - 1.0) < 1e-12);
            const ris_solution sol = procrustes_unitary(t, ss);
            CHECK(sol.diagnostics->residual < 1e-9);
            const auto a = normalized_strengths(ch, sol.theta, ss);
            const auto b = normalized_strengths(ch, reciprocal_design(cfg, ch, ss).theta, ss);
            CHECK(std::abs(a.p_u_norm - b.p_u_norm) < 1e-9);
            CHECK(std::abs(a.p_d_norm - b.p_d_norm) < 1e-9);
        }
    }
}

TEST_CASE("procrustes_unitary - dimension errors")
{
    projection_targets t;
    t.x = cmat(4, 2);
    t.y = cmat(3, 2);
    CHECK_THROWS_AS(procrustes_unitary(t), error);
    t.y = cmat(4, 3);
    CHECK_THROWS_AS(procrustes_unitary(t), error);
}

TEST_CASE("strength_upper_bounds - no-SS values")
{
    scenario_config cfg;
    const channel_set ch = build_channels(cfg);
    const strength_bounds b = strength_upper_bounds(ch, false);
    CHECK(b.p_u_max == Catch::Approx(ch.zeta_bi * ch.zeta_itu).epsilon(1e-12));
    CHECK(b.p_d_max == Catch::Approx(ch.zeta_bi * ch.zeta_rdi).epsilon(1e-12));
}

TEST_CASE("nonreciprocal_design - never exceeds the strength bounds")
{
    scenario_config cfg;
    test_rng rng(43);
    for (int t = 0; t < 40; ++t)
    {
        cfg.phi_itu = rng.uniform(0.0, pi);
        cfg.phi_rdi = rng.uniform(0.0, pi);
        const bool ss = t % 2 == 0;
        const channel_set ch = build_channels(cfg);
        const ris_solution sol = nonreciprocal_design(ch, ss);
        const strength_bounds b = strength_upper_bounds(ch, ss);
        const cmat m = effective_scattering(sol.theta, ss);
        REQUIRE(std::norm(bilinear(ch.h_bi, m, ch.h_itu)) <= b.p_u_max * (1 + 1e-9));
        REQUIRE(std::norm(bilinear(ch.h_rdi, m, ch.h_bi)) <= b.p_d_max * (1 + 1e-9));
    }
}
