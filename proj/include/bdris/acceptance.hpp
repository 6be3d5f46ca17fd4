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

#ifndef BDRIS_ACCEPTANCE_HPP
#define BDRIS_ACCEPTANCE_HPP

// End-to-end acceptance checks. Each check builds its own scenario, runs the solvers and
// compares against closed-form values or the oracles, and reports pass/fail with timing.

#include "channels.hpp"
#include "metrics.hpp"
#include "optimizers.hpp"
#include "oracles.hpp"
#include "scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace bdris::acceptance
{
    struct outcome
    {
        int id = 0;
        std::string name;
        bool passed = false;
        double seconds = 0.0;
        std::string detail;
    };

    namespace detail
    {
        inline std::string fmt(const char *f, double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, f, v);
            return buf;
        }

        inline std::string g(double v) { return fmt("%.3g", v); }

        // Normalized uplink strength of the reciprocal design at every sweep angle
        inline std::vector<double> reciprocal_uplink_sweep(scenario_config cfg, bool design_ss, bool eval_ss)
        {
            const auto grid = angle_grid(cfg.sweep_points);
            std::vector<double> out(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                cfg.phi_itu = grid[i];
                const channel_set ch = build_channels(cfg);
                out[i] = normalized_strengths(ch, reciprocal_design(cfg, ch, design_ss).theta, eval_ss).p_u_norm;
            }
            return out;
        }

        inline std::size_t argmax(const std::vector<double> &v)
        {
            return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        }
    }

    // 1. Specular reflection reaches the with-SS maximum of 4
    inline outcome specular_maximum()
    {
        outcome o{1, "specular-reflection maximum", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        scenario_config cfg;
        cfg.phi_itu = std::numbers::pi - cfg.phi_bi;
        const channel_set ch = build_channels(cfg);
        const double p = normalized_strengths(ch, reciprocal_design(cfg, ch, true).theta, true).p_u_norm;
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = std::abs(p - 4.0) <= 1e-9 && o.seconds < 1.0;
        o.detail = "P_U = " + detail::fmt("%.15f", p) + " (expected 4)";
        return o;
    }

    // 2. Without SS the reciprocal design reaches exactly 1 everywhere
    inline outcome no_ss_ceiling()
    {
        outcome o{2, "no-SS ceiling", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        scenario_config cfg;
        const auto p = detail::reciprocal_uplink_sweep(cfg, false, false);
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double worst = 0.0;
        for (double v : p)
            worst = std::max(worst, std::abs(v - 1.0));
        o.passed = worst <= 1e-9 && o.seconds < 1.0;
        o.detail = std::to_string(p.size()) + " points, max |P_U - 1| = " + detail::g(worst);
        return o;
    }

    // 3. With SS the best-case gain is four times the SS-free one
    inline outcome ss_gain_factor()
    {
        outcome o{3, "structural-scattering gain factor", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        scenario_config cfg;
        const auto with = detail::reciprocal_uplink_sweep(cfg, true, true);
        const auto without = detail::reciprocal_uplink_sweep(cfg, false, false);
        double ratio = 0.0;
        for (std::size_t i = 0; i < with.size(); ++i)
            ratio = std::max(ratio, with[i] / without[i]);
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = std::abs(ratio - 4.0) <= 1e-6;
        o.detail = "max ratio = " + detail::fmt("%.12f", ratio);
        return o;
    }

    // 4. A design that ignores SS cancels itself at the specular angle once SS is present
    inline outcome design_without_evaluate_with()
    {
        outcome o{4, "design-without/evaluate-with zero", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        scenario_config cfg;
        cfg.phi_itu = std::numbers::pi - cfg.phi_bi;
        const channel_set ch = build_channels(cfg);
        const double p = normalized_strengths(ch, reciprocal_design(cfg, ch, false).theta, true).p_u_norm;
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = std::abs(p) <= 1e-9;
        o.detail = "P_U = " + detail::g(p);
        return o;
    }

    // 5. Projection properties over random unit-column targets, plus the sampling oracle
    inline outcome projection_suite(std::size_t pairs = 1000, std::size_t oracle_pairs = 3, std::size_t oracle_trials = 100000,
                                    std::uint64_t seed = 2024)
    {
        outcome o{5, "projection properties", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        double worst_residual = 0.0, worst_trace = -1e300, min_aligned = 1e300, max_aligned = -1e300, worst_oracle = -1e300;
        std::size_t failures = 0, oracle_runs = 0;
        for (std::size_t n : {4u, 16u, 64u})
        {
            oracle_rng rng(seed, n);
            for (std::size_t p = 0; p < pairs; ++p)
            {
                projection_targets t;
                t.x = random_unit_columns(n, rng);
                t.y = random_unit_columns(n, rng);
                const ris_solution sol = procrustes_unitary(t);
                const procrustes_diag &d = *sol.diagnostics;
                const double e_res = std::abs(d.residual - (4.0 - 2.0 * d.sigma_trace));
                worst_residual = std::max(worst_residual, e_res);
                worst_trace = std::max(worst_trace, d.sigma_trace - d.aligned_trace());
                min_aligned = std::min(min_aligned, d.aligned_trace());
                max_aligned = std::max(max_aligned, d.aligned_trace());
                if (e_res > 1e-9 || !d.trace_bound_holds(1e-9) || !d.aligned_trace_bounds_hold(1e-9))
                    ++failures;
                if (p < oracle_pairs)
                {
                    const oracle_report rep = random_unitary_oracle(t.x, t.y, oracle_trials, seed + 1000 * n + p);
                    worst_oracle = std::max(worst_oracle, d.residual - rep.best_value);
                    if (d.residual > rep.best_value)
                        ++failures;
                    ++oracle_runs;
                }
            }
        }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = failures == 0 && o.seconds < 60.0;
        o.detail = std::to_string(3 * pairs) + " pairs, |res - (4 - 2 Tr)| <= " + detail::g(worst_residual) +
                   ", max(Tr - bound) = " + detail::g(worst_trace) + ", aligned trace in [" + detail::fmt("%.6f", min_aligned) +
                   ", " + detail::fmt("%.6f", max_aligned) + "], " + std::to_string(oracle_runs) + " oracle runs x " +
                   std::to_string(oracle_trials) + " trials, max(solver - oracle) = " + detail::g(worst_oracle);
        return o;
    }

    // 6. Aligned users: the non-reciprocal solution is exact and matches the reciprocal scheme
    inline outcome aligned_users()
    {
        outcome o{6, "aligned users", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        double worst_res = 0.0, worst_gap = 0.0;
        scenario_config cfg;
        const auto grid = angle_grid(cfg.sweep_points);
        for (bool ss : {false, true})
            for (double phi : grid)
            {
                cfg.phi_itu = cfg.phi_rdi = phi;
                const channel_set ch = build_channels(cfg);
                const ris_solution nr = nonreciprocal_design(ch, ss);
                const ris_solution rc = reciprocal_design(cfg, ch, ss);
                const auto a = normalized_strengths(ch, nr.theta, ss), b = normalized_strengths(ch, rc.theta, ss);
                worst_res = std::max(worst_res, nr.diagnostics->residual);
                worst_gap = std::max({worst_gap, std::abs(a.p_u_norm - b.p_u_norm), std::abs(a.p_d_norm - b.p_d_norm)});
            }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = worst_res <= 1e-9 && worst_gap <= 1e-9;
        o.detail = std::to_string(2 * grid.size()) + " cases, max residual = " + detail::g(worst_res) +
                   ", max strength gap = " + detail::g(worst_gap);
        return o;
    }

    // 7. General, self-interference-aware and self-interference-free channel models agree
    inline outcome model_hierarchy(std::uint64_t seed = 7)
    {
        outcome o{7, "model-hierarchy equivalence", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        std::size_t skipped = 0;
        for (std::size_t n : {2u, 4u, 8u})
        {
            const oracle_report rep = model_consistency_check({1, 1, n, 1, 1}, seed, 100);
            worst = std::max(worst, rep.best_value);
            skipped += rep.skipped;
        }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = worst <= 1e-9 && skipped == 0 && o.seconds < 10.0;
        o.detail = "300 trials, max deviation = " + detail::g(worst) + ", skipped = " + std::to_string(skipped);
        return o;
    }

    // 8. The closed form matches an exhaustive search over diagonal phases
    inline outcome closed_form_vs_grid()
    {
        outcome o{8, "closed form vs phase grid", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        scenario_config cfg;
        cfg.n_i = 2;
        for (bool ss : {false, true})
            for (int k = 1; k < 12; ++k)
            {
                cfg.phi_itu = std::numbers::pi * k / 12.0;
                const channel_set ch = build_channels(cfg);
                const cmat m = effective_scattering(reciprocal_design(cfg, ch, ss).theta, ss);
                const double cf = std::norm(bilinear(ch.h_bi, m, ch.h_itu));
                const oracle_report rep = phase_grid_oracle(ch, 360, ss);
                worst = std::max(worst, std::abs(cf - rep.best_value) / rep.best_value);
            }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = worst <= 1e-3;
        o.detail = "22 cases, max relative gap = " + detail::g(worst);
        return o;
    }

    // 9. Only the non-reciprocal scheme points its reflected downlink beam at the downlink user.
    // Decided on the SS-free patterns; with SS the specular lobe of the structural scattering is as
    // strong as the designed lobe, so those argmax locations are reported without being scored.
    inline outcome beam_pointing()
    {
        outcome o{9, "beam-pattern pointing", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::string info;
        for (const char *id : {"fig4", "fig5"})
        {
            const experiment_output out = run_sweep(scenario_config{}, id);
            const bool scored = !out.config.eval_with_ss;
            const double step = std::numbers::pi / static_cast<double>(out.config.sweep_points - 1);
            for (const auto &b : out.beams)
            {
                if (std::abs(b.phi_itu - 2.0 * std::numbers::pi / 3.0) > 1e-12)
                    continue;
                const double peak = b.patterns.grid[detail::argmax(b.patterns.p_d_ref)];
                const bool on_target = std::abs(peak - out.config.phi_rdi) <= step + 1e-12;
                if (scored)
                    ok = ok && on_target == (b.scheme == scheme_nonreciprocal);
                info += std::string(info.empty() ? "" : ", ") + id + (scored ? " " : " (with SS, not scored) ") + b.scheme +
                        " peak " + detail::fmt("%.2f", svg::deg(peak)) + " deg";
            }
        }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = ok;
        o.detail = info + " (target 90 deg)";
        return o;
    }

    // 10. Rate behavior at the two degenerate geometries
    inline outcome rate_reproduction()
    {
        outcome o{10, "rate reproduction", false, 0.0, ""};
        const auto t0 = std::chrono::steady_clock::now();

        // Uplink user in the BS direction: the downlink beam delivers uplink interference as well
        scenario_config a = apply_preset(scenario_config{}, find_preset("fig9", scenario_config{}));
        a.phi_itu = a.phi_bi;
        const channel_set cha = build_channels(a);
        const link_metrics la = rates(cha, nonreciprocal_design(cha, a.design_with_ss).theta, a, a.eval_with_ss);
        const double expected = std::pow(a.d_bi / a.d_itu, a.epsilon) * a.p_u / a.p_d;
        const double interference_ratio = 1.0 / la.sir_d;
        const bool ok_a = std::abs(interference_ratio - expected) <= 0.01 * expected && la.r_d < 0.1;

        // Aligned users with SS
        scenario_config b = apply_preset(scenario_config{}, find_preset("fig10a", scenario_config{}));
        b.phi_itu = b.phi_rdi = std::numbers::pi / 2.0;
        const designed_pair d = design_both(b);
        const double rd_rec = rates(d.channels, d.reciprocal.theta, b, b.eval_with_ss).r_d;
        const double rd_non = rates(d.channels, d.nonreciprocal.theta, b, b.eval_with_ss).r_d;
        const bool ok_b = rd_rec < 0.1 && rd_non < 0.1;

        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.passed = ok_a && ok_b;
        o.detail = "interference/signal = " + detail::fmt("%.6f", interference_ratio) + " (expected " + detail::fmt("%.6f", expected) +
                   "), R_D = " + detail::g(la.r_d) + "; aligned R_D = " + detail::g(rd_rec) + " / " + detail::g(rd_non);
        return o;
    }

    inline std::vector<std::function<outcome()>> all_checks()
    {
        return {specular_maximum, no_ss_ceiling, ss_gain_factor, design_without_evaluate_with,
                [] { return projection_suite(); }, aligned_users, [] { return model_hierarchy(); },
                closed_form_vs_grid, beam_pointing, rate_reproduction};
    }

    inline std::string format(const outcome &o)
    {
        char head[96];
        std::snprintf(head, sizeof head, "%s [%2d] %-36s %8.3f s  ", o.passed ? "PASS" : "FAIL", o.id, o.name.c_str(), o.seconds);
        return head + o.detail;
    }

    // Runs every check, printing one line each; returns the number of failures
    template <typename Out>
    std::size_t run_all(Out &&print)
    {
        std::size_t failed = 0;
        int id = 0;
        for (const auto &check : all_checks())
        {
            outcome o{++id, "criterion " + std::to_string(id), false, 0.0, ""};
            try
            {
                o = check();
            }
            catch (const std::exception &e)
            {
                o.passed = false;
                o.detail = std::string("exception: ") + e.what();
            }
            failed += o.passed ? 0 : 1;
            print(format(o));
        }
        return failed;
    }
}

#endif
