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

#ifndef BDRIS_METRICS_HPP
#define BDRIS_METRICS_HPP

#include "channels.hpp"
#include "error.hpp"
#include "matrix.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace bdris
{
    // Beam patterns over a probe grid. "Impinging" probes the incoming direction with the
    // receiving end fixed, "reflected" probes the outgoing direction with the source fixed.
    struct beam_pattern_set
    {
        std::vector<double> grid; // [rad]
        std::vector<double> p_d_imp, p_d_ref, p_u_imp, p_u_ref;
    };

    struct link_metrics
    {
        double p_u_norm = 0.0, p_d_norm = 0.0; // Normalized channel strengths
        double r_u = 0.0, r_d = 0.0;           // [bit/s/Hz]
        double sir_u = 0.0, sir_d = 0.0;       // Signal-to-interference ratios (inf without interference)
    };

    // n uniformly spaced angles covering [0, pi], endpoints included
    inline std::vector<double> angle_grid(std::size_t n)
    {
        if (n < 2)
            fail(error_category::argument, "angle_grid: at least two points are required");
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i)
            g[i] = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
        return g;
    }

    namespace detail
    {
        inline void require_theta(const channel_set &ch, const cmat &theta, const char *who)
        {
            if (theta.rows() != ch.n_i() || theta.cols() != ch.n_i())
                fail(error_category::argument, std::string(who) + ": Theta dimension does not match the channels");
        }

        inline double power(std::span<const cplx> a, const cmat &m, std::span<const cplx> b)
        {
            return std::norm(bilinear(a, m, b));
        }
    }

    inline beam_pattern_set beam_patterns(const channel_set &ch, const cmat &theta, bool eval_with_ss,
                                          const std::vector<double> &grid)
    {
        detail::require_theta(ch, theta, "beam_patterns");
        const cmat m = effective_scattering(theta, eval_with_ss);
        // With structural scattering every pattern is divided by the uplink bound (|hbar_itu^T hbar_bi| + 1)^2
        const double den = eval_with_ss ? std::pow(std::abs(dot_t(ch.hbar_itu, ch.hbar_bi)) + 1.0, 2) : 1.0;

        // Precompute M hbar and hbar^T M so each probe is a single inner product
        const cvec m_bi = m * ch.hbar_bi;
        const cvec m_itu = m * ch.hbar_itu;
        const cvec rdi_m = m.transpose() * ch.hbar_rdi;
        const cvec bi_m = m.transpose() * ch.hbar_bi;

        beam_pattern_set out;
        out.grid = grid;
        const std::size_t n = grid.size();
        out.p_d_imp.resize(n);
        out.p_d_ref.resize(n);
        out.p_u_imp.resize(n);
        out.p_u_ref.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!(grid[i] >= 0.0 && grid[i] <= std::numbers::pi))
                fail(error_category::argument, "beam_patterns: probe angles must lie in [0, pi]");
            const cvec a = steering_vector(grid[i], ch.n_i());
            out.p_d_imp[i] = std::norm(dot_t(rdi_m, a)) / den;
            out.p_d_ref[i] = std::norm(dot_t(a, m_bi)) / den;
            out.p_u_imp[i] = std::norm(dot_t(bi_m, a)) / den;
            out.p_u_ref[i] = std::norm(dot_t(a, m_itu)) / den;
        }
        return out;
    }

    struct normalized_strength
    {
        double p_u_norm = 0.0; // |hbar_bi^T M hbar_itu|^2
        double p_d_norm = 0.0; // |hbar_rdi^T M hbar_bi|^2
    };

    inline normalized_strength normalized_strengths(const channel_set &ch, const cmat &theta, bool eval_with_ss)
    {
        detail::require_theta(ch, theta, "normalized_strengths");
        const cmat m = effective_scattering(theta, eval_with_ss);
        return {detail::power(ch.hbar_bi, m, ch.hbar_itu), detail::power(ch.hbar_rdi, m, ch.hbar_bi)};
    }

    // Powers and noise are taken from the scenario; the channels carry their large-scale gains
    inline link_metrics rates(const channel_set &ch, const cmat &theta, const scenario_config &cfg, bool eval_with_ss)
    {
        detail::require_theta(ch, theta, "rates");
        if (!(cfg.p_d >= 0.0) || !(cfg.p_u >= 0.0) || !(cfg.sigma_d2 > 0.0) || !(cfg.sigma_u2 > 0.0))
            fail(error_category::argument, "rates: powers must be nonnegative and noise positive");
        const cmat m = effective_scattering(theta, eval_with_ss);

        const double sig_d = cfg.p_d * detail::power(ch.h_rdi, m, ch.h_bi);  // BS -> RIS -> downlink user
        const double int_d = cfg.p_u * detail::power(ch.h_rdi, m, ch.h_itu); // uplink user -> RIS -> downlink user
        const double sig_u = cfg.p_u * detail::power(ch.h_bi, m, ch.h_itu);  // uplink user -> RIS -> BS
        const double int_u = cfg.p_d * detail::power(ch.h_bi, m, ch.h_bi);   // loop interference at the BS

        constexpr double inf = std::numeric_limits<double>::infinity();
        const normalized_strength ns = normalized_strengths(ch, theta, eval_with_ss);
        link_metrics lm;
        lm.p_u_norm = ns.p_u_norm;
        lm.p_d_norm = ns.p_d_norm;
        lm.r_d = std::log2(1.0 + sig_d / (int_d + cfg.sigma_d2));
        lm.r_u = std::log2(1.0 + sig_u / (int_u + cfg.sigma_u2));
        lm.sir_d = int_d > 0.0 ? sig_d / int_d : inf;
        lm.sir_u = int_u > 0.0 ? sig_u / int_u : inf;
        return lm;
    }
}

#endif
