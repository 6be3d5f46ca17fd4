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

#ifndef BDRIS_ORACLES_HPP
#define BDRIS_ORACLES_HPP

// Brute-force and sampling oracles. They share no code path with the solvers they check
// beyond the matrix kernels: the Procrustes oracle samples unitaries, the phase oracle
// enumerates diagonal configurations, and the consistency check compares three channel models
// built from the same random impedance matrix.

#include "channels.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "network.hpp"
#include "optimizers.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace bdris
{
    struct oracle_report
    {
        double best_value = 0.0;
        std::size_t trials = 0;
        std::uint64_t seed = 0;
        std::size_t skipped = 0;
        std::map<std::string, double> details; // Description of the best candidate and side results
    };

    // Seedable generator shared by all oracles: std::mt19937_64 (19937-bit state, 312 64-bit words),
    // with uniform and Gaussian variates derived here rather than through <random> distributions,
    // whose algorithms are implementation-defined. Identical seeds give identical draws on any
    // conforming standard library.
    class oracle_rng
    {
    public:
        explicit oracle_rng(std::uint64_t seed) : engine_(seed) {}

        // Independent stream for (seed, index)
        oracle_rng(std::uint64_t seed, std::uint64_t index)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
            engine_.seed(seq);
        }

        // Uniform on [0, 1) with 53 random bits
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        // Circularly symmetric complex Gaussian with unit variance (Box-Muller)
        cplx complex_normal()
        {
            const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
            const double u2 = uniform();
            const double r = std::sqrt(-std::log(u1)); // sqrt(-2 ln u1) / sqrt(2)
            return std::polar(r, 2.0 * std::numbers::pi * u2);
        }

        cmat complex_normal_matrix(std::size_t rows, std::size_t cols)
        {
            cmat m(rows, cols);
            for (auto &x : m.data())
                x = complex_normal();
            return m;
        }

    private:
        std::mt19937_64 engine_;
    };

    // Orthonormalizes the columns of a (tall or square) matrix with Gram-Schmidt; the implied
    // triangular factor has a real positive diagonal, which makes the result Haar distributed
    // when the input is i.i.d. complex Gaussian.
    inline cmat orthonormalize_columns(const cmat &g)
    {
        const std::size_t n = g.rows(), m = g.cols();
        if (m > n)
            fail(error_category::argument, "orthonormalize_columns: more columns than rows");
        cmat q(n, m);
        std::vector<cvec> cols;
        for (std::size_t j = 0; j < m; ++j)
        {
            cvec v = g.col(j);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto &c : cols)
                {
                    const cplx p = dot_h(c, v);
                    for (std::size_t t = 0; t < n; ++t)
                        v[t] -= p * c[t];
                }
            const double nv = norm2(v);
            if (!(nv > 0.0))
                fail(error_category::model, "orthonormalize_columns: rank deficient input");
            for (auto &x : v)
                x /= nv;
            q.set_col(j, v);
            cols.push_back(std::move(v));
        }
        return q;
    }

    inline cmat haar_unitary(std::size_t n, oracle_rng &rng)
    {
        return orthonormalize_columns(rng.complex_normal_matrix(n, n));
    }

    // Random N x 2 matrix with unit-norm columns
    inline cmat random_unit_columns(std::size_t n, oracle_rng &rng)
    {
        cmat m = rng.complex_normal_matrix(n, 2);
        for (std::size_t c = 0; c < 2; ++c)
        {
            cvec v = m.col(c);
            const double nv = norm2(v);
            for (auto &x : v)
                x /= nv;
            m.set_col(c, v);
        }
        return m;
    }

    // Minimum of ||X - Theta Y||_F^2 over `trials` Haar-random unitaries.
    //
    // Only Theta restricted to range(Y) enters the objective. With Y = Q_Y R_Y and Theta Haar,
    // Theta Q_Y is distributed as the leading columns of a Haar unitary, i.e. the orthonormalized
    // leading columns of a Gaussian matrix, so each trial draws just those columns.
    inline oracle_report random_unitary_oracle(const cmat &x, const cmat &y, std::size_t trials, std::uint64_t seed)
    {
        if (trials < 1)
            fail(error_category::argument, "random_unitary_oracle: trials must be at least 1");
        if (x.cols() != 2 || y.cols() != 2 || x.rows() != y.rows() || x.rows() < 1)
            fail(error_category::argument, "random_unitary_oracle: X and Y must both be N x 2");

        const std::size_t n = x.rows();
        const detail::thin_qr qy(y);
        const cmat &ry = qy.r;
        const std::size_t k = ry.rows();

        oracle_rng rng(seed);
        oracle_report rep;
        rep.trials = trials;
        rep.seed = seed;
        rep.best_value = std::numeric_limits<double>::infinity();
        std::size_t best_trial = 0;
        for (std::size_t t = 0; t < trials; ++t)
        {
            const cmat frame = orthonormalize_columns(rng.complex_normal_matrix(n, k));
            const double r = std::pow(frobenius_norm(x - frame * ry), 2);
            if (r < rep.best_value)
            {
                rep.best_value = r;
                best_trial = t;
            }
        }
        rep.details["best_trial"] = static_cast<double>(best_trial);
        return rep;
    }

    // Exhaustive search over diagonal unimodular Theta with phases on a uniform grid of
    // `grid_per_element` steps, maximizing the uplink strength |h_bi^T M h_itu|^2 with
    // M = Theta - I (structural scattering) or Theta.
    inline oracle_report phase_grid_oracle(const channel_set &ch, std::size_t grid_per_element, bool with_ss)
    {
        const std::size_t n = ch.n_i();
        if (n < 1 || n > 3)
            fail(error_category::argument, "phase_grid_oracle: supports 1 to 3 RIS elements, got " + std::to_string(n));
        if (grid_per_element < 1)
            fail(error_category::argument, "phase_grid_oracle: grid_per_element must be at least 1");
        const double budget = std::pow(static_cast<double>(grid_per_element), static_cast<double>(n));
        if (budget > 1e8)
            fail(error_category::argument, "phase_grid_oracle: " + std::to_string(grid_per_element) + "^" +
                                               std::to_string(n) + " configurations exceed the budget of 1e8");

        // h_bi^T Theta h_itu = sum_k c_k e^{j theta_k}
        cvec c(n);
        for (std::size_t k = 0; k < n; ++k)
            c[k] = ch.h_bi[k] * ch.h_itu[k];
        const cplx direct = with_ss ? dot_t(ch.h_bi, ch.h_itu) : cplx{};
        cvec phasor(grid_per_element);
        for (std::size_t g = 0; g < grid_per_element; ++g)
            phasor[g] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(g) / static_cast<double>(grid_per_element));

        std::vector<std::size_t> idx(n, 0), best_idx(n, 0);
        double best = -1.0;
        std::size_t count = 0;
        while (true)
        {
            cplx s = -direct;
            for (std::size_t k = 0; k < n; ++k)
                s += c[k] * phasor[idx[k]];
            const double v = std::norm(s);
            ++count;
            if (v > best)
            {
                best = v;
                best_idx = idx;
            }
            std::size_t k = 0;
            while (k < n && ++idx[k] == grid_per_element)
                idx[k++] = 0;
            if (k == n)
                break;
        }

        oracle_report rep;
        rep.best_value = best;
        rep.trials = count;
        for (std::size_t k = 0; k < n; ++k)
            rep.details["theta_" + std::to_string(k)] =
                2.0 * std::numbers::pi * static_cast<double>(best_idx[k]) / static_cast<double>(grid_per_element);
        return rep;
    }

    // Random impedance blocks honoring matched ports, no mutual coupling and the unilateral
    // approximation. Coupling entries are complex Gaussian scaled by coupling_scale * z0; the
    // base-station self-interference block Z_{T_B R_B} is drawn only when requested.
    inline impedance_blocks random_impedance(const port_layout &l, oracle_rng &rng, bool self_interference,
                                             double coupling_scale = 1e-3, double z0 = default_z0)
    {
        impedance_blocks zb = impedance_blocks::matched(l, z0);
        const cplx s = coupling_scale * z0;
        zb.z_it = rng.complex_normal_matrix(l.n_i, l.n_t()) * s;
        zb.z_ri = rng.complex_normal_matrix(l.n_r(), l.n_i) * s;
        zb.z_rt = rng.complex_normal_matrix(l.n_r(), l.n_t()) * s;
        if (self_interference)
            zb.z_tr.set_block(0, 0, rng.complex_normal_matrix(l.n_tb, l.n_rb) * s);
        return zb;
    }

    // Compares the general terminated-network channel with the two reduced models over random
    // instances. best_value is the largest Frobenius deviation among the pairs that must agree:
    //   - with self-interference: general vs. reduced model with the B^-1 correction
    //   - without: general vs. both reduced models, and the two reduced models with each other
    // The gap between the general channel and the self-interference-free model in the presence of
    // self-interference is reported separately as details["si_model_gap"].
    inline oracle_report model_consistency_check(const port_layout &layout, std::uint64_t seed, std::size_t trials,
                                                 double coupling_scale = 1e-3)
    {
        if (trials < 1)
            fail(error_category::argument, "model_consistency_check: trials must be at least 1");
        layout.validate();

        oracle_report rep;
        rep.trials = trials;
        rep.seed = seed;
        double si_gap = 0.0, worst_rel = 0.0;
        std::size_t worst_trial = 0;

        for (std::size_t t = 0; t < trials; ++t)
        {
            oracle_rng rng(seed, t);
            try
            {
                const cmat theta = haar_unitary(layout.n_i, rng);
                const impedance_blocks with_si = random_impedance(layout, rng, true, coupling_scale);
                impedance_blocks without_si = with_si;
                without_si.z_tr = cmat(layout.n_t(), layout.n_r());

                const auto term = termination_spec::matched(layout, theta);
                double dev = 0.0, scale = 0.0;

                {
                    const cmat h_gen = general_channel(z_to_s(with_si.assemble(layout), with_si.z0), term, layout);
                    const cmat h_r1 = simplified_channel_result1(scattering_from_impedance_result1(with_si, layout), theta);
                    const auto dc = device_channels::from_impedance(with_si);
                    const cmat h_r2 = simplified_channel_result2(dc.h_rt, dc.h_ri, dc.h_it, theta);
                    dev = std::max(dev, frobenius_norm(h_gen - h_r1));
                    si_gap = std::max(si_gap, frobenius_norm(h_gen - h_r2));
                    scale = std::max(scale, frobenius_norm(h_gen));
                }
                {
                    const cmat h_gen = general_channel(z_to_s(without_si.assemble(layout), without_si.z0), term, layout);
                    const cmat h_r1 = simplified_channel_result1(scattering_from_impedance_result1(without_si, layout), theta);
                    const auto dc = device_channels::from_impedance(without_si);
                    const cmat h_r2 = simplified_channel_result2(dc.h_rt, dc.h_ri, dc.h_it, theta);
                    dev = std::max({dev, frobenius_norm(h_gen - h_r1), frobenius_norm(h_gen - h_r2),
                                    frobenius_norm(h_r1 - h_r2)});
                    scale = std::max(scale, frobenius_norm(h_gen));
                }
                if (dev > rep.best_value)
                {
                    rep.best_value = dev;
                    worst_trial = t;
                }
                if (scale > 0.0)
                    worst_rel = std::max(worst_rel, dev / scale);
            }
            catch (const error &e)
            {
                if (e.category() != error_category::model && e.category() != error_category::conversion)
                    throw;
                ++rep.skipped;
            }
        }
        rep.details["worst_trial"] = static_cast<double>(worst_trial);
        rep.details["max_relative_deviation"] = worst_rel;
        rep.details["si_model_gap"] = si_gap;
        return rep;
    }
}

#endif
