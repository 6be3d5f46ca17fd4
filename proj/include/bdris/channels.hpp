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

#ifndef BDRIS_CHANNELS_HPP
#define BDRIS_CHANNELS_HPP

// Line-of-sight channels for the single-antenna full-duplex case: one full-duplex base station
// sharing its antenna between transmit and receive, one uplink user, one downlink user and a
// uniform linear RIS with half-wavelength spacing.

#include "error.hpp"
#include "matrix.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace bdris
{
    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

    // Geometry, link budget and experiment switches. All values in linear SI units except
    // zeta0_db, which is kept in dB as it appears in configs.
    struct scenario_config
    {
        std::size_t n_i = 64;                         // RIS elements
        double phi_bi = std::numbers::pi / 6.0;       // Base station angle seen from the RIS [rad]
        double phi_rdi = std::numbers::pi / 2.0;      // Downlink user angle [rad]
        double phi_itu = 2.0 * std::numbers::pi / 3.0; // Uplink user angle [rad]
        double d_bi = 30.0;                           // [m]
        double d_rdi = 5.0;                           // [m]
        double d_itu = 5.0;                           // [m]
        double zeta0_db = -30.0;                      // Attenuation at the reference distance [dB]
        double d0 = 1.0;                              // Reference distance [m]
        double epsilon = 2.0;                         // Path-loss exponent
        double p_d = 0.5;                             // Base station transmit power [W]
        double p_u = 0.5;                             // Uplink user transmit power [W]
        double sigma_d2 = 1e-11;                      // Noise at the downlink user [W] (-80 dBm)
        double sigma_u2 = 1e-11;                      // Noise at the base station [W] (-80 dBm)
        bool design_with_ss = true;                   // Design Theta with structural scattering
        bool eval_with_ss = true;                     // Evaluate metrics with structural scattering
        std::size_t sweep_points = 721;
        std::uint64_t seed = 1;

        double zeta0() const { return db_to_linear(zeta0_db); }

        // Throws error_category::config naming the first violated constraint
        void validate() const
        {
            auto bad = [](const std::string &what)
            { fail(error_category::config, "invalid scenario: " + what); };
            auto angle = [&](double v, const char *name)
            {
                if (!(v >= 0.0 && v <= std::numbers::pi))
                    bad(std::string(name) + " = " + std::to_string(v) + " must lie in [0, pi]");
            };
            auto positive = [&](double v, const char *name)
            {
                if (!(v > 0.0) || !std::isfinite(v))
                    bad(std::string(name) + " = " + std::to_string(v) + " must be positive");
            };
            if (n_i < 1)
                bad("n_i must be at least 1");
            angle(phi_bi, "phi_bi");
            angle(phi_rdi, "phi_rdi");
            angle(phi_itu, "phi_itu");
            positive(d_bi, "d_bi");
            positive(d_rdi, "d_rdi");
            positive(d_itu, "d_itu");
            positive(d0, "d0");
            positive(p_d, "p_d");
            positive(p_u, "p_u");
            positive(sigma_d2, "sigma_d2");
            positive(sigma_u2, "sigma_u2");
            if (!std::isfinite(zeta0_db))
                bad("zeta0_db must be finite");
            if (!std::isfinite(epsilon))
                bad("epsilon must be finite");
            if (sweep_points < 2)
                bad("sweep_points must be at least 2");
        }
    };

    // Channels of the case study. The base station antenna is shared, so the BS->RIS and
    // RIS->BS links are the same vector h_bi.
    struct channel_set
    {
        cvec h_bi, h_rdi, h_itu;          // With large-scale gain
        cvec hbar_bi, hbar_rdi, hbar_itu; // Unit-norm small-scale parts
        double zeta_bi = 1.0, zeta_rdi = 1.0, zeta_itu = 1.0;

        std::size_t n_i() const noexcept { return h_bi.size(); }
    };

    // Uniform linear array response with half-wavelength spacing, element k = exp(j pi k cos(phi)) / sqrt(N)
    inline cvec steering_vector(double phi, std::size_t n_i)
    {
        if (n_i < 1)
            fail(error_category::argument, "steering_vector: n_i must be at least 1");
        const double scale = 1.0 / std::sqrt(static_cast<double>(n_i));
        const double c = std::cos(phi);
        cvec a(n_i);
        for (std::size_t k = 0; k < n_i; ++k)
            a[k] = std::polar(scale, std::numbers::pi * static_cast<double>(k) * c);
        return a;
    }

    // zeta0 (d / d0)^-epsilon
    inline double path_loss(double d, double zeta0, double d0, double epsilon)
    {
        if (!(d > 0.0) || !(d0 > 0.0))
            fail(error_category::argument, "path_loss: distances must be positive");
        return zeta0 * std::pow(d / d0, -epsilon);
    }

    inline channel_set build_channels(const scenario_config &cfg)
    {
        cfg.validate();
        const double z0 = cfg.zeta0();
        channel_set ch;
        ch.zeta_bi = path_loss(cfg.d_bi, z0, cfg.d0, cfg.epsilon);
        ch.zeta_rdi = path_loss(cfg.d_rdi, z0, cfg.d0, cfg.epsilon);
        ch.zeta_itu = path_loss(cfg.d_itu, z0, cfg.d0, cfg.epsilon);
        ch.hbar_bi = steering_vector(cfg.phi_bi, cfg.n_i);
        ch.hbar_rdi = steering_vector(cfg.phi_rdi, cfg.n_i);
        ch.hbar_itu = steering_vector(cfg.phi_itu, cfg.n_i);
        ch.h_bi = scaled(ch.hbar_bi, std::sqrt(ch.zeta_bi));
        ch.h_rdi = scaled(ch.hbar_rdi, std::sqrt(ch.zeta_rdi));
        ch.h_itu = scaled(ch.hbar_itu, std::sqrt(ch.zeta_itu));
        return ch;
    }

    // Theta - I when structural scattering is modeled, Theta otherwise
    inline cmat effective_scattering(const cmat &theta, bool with_ss)
    {
        if (!theta.is_square())
            fail(error_category::argument, "effective_scattering: Theta is not square");
        return with_ss ? theta - cmat::identity(theta.rows()) : theta;
    }

    // End-to-end 2x2 channel between [BS transmit, uplink user] and [BS receive, downlink user]:
    //   [ loop interference     user -> RIS -> BS   ]
    //   [ BS -> RIS -> user     user -> RIS -> user ]
    inline cmat fd_channel_matrix(const channel_set &ch, const cmat &theta, bool with_ss)
    {
        if (theta.rows() != ch.n_i() || theta.cols() != ch.n_i())
            fail(error_category::argument, "fd_channel_matrix: Theta must be " + std::to_string(ch.n_i()) + "x" +
                                               std::to_string(ch.n_i()));
        const cmat m = effective_scattering(theta, with_ss);
        return cmat{{bilinear(ch.h_bi, m, ch.h_bi), bilinear(ch.h_bi, m, ch.h_itu)},
                    {bilinear(ch.h_rdi, m, ch.h_bi), bilinear(ch.h_rdi, m, ch.h_itu)}};
    }
}

#endif
