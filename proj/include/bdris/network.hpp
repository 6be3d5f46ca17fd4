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

#ifndef BDRIS_NETWORK_HPP
#define BDRIS_NETWORK_HPP

// Multiport network algebra for an RIS aided full-duplex link.
//
// The N-port network is ordered as [transmitters | RIS elements | receivers], with the
// transmitter group split into the base station (T_B) and uplink user (T_U) ports, and the
// receiver group into the base station (R_B) and downlink user (R_D) ports.

#include "error.hpp"
#include "matrix.hpp"

#include <cstddef>
#include <string>

namespace bdris
{
    inline constexpr double default_z0 = 50.0; // Reference impedance [ohm]

    struct port_layout
    {
        std::size_t n_tb = 1; // Base station transmit ports
        std::size_t n_tu = 1; // Uplink user transmit ports
        std::size_t n_i = 1;  // RIS ports
        std::size_t n_rb = 1; // Base station receive ports
        std::size_t n_rd = 1; // Downlink user receive ports

        std::size_t n_t() const noexcept { return n_tb + n_tu; }
        std::size_t n_r() const noexcept { return n_rb + n_rd; }
        std::size_t n() const noexcept { return n_t() + n_i + n_r(); }

        // First index of each port group in the full network
        std::size_t t_begin() const noexcept { return 0; }
        std::size_t i_begin() const noexcept { return n_t(); }
        std::size_t r_begin() const noexcept { return n_t() + n_i; }

        void validate() const
        {
            if (n_i < 1)
                fail(error_category::argument, "port_layout: at least one RIS port is required");
        }
    };

    // Z-parameter blocks of the full network, in ohm
    struct impedance_blocks
    {
        cmat z_tt, z_ti, z_tr;
        cmat z_it, z_ii, z_ir;
        cmat z_rt, z_ri, z_rr;
        double z0 = default_z0;

        void validate(const port_layout &l) const
        {
            l.validate();
            if (!(z0 > 0.0))
                fail(error_category::argument, "impedance_blocks: reference impedance must be positive");
            const std::size_t n_t = l.n_t(), n_i = l.n_i, n_r = l.n_r();
            auto check = [](const cmat &m, std::size_t r, std::size_t c, const char *name)
            {
                if (m.rows() != r || m.cols() != c)
                    fail(error_category::argument, std::string("impedance_blocks: ") + name + " has shape " +
                                                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                                       ", expected " + std::to_string(r) + "x" + std::to_string(c));
            };
            check(z_tt, n_t, n_t, "z_tt");
            check(z_ti, n_t, n_i, "z_ti");
            check(z_tr, n_t, n_r, "z_tr");
            check(z_it, n_i, n_t, "z_it");
            check(z_ii, n_i, n_i, "z_ii");
            check(z_ir, n_i, n_r, "z_ir");
            check(z_rt, n_r, n_t, "z_rt");
            check(z_ri, n_r, n_i, "z_ri");
            check(z_rr, n_r, n_r, "z_rr");
        }

        // Matched, coupling-free network: all diagonal blocks z0*I and every coupling block zero
        static impedance_blocks matched(const port_layout &l, double z0 = default_z0)
        {
            const std::size_t n_t = l.n_t(), n_i = l.n_i, n_r = l.n_r();
            impedance_blocks zb;
            zb.z0 = z0;
            zb.z_tt = cmat::identity(n_t) * cplx(z0);
            zb.z_ti = cmat(n_t, n_i);
            zb.z_tr = cmat(n_t, n_r);
            zb.z_it = cmat(n_i, n_t);
            zb.z_ii = cmat::identity(n_i) * cplx(z0);
            zb.z_ir = cmat(n_i, n_r);
            zb.z_rt = cmat(n_r, n_t);
            zb.z_ri = cmat(n_r, n_i);
            zb.z_rr = cmat::identity(n_r) * cplx(z0);
            return zb;
        }

        cmat assemble(const port_layout &l) const
        {
            validate(l);
            cmat z(l.n(), l.n());
            const std::size_t t = l.t_begin(), i = l.i_begin(), r = l.r_begin();
            z.set_block(t, t, z_tt);
            z.set_block(t, i, z_ti);
            z.set_block(t, r, z_tr);
            z.set_block(i, t, z_it);
            z.set_block(i, i, z_ii);
            z.set_block(i, r, z_ir);
            z.set_block(r, t, z_rt);
            z.set_block(r, i, z_ri);
            z.set_block(r, r, z_rr);
            return z;
        }
    };

    // S-parameter blocks under the matched, unilateral, coupling-free assumptions,
    // plus the intermediates A = [A_II A_IR; A_RI A_RR] and B they are built from
    struct derived_scattering
    {
        cmat s_tt, s_ti, s_it, s_ii, s_rt, s_ri;
        cmat a_ii, a_ir, a_ri, a_rr, b;
    };

    // Terminations of the network: source reflection Gamma_T, load reflection Gamma_R and the
    // RIS scattering matrix Theta. Spectral radius constraints are left to the caller.
    struct termination_spec
    {
        cmat gamma_t;
        cmat gamma_r;
        cmat theta;

        // Matched sources and loads (Gamma_T = 0, Gamma_R = 0)
        static termination_spec matched(const port_layout &l, cmat theta)
        {
            return {cmat(l.n_t(), l.n_t()), cmat(l.n_r(), l.n_r()), std::move(theta)};
        }

        // blkdiag(Gamma_T, Theta, Gamma_R)
        cmat assemble() const
        {
            const std::size_t nt = gamma_t.rows(), ni = theta.rows(), nr = gamma_r.rows();
            cmat g(nt + ni + nr, nt + ni + nr);
            g.set_block(0, 0, gamma_t);
            g.set_block(nt, nt, theta);
            g.set_block(nt + ni, nt + ni, gamma_r);
            return g;
        }
    };

    // S = (Z + z0 I)^-1 (Z - z0 I)
    inline cmat z_to_s(const cmat &z, double z0 = default_z0)
    {
        if (!z.is_square())
            fail(error_category::argument, "z_to_s: impedance matrix is not square");
        if (!(z0 > 0.0))
            fail(error_category::argument, "z_to_s: reference impedance must be positive");
        const cmat eye = cmat::identity(z.rows()) * cplx(z0);
        try
        {
            return solve(z + eye, z - eye);
        }
        catch (const singular_matrix &e)
        {
            fail(error_category::conversion, std::string("z_to_s: (Z + z0 I) is singular: ") + e.what());
        }
    }

    // Z = z0 (I - S)^-1 (I + S)
    inline cmat s_to_z(const cmat &s, double z0 = default_z0)
    {
        if (!s.is_square())
            fail(error_category::argument, "s_to_z: scattering matrix is not square");
        if (!(z0 > 0.0))
            fail(error_category::argument, "s_to_z: reference impedance must be positive");
        const cmat eye = cmat::identity(s.rows());
        try
        {
            return solve(eye - s, eye + s) * cplx(z0);
        }
        catch (const singular_matrix &e)
        {
            fail(error_category::conversion, std::string("s_to_z: (I - S) is singular: ") + e.what());
        }
    }

    namespace detail
    {
        template <typename F>
        cmat model_inverse(F &&make, const char *what)
        {
            try
            {
                return inverse(make());
            }
            catch (const singular_matrix &e)
            {
                fail(error_category::model, std::string(what) + " is singular: " + e.what());
            }
        }
    }

    // Channel of the terminated network, mapping transmitter voltages to receiver voltages:
    //   H = (Gamma_R + I) T_RT (I + Gamma_T T_TT + T_TT)^-1,  T = S (I - Gamma S)^-1
    inline cmat general_channel(const cmat &s, const termination_spec &term, const port_layout &layout)
    {
        layout.validate();
        const std::size_t n = layout.n(), nt = layout.n_t(), nr = layout.n_r();
        if (s.rows() != n || s.cols() != n)
            fail(error_category::argument, "general_channel: S must be " + std::to_string(n) + "x" + std::to_string(n));
        if (term.gamma_t.rows() != nt || term.gamma_t.cols() != nt || term.gamma_r.rows() != nr ||
            term.gamma_r.cols() != nr || term.theta.rows() != layout.n_i || term.theta.cols() != layout.n_i)
            fail(error_category::argument, "general_channel: termination dimensions do not match the port layout");

        const cmat gamma = term.assemble();
        const cmat inner = detail::model_inverse([&]
                                                 { return cmat::identity(n) - gamma * s; },
                                                 "general_channel: (I - Gamma S)");
        const cmat t = s * inner;
        const cmat t_rt = t.block(layout.r_begin(), 0, nr, nt);
        const cmat t_tt = t.block(0, 0, nt, nt);
        const cmat outer = detail::model_inverse([&]
                                                 { return cmat::identity(nt) + term.gamma_t * t_tt + t_tt; },
                                                 "general_channel: (I + Gamma_T T_TT + T_TT)");
        return (term.gamma_r + cmat::identity(nr)) * t_rt * outer;
    }

    namespace detail
    {
        inline void require_block(const cmat &m, const cmat &expected, double tol, const char *what)
        {
            if (frobenius_norm(m - expected) > tol)
                fail(error_category::assumption, std::string("scattering_from_impedance_result1: ") + what);
        }
    }

    // Closed-form S-parameter blocks for a network that is perfectly matched, free of mutual
    // coupling and unilateral except for the base-station self-interference block Z_{T_B R_B}
    inline derived_scattering scattering_from_impedance_result1(const impedance_blocks &zb, const port_layout &layout)
    {
        zb.validate(layout);
        const double z0 = zb.z0;
        const std::size_t n_t = layout.n_t(), n_i = layout.n_i, n_r = layout.n_r();
        const double tol = 1e-12 * z0;

        detail::require_block(zb.z_tt, cmat::identity(n_t) * cplx(z0), tol, "z_tt must equal z0 I");
        detail::require_block(zb.z_ii, cmat::identity(n_i) * cplx(z0), tol, "z_ii must equal z0 I");
        detail::require_block(zb.z_rr, cmat::identity(n_r) * cplx(z0), tol, "z_rr must equal z0 I");
        detail::require_block(zb.z_ti, cmat(n_t, n_i), tol, "z_ti must be zero");
        detail::require_block(zb.z_ir, cmat(n_i, n_r), tol, "z_ir must be zero");
        {
            // Only the T_B x R_B block of z_tr may be nonzero
            cmat allowed(n_t, n_r);
            allowed.set_block(0, 0, zb.z_tr.block(0, 0, layout.n_tb, layout.n_rb));
            detail::require_block(zb.z_tr, allowed, tol, "z_tr may only be nonzero in its T_B x R_B block");
        }

        const cplx c1 = 1.0 / (2.0 * z0);
        const cplx c2 = 1.0 / (4.0 * z0 * z0);
        const cplx c3 = 1.0 / (8.0 * z0 * z0 * z0);

        derived_scattering ds;
        ds.b = cmat::identity(n_r) * cplx(2.0 * z0) - zb.z_rt * zb.z_tr * c1 + zb.z_ri * zb.z_it * zb.z_tr * c2;
        const cmat b_inv = detail::model_inverse([&]
                                                 { return ds.b; },
                                                 "scattering_from_impedance_result1: B");
        const cmat zit_ztr_binv = zb.z_it * zb.z_tr * b_inv;

        ds.a_ii = cmat::identity(n_i) * c1 - zit_ztr_binv * zb.z_ri * c3;
        ds.a_ir = zit_ztr_binv * c2;
        ds.a_ri = -(b_inv * zb.z_ri) * c1;
        ds.a_rr = b_inv;

        // Rows of A acting on the receiver group; Z_TR only couples to those
        const cmat ar_zt = ds.a_ri * zb.z_it + ds.a_rr * zb.z_rt;
        ds.s_tt = -(zb.z_tr * ar_zt) * c1;
        ds.s_ti = -(zb.z_tr * ds.a_rr * zb.z_ri) * c1;
        ds.s_it = ds.a_ii * zb.z_it + ds.a_ir * zb.z_rt;
        ds.s_ii = ds.a_ir * zb.z_ri;
        ds.s_rt = ar_zt;
        ds.s_ri = ds.a_rr * zb.z_ri;
        return ds;
    }

    // H = (S_RT + S_RI (I - Theta S_II)^-1 Theta S_IT) (I + S_TT + S_TI (I - Theta S_II)^-1 Theta S_IT)^-1
    inline cmat simplified_channel_result1(const derived_scattering &ds, const cmat &theta)
    {
        const std::size_t n_i = ds.s_ii.rows();
        if (theta.rows() != n_i || theta.cols() != n_i)
            fail(error_category::argument, "simplified_channel_result1: Theta dimension does not match S_II");
        const std::size_t n_t = ds.s_tt.rows();
        const cmat inner = detail::model_inverse([&]
                                                 { return cmat::identity(n_i) - theta * ds.s_ii; },
                                                 "simplified_channel_result1: (I - Theta S_II)");
        const cmat reflected = inner * theta * ds.s_it;
        const cmat outer = detail::model_inverse([&]
                                                 { return cmat::identity(n_t) + ds.s_tt + ds.s_ti * reflected; },
                                                 "simplified_channel_result1: (I + S_TT + S_TI (...) Theta S_IT)");
        return (ds.s_rt + ds.s_ri * reflected) * outer;
    }

    // H = H_RT + H_RI (Theta - I) H_IT, with the structural-scattering term -H_RI H_IT made explicit
    inline cmat simplified_channel_result2(const cmat &h_rt, const cmat &h_ri, const cmat &h_it, const cmat &theta)
    {
        if (theta.rows() != theta.cols() || h_ri.cols() != theta.rows() || h_it.rows() != theta.rows() ||
            h_rt.rows() != h_ri.rows() || h_rt.cols() != h_it.cols())
            fail(error_category::argument, "simplified_channel_result2: dimension mismatch");
        return h_rt + h_ri * (theta - cmat::identity(theta.rows())) * h_it;
    }

    // Inter-device channels implied by an impedance description: H_XY = Z_XY / (2 z0)
    struct device_channels
    {
        cmat h_rt, h_ri, h_it;

        static device_channels from_impedance(const impedance_blocks &zb)
        {
            const cplx c = 1.0 / (2.0 * zb.z0);
            return {zb.z_rt * c, zb.z_ri * c, zb.z_it * c};
        }
    };
}

#endif
