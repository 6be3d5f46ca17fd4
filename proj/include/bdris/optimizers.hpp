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

#ifndef BDRIS_OPTIMIZERS_HPP
#define BDRIS_OPTIMIZERS_HPP

// RIS configuration solvers.
//
// Reciprocal RIS: the diagonal closed form that maximizes the uplink channel strength for
// line-of-sight channels (a diagonal Theta is symmetric, hence reciprocal).
//
// Non-reciprocal RIS: the unitary Procrustes projection
//
//     Theta = argmin_{Theta^H Theta = I} || X - Theta Y ||_F^2
//
// whose columns ask Theta to map the BS channel onto the (phase aligned, conjugated) downlink
// user channel and the uplink user channel onto the conjugated BS channel at the same time.
// With X Y^H = U Sigma V^H the optimum is Theta = U V^H and the minimum is 4 - 2 Tr(Sigma).
//
// X Y^H has rank at most 2, so instead of a full N x N SVD we factor X = Q_X R_X and
// Y = Q_Y R_Y, take the SVD of the 2 x 2 core R_X R_Y^H and complete the thin singular bases.

#include "channels.hpp"
#include "error.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace bdris
{
    struct procrustes_diag
    {
        double sigma_trace = 0.0;           // Tr(Sigma) of X Y^H
        double residual = 0.0;              // ||X - Theta Y||_F^2
        std::array<double, 2> sv_x{};       // Singular values of X, descending
        std::array<double, 2> sv_y{};       // Singular values of Y^H, descending
        bool alpha_d_defaulted = false;     // alpha_D fell back to 1 (zero inner product)
        bool alpha_u_defaulted = false;     // alpha_U fell back to 1

        // sigma_x1 sigma_y1 + sigma_x2 sigma_y2
        double aligned_trace() const { return sv_x[0] * sv_y[0] + sv_x[1] * sv_y[1]; }

        // Tr(Sigma) <= sigma_x1 sigma_y1 + sigma_x2 sigma_y2
        bool trace_bound_holds(double tol = 1e-9) const { return sigma_trace <= aligned_trace() + tol; }

        // sqrt(2) <= sigma_x1 sigma_y1 + sigma_x2 sigma_y2 <= 2
        bool aligned_trace_bounds_hold(double tol = 1e-9) const
        {
            const double t = aligned_trace();
            return t >= std::numbers::sqrt2 - tol && t <= 2.0 + tol;
        }

        // Equality case of the lower bound: one target has sigma_1 = 1, the other sigma_1 = sqrt(2)
        bool lower_bound_attained(double tol = 1e-9) const
        {
            auto near = [tol](double a, double b)
            { return std::abs(a - b) <= tol; };
            return (near(sv_x[0], 1.0) && near(sv_y[0], std::numbers::sqrt2)) ||
                   (near(sv_y[0], 1.0) && near(sv_x[0], std::numbers::sqrt2));
        }
    };

    struct ris_solution
    {
        cmat theta;
        bool reciprocal = false;
        bool design_with_ss = true;
        std::optional<procrustes_diag> diagnostics;
    };

    // Targets of the projection problem; every column is unit norm
    struct projection_targets
    {
        cmat x; // N x 2, [alpha_D conj(hbar_rdi), alpha_U conj(hbar_bi)]
        cmat y; // N x 2, [hbar_bi, hbar_itu]
        cplx alpha_d{1.0, 0.0};
        cplx alpha_u{1.0, 0.0};
        bool alpha_d_defaulted = false;
        bool alpha_u_defaulted = false;
    };

    // ---- small dense kernels ---------------------------------------------------------------

    namespace detail
    {
        inline constexpr double rank_tol = 1e-10;       // Relative threshold for a vanishing column / singular value
        inline constexpr double completion_tol = 1e-8;  // Candidates with a smaller residual are skipped

        // Orthogonalizes v against the columns q[0..count) twice (classical Gram-Schmidt, reorthogonalized)
        inline void orthogonalize(cvec &v, const std::vector<cvec> &q, std::size_t count)
        {
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t i = 0; i < count; ++i)
                {
                    const cplx p = dot_h(q[i], v);
                    for (std::size_t k = 0; k < v.size(); ++k)
                        v[k] -= p * q[i][k];
                }
        }

        // Extends the orthonormal columns in `q` to a full basis of C^n by Gram-Schmidt against
        // e_0, e_1, ... in index order
        inline void complete_basis(std::vector<cvec> &q, std::size_t n)
        {
            for (std::size_t e = 0; e < n && q.size() < n; ++e)
            {
                cvec v(n);
                v[e] = 1.0;
                orthogonalize(v, q, q.size());
                const double nv = norm2(v);
                if (nv < completion_tol)
                    continue;
                for (auto &x : v)
                    x /= nv;
                q.push_back(std::move(v));
            }
            if (q.size() != n)
                fail(error_category::model, "complete_basis: failed to complete the orthonormal basis");
        }

        // Thin QR of an n x m matrix (m <= 2 in practice) by modified Gram-Schmidt with
        // reorthogonalization. Q has min(n, m) orthonormal columns; a column that vanishes after
        // projection gets its basis vector from the standard-basis completion and a zero on the
        // diagonal of R.
        struct thin_qr
        {
            std::vector<cvec> q; // Columns of Q
            cmat r;              // min(n, m) x m, upper triangular

            explicit thin_qr(const cmat &a)
            {
                const std::size_t n = a.rows(), m = a.cols(), k = std::min(n, m);
                r = cmat(k, m);
                for (std::size_t j = 0; j < m; ++j)
                {
                    cvec v = a.col(j);
                    const double col_norm = norm2(v);
                    const std::size_t prev = std::min(j, k);
                    for (int pass = 0; pass < 2; ++pass)
                        for (std::size_t i = 0; i < prev; ++i)
                        {
                            const cplx p = dot_h(q[i], v);
                            r(i, j) += p;
                            for (std::size_t t = 0; t < n; ++t)
                                v[t] -= p * q[i][t];
                        }
                    if (j >= k)
                        continue;
                    const double nv = norm2(v);
                    if (nv > rank_tol * col_norm && nv > 0.0)
                    {
                        for (auto &x : v)
                            x /= nv;
                        r(j, j) = nv;
                        q.push_back(std::move(v));
                    }
                    else
                    {
                        // Rank deficient: take the next completion vector, R_jj = 0
                        std::vector<cvec> tmp = q;
                        complete_basis(tmp, n);
                        q.push_back(tmp[q.size()]);
                    }
                }
            }

            cmat q_matrix(std::size_t n) const
            {
                cmat m(n, q.size());
                for (std::size_t c = 0; c < q.size(); ++c)
                    m.set_col(c, q[c]);
                return m;
            }
        };

        inline std::array<cplx, 2> perp(const std::array<cplx, 2> &u)
        {
            return {-std::conj(u[1]), std::conj(u[0])};
        }

        // Singular values of a 2x2 matrix from ||C||_F^2 = s1^2 + s2^2 and |det C| = s1 s2.
        // The small singular value comes from the determinant, so it keeps full relative accuracy.
        inline std::array<double, 2> singular_values_2x2(const cmat &c)
        {
            const double f = std::norm(c(0, 0)) + std::norm(c(0, 1)) + std::norm(c(1, 0)) + std::norm(c(1, 1));
            const double d = std::abs(c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0));
            const double disc = std::sqrt(std::max(0.0, (f - 2.0 * d) * (f + 2.0 * d)));
            const double s1 = std::sqrt(0.5 * (f + disc));
            const double s2 = s1 > 0.0 ? d / s1 : 0.0;
            return {s1, std::min(s2, s1)};
        }

        // Singular values of an n x m matrix with min(n, m) <= 2, padded to two entries
        inline std::array<double, 2> singular_values_small(const cmat &a)
        {
            const thin_qr qr(a);
            const cmat &r = qr.r;
            if (r.rows() == 2 && r.cols() == 2)
                return singular_values_2x2(r);
            return {frobenius_norm(r), 0.0};
        }

        struct svd_small
        {
            std::vector<std::array<cplx, 2>> u, v; // Singular vectors (k entries each)
            std::array<double, 2> sigma{};
        };

        // SVD C = U diag(sigma) V^H of a k x k matrix, k in {1, 2}
        inline svd_small svd_core(const cmat &c)
        {
            svd_small out;
            if (c.rows() == 1)
            {
                const cplx z = c(0, 0);
                const double s = std::abs(z);
                out.sigma = {s, 0.0};
                out.u = {{cplx(1.0), cplx(0.0)}};
                out.v = {{s > 0.0 ? std::conj(z) / s : cplx(1.0), cplx(0.0)}};
                return out;
            }

            out.sigma = singular_values_2x2(c);
            const double s1 = out.sigma[0];
            if (s1 == 0.0)
            {
                out.u = {{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}};
                out.v = out.u;
                return out;
            }

            // Leading eigenvector of G = C C^H (Hermitian 2x2) for lambda = s1^2
            const double ga = std::norm(c(0, 0)) + std::norm(c(0, 1));
            const double gd = std::norm(c(1, 0)) + std::norm(c(1, 1));
            const cplx gb = c(0, 0) * std::conj(c(1, 0)) + c(0, 1) * std::conj(c(1, 1));
            const double lambda = s1 * s1;
            std::array<cplx, 2> w1{gb, cplx(lambda - ga)};
            std::array<cplx, 2> w2{cplx(lambda - gd), std::conj(gb)};
            const double n1 = std::sqrt(std::norm(w1[0]) + std::norm(w1[1]));
            const double n2 = std::sqrt(std::norm(w2[0]) + std::norm(w2[1]));
            std::array<cplx, 2> u1;
            if (std::max(n1, n2) <= 1e-14 * lambda)
                u1 = {cplx(1.0), cplx(0.0)}; // G is a multiple of the identity
            else if (n1 >= n2)
                u1 = {w1[0] / n1, w1[1] / n1};
            else
                u1 = {w2[0] / n2, w2[1] / n2};

            // v1 = C^H u1 / s1, renormalized
            std::array<cplx, 2> v1{std::conj(c(0, 0)) * u1[0] + std::conj(c(1, 0)) * u1[1],
                                   std::conj(c(0, 1)) * u1[0] + std::conj(c(1, 1)) * u1[1]};
            const double nv1 = std::sqrt(std::norm(v1[0]) + std::norm(v1[1]));
            v1 = {v1[0] / nv1, v1[1] / nv1};

            // Second pair: both are fixed up to a common phase by orthogonality; pick the phase
            // of v2 that makes u2^H C v2 real and nonnegative
            const std::array<cplx, 2> u2 = perp(u1);
            std::array<cplx, 2> v2 = perp(v1);
            const cplx cv2_0 = c(0, 0) * v2[0] + c(0, 1) * v2[1];
            const cplx cv2_1 = c(1, 0) * v2[0] + c(1, 1) * v2[1];
            const cplx proj = std::conj(u2[0]) * cv2_0 + std::conj(u2[1]) * cv2_1;
            if (std::abs(proj) > 0.0)
            {
                const cplx ph = std::conj(proj) / std::abs(proj);
                v2 = {v2[0] * ph, v2[1] * ph};
            }
            out.u = {u1, u2};
            out.v = {v1, v2};
            return out;
        }

        // Columns of Q * w for a k-vector w
        inline cvec combine(const std::vector<cvec> &q, const std::array<cplx, 2> &w, std::size_t n)
        {
            cvec out(n);
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t t = 0; t < n; ++t)
                    out[t] += q[i][t] * w[i];
            return out;
        }

        inline void require_targets(const cmat &x, const cmat &y)
        {
            if (x.cols() != 2 || y.cols() != 2 || x.rows() != y.rows() || x.rows() < 1)
                fail(error_category::argument, "procrustes: X and Y must both be N x 2");
        }

        // Phase of -a^T b; 1 with the flag set when the product vanishes
        inline cplx negative_phase(std::span<const cplx> a, std::span<const cplx> b, bool &defaulted)
        {
            const cplx ip = -dot_t(a, b);
            const double scale = norm2(a) * norm2(b);
            defaulted = !(std::abs(ip) > 1e-14 * scale);
            return defaulted ? cplx(1.0) : ip / std::abs(ip);
        }
    }

    // ---- reciprocal design -------------------------------------------------------------------

    // alpha_U = exp(j angle(-h_bi^T h_itu))
    inline cplx uplink_alpha(const channel_set &ch)
    {
        bool unused = false;
        return detail::negative_phase(ch.h_bi, ch.h_itu, unused);
    }

    // alpha_D = exp(j angle(-h_rdi^T h_bi))
    inline cplx downlink_alpha(const channel_set &ch)
    {
        bool unused = false;
        return detail::negative_phase(ch.h_rdi, ch.h_bi, unused);
    }

    // Diagonal phase profile steering the uplink user's wave into the base station:
    //   theta_k = [angle(alpha_U)] - pi k (cos phi_bi + cos phi_itu),  k = 0 .. N-1
    // The alpha_U term is only present when structural scattering is part of the design.
    inline ris_solution reciprocal_closed_form(double phi_bi, double phi_itu, std::size_t n_i, cplx alpha_u, bool with_ss)
    {
        if (n_i < 1)
            fail(error_category::argument, "reciprocal_closed_form: n_i must be at least 1");
        const double offset = with_ss ? std::arg(alpha_u) : 0.0;
        const double slope = std::numbers::pi * (std::cos(phi_bi) + std::cos(phi_itu));
        cvec d(n_i);
        for (std::size_t k = 0; k < n_i; ++k)
            d[k] = std::polar(1.0, offset - slope * static_cast<double>(k));
        return {cmat::diagonal(d), true, with_ss, std::nullopt};
    }

    // Closed-form reciprocal design for a scenario; alpha_U taken from the channels
    inline ris_solution reciprocal_design(const scenario_config &cfg, const channel_set &ch, bool with_ss)
    {
        return reciprocal_closed_form(cfg.phi_bi, cfg.phi_itu, cfg.n_i, uplink_alpha(ch), with_ss);
    }

    // ---- non-reciprocal design ---------------------------------------------------------------

    inline projection_targets build_projection_targets(const channel_set &ch, bool with_ss)
    {
        const std::size_t n = ch.n_i();
        if (n < 1 || ch.hbar_rdi.size() != n || ch.hbar_itu.size() != n || ch.hbar_bi.size() != n)
            fail(error_category::argument, "build_projection_targets: inconsistent channel set");
        projection_targets t;
        if (with_ss)
        {
            t.alpha_d = detail::negative_phase(ch.h_rdi, ch.h_bi, t.alpha_d_defaulted);
            t.alpha_u = detail::negative_phase(ch.h_bi, ch.h_itu, t.alpha_u_defaulted);
        }
        t.x = cmat(n, 2);
        t.y = cmat(n, 2);
        t.x.set_col(0, scaled(conj(ch.hbar_rdi), t.alpha_d));
        t.x.set_col(1, scaled(conj(ch.hbar_bi), t.alpha_u));
        t.y.set_col(0, ch.hbar_bi);
        t.y.set_col(1, ch.hbar_itu);
        return t;
    }

    // ||X - Theta Y||_F^2
    inline double projection_residual(const cmat &x, const cmat &y, const cmat &theta)
    {
        return std::pow(frobenius_norm(x - theta * y), 2);
    }

    // Singular values and the minimum of the projection problem for a given Theta
    inline procrustes_diag projection_diagnostics(const projection_targets &t, const cmat &theta)
    {
        detail::require_targets(t.x, t.y);
        const std::size_t n = t.x.rows();
        if (theta.rows() != n || theta.cols() != n)
            fail(error_category::argument, "projection_diagnostics: Theta dimension does not match the targets");

        const detail::thin_qr qx(t.x), qy(t.y);
        const cmat core = qx.r * qy.r.adjoint();
        const auto s = core.rows() == 2 ? detail::singular_values_2x2(core)
                                        : std::array<double, 2>{std::abs(core(0, 0)), 0.0};

        procrustes_diag d;
        d.sigma_trace = s[0] + s[1];
        d.residual = projection_residual(t.x, t.y, theta);
        d.sv_x = qx.r.rows() == 2 ? detail::singular_values_2x2(qx.r) : std::array<double, 2>{frobenius_norm(qx.r), 0.0};
        d.sv_y = qy.r.rows() == 2 ? detail::singular_values_2x2(qy.r) : std::array<double, 2>{frobenius_norm(qy.r), 0.0};
        d.alpha_d_defaulted = t.alpha_d_defaulted;
        d.alpha_u_defaulted = t.alpha_u_defaulted;
        return d;
    }

    // Thin singular bases of X Y^H: columns u_k, v_k with X Y^H = sum_k sigma_k u_k v_k^H
    struct thin_svd
    {
        std::vector<cvec> u, v;
        std::array<double, 2> sigma{};
    };

    inline thin_svd thin_svd_of_product(const cmat &x, const cmat &y)
    {
        detail::require_targets(x, y);
        const std::size_t n = x.rows();
        const detail::thin_qr qx(x), qy(y);
        const auto core = detail::svd_core(qx.r * qy.r.adjoint());
        thin_svd out;
        out.sigma = core.sigma;
        for (std::size_t k = 0; k < core.u.size(); ++k)
        {
            out.u.push_back(detail::combine(qx.q, core.u[k], n));
            out.v.push_back(detail::combine(qy.q, core.v[k], n));
        }
        return out;
    }

    // Theta = U V^H from completed singular bases; any completion is optimal because the
    // objective only sees Theta on range(Y)
    inline cmat unitary_from_bases(std::vector<cvec> u, std::vector<cvec> v, std::size_t n)
    {
        detail::complete_basis(u, n);
        detail::complete_basis(v, n);
        cmat theta(n, n);
        for (std::size_t k = 0; k < n; ++k)
        {
            const cvec &uk = u[k];
            const cvec &vk = v[k];
            for (std::size_t r = 0; r < n; ++r)
            {
                if (uk[r] == cplx{})
                    continue;
                for (std::size_t c = 0; c < n; ++c)
                    theta(r, c) += uk[r] * std::conj(vk[c]);
            }
        }
        return theta;
    }

    // Globally optimal unitary Theta for min ||X - Theta Y||_F^2; generally not symmetric
    inline ris_solution procrustes_unitary(const projection_targets &t, bool design_with_ss = true)
    {
        const std::size_t n = t.x.rows();
        thin_svd s = thin_svd_of_product(t.x, t.y);
        ris_solution sol;
        sol.theta = unitary_from_bases(std::move(s.u), std::move(s.v), n);
        sol.reciprocal = false;
        sol.design_with_ss = design_with_ss;
        sol.diagnostics = projection_diagnostics(t, sol.theta);
        return sol;
    }

    inline ris_solution nonreciprocal_design(const channel_set &ch, bool with_ss)
    {
        return procrustes_unitary(build_projection_targets(ch, with_ss), with_ss);
    }

    // ---- bounds ------------------------------------------------------------------------------

    struct strength_bounds
    {
        double p_d_max = 0.0; // Downlink BS -> RIS -> user
        double p_u_max = 0.0; // Uplink user -> RIS -> BS
    };

    // Upper bounds on |h^T (Theta - I) h'|^2 (structural scattering) or |h^T Theta h'|^2 over unitary Theta
    inline strength_bounds strength_upper_bounds(const channel_set &ch, bool with_ss)
    {
        const double n_bi = norm2(ch.h_bi), n_rdi = norm2(ch.h_rdi), n_itu = norm2(ch.h_itu);
        if (with_ss)
            return {std::pow(std::abs(dot_t(ch.h_rdi, ch.h_bi)) + n_rdi * n_bi, 2),
                    std::pow(std::abs(dot_t(ch.h_itu, ch.h_bi)) + n_itu * n_bi, 2)};
        return {n_rdi * n_rdi * n_bi * n_bi, n_itu * n_itu * n_bi * n_bi};
    }
}

#endif
