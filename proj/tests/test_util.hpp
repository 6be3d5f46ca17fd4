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

#ifndef BDRIS_TEST_UTIL_HPP
#define BDRIS_TEST_UTIL_HPP

#include <bdris/matrix.hpp>

#include <random>

// Test-local random generator, independent of the library's oracle generator
struct test_rng
{
    std::mt19937_64 engine;
    std::normal_distribution<double> normal{0.0, 1.0};

    explicit test_rng(std::uint64_t seed) : engine(seed) {}

    bdris::cplx cn() { return {normal(engine) / std::sqrt(2.0), normal(engine) / std::sqrt(2.0)}; }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }

    bdris::cmat matrix(std::size_t r, std::size_t c, double scale = 1.0)
    {
        bdris::cmat m(r, c);
        for (auto &x : m.data())
            x = cn() * scale;
        return m;
    }

    // Unitary via Gram-Schmidt of a Gaussian matrix (test-side implementation)
    bdris::cmat unitary(std::size_t n)
    {
        bdris::cmat g = matrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
        {
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t i = 0; i < j; ++i)
                {
                    bdris::cplx p{};
                    for (std::size_t k = 0; k < n; ++k)
                        p += std::conj(g(k, i)) * g(k, j);
                    for (std::size_t k = 0; k < n; ++k)
                        g(k, j) -= p * g(k, i);
                }
            double nrm = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                nrm += std::norm(g(k, j));
            nrm = std::sqrt(nrm);
            for (std::size_t k = 0; k < n; ++k)
                g(k, j) /= nrm;
        }
        return g;
    }

    // N x 2 with unit-norm columns
    bdris::cmat unit_columns(std::size_t n)
    {
        bdris::cmat m = matrix(n, 2);
        for (std::size_t c = 0; c < 2; ++c)
        {
            double nrm = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                nrm += std::norm(m(r, c));
            nrm = std::sqrt(nrm);
            for (std::size_t r = 0; r < n; ++r)
                m(r, c) /= nrm;
        }
        return m;
    }
};

#endif
