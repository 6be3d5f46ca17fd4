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

#ifndef BDRIS_MATRIX_HPP
#define BDRIS_MATRIX_HPP

// Small dense complex linear algebra. Matrices in this library are at most a few hundred
// rows, so everything is plain row-major storage and textbook algorithms.

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bdris
{
    using cplx = std::complex<double>;

    template <typename T>
    class basic_matrix
    {
    public:
        using value_type = T;

        basic_matrix() = default;

        basic_matrix(std::size_t rows, std::size_t cols, T fill = T{})
            : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

        // Row-wise initialization, e.g. cmat{{1, 2}, {3, 4}}
        basic_matrix(std::initializer_list<std::initializer_list<T>> rows)
            : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
        {
            data_.reserve(rows_ * cols_);
            for (const auto &r : rows)
            {
                if (r.size() != cols_)
                    fail(error_category::argument, "basic_matrix: ragged initializer list");
                data_.insert(data_.end(), r.begin(), r.end());
            }
        }

        static basic_matrix zeros(std::size_t rows, std::size_t cols) { return basic_matrix(rows, cols); }

        static basic_matrix identity(std::size_t n)
        {
            basic_matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = T{1};
            return m;
        }

        static basic_matrix diagonal(std::span<const T> d)
        {
            basic_matrix m(d.size(), d.size());
            for (std::size_t i = 0; i < d.size(); ++i)
                m(i, i) = d[i];
            return m;
        }

        static basic_matrix column(std::span<const T> v)
        {
            basic_matrix m(v.size(), 1);
            std::copy(v.begin(), v.end(), m.data_.begin());
            return m;
        }

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        std::size_t size() const noexcept { return data_.size(); }
        bool empty() const noexcept { return data_.empty(); }
        bool is_square() const noexcept { return rows_ == cols_; }

        T &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
        const T &operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

        std::span<T> data() noexcept { return data_; }
        std::span<const T> data() const noexcept { return data_; }

        std::vector<T> col(std::size_t c) const
        {
            std::vector<T> v(rows_);
            for (std::size_t r = 0; r < rows_; ++r)
                v[r] = (*this)(r, c);
            return v;
        }

        void set_col(std::size_t c, std::span<const T> v)
        {
            for (std::size_t r = 0; r < rows_; ++r)
                (*this)(r, c) = v[r];
        }

        // Copy of the sub-block starting at (r0, c0)
        basic_matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
        {
            if (r0 + nr > rows_ || c0 + nc > cols_)
                fail(error_category::argument, "basic_matrix::block: range exceeds matrix size");
            basic_matrix b(nr, nc);
            for (std::size_t r = 0; r < nr; ++r)
                for (std::size_t c = 0; c < nc; ++c)
                    b(r, c) = (*this)(r0 + r, c0 + c);
            return b;
        }

        void set_block(std::size_t r0, std::size_t c0, const basic_matrix &b)
        {
            if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
                fail(error_category::argument, "basic_matrix::set_block: range exceeds matrix size");
            for (std::size_t r = 0; r < b.rows_; ++r)
                for (std::size_t c = 0; c < b.cols_; ++c)
                    (*this)(r0 + r, c0 + c) = b(r, c);
        }

        basic_matrix transpose() const
        {
            basic_matrix t(cols_, rows_);
            for (std::size_t r = 0; r < rows_; ++r)
                for (std::size_t c = 0; c < cols_; ++c)
                    t(c, r) = (*this)(r, c);
            return t;
        }

        basic_matrix conj() const
        {
            basic_matrix t(*this);
            for (auto &x : t.data_)
                x = std::conj(x);
            return t;
        }

        basic_matrix adjoint() const
        {
            basic_matrix t(cols_, rows_);
            for (std::size_t r = 0; r < rows_; ++r)
                for (std::size_t c = 0; c < cols_; ++c)
                    t(c, r) = std::conj((*this)(r, c));
            return t;
        }

        basic_matrix &operator+=(const basic_matrix &o)
        {
            check_same_shape(o, "operator+");
            for (std::size_t i = 0; i < data_.size(); ++i)
                data_[i] += o.data_[i];
            return *this;
        }

        basic_matrix &operator-=(const basic_matrix &o)
        {
            check_same_shape(o, "operator-");
            for (std::size_t i = 0; i < data_.size(); ++i)
                data_[i] -= o.data_[i];
            return *this;
        }

        basic_matrix &operator*=(T s) noexcept
        {
            for (auto &x : data_)
                x *= s;
            return *this;
        }

        friend basic_matrix operator+(basic_matrix a, const basic_matrix &b) { return a += b; }
        friend basic_matrix operator-(basic_matrix a, const basic_matrix &b) { return a -= b; }
        friend basic_matrix operator*(basic_matrix a, T s) { return a *= s; }
        friend basic_matrix operator*(T s, basic_matrix a) { return a *= s; }
        friend basic_matrix operator/(basic_matrix a, T s) { return a *= (T{1} / s); }
        friend basic_matrix operator-(basic_matrix a)
        {
            for (auto &x : a.data_)
                x = -x;
            return a;
        }

        friend basic_matrix operator*(const basic_matrix &a, const basic_matrix &b)
        {
            if (a.cols_ != b.rows_)
                fail(error_category::argument, "matrix product: inner dimensions " + std::to_string(a.cols_) +
                                                   " and " + std::to_string(b.rows_) + " differ");
            basic_matrix c(a.rows_, b.cols_);
            for (std::size_t i = 0; i < a.rows_; ++i)
                for (std::size_t k = 0; k < a.cols_; ++k)
                {
                    const T aik = a(i, k);
                    if (aik == T{})
                        continue;
                    const T *brow = &b.data_[k * b.cols_];
                    T *crow = &c.data_[i * c.cols_];
                    for (std::size_t j = 0; j < b.cols_; ++j)
                        crow[j] += aik * brow[j];
                }
            return c;
        }

        bool operator==(const basic_matrix &) const = default;

    private:
        void check_same_shape(const basic_matrix &o, const char *op) const
        {
            if (rows_ != o.rows_ || cols_ != o.cols_)
                fail(error_category::argument, std::string(op) + ": shape " + std::to_string(rows_) + "x" +
                                                   std::to_string(cols_) + " vs " + std::to_string(o.rows_) + "x" +
                                                   std::to_string(o.cols_));
        }

        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<T> data_;
    };

    using cmat = basic_matrix<cplx>;
    using cvec = std::vector<cplx>;

    template <typename T>
    double frobenius_norm(const basic_matrix<T> &m)
    {
        double s = 0.0;
        for (const auto &x : m.data())
            s += std::norm(x);
        return std::sqrt(s);
    }

    template <typename T>
    double max_abs(const basic_matrix<T> &m)
    {
        double s = 0.0;
        for (const auto &x : m.data())
            s = std::max(s, std::abs(x));
        return s;
    }

    // ||a^H a - I||_F
    inline double unitarity_error(const cmat &a)
    {
        return frobenius_norm(a.adjoint() * a - cmat::identity(a.cols()));
    }

    // ||a - a^T||_F
    inline double symmetry_error(const cmat &a)
    {
        return frobenius_norm(a - a.transpose());
    }

    inline bool is_diagonal(const cmat &a, double tol = 0.0)
    {
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                if (r != c && std::abs(a(r, c)) > tol)
                    return false;
        return true;
    }

    // ---- vector helpers ------------------------------------------------------------------

    // Bilinear product a^T b (no conjugation)
    inline cplx dot_t(std::span<const cplx> a, std::span<const cplx> b)
    {
        cplx s{};
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a[i] * b[i];
        return s;
    }

    // Hermitian product a^H b
    inline cplx dot_h(std::span<const cplx> a, std::span<const cplx> b)
    {
        cplx s{};
        for (std::size_t i = 0; i < a.size(); ++i)
            s += std::conj(a[i]) * b[i];
        return s;
    }

    inline double norm2(std::span<const cplx> v)
    {
        double s = 0.0;
        for (const auto &x : v)
            s += std::norm(x);
        return std::sqrt(s);
    }

    inline cvec conj(std::span<const cplx> v)
    {
        cvec r(v.begin(), v.end());
        for (auto &x : r)
            x = std::conj(x);
        return r;
    }

    inline cvec scaled(std::span<const cplx> v, cplx s)
    {
        cvec r(v.begin(), v.end());
        for (auto &x : r)
            x *= s;
        return r;
    }

    inline cvec operator*(const cmat &m, std::span<const cplx> v)
    {
        if (m.cols() != v.size())
            fail(error_category::argument, "matrix-vector product: dimension mismatch");
        cvec r(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            cplx s{};
            for (std::size_t j = 0; j < m.cols(); ++j)
                s += m(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    inline cvec operator*(const cmat &m, const cvec &v) { return m * std::span<const cplx>(v); }

    // a^T M b
    inline cplx bilinear(std::span<const cplx> a, const cmat &m, std::span<const cplx> b)
    {
        if (m.rows() != a.size() || m.cols() != b.size())
            fail(error_category::argument, "bilinear form: dimension mismatch");
        cplx s{};
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            if (a[i] == cplx{})
                continue;
            cplx row{};
            for (std::size_t j = 0; j < m.cols(); ++j)
                row += m(i, j) * b[j];
            s += a[i] * row;
        }
        return s;
    }

    // ---- LU factorization ----------------------------------------------------------------

    // Partially pivoted LU. A pivot whose magnitude is below `rel_threshold` times the largest
    // pivot seen so far marks the matrix singular.
    class lu_decomposition
    {
    public:
        static constexpr double default_threshold = 1e-12;

        explicit lu_decomposition(cmat a, double rel_threshold = default_threshold)
            : lu_(std::move(a)), perm_(lu_.rows())
        {
            if (!lu_.is_square())
                fail(error_category::argument, "lu_decomposition: matrix is not square");
            const std::size_t n = lu_.rows();
            for (std::size_t i = 0; i < n; ++i)
                perm_[i] = i;

            double max_pivot = 0.0;
            for (std::size_t k = 0; k < n; ++k)
            {
                std::size_t p = k;
                double best = std::abs(lu_(k, k));
                for (std::size_t r = k + 1; r < n; ++r)
                    if (std::abs(lu_(r, k)) > best)
                    {
                        best = std::abs(lu_(r, k));
                        p = r;
                    }
                max_pivot = std::max(max_pivot, best);
                if (best == 0.0 || best < rel_threshold * max_pivot)
                    throw singular_matrix("pivot " + std::to_string(k) + " below threshold");
                if (p != k)
                {
                    for (std::size_t c = 0; c < n; ++c)
                        std::swap(lu_(k, c), lu_(p, c));
                    std::swap(perm_[k], perm_[p]);
                }
                const cplx inv = 1.0 / lu_(k, k);
                for (std::size_t r = k + 1; r < n; ++r)
                {
                    const cplx f = lu_(r, k) * inv;
                    lu_(r, k) = f;
                    if (f == cplx{})
                        continue;
                    for (std::size_t c = k + 1; c < n; ++c)
                        lu_(r, c) -= f * lu_(k, c);
                }
            }
        }

        // Solves A X = B
        cmat solve(const cmat &b) const
        {
            const std::size_t n = lu_.rows();
            if (b.rows() != n)
                fail(error_category::argument, "lu_decomposition::solve: dimension mismatch");
            cmat x(n, b.cols());
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    x(r, c) = b(perm_[r], c);
            for (std::size_t c = 0; c < b.cols(); ++c)
            {
                for (std::size_t r = 1; r < n; ++r)
                {
                    cplx s = x(r, c);
                    for (std::size_t k = 0; k < r; ++k)
                        s -= lu_(r, k) * x(k, c);
                    x(r, c) = s;
                }
                for (std::size_t r = n; r-- > 0;)
                {
                    cplx s = x(r, c);
                    for (std::size_t k = r + 1; k < n; ++k)
                        s -= lu_(r, k) * x(k, c);
                    x(r, c) = s / lu_(r, r);
                }
            }
            return x;
        }

        cmat inverse() const { return solve(cmat::identity(lu_.rows())); }

    private:
        cmat lu_;
        std::vector<std::size_t> perm_;
    };

    inline cmat inverse(const cmat &a) { return lu_decomposition(a).inverse(); }

    // Solves A X = B
    inline cmat solve(const cmat &a, const cmat &b) { return lu_decomposition(a).solve(b); }
}

#endif
