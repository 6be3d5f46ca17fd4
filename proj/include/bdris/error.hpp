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

#ifndef BDRIS_ERROR_HPP
#define BDRIS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bdris
{
    // Machine-readable error category, printed by the CLI as "error[<category>]"
    enum class error_category
    {
        argument,   // dimension mismatch, out-of-range value
        conversion, // singular matrix in a Z <-> S conversion
        model,      // singular matrix inside a channel model
        assumption, // impedance blocks violate the assumed shape
        config,     // config document parse or validation failure
        io          // file system failure
    };

    inline constexpr std::string_view to_string(error_category c) noexcept
    {
        switch (c)
        {
        case error_category::argument:
            return "argument";
        case error_category::conversion:
            return "conversion";
        case error_category::model:
            return "model";
        case error_category::assumption:
            return "assumption";
        case error_category::config:
            return "config";
        case error_category::io:
            return "io";
        }
        return "unknown";
    }

    class error : public std::runtime_error
    {
    public:
        error(error_category category, const std::string &what)
            : std::runtime_error(what), category_(category) {}

        error_category category() const noexcept { return category_; }

    private:
        error_category category_;
    };

    // Thrown by the LU factorization when a pivot falls below the singularity threshold
    class singular_matrix : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    [[noreturn]] inline void fail(error_category category, const std::string &what)
    {
        throw error(category, what);
    }
}

#endif
