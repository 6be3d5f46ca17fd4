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

#ifndef BDRIS_HPP
#define BDRIS_HPP

#include "channels.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "metrics.hpp"
#include "network.hpp"
#include "optimizers.hpp"
#include "oracles.hpp"
#include "scenario.hpp"

#endif
