// SPDX-License-Identifier: Apache-2.0
//
// irssim - CSI acquisition simulator for IRS-assisted mmWave links
// Copyright (C) 2026 The irssim authors
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

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace irssim
{
    /// Reproducible random stream derived from a seed and a list of integer keys
    /// (e.g. sweep point, trial, RUS). Streams with different keys are independent,
    /// so work units can run in any order or in parallel without changing the draws.
    class RngStream
    {
      public:
        RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

        /// Uniform on the open interval (0, 1).
        double uniform();

        /// Standard normal via Box-Muller; portable across standard libraries.
        double normal();

        /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
        std::complex<double> complex_normal(double variance = 1.0);

      private:
        std::mt19937_64 engine_;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };

} // namespace irssim
