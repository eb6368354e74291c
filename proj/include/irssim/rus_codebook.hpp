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

#include "irssim/channel_model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace irssim
{
    /// Oversampled 2D DFT codebook for an M_v x M_h reflecting-unit set.
    ///
    /// Codeword (p, l) has entry exp(j 2 pi p r / (O_1 M_v)) * exp(j 2 pi l q / (O_2 M_h))
    /// for member row r and column q, flattened column-major (row index fast) so that
    /// entry i multiplies RusSpec::member_indices[i].
    struct Codebook
    {
        std::size_t m_v = 4;
        std::size_t m_h = 4;
        std::size_t oversampling_v = 1; // O_1
        std::size_t oversampling_h = 1; // O_2
        std::vector<ComplexChannel> codewords; // flat index = p * (O_2 M_h) + l

        std::size_t size() const { return codewords.size(); }
        std::size_t vertical_beams() const { return oversampling_v * m_v; }
        std::size_t horizontal_beams() const { return oversampling_h * m_h; }
        std::size_t flat_index(std::size_t p, std::size_t l) const { return p * horizontal_beams() + l; }
    };

    ComplexChannel dft_codeword(std::size_t m_v, std::size_t m_h, std::size_t o1, std::size_t o2, std::size_t p,
                                std::size_t l);

    Codebook build_codebook(std::size_t m_v, std::size_t m_h, std::size_t o1 = 1, std::size_t o2 = 1);

    struct CodewordChoice
    {
        std::size_t index = 0;
        double power = 0.0; // observed power of the winning trial
    };

    /// Exhaustive beam search on one RUS using a narrowband pilot at the center frequency.
    ///
    /// The observed power for each codeword is |hbar(F_c) + z|^2. When `feedback_rng` is given,
    /// z ~ CN(0, sigma^2) is drawn per trial; otherwise the observation is noiseless.
    /// Ties go to the lowest index.
    CodewordChoice search_codeword(const Codebook &codebook, const IrsLayout &layout, const RusSpec &rus,
                                   const Point3 &ap_pos, const Point3 &ue_pos, const RfParams &rf,
                                   RngStream *feedback_rng = nullptr);

} // namespace irssim
