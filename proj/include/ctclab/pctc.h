// Copyright 2026 The ctclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTCLAB_PCTC_H
#define CTCLAB_PCTC_H

#include <stdexcept>

#include "ctclab/qmat.h"
#include "ctclab/states.h"

namespace ctclab {

/// Post-selection succeeds with (numerically) zero probability: the requested
/// history is inconsistent.
class PostSelectionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kPostSelectionThreshold = 1e-12;

/// Interaction for the post-selected CTC model.
struct PctcInstance {
    ComplexMatrix unitary;
    DimensionSplit split;  // {d_cr, d_ctc}

    void validate() const;
};

/// C = tr_CTC(U), i.e. C_ab = sum_k <a,k|U|b,k>. Generally not unitary.
ComplexMatrix pctc_operator(const PctcInstance& inst);

/// C rho C^dag / tr(C rho C^dag). Throws PostSelectionError when the
/// normalization is at most 1e-12.
DensityMatrix pctc_map(const ComplexMatrix& c, const DensityMatrix& rho);

DensityMatrix run_pctc_signaling_leg(const PctcInstance& inst, const DensityMatrix& input);

}  // namespace ctclab

#endif
