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

#include "ctclab/pctc.h"

#include <sstream>

namespace ctclab {

void PctcInstance::validate() const {
    if (split.size() != 2 || unitary.rows() != split.total() || !unitary.is_square()) {
        throw std::invalid_argument("PctcInstance: unitary does not match the {d_cr, d_ctc} split");
    }
    if (!is_unitary(unitary, 1e-10)) {
        throw std::invalid_argument("PctcInstance: interaction is not unitary");
    }
}

ComplexMatrix pctc_operator(const PctcInstance& inst) {
    inst.validate();
    return partial_trace(inst.unitary, inst.split, 0);
}

DensityMatrix pctc_map(const ComplexMatrix& c, const DensityMatrix& rho) {
    if (c.rows() != rho.dimension() || !c.is_square()) {
        throw std::invalid_argument("pctc_map: operator dimension differs from state dimension");
    }
    ComplexMatrix out = c * rho.matrix() * dagger(c);
    double norm = out.trace().real();
    if (norm <= kPostSelectionThreshold) {
        std::ostringstream msg;
        msg << "post-selection probability vanishes (" << norm << ")";
        throw PostSelectionError(msg.str());
    }
    return to_density(out, rho.split());
}

DensityMatrix run_pctc_signaling_leg(const PctcInstance& inst, const DensityMatrix& input) {
    return pctc_map(pctc_operator(inst), input);
}

}  // namespace ctclab
