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

#ifndef CTCLAB_DCTC_H
#define CTCLAB_DCTC_H

#include <stdexcept>
#include <string_view>
#include <vector>

#include "ctclab/qmat.h"
#include "ctclab/states.h"

namespace ctclab {

/// Raised when the fixed-point solver cannot produce a density matrix. A
/// density fixed point always exists, so this indicates a numerical failure.
class SolverError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A unitary interaction on (chronology-respecting system) x (CTC rail)
/// together with the CR input state.
struct DeutschInstance {
    ComplexMatrix unitary;
    DensityMatrix input;
    DimensionSplit split;  // {d_cr, d_ctc}

    /// Checks unitarity (1e-10) and dimensions; throws std::invalid_argument.
    void validate() const;
    std::size_t cr_dim() const { return split[0]; }
    std::size_t ctc_dim() const { return split[1]; }
};

/// Builds and validates an instance with d_ctc = unitary.rows() / input.dimension().
DeutschInstance make_instance(ComplexMatrix unitary, DensityMatrix input);

enum class FixedPointMethod { kernel, iteration };
std::string_view to_string(FixedPointMethod m);

struct FixedPointReport {
    DensityMatrix chosen;
    std::size_t fixed_space_dim;
    double residual;
    double entropy_bits;
    FixedPointMethod method;
    /// Hilbert-Schmidt orthonormal Hermitian basis of the eigenvalue-1
    /// operator subspace of the map.
    std::vector<ComplexMatrix> basis_of_fixed_space;

    bool unique() const { return fixed_space_dim == 1; }
};

/// tr_CR[U (input x rho_ctc) U^dag]
DensityMatrix deutsch_map(const DeutschInstance& inst, const DensityMatrix& rho_ctc);

/// tr_CTC[U (input x rho_ctc) U^dag]
DensityMatrix cr_output(const DeutschInstance& inst, const DensityMatrix& rho_ctc);

/// Matrix S of the (linear) map on column-stacked operators:
/// unvec(S vec(rho)) = deutsch_map(inst, rho).
ComplexMatrix superoperator(const DeutschInstance& inst);

struct FixedPointOptions {
    double kernel_threshold = 1e-9;   // singular values of S - I at or below count as zero
    double ascent_tolerance = 1e-10;  // entropy ascent stops when the gain drops below
    int max_ascent_steps = 20000;
};

/// Full fixed-point analysis via the kernel of S - I. When the fixed space
/// holds more than one density matrix, the maximum-entropy one is chosen.
FixedPointReport solve_fixed_points(const DeutschInstance& inst, const FixedPointOptions& options = {});

struct IterationResult {
    DensityMatrix state;
    int iterations;
    double residual;
};

/// Thrown by iterate_fixed_point; carries the last residual.
class NonConvergenceError : public SolverError {
   public:
    NonConvergenceError(const std::string& what, double residual) : SolverError(what), residual_(residual) {}
    double residual() const { return residual_; }

   private:
    double residual_;
};

/// Restarted Cesaro averaging of the map, starting at `seed`. Returns the
/// first candidate (latest iterate or running average) whose residual
/// trace_distance(x, map(x)) is at most `tolerance`.
IterationResult iterate_fixed_point(const DeutschInstance& inst, const DensityMatrix& seed, double tolerance,
                                    int max_iter);

/// Same, seeded with I/d.
IterationResult iterate_fixed_point(const DeutschInstance& inst, double tolerance, int max_iter);

/// cr_output at the selected fixed point: the complete nonlinear channel.
DensityMatrix evolve(const DeutschInstance& inst, const FixedPointOptions& options = {});

}  // namespace ctclab

#endif
