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

#ifndef CTCLAB_CIRCUITS_H
#define CTCLAB_CIRCUITS_H

#include <vector>

#include "ctclab/qmat.h"
#include "ctclab/states.h"

namespace ctclab {

/// Candidate input states {|psi_k>} for a discrimination protocol. They need
/// not be orthogonal or even distinct.
struct Alphabet {
    std::vector<PureState> states;

    /// Non-empty, one shared dimension; throws std::invalid_argument.
    void validate() const;
    std::size_t dimension() const { return states.front().dimension(); }
    std::size_t size() const { return states.size(); }
};

/// Orthonormal basis {|u_j>} of the chronology-respecting space.
struct FlagBasis {
    std::vector<PureState> vectors;

    /// Pairwise <u_j|u_k> = delta_jk within 1e-10 and spanning.
    void validate() const;
    std::size_t dimension() const { return vectors.front().dimension(); }
    MeasurementBasis measurement() const;
};

/// How the unitaries O_j with O_j|psi_j> = |u_j> are completed.
enum class CompletionRule {
    /// completion_unitary alone: a rotation in span{psi_j, u_j}.
    rotation,
    /// The rotation followed by a unitary that fixes u_j and applies a
    /// discrete Fourier transform to the remaining flags. This leaves no
    /// closed set of flags that avoids u_s, so the fixed point is unique.
    scrambled,
};

/// SWAP on C^d x C^d.
ComplexMatrix swap_operator(std::size_t d);

/// sum_j |u_j><u_j| x O_j: control on the first (CR) factor in the flag
/// basis, O_j applied to the second (CTC) factor.
ComplexMatrix controlled_u(const FlagBasis& flags, const std::vector<ComplexMatrix>& ops);

/// A unitary O with O|src> = |dst> up to global phase. Identity (with a phase
/// fix) when the two are the same ray; otherwise the rotation by their angle
/// inside span{src, dst}, acting trivially on the orthogonal complement.
ComplexMatrix completion_unitary(const PureState& src, const PureState& dst);

/// Fixes |u_j> and applies the size (d-1) DFT to the other flags, in index
/// order.
ComplexMatrix flag_scrambler(const FlagBasis& flags, std::size_t j);

/// The unitaries O_j for each alphabet member. Members beyond the alphabet
/// size (n < d) get the identity or the bare scrambler.
std::vector<ComplexMatrix> completion_family(const Alphabet& alphabet, const FlagBasis& flags,
                                             CompletionRule rule = CompletionRule::scrambled);

/// controlled_u(flags, O) * SWAP on W x W_CTC, dim(W_CTC) = dim(W).
ComplexMatrix brun_circuit(const Alphabet& alphabet, const FlagBasis& flags,
                           CompletionRule rule = CompletionRule::scrambled);

struct FourStateProtocol {
    Alphabet alphabet;  // xi_j x |z+>, xi = z+, z-, x+, x-
    FlagBasis flags;    // z+z+, z-z+, z+z-, z-z-
};

FourStateProtocol four_state_alphabet();

/// Rank of the Gram matrix of a list of states (eigenvalues above 1e-10).
std::size_t span_rank(const std::vector<PureState>& states);

}  // namespace ctclab

#endif
