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

#ifndef CTCLAB_STATES_H
#define CTCLAB_STATES_H

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ctclab/qmat.h"

namespace ctclab {

/// How a density matrix came about. Pure metadata: linear algebra never
/// looks at it.
enum class Provenance { proper, improper, unspecified };

std::string_view to_string(Provenance p);

/// Unit-norm state vector over a (possibly composite) space.
class PureState {
   public:
    /// Throws std::invalid_argument unless the norm is 1 within 1e-10 and the
    /// split matches the amplitude count. An empty split means one factor.
    explicit PureState(std::vector<Complex> amplitudes, DimensionSplit split = {});

    /// Rescales `amplitudes` to unit norm first. Throws on a zero vector.
    static PureState normalized(std::vector<Complex> amplitudes, DimensionSplit split = {});

    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    const DimensionSplit& split() const { return split_; }
    std::size_t dimension() const { return amplitudes_.size(); }

    ComplexMatrix ket() const;
    ComplexMatrix projector() const;

   private:
    std::vector<Complex> amplitudes_;
    DimensionSplit split_;
};

PureState tensor(const PureState& a, const PureState& b);
Complex inner(const PureState& bra, const PureState& ket);
/// Equal up to global phase: |<a|b>| = 1 within `tolerance`.
bool same_ray(const PureState& a, const PureState& b, double tolerance = 1e-10);

/// Hermitian, positive, unit-trace operator. Construction validates at
/// tol::kPositivity and throws std::invalid_argument with the diagnostic.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix matrix, DimensionSplit split = {},
                           Provenance provenance = Provenance::unspecified);

    static DensityMatrix pure(const PureState& psi, Provenance provenance = Provenance::proper);
    static DensityMatrix maximally_mixed(std::size_t d, Provenance provenance = Provenance::unspecified);

    const ComplexMatrix& matrix() const { return matrix_; }
    const DimensionSplit& split() const { return split_; }
    Provenance provenance() const { return provenance_; }
    std::size_t dimension() const { return matrix_.rows(); }

    DensityMatrix with_provenance(Provenance p) const;

   private:
    ComplexMatrix matrix_;
    DimensionSplit split_;
    Provenance provenance_;
};

/// Hermitizes and renormalizes the trace of a matrix that is a density
/// matrix up to roundoff, then validates it.
DensityMatrix to_density(const ComplexMatrix& m, DimensionSplit split = {},
                         Provenance provenance = Provenance::unspecified);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const DensityMatrix& r, const DensityMatrix& s);
double entropy_bits(const DensityMatrix& rho);

struct EnsembleMember {
    double probability;
    PureState state;
};

struct Ensemble {
    std::vector<EnsembleMember> members;

    /// Throws std::invalid_argument if probabilities are outside [0,1], do not
    /// sum to 1 within 1e-12, or member dimensions differ.
    void validate() const;
};

/// Orthogonal projective measurement.
struct MeasurementBasis {
    std::vector<ComplexMatrix> projectors;
    std::vector<std::string> labels;

    /// Rank-one projectors onto an orthonormal list of vectors.
    static MeasurementBasis from_vectors(const std::vector<PureState>& vectors, std::vector<std::string> labels);

    /// Hermitian, idempotent, mutually orthogonal, complete (all within 1e-10).
    void validate() const;
    std::size_t dimension() const { return projectors.empty() ? 0 : projectors.front().rows(); }
};

MeasurementBasis z_basis();
MeasurementBasis x_basis();

/// cos(theta/2)|z+> + e^{i phi} sin(theta/2)|z->
PureState bloch_state(double theta, double phi);
PureState z_plus();
PureState z_minus();
PureState x_plus();
PureState x_minus();

/// (|z+ z-> - |z- z+>) / sqrt(2), split [2, 2].
PureState bell_singlet();

/// sum_a P_a |psi_a><psi_a|, tagged proper.
DensityMatrix proper_mixture(const Ensemble& ensemble);

/// Partial trace of |psi><psi| onto factor `keep`, tagged improper.
DensityMatrix reduce(const PureState& psi, std::size_t keep);

struct Outcome {
    std::string label;
    double probability;
    std::optional<DensityMatrix> collapsed;  // empty when probability <= 1e-12
};

std::vector<Outcome> measure(const DensityMatrix& rho, const MeasurementBasis& basis);

/// One branch of a measurement by the holder of factor 0 of a bipartite pure
/// state: the outcome, its Born weight and the conditional state of factor 1.
struct RemoteBranch {
    std::string label;
    double probability;
    std::optional<PureState> remote;  // empty when probability <= 1e-12
};

/// All branches, exactly. Alice's projectors must be rank one.
std::vector<RemoteBranch> remote_branches(const PureState& psi, const MeasurementBasis& alice_basis);

struct RemoteCollapse {
    std::string alice_outcome;
    PureState bob;
};

/// Samples Alice's outcome by the Born rule and returns Bob's conditional
/// state. Bob's state is a known pure preparation from here on.
RemoteCollapse remote_collapse(const PureState& psi, const MeasurementBasis& alice_basis, std::mt19937_64& rng);

}  // namespace ctclab

#endif
