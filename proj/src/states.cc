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

#include "ctclab/states.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctclab {

namespace {

constexpr double kNormTolerance = 1e-10;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

DimensionSplit default_split(DimensionSplit split, std::size_t dimension) {
    if (split.factors.empty()) {
        return DimensionSplit{{dimension}};
    }
    if (split.total() != dimension) {
        throw std::invalid_argument("dimension split does not match state dimension");
    }
    return split;
}

double squared_norm(const std::vector<Complex>& v) {
    double s = 0;
    for (const Complex& z : v) {
        s += std::norm(z);
    }
    return s;
}

}  // namespace

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::proper:
            return "proper";
        case Provenance::improper:
            return "improper";
        case Provenance::unspecified:
            return "unspecified";
    }
    return "unspecified";
}

PureState::PureState(std::vector<Complex> amplitudes, DimensionSplit split)
    : amplitudes_(std::move(amplitudes)), split_(default_split(std::move(split), amplitudes_.size())) {
    if (amplitudes_.empty()) {
        throw std::invalid_argument("PureState: empty amplitude vector");
    }
    if (std::abs(std::sqrt(squared_norm(amplitudes_)) - 1.0) > kNormTolerance) {
        throw std::invalid_argument("PureState: amplitudes are not unit norm");
    }
}

PureState PureState::normalized(std::vector<Complex> amplitudes, DimensionSplit split) {
    double n = std::sqrt(squared_norm(amplitudes));
    if (n < 1e-300) {
        throw std::invalid_argument("PureState: cannot normalize the zero vector");
    }
    for (Complex& z : amplitudes) {
        z /= n;
    }
    return PureState(std::move(amplitudes), std::move(split));
}

ComplexMatrix PureState::ket() const { return ComplexMatrix::column(amplitudes_); }

ComplexMatrix PureState::projector() const { return ComplexMatrix::outer(amplitudes_, amplitudes_); }

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<Complex> amps;
    amps.reserve(a.dimension() * b.dimension());
    for (const Complex& x : a.amplitudes()) {
        for (const Complex& y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    DimensionSplit split = a.split();
    split.factors.insert(split.factors.end(), b.split().factors.begin(), b.split().factors.end());
    return PureState(std::move(amps), std::move(split));
}

Complex inner(const PureState& bra, const PureState& ket) {
    if (bra.dimension() != ket.dimension()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    Complex s = 0;
    for (std::size_t i = 0; i < bra.dimension(); ++i) {
        s += std::conj(bra.amplitudes()[i]) * ket.amplitudes()[i];
    }
    return s;
}

bool same_ray(const PureState& a, const PureState& b, double tolerance) {
    return a.dimension() == b.dimension() && std::abs(std::abs(inner(a, b)) - 1.0) <= tolerance;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, DimensionSplit split, Provenance provenance)
    : matrix_(std::move(matrix)), provenance_(provenance) {
    DensityCheck check = is_density(matrix_, tol::kPositivity);
    if (!check) {
        throw std::invalid_argument("DensityMatrix: " + check.diagnostic);
    }
    split_ = default_split(std::move(split), matrix_.rows());
}

DensityMatrix DensityMatrix::pure(const PureState& psi, Provenance provenance) {
    return DensityMatrix(psi.projector(), psi.split(), provenance);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d, Provenance provenance) {
    return DensityMatrix(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)), {}, provenance);
}

DensityMatrix DensityMatrix::with_provenance(Provenance p) const {
    DensityMatrix copy = *this;
    copy.provenance_ = p;
    return copy;
}

DensityMatrix to_density(const ComplexMatrix& m, DimensionSplit split, Provenance provenance) {
    ComplexMatrix h = hermitian_part(m);
    double t = h.trace().real();
    if (!(t > 0)) {
        throw std::invalid_argument("to_density: non-positive trace");
    }
    h *= Complex(1.0 / t);
    return DensityMatrix(std::move(h), std::move(split), provenance);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    DimensionSplit split = a.split();
    split.factors.insert(split.factors.end(), b.split().factors.begin(), b.split().factors.end());
    Provenance p = a.provenance() == b.provenance() ? a.provenance() : Provenance::unspecified;
    return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(split), p);
}

double trace_distance(const DensityMatrix& r, const DensityMatrix& s) {
    return trace_distance(r.matrix(), s.matrix());
}

double entropy_bits(const DensityMatrix& rho) { return entropy_bits(rho.matrix()); }

void Ensemble::validate() const {
    if (members.empty()) {
        throw std::invalid_argument("Ensemble: no members");
    }
    double total = 0;
    for (const auto& m : members) {
        if (m.probability < 0.0 || m.probability > 1.0) {
            throw std::invalid_argument("Ensemble: probability outside [0, 1]");
        }
        if (m.state.dimension() != members.front().state.dimension()) {
            throw std::invalid_argument("Ensemble: member dimensions differ");
        }
        total += m.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("Ensemble: probabilities do not sum to 1");
    }
}

MeasurementBasis MeasurementBasis::from_vectors(const std::vector<PureState>& vectors,
                                                std::vector<std::string> labels) {
    if (vectors.size() != labels.size()) {
        throw std::invalid_argument("MeasurementBasis: label count differs from vector count");
    }
    MeasurementBasis basis;
    for (const auto& v : vectors) {
        basis.projectors.push_back(v.projector());
    }
    basis.labels = std::move(labels);
    basis.validate();
    return basis;
}

void MeasurementBasis::validate() const {
    constexpr double kTol = 1e-10;
    if (projectors.empty() || projectors.size() != labels.size()) {
        throw std::invalid_argument("MeasurementBasis: projector/label count mismatch");
    }
    std::size_t d = projectors.front().rows();
    ComplexMatrix sum = ComplexMatrix::zeros(d, d);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const auto& p = projectors[i];
        if (p.rows() != d || !is_hermitian(p, kTol) || max_abs_diff(p * p, p) > kTol) {
            throw std::invalid_argument("MeasurementBasis: '" + labels[i] + "' is not an orthogonal projector");
        }
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            if (max_abs_diff(p * projectors[j], ComplexMatrix::zeros(d, d)) > kTol) {
                throw std::invalid_argument("MeasurementBasis: projectors are not mutually orthogonal");
            }
        }
        sum += p;
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(d)) > kTol) {
        throw std::invalid_argument("MeasurementBasis: projectors do not sum to identity");
    }
}

MeasurementBasis z_basis() { return MeasurementBasis::from_vectors({z_plus(), z_minus()}, {"z+", "z-"}); }

MeasurementBasis x_basis() { return MeasurementBasis::from_vectors({x_plus(), x_minus()}, {"x+", "x-"}); }

PureState bloch_state(double theta, double phi) {
    theta = std::fmod(theta, 2 * std::numbers::pi);
    phi = std::fmod(phi, 2 * std::numbers::pi);
    return PureState({std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2)});
}

PureState z_plus() { return PureState({1.0, 0.0}); }
PureState z_minus() { return PureState({0.0, 1.0}); }
PureState x_plus() { return PureState({kInvSqrt2, kInvSqrt2}); }
PureState x_minus() { return PureState({kInvSqrt2, -kInvSqrt2}); }

PureState bell_singlet() {
    const double h = kInvSqrt2;
    return PureState({0.0, h, -h, 0.0}, DimensionSplit{{2, 2}});
}

DensityMatrix proper_mixture(const Ensemble& ensemble) {
    ensemble.validate();
    std::size_t d = ensemble.members.front().state.dimension();
    ComplexMatrix rho = ComplexMatrix::zeros(d, d);
    for (const auto& m : ensemble.members) {
        rho += m.state.projector() * Complex(m.probability);
    }
    return DensityMatrix(std::move(rho), ensemble.members.front().state.split(), Provenance::proper);
}

DensityMatrix reduce(const PureState& psi, std::size_t keep) {
    if (psi.split().size() < 2) {
        throw std::invalid_argument("reduce: state has a single factor");
    }
    if (keep >= psi.split().size()) {
        throw std::invalid_argument("reduce: subsystem index out of range");
    }
    ComplexMatrix reduced = partial_trace(psi.projector(), psi.split(), keep);
    return to_density(reduced, {}, Provenance::improper);
}

std::vector<Outcome> measure(const DensityMatrix& rho, const MeasurementBasis& basis) {
    if (basis.dimension() != rho.dimension()) {
        throw std::invalid_argument("measure: basis dimension differs from state dimension");
    }
    std::vector<Outcome> out;
    out.reserve(basis.projectors.size());
    for (std::size_t k = 0; k < basis.projectors.size(); ++k) {
        const ComplexMatrix& proj = basis.projectors[k];
        ComplexMatrix branch = proj * rho.matrix() * proj;
        double p = std::max(0.0, branch.trace().real());
        Outcome o{basis.labels[k], p, std::nullopt};
        if (p > tol::kProbability) {
            o.collapsed = to_density(branch, rho.split(), Provenance::proper);
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<RemoteBranch> remote_branches(const PureState& psi, const MeasurementBasis& alice_basis) {
    const DimensionSplit& split = psi.split();
    if (split.size() != 2) {
        throw std::invalid_argument("remote_branches: state must be bipartite");
    }
    if (alice_basis.dimension() != split[0]) {
        throw std::invalid_argument("remote_branches: basis dimension differs from Alice's factor");
    }
    std::vector<RemoteBranch> out;
    ComplexMatrix bob_identity = ComplexMatrix::identity(split[1]);
    for (std::size_t k = 0; k < alice_basis.projectors.size(); ++k) {
        ComplexMatrix branch = kron(alice_basis.projectors[k], bob_identity) * psi.ket();
        std::vector<Complex> amps(branch.entries().begin(), branch.entries().end());
        double p = 0;
        for (const Complex& z : amps) {
            p += std::norm(z);
        }
        RemoteBranch b{alice_basis.labels[k], p, std::nullopt};
        if (p > tol::kProbability) {
            ComplexMatrix bob = partial_trace(ComplexMatrix::outer(amps, amps), split, 1) * Complex(1.0 / p);
            Eigensystem es = eig_hermitian(bob);
            if (std::abs(es.values.back() - 1.0) > 1e-10) {
                throw std::invalid_argument("remote_branches: Alice's projector '" + b.label + "' is not rank one");
            }
            std::vector<Complex> v(split[1]);
            for (std::size_t r = 0; r < split[1]; ++r) {
                v[r] = es.vectors(r, split[1] - 1);
            }
            b.remote = PureState::normalized(std::move(v));
        }
        out.push_back(std::move(b));
    }
    return out;
}

RemoteCollapse remote_collapse(const PureState& psi, const MeasurementBasis& alice_basis, std::mt19937_64& rng) {
    std::vector<RemoteBranch> branches = remote_branches(psi, alice_basis);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double u = uniform(rng);
    double cumulative = 0;
    const RemoteBranch* chosen = nullptr;
    for (const auto& b : branches) {
        if (!b.remote) {
            continue;
        }
        chosen = &b;
        cumulative += b.probability;
        if (u < cumulative) {
            break;
        }
    }
    if (chosen == nullptr) {
        throw std::runtime_error("remote_collapse: no branch with positive probability");
    }
    return {chosen->label, *chosen->remote};
}

}  // namespace ctclab
