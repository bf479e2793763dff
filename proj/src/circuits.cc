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

#include "ctclab/circuits.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctclab {

void Alphabet::validate() const {
    if (states.empty()) {
        throw std::invalid_argument("Alphabet: no states");
    }
    for (const auto& s : states) {
        if (s.dimension() != states.front().dimension()) {
            throw std::invalid_argument("Alphabet: states have different dimensions");
        }
    }
}

void FlagBasis::validate() const {
    if (vectors.empty() || vectors.size() != vectors.front().dimension()) {
        throw std::invalid_argument("FlagBasis: need exactly d vectors in dimension d");
    }
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            if (vectors[k].dimension() != vectors[j].dimension()) {
                throw std::invalid_argument("FlagBasis: vectors have different dimensions");
            }
            double expected = j == k ? 1.0 : 0.0;
            if (std::abs(inner(vectors[j], vectors[k]) - expected) > 1e-10) {
                throw std::invalid_argument("FlagBasis: vectors are not orthonormal");
            }
        }
    }
}

MeasurementBasis FlagBasis::measurement() const {
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        labels.push_back("u" + std::to_string(j));
    }
    return MeasurementBasis::from_vectors(vectors, std::move(labels));
}

ComplexMatrix swap_operator(std::size_t d) {
    if (d == 0) {
        throw std::invalid_argument("swap_operator: dimension must be positive");
    }
    ComplexMatrix s(d * d, d * d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            s(b * d + a, a * d + b) = 1.0;
        }
    }
    return s;
}

ComplexMatrix controlled_u(const FlagBasis& flags, const std::vector<ComplexMatrix>& ops) {
    flags.validate();
    if (ops.size() != flags.vectors.size()) {
        throw std::invalid_argument("controlled_u: one operator per flag is required");
    }
    std::size_t d_target = ops.front().rows();
    std::size_t d_control = flags.dimension();
    ComplexMatrix u = ComplexMatrix::zeros(d_control * d_target, d_control * d_target);
    for (std::size_t j = 0; j < ops.size(); ++j) {
        if (ops[j].rows() != d_target || !is_unitary(ops[j], 1e-10)) {
            throw std::invalid_argument("controlled_u: operator " + std::to_string(j) + " is not unitary");
        }
        u += kron(flags.vectors[j].projector(), ops[j]);
    }
    return u;
}

ComplexMatrix completion_unitary(const PureState& src, const PureState& dst) {
    if (src.dimension() != dst.dimension()) {
        throw std::invalid_argument("completion_unitary: dimension mismatch");
    }
    const std::size_t d = src.dimension();
    Complex overlap = inner(dst, src);
    double magnitude = std::abs(overlap);
    if (std::abs(magnitude - 1.0) <= 1e-12) {
        return ComplexMatrix::identity(d) * (std::conj(overlap) / magnitude);
    }
    Complex phase = magnitude > 1e-15 ? overlap / magnitude : Complex(1.0);

    // Work with dst' = phase * dst so that <dst'|src> is real and non-negative.
    std::vector<Complex> target = dst.amplitudes();
    for (Complex& z : target) {
        z *= phase;
    }
    const std::vector<Complex>& e1 = src.amplitudes();
    Complex proj = 0;
    for (std::size_t i = 0; i < d; ++i) {
        proj += std::conj(e1[i]) * target[i];
    }
    std::vector<Complex> e2(d);
    double norm = 0;
    for (std::size_t i = 0; i < d; ++i) {
        e2[i] = target[i] - proj * e1[i];
        norm += std::norm(e2[i]);
    }
    norm = std::sqrt(norm);
    double c = 0;
    double s = 0;
    for (std::size_t i = 0; i < d; ++i) {
        e2[i] /= norm;
    }
    for (std::size_t i = 0; i < d; ++i) {
        c += (std::conj(e1[i]) * target[i]).real();
        s += (std::conj(e2[i]) * target[i]).real();
    }
    ComplexMatrix p = ComplexMatrix::outer(e1, e1);
    ComplexMatrix q = ComplexMatrix::outer(e2, e2);
    ComplexMatrix rotation = ComplexMatrix::identity(d) - p - q + (p + q) * Complex(c) +
                             (ComplexMatrix::outer(e2, e1) - ComplexMatrix::outer(e1, e2)) * Complex(s);
    return rotation * std::conj(phase);
}

ComplexMatrix flag_scrambler(const FlagBasis& flags, std::size_t j) {
    flags.validate();
    const std::size_t d = flags.dimension();
    if (j >= d) {
        throw std::invalid_argument("flag_scrambler: flag index out of range");
    }
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < d; ++k) {
        if (k != j) {
            others.push_back(k);
        }
    }
    const double m = static_cast<double>(others.size());
    ComplexMatrix out = flags.vectors[j].projector();
    for (std::size_t a = 0; a < others.size(); ++a) {
        for (std::size_t b = 0; b < others.size(); ++b) {
            Complex f = std::polar(1.0 / std::sqrt(m), 2.0 * std::numbers::pi * static_cast<double>(a * b) / m);
            out += ComplexMatrix::outer(flags.vectors[others[a]].amplitudes(), flags.vectors[others[b]].amplitudes()) *
                   f;
        }
    }
    return out;
}

std::vector<ComplexMatrix> completion_family(const Alphabet& alphabet, const FlagBasis& flags, CompletionRule rule) {
    alphabet.validate();
    flags.validate();
    if (alphabet.dimension() != flags.dimension() || alphabet.size() > flags.vectors.size()) {
        throw std::invalid_argument("completion_family: alphabet does not fit the flag basis");
    }
    const std::size_t d = flags.dimension();
    std::vector<ComplexMatrix> ops;
    for (std::size_t j = 0; j < d; ++j) {
        ComplexMatrix op = j < alphabet.size() ? completion_unitary(alphabet.states[j], flags.vectors[j])
                                               : ComplexMatrix::identity(d);
        if (rule == CompletionRule::scrambled) {
            op = flag_scrambler(flags, j) * op;
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

ComplexMatrix brun_circuit(const Alphabet& alphabet, const FlagBasis& flags, CompletionRule rule) {
    std::vector<ComplexMatrix> ops = completion_family(alphabet, flags, rule);
    return controlled_u(flags, ops) * swap_operator(flags.dimension());
}

FourStateProtocol four_state_alphabet() {
    std::vector<PureState> xi{z_plus(), z_minus(), x_plus(), x_minus()};
    FourStateProtocol p;
    for (const auto& x : xi) {
        p.alphabet.states.push_back(tensor(x, z_plus()));
    }
    p.flags.vectors = {tensor(z_plus(), z_plus()), tensor(z_minus(), z_plus()), tensor(z_plus(), z_minus()),
                       tensor(z_minus(), z_minus())};
    return p;
}

std::size_t span_rank(const std::vector<PureState>& states) {
    const std::size_t n = states.size();
    ComplexMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            gram(i, j) = inner(states[i], states[j]);
        }
    }
    std::size_t rank = 0;
    for (double lambda : eig_hermitian(gram).values) {
        if (lambda > 1e-10) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace ctclab
