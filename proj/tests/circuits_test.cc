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
#include <random>

#include "ctclab/dctc.h"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace ctclab;
using ctclab::testing::random_state;
using ctclab::testing::random_unitary;

namespace {

PureState basis_vector(std::size_t d, std::size_t k) {
    std::vector<Complex> a(d);
    a[k] = 1;
    return PureState(a);
}

FlagBasis computational_flags(std::size_t d) {
    FlagBasis f;
    for (std::size_t k = 0; k < d; ++k) {
        f.vectors.push_back(basis_vector(d, k));
    }
    return f;
}

FlagBasis random_flags(std::size_t d, std::mt19937_64& rng) {
    ComplexMatrix u = random_unitary(d, rng);
    FlagBasis f;
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<Complex> a(d);
        for (std::size_t r = 0; r < d; ++r) {
            a[r] = u(r, c);
        }
        f.vectors.push_back(PureState::normalized(a));
    }
    return f;
}

}  // namespace

TEST(circuits, swap_operator) {
    ComplexMatrix s = swap_operator(2);
    ComplexMatrix expected(4, 4);
    expected(0, 0) = expected(1, 2) = expected(2, 1) = expected(3, 3) = 1;
    ASSERT_EQ(s, expected);
    for (std::size_t d : {1, 2, 3, 4}) {
        ComplexMatrix sd = swap_operator(d);
        ASSERT_EQ(sd * sd, ComplexMatrix::identity(d * d));
        ASSERT_EQ(partial_trace(sd, {{d, d}}, 0), ComplexMatrix::identity(d));
        ASSERT_EQ(partial_trace(sd, {{d, d}}, 1), ComplexMatrix::identity(d));
    }
    std::mt19937_64 rng(1);
    PureState a = random_state(3, rng);
    PureState b = random_state(3, rng);
    ComplexMatrix out = swap_operator(3) * tensor(a, b).ket();
    ASSERT_LE(max_abs_diff(out, tensor(b, a).ket()), 1e-15);
}

TEST(circuits, controlled_u_examples) {
    FlagBasis z = computational_flags(2);
    ASSERT_EQ(controlled_u(z, {ComplexMatrix::identity(2), ComplexMatrix::identity(2)}), ComplexMatrix::identity(4));
    ComplexMatrix cnot(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    ASSERT_EQ(controlled_u(z, {ComplexMatrix::identity(2), ComplexMatrix{{0, 1}, {1, 0}}}), cnot);
}

TEST(circuits, controlled_u_acts_blockwise) {
    std::mt19937_64 rng(2);
    FlagBasis flags = random_flags(4, rng);
    std::vector<ComplexMatrix> ops;
    for (int j = 0; j < 4; ++j) {
        ops.push_back(random_unitary(4, rng));
    }
    ComplexMatrix cu = controlled_u(flags, ops);
    ASSERT_LE(max_abs_diff(dagger(cu) * cu, ComplexMatrix::identity(16)), 1e-10);
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t v = 0; v < 4; ++v) {
            ComplexMatrix in = kron(flags.vectors[j].ket(), basis_vector(4, v).ket());
            ComplexMatrix expected = kron(flags.vectors[j].ket(), ops[j] * basis_vector(4, v).ket());
            ASSERT_LE(max_abs_diff(cu * in, expected), 1e-12);
        }
    }
}

TEST(circuits, controlled_u_errors) {
    FlagBasis z = computational_flags(2);
    ASSERT_THROW(controlled_u(z, {ComplexMatrix::identity(2)}), std::invalid_argument);
    ASSERT_THROW(controlled_u(z, {ComplexMatrix::identity(2), ComplexMatrix::identity(2) * Complex(2)}),
                 std::invalid_argument);
    FlagBasis bad{{z_plus(), x_plus()}};
    ASSERT_THROW(bad.validate(), std::invalid_argument);
}

TEST(circuits, completion_unitary_examples) {
    ASSERT_LE(max_abs_diff(completion_unitary(x_plus(), x_plus()), ComplexMatrix::identity(2)), 1e-15);

    ComplexMatrix flip = completion_unitary(z_plus(), z_minus());
    ASSERT_TRUE(is_unitary(flip));
    ASSERT_NEAR(std::abs((dagger(z_minus().ket()) * flip * z_plus().ket())(0, 0)), 1, 1e-12);

    ComplexMatrix o = completion_unitary(x_plus(), z_plus());
    ASSERT_TRUE(is_unitary(o));
    ASSERT_NEAR(std::abs((dagger(z_plus().ket()) * o * x_plus().ket())(0, 0)), 1, 1e-12);

    ASSERT_THROW(completion_unitary(z_plus(), basis_vector(3, 0)), std::invalid_argument);
}

TEST(circuits, completion_unitary_random_pairs) {
    std::mt19937_64 rng(3);
    for (std::size_t d : {2, 4}) {
        for (int t = 0; t < 100; ++t) {
            PureState src = random_state(d, rng);
            PureState dst = random_state(d, rng);
            ComplexMatrix o = completion_unitary(src, dst);
            ASSERT_TRUE(is_unitary(o, 1e-10));
            ASSERT_NEAR(std::abs((dagger(dst.ket()) * o * src.ket())(0, 0)), 1, 1e-10);
        }
    }
}

TEST(circuits, flag_scrambler_fixes_its_flag) {
    FourStateProtocol p = four_state_alphabet();
    for (std::size_t j = 0; j < 4; ++j) {
        ComplexMatrix f = flag_scrambler(p.flags, j);
        ASSERT_TRUE(is_unitary(f));
        ASSERT_LE(max_abs_diff(f * p.flags.vectors[j].ket(), p.flags.vectors[j].ket()), 1e-14);
        for (std::size_t k = 0; k < 4; ++k) {
            if (k != j) {
                ASSERT_LE(std::abs((dagger(p.flags.vectors[j].ket()) * f * p.flags.vectors[k].ket())(0, 0)), 1e-14);
            }
        }
    }
}

TEST(circuits, completion_family_maps_states_to_flags) {
    FourStateProtocol p = four_state_alphabet();
    for (CompletionRule rule : {CompletionRule::rotation, CompletionRule::scrambled}) {
        auto ops = completion_family(p.alphabet, p.flags, rule);
        ASSERT_EQ(ops.size(), 4u);
        for (std::size_t j = 0; j < 4; ++j) {
            ComplexMatrix image = ops[j] * p.alphabet.states[j].ket();
            ASSERT_NEAR(std::abs((dagger(p.flags.vectors[j].ket()) * image)(0, 0)), 1, 1e-12);
        }
    }
}

TEST(circuits, four_state_alphabet) {
    FourStateProtocol p = four_state_alphabet();
    ASSERT_EQ(p.alphabet.size(), 4u);
    ASSERT_EQ(p.alphabet.dimension(), 4u);
    ASSERT_NEAR(std::abs(inner(p.alphabet.states[0], p.alphabet.states[2])), 1.0 / std::sqrt(2.0), 1e-15);
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) {
            ASSERT_NEAR(std::abs(inner(p.flags.vectors[j], p.flags.vectors[k])), j == k ? 1 : 0, 1e-15);
        }
    }
    ASSERT_TRUE(same_ray(p.flags.vectors[1], tensor(z_minus(), z_plus())));
    ASSERT_TRUE(same_ray(p.flags.vectors[2], tensor(z_plus(), z_minus())));
    ASSERT_EQ(span_rank(p.alphabet.states), 2u);
    ASSERT_EQ(span_rank(p.flags.vectors), 4u);
}

TEST(circuits, brun_circuit_is_unitary) {
    FourStateProtocol p = four_state_alphabet();
    for (CompletionRule rule : {CompletionRule::rotation, CompletionRule::scrambled}) {
        ASSERT_TRUE(is_unitary(brun_circuit(p.alphabet, p.flags, rule), 1e-10));
    }
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        Alphabet a;
        for (int k = 0; k < 3; ++k) {
            a.states.push_back(random_state(3, rng));
        }
        ASSERT_TRUE(is_unitary(brun_circuit(a, random_flags(3, rng)), 1e-10));
    }
}

TEST(circuits, orthonormal_alphabet_reduces_to_swap) {
    FlagBasis flags = computational_flags(3);
    Alphabet a{flags.vectors};
    ASSERT_LE(max_abs_diff(brun_circuit(a, flags, CompletionRule::rotation), swap_operator(3)), 1e-15);
}

TEST(circuits, four_state_self_consistency_and_discrimination) {
    FourStateProtocol p = four_state_alphabet();
    ComplexMatrix v = brun_circuit(p.alphabet, p.flags);
    MeasurementBasis flags = p.flags.measurement();
    for (std::size_t s = 0; s < 4; ++s) {
        DeutschInstance inst = make_instance(v, DensityMatrix::pure(p.alphabet.states[s]));
        DensityMatrix us(p.flags.vectors[s].projector());
        ASSERT_LE(trace_distance(deutsch_map(inst, us), us), 1e-10);
        FixedPointReport r = solve_fixed_points(inst);
        ASSERT_EQ(r.fixed_space_dim, 1u);
        auto outcomes = measure(cr_output(inst, r.chosen), flags);
        ASSERT_EQ(outcomes[s].label, "u" + std::to_string(s));
        ASSERT_GE(outcomes[s].probability, 1 - 1e-9);
    }
}

TEST(circuits, degenerate_alphabets_are_accepted) {
    FlagBasis flags = computational_flags(2);
    Alphabet twins{{x_plus(), x_plus()}};
    ComplexMatrix v = brun_circuit(twins, flags);
    ASSERT_TRUE(is_unitary(v));
    // The channel cannot tell identical inputs apart, so at least one symbol fails.
    DensityMatrix out = evolve(make_instance(v, DensityMatrix::pure(x_plus())));
    auto outcomes = measure(out, flags.measurement());
    ASSERT_LE(std::min(outcomes[0].probability, outcomes[1].probability), 0.5 + 1e-9);

    Alphabet short_one{{x_plus()}};
    ASSERT_TRUE(is_unitary(brun_circuit(short_one, flags)));

    ASSERT_THROW(brun_circuit(Alphabet{{x_plus(), z_plus(), z_minus()}}, flags), std::invalid_argument);
    ASSERT_THROW(Alphabet{}.validate(), std::invalid_argument);
}
