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

#include <random>

#include "ctclab/circuits.h"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace ctclab;

TEST(pctc, operator_examples) {
    ASSERT_EQ(pctc_operator({ComplexMatrix::identity(6), {{2, 3}}}), ComplexMatrix::identity(2) * Complex(3));
    ASSERT_EQ(pctc_operator({swap_operator(2), {{2, 2}}}), ComplexMatrix::identity(2));
    ComplexMatrix cnot(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    ASSERT_EQ(pctc_operator({cnot, {{2, 2}}}), ComplexMatrix::diagonal({2, 0}));
    ASSERT_THROW(pctc_operator({ComplexMatrix::identity(4) * Complex(2), {{2, 2}}}), std::invalid_argument);
    ASSERT_THROW(pctc_operator({ComplexMatrix::identity(4), {{2, 3}}}), std::invalid_argument);
}

TEST(pctc, map_examples) {
    std::mt19937_64 rng(1);
    DensityMatrix rho = ctclab::testing::random_density(2, rng);
    ASSERT_LE(max_abs_diff(pctc_map(ComplexMatrix::identity(2), rho).matrix(), rho.matrix()), 1e-15);
    ComplexMatrix c = ComplexMatrix::diagonal({2, 0});
    ASSERT_LE(max_abs_diff(pctc_map(c, DensityMatrix::maximally_mixed(2)).matrix(), ComplexMatrix::diagonal({1, 0})),
              1e-15);
    ASSERT_THROW(pctc_map(c, DensityMatrix::pure(z_minus())), PostSelectionError);
}

TEST(pctc, map_is_scale_invariant_and_valid) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        std::size_t d = 2 + t % 3;
        ComplexMatrix c = ctclab::testing::ginibre(d, d, rng);
        DensityMatrix rho = ctclab::testing::random_density(d, rng);
        DensityMatrix out = pctc_map(c, rho);
        ASSERT_TRUE(is_density(out.matrix()));
        Complex lambda(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
        ASSERT_LE(max_abs_diff(pctc_map(c * lambda, rho).matrix(), out.matrix()), 1e-12);
    }
}

TEST(pctc, signaling_leg_examples) {
    std::mt19937_64 rng(3);
    for (std::size_t d : {2, 3}) {
        DensityMatrix in = ctclab::testing::random_density(d, rng);
        ASSERT_LE(trace_distance(run_pctc_signaling_leg({ComplexMatrix::identity(d * d), {{d, d}}}, in), in), 1e-12);
        ASSERT_LE(trace_distance(run_pctc_signaling_leg({swap_operator(d), {{d, d}}}, in), in), 1e-12);
    }
}

TEST(pctc, brun_circuit_fails_to_discriminate) {
    FourStateProtocol p = four_state_alphabet();
    PctcInstance inst{brun_circuit(p.alphabet, p.flags), {{4, 4}}};
    MeasurementBasis flags = p.flags.measurement();
    double mean = 0;
    for (std::size_t s = 0; s < 4; ++s) {
        DensityMatrix out = run_pctc_signaling_leg(inst, DensityMatrix::pure(p.alphabet.states[s]));
        mean += measure(out, flags)[s].probability / 4;
    }
    // Frozen from the numpy oracle: every symbol is identified with probability 1/2.
    ASSERT_NEAR(mean, 0.5, 1e-12);
    ASSERT_LE(mean, 0.95);

    DensityMatrix out0 = run_pctc_signaling_leg(inst, DensityMatrix::pure(p.alphabet.states[0]));
    auto probs = measure(out0, flags);
    std::vector<double> expected{0.5, 0, 0.25, 0.25};
    for (std::size_t k = 0; k < 4; ++k) {
        ASSERT_NEAR(probs[k].probability, expected[k], 1e-12);
    }
    DensityMatrix out2 = run_pctc_signaling_leg(inst, DensityMatrix::pure(p.alphabet.states[2]));
    ASSERT_LT(trace_distance(out0, out2), 1 - 1e-6);
}
