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

#ifndef CTCLAB_EXPERIMENTS_H
#define CTCLAB_EXPERIMENTS_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctclab/circuits.h"
#include "ctclab/states.h"

namespace ctclab {

/// Ordering of Alice's measurement relative to Bob's CTC interaction.
/// proper_frame: Alice has already measured, Bob holds a known pure state.
/// improper_frame: she has not, Bob holds half of the singlet.
enum class FrameLabel { proper_frame, improper_frame };

enum class ChannelModel { dctc, pctc, linear };

std::string_view to_string(FrameLabel f);
std::string_view to_string(ChannelModel m);
ChannelModel parse_channel_model(std::string_view name);

struct JointTable {
    std::vector<std::string> rows;  // Alice symbols
    std::vector<std::string> cols;  // Bob outcomes
    std::vector<std::vector<double>> probabilities;

    /// Non-negative entries summing to 1 within 1e-10.
    void validate() const;
    std::vector<double> row_marginal() const;
    std::vector<double> col_marginal() const;
};

/// Mutual information in bits; zero-probability cells contribute nothing.
double mutual_information(const JointTable& table);

struct SignalingReport {
    FrameLabel frame;
    ChannelModel model;
    JointTable joint;
    double mutual_information_bits;
    /// P(Bob decodes b | Alice chose b) for b = z, x.
    std::vector<double> per_symbol_success;
    std::string notes;
    std::size_t monte_carlo_samples = 0;
    std::optional<double> monte_carlo_mutual_information_bits;
};

/// The four-state protocol: Bob's qubit joined with an ancilla in |z+>, run
/// through the Brun circuit under one of the channel models, read out in the
/// flag basis.
class SignalingSetup {
   public:
    explicit SignalingSetup(CompletionRule rule = CompletionRule::scrambled);

    const FourStateProtocol& protocol() const { return protocol_; }
    const ComplexMatrix& circuit() const { return circuit_; }

    /// Bob's (qubit x ancilla) input for a given state of his qubit.
    DensityMatrix bob_input(const DensityMatrix& qubit) const;

    /// Output on Bob's side. dctc: the full Deutsch evolution; pctc: the
    /// post-selected map with C = tr_CTC(V); linear: no CTC at all, the
    /// identity channel.
    DensityMatrix channel(ChannelModel model, const DensityMatrix& input) const;

    /// <u_k| rho |u_k> for each flag.
    std::vector<double> flag_probabilities(const DensityMatrix& rho) const;

   private:
    FourStateProtocol protocol_;
    ComplexMatrix circuit_;
};

struct SignalingOptions {
    double prior_z = 0.5;  // probability that Alice chooses the z code
    std::size_t monte_carlo_samples = 0;
    std::uint64_t seed = 0;
};

/// Exact Born-weight joint table of (Alice's basis bit, Bob's decoded bit).
/// Bob decodes flags u0, u1 as "z" and u2, u3 as "x". With
/// monte_carlo_samples > 0 a seeded sampled estimate is attached as well.
SignalingReport signaling_experiment(FrameLabel frame, ChannelModel model, const SignalingOptions& options = {},
                                     const SignalingSetup& setup = SignalingSetup());

struct EquivalenceReport {
    DensityMatrix proper_preparation;    // coin toss between z+ and z-
    DensityMatrix improper_preparation;  // half of the singlet
    double trace_distance_linear;
    /// D-CTC outputs: per-member runs mixed for the proper preparation, a
    /// single density-matrix run for the improper one.
    struct Dctc {
        DensityMatrix proper_output;
        DensityMatrix improper_output;
        double distance;
    };
    std::optional<Dctc> dctc;
};

EquivalenceReport preparation_equivalence(bool include_dctc = true, const SignalingSetup& setup = SignalingSetup());

struct DecorrelationReport {
    std::string alice_basis;
    DensityMatrix improper_joint;  // rho_Alice x evolve(improper Bob input)
    DensityMatrix proper_joint;    // sum_a p_a |a><a| x evolve(collapsed Bob input a)
    double distance;
};

/// `alice_basis` is "z" or "x".
DecorrelationReport decorrelation_comparison(std::string_view alice_basis = "z",
                                             const SignalingSetup& setup = SignalingSetup());

}  // namespace ctclab

#endif
