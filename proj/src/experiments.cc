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

#include "ctclab/experiments.h"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "ctclab/dctc.h"
#include "ctclab/pctc.h"

namespace ctclab {

namespace {

const std::vector<std::string> kBits{"z", "x"};

MeasurementBasis alice_basis_for(std::size_t bit) { return bit == 0 ? z_basis() : x_basis(); }

std::size_t decoded_bit(std::size_t flag) { return flag < 2 ? 0 : 1; }

JointTable empty_table() {
    return JointTable{kBits, kBits, std::vector<std::vector<double>>(2, std::vector<double>(2, 0.0))};
}

std::vector<double> success_per_symbol(const JointTable& t) {
    std::vector<double> success(t.rows.size(), 0.0);
    std::vector<double> marginal = t.row_marginal();
    for (std::size_t b = 0; b < t.rows.size(); ++b) {
        success[b] = marginal[b] > 0 ? t.probabilities[b][b] / marginal[b] : 0.0;
    }
    return success;
}

}  // namespace

std::string_view to_string(FrameLabel f) { return f == FrameLabel::proper_frame ? "proper_frame" : "improper_frame"; }

std::string_view to_string(ChannelModel m) {
    switch (m) {
        case ChannelModel::dctc:
            return "dctc";
        case ChannelModel::pctc:
            return "pctc";
        case ChannelModel::linear:
            return "linear";
    }
    return "linear";
}

ChannelModel parse_channel_model(std::string_view name) {
    if (name == "dctc") {
        return ChannelModel::dctc;
    }
    if (name == "pctc") {
        return ChannelModel::pctc;
    }
    if (name == "linear") {
        return ChannelModel::linear;
    }
    throw std::invalid_argument("unknown channel model '" + std::string(name) + "'");
}

void JointTable::validate() const {
    if (probabilities.size() != rows.size()) {
        throw std::invalid_argument("JointTable: row count mismatch");
    }
    double total = 0;
    for (const auto& row : probabilities) {
        if (row.size() != cols.size()) {
            throw std::invalid_argument("JointTable: column count mismatch");
        }
        for (double p : row) {
            if (p < 0.0) {
                throw std::invalid_argument("JointTable: negative probability");
            }
            total += p;
        }
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::invalid_argument("JointTable: probabilities do not sum to 1");
    }
}

std::vector<double> JointTable::row_marginal() const {
    std::vector<double> m(rows.size(), 0.0);
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (double p : probabilities[a]) {
            m[a] += p;
        }
    }
    return m;
}

std::vector<double> JointTable::col_marginal() const {
    std::vector<double> m(cols.size(), 0.0);
    for (const auto& row : probabilities) {
        for (std::size_t b = 0; b < cols.size(); ++b) {
            m[b] += row[b];
        }
    }
    return m;
}

double mutual_information(const JointTable& table) {
    table.validate();
    std::vector<double> pa = table.row_marginal();
    std::vector<double> pb = table.col_marginal();
    double mi = 0;
    for (std::size_t a = 0; a < table.rows.size(); ++a) {
        for (std::size_t b = 0; b < table.cols.size(); ++b) {
            double p = table.probabilities[a][b];
            if (p > 0) {
                mi += p * std::log2(p / (pa[a] * pb[b]));
            }
        }
    }
    return std::max(mi, 0.0);
}

SignalingSetup::SignalingSetup(CompletionRule rule)
    : protocol_(four_state_alphabet()), circuit_(brun_circuit(protocol_.alphabet, protocol_.flags, rule)) {}

DensityMatrix SignalingSetup::bob_input(const DensityMatrix& qubit) const {
    return tensor(qubit, DensityMatrix::pure(z_plus()));
}

DensityMatrix SignalingSetup::channel(ChannelModel model, const DensityMatrix& input) const {
    switch (model) {
        case ChannelModel::dctc:
            return evolve(make_instance(circuit_, input));
        case ChannelModel::pctc: {
            PctcInstance inst{circuit_, DimensionSplit{{input.dimension(), input.dimension()}}};
            return run_pctc_signaling_leg(inst, input);
        }
        case ChannelModel::linear:
            return input;
    }
    throw std::invalid_argument("unknown channel model");
}

std::vector<double> SignalingSetup::flag_probabilities(const DensityMatrix& rho) const {
    std::vector<double> probs;
    for (const auto& u : protocol_.flags.vectors) {
        ComplexMatrix ket = u.ket();
        probs.push_back(std::max(0.0, (dagger(ket) * rho.matrix() * ket)(0, 0).real()));
    }
    return probs;
}

SignalingReport signaling_experiment(FrameLabel frame, ChannelModel model, const SignalingOptions& options,
                                     const SignalingSetup& setup) {
    if (options.prior_z < 0.0 || options.prior_z > 1.0) {
        throw std::invalid_argument("signaling_experiment: prior_z outside [0, 1]");
    }
    const PureState singlet = bell_singlet();
    const std::vector<double> prior{options.prior_z, 1.0 - options.prior_z};
    const DensityMatrix improper_input = setup.bob_input(reduce(singlet, 1));

    // Flag statistics per (Alice bit, Alice outcome) branch, with branch weights.
    struct Branch {
        std::size_t bit;
        std::string outcome;
        double weight;
        std::vector<double> flags;
    };
    std::vector<Branch> branches;
    std::optional<std::vector<double>> improper_flags;
    for (std::size_t bit = 0; bit < 2; ++bit) {
        for (const RemoteBranch& rb : remote_branches(singlet, alice_basis_for(bit))) {
            if (!rb.remote) {
                continue;
            }
            std::vector<double> flags;
            if (frame == FrameLabel::proper_frame) {
                flags = setup.flag_probabilities(
                    setup.channel(model, setup.bob_input(DensityMatrix::pure(*rb.remote, Provenance::proper))));
            } else {
                // Bob's input does not depend on Alice's choice at all.
                if (!improper_flags) {
                    improper_flags = setup.flag_probabilities(setup.channel(model, improper_input));
                }
                flags = *improper_flags;
            }
            branches.push_back({bit, rb.label, prior[bit] * rb.probability, std::move(flags)});
        }
    }

    JointTable joint = empty_table();
    for (const auto& b : branches) {
        for (std::size_t k = 0; k < b.flags.size(); ++k) {
            joint.probabilities[b.bit][decoded_bit(k)] += b.weight * b.flags[k];
        }
    }
    // Absorb roundoff so the table sums to 1 exactly.
    double total = 0;
    for (const auto& row : joint.probabilities) {
        for (double p : row) {
            total += p;
        }
    }
    for (auto& row : joint.probabilities) {
        for (double& p : row) {
            p /= total;
        }
    }

    SignalingReport report{frame, model, joint, mutual_information(joint), success_per_symbol(joint), "", 0,
                           std::nullopt};
    report.notes = frame == FrameLabel::proper_frame
                       ? "Bob's input is the collapsed pure state joined with |z+>"
                       : "Bob's input (I/2) x |z+><z+| does not depend on Alice's choice";

    if (options.monte_carlo_samples > 0) {
        std::mt19937_64 rng(options.seed);
        std::bernoulli_distribution choose_z(options.prior_z);
        std::map<std::pair<std::size_t, std::string>, std::vector<double>> flag_cache;
        for (const auto& b : branches) {
            flag_cache[{b.bit, b.outcome}] = b.flags;
        }
        JointTable counts = empty_table();
        for (std::size_t n = 0; n < options.monte_carlo_samples; ++n) {
            std::size_t bit = choose_z(rng) ? 0 : 1;
            RemoteCollapse rc = remote_collapse(singlet, alice_basis_for(bit), rng);
            const std::vector<double>& flags = flag_cache.at({bit, rc.alice_outcome});
            std::discrete_distribution<std::size_t> flag_dist(flags.begin(), flags.end());
            counts.probabilities[bit][decoded_bit(flag_dist(rng))] += 1.0;
        }
        for (auto& row : counts.probabilities) {
            for (double& p : row) {
                p /= static_cast<double>(options.monte_carlo_samples);
            }
        }
        report.monte_carlo_samples = options.monte_carlo_samples;
        report.monte_carlo_mutual_information_bits = mutual_information(counts);
    }
    return report;
}

EquivalenceReport preparation_equivalence(bool include_dctc, const SignalingSetup& setup) {
    // Experiment 1: a fair coin decides between |z+> and |z->.
    Ensemble coin{{{0.5, z_plus()}, {0.5, z_minus()}}};
    DensityMatrix proper = proper_mixture(coin);
    // Experiment 2: Alice holds the other half of a singlet.
    DensityMatrix improper = reduce(bell_singlet(), 1);

    EquivalenceReport report{proper, improper, trace_distance(proper, improper), std::nullopt};
    if (!include_dctc) {
        return report;
    }
    const std::size_t d = setup.protocol().flags.dimension();
    ComplexMatrix mixed = ComplexMatrix::zeros(d, d);
    for (const auto& m : coin.members) {
        DensityMatrix member_input = setup.bob_input(DensityMatrix::pure(m.state, Provenance::proper));
        mixed += setup.channel(ChannelModel::dctc, member_input).matrix() * Complex(m.probability);
    }
    DensityMatrix proper_out = to_density(mixed, {}, Provenance::proper);
    DensityMatrix improper_out = setup.channel(ChannelModel::dctc, setup.bob_input(improper));
    report.dctc = EquivalenceReport::Dctc{proper_out, improper_out, trace_distance(proper_out, improper_out)};
    return report;
}

DecorrelationReport decorrelation_comparison(std::string_view alice_basis, const SignalingSetup& setup) {
    std::size_t bit;
    if (alice_basis == "z") {
        bit = 0;
    } else if (alice_basis == "x") {
        bit = 1;
    } else {
        throw std::invalid_argument("decorrelation_comparison: Alice's basis must be 'z' or 'x'");
    }
    const PureState singlet = bell_singlet();
    DensityMatrix alice = reduce(singlet, 0);
    DensityMatrix bob_out = setup.channel(ChannelModel::dctc, setup.bob_input(reduce(singlet, 1)));
    DensityMatrix improper_joint = tensor(alice, bob_out);

    MeasurementBasis basis = alice_basis_for(bit);
    const std::size_t dim = improper_joint.dimension();
    ComplexMatrix proper = ComplexMatrix::zeros(dim, dim);
    std::vector<RemoteBranch> branches = remote_branches(singlet, basis);
    for (std::size_t k = 0; k < branches.size(); ++k) {
        if (!branches[k].remote) {
            continue;
        }
        DensityMatrix out =
            setup.channel(ChannelModel::dctc, setup.bob_input(DensityMatrix::pure(*branches[k].remote)));
        proper += kron(basis.projectors[k], out.matrix()) * Complex(branches[k].probability);
    }
    DensityMatrix proper_joint = to_density(proper, improper_joint.split(), Provenance::proper);
    return DecorrelationReport{std::string(alice_basis), improper_joint, proper_joint,
                               trace_distance(improper_joint, proper_joint)};
}

}  // namespace ctclab
