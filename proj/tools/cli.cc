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

#include "cli.h"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ctclab/circuits.h"
#include "ctclab/dctc.h"
#include "ctclab/experiments.h"
#include "ctclab/pctc.h"
#include "ctclab/report.h"

namespace ctclab::cli {

namespace {

using nlohmann::json;

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

const std::map<std::string, std::set<std::string>> kAllowedKeys{
    {"fixed-point", {"unitary", "input", "tol", "format", "out", "seed"}},
    {"discriminate", {"alphabet", "rule", "tol", "format", "out", "seed"}},
    {"signal", {"prior_z", "monte_carlo", "rule", "seed", "tol", "format", "out"}},
    {"equivalence", {"model", "tol", "format", "out", "seed"}},
    {"pctc", {"alphabet", "rule", "format", "out", "seed", "tol"}},
};

struct RunConfig {
    std::string subcommand;
    std::string format = "json";
    std::optional<std::string> out_path;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::size_t monte_carlo = 0;
    double prior_z = 0.5;
    std::string model = "all";
    std::string rule = "scrambled";
    json unitary;
    json input;
    json alphabet = "four-state";
};

int log_level() {
    const char* env = std::getenv("CTCLAB_LOG");
    if (env == nullptr) {
        return 0;
    }
    std::string v(env);
    if (v == "debug" || v == "2") {
        return 2;
    }
    if (v == "info" || v == "1") {
        return 1;
    }
    return 0;
}

void log(std::ostream& err, int level, const std::string& msg) {
    if (log_level() >= level) {
        err << "[ctclab] " << msg << '\n';
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        throw ConfigError("malformed JSON in '" + path + "': " + what.substr(0, what.find('\n')));
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    json j = read_json_file(path);
    if (!j.is_object()) {
        throw ConfigError("config '" + path + "' must be a JSON object");
    }
    const auto& allowed = kAllowedKeys.at(cfg.subcommand);
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown config key '" + key + "' for " + cfg.subcommand);
        }
    }
    try {
        if (j.contains("format")) cfg.format = j["format"].get<std::string>();
        if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
        if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("monte_carlo")) cfg.monte_carlo = j["monte_carlo"].get<std::size_t>();
        if (j.contains("prior_z")) cfg.prior_z = j["prior_z"].get<double>();
        if (j.contains("model")) cfg.model = j["model"].get<std::string>();
        if (j.contains("rule")) cfg.rule = j["rule"].get<std::string>();
        if (j.contains("unitary")) cfg.unitary = j["unitary"];
        if (j.contains("input")) cfg.input = j["input"];
        if (j.contains("alphabet")) cfg.alphabet = j["alphabet"];
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }
}

CompletionRule parse_rule(const std::string& name) {
    if (name == "scrambled") {
        return CompletionRule::scrambled;
    }
    if (name == "rotation") {
        return CompletionRule::rotation;
    }
    throw ConfigError("unknown completion rule '" + name + "' (expected scrambled or rotation)");
}

FixedPointOptions solver_options(const RunConfig& cfg) {
    FixedPointOptions opts;
    if (cfg.tol) {
        if (!(*cfg.tol > 0)) {
            throw ConfigError("--tol must be positive");
        }
        opts.kernel_threshold = *cfg.tol;
    }
    return opts;
}

DensityMatrix resolve_input(const json& desc) {
    if (desc.is_null()) {
        throw ConfigError("an input state is required (--input)");
    }
    if (desc.is_string()) {
        const std::string name = desc.get<std::string>();
        static const std::map<std::string, PureState (*)()> qubits{
            {"z+", z_plus}, {"z-", z_minus}, {"x+", x_plus}, {"x-", x_minus}};
        if (auto it = qubits.find(name); it != qubits.end()) {
            return DensityMatrix::pure(it->second());
        }
        if (name == "mixed") {
            return reduce(bell_singlet(), 1);
        }
        FourStateProtocol p = four_state_alphabet();
        for (std::size_t j = 0; j < 4; ++j) {
            if (name == "xi" + std::to_string(j)) {
                return DensityMatrix::pure(p.alphabet.states[j]);
            }
            if (name == "u" + std::to_string(j)) {
                return DensityMatrix::pure(p.flags.vectors[j]);
            }
        }
        throw ConfigError("unknown input state '" + name + "'");
    }
    if (desc.is_object() && desc.contains("rows")) {
        return DensityMatrix(matrix_from_json(desc));
    }
    return DensityMatrix::pure(state_from_json(desc));
}

ComplexMatrix resolve_unitary(const json& desc, std::size_t d) {
    if (desc.is_null()) {
        throw ConfigError("a unitary is required (--unitary)");
    }
    if (!desc.is_string()) {
        return matrix_from_json(desc);
    }
    const std::string name = desc.get<std::string>();
    if (name == "identity") {
        return ComplexMatrix::identity(d * d);
    }
    if (name == "swap") {
        return swap_operator(d);
    }
    if (name == "cnot") {
        if (d != 2) {
            throw ConfigError("cnot needs a qubit input");
        }
        FlagBasis z{{z_plus(), z_minus()}};
        return controlled_u(z, {ComplexMatrix::identity(2), ComplexMatrix{{0, 1}, {1, 0}}});
    }
    if (name == "brun4") {
        if (d != 4) {
            throw ConfigError("brun4 needs a 4-dimensional input (xi0..xi3, u0..u3)");
        }
        FourStateProtocol p = four_state_alphabet();
        return brun_circuit(p.alphabet, p.flags);
    }
    throw ConfigError("unknown unitary '" + name + "'");
}

std::pair<Alphabet, FlagBasis> resolve_alphabet(const json& desc) {
    json j = desc;
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "four-state") {
            FourStateProtocol p = four_state_alphabet();
            return {p.alphabet, p.flags};
        }
        j = read_json_file(name);
    }
    Alphabet alphabet;
    std::optional<FlagBasis> flags;
    const json* states = &j;
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (key != "states" && key != "flags") {
                throw ConfigError("unknown alphabet key '" + key + "'");
            }
        }
        states = &j.at("states");
        if (j.contains("flags")) {
            FlagBasis f;
            for (const auto& s : j["flags"]) {
                f.vectors.push_back(state_from_json(s));
            }
            flags = std::move(f);
        }
    }
    if (!states->is_array() || states->empty()) {
        throw ConfigError("alphabet must be a non-empty list of states");
    }
    for (const auto& s : *states) {
        alphabet.states.push_back(state_from_json(s));
    }
    alphabet.validate();
    if (!flags) {
        FlagBasis f;
        const std::size_t d = alphabet.dimension();
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<Complex> amps(d);
            amps[k] = 1.0;
            f.vectors.emplace_back(std::move(amps));
        }
        flags = std::move(f);
    }
    flags->validate();
    return {std::move(alphabet), std::move(*flags)};
}

double flag_weight(const DensityMatrix& rho, const PureState& u) {
    ComplexMatrix ket = u.ket();
    return (dagger(ket) * rho.matrix() * ket)(0, 0).real();
}

std::string cmd_fixed_point(const RunConfig& cfg) {
    if (cfg.format != "json") {
        throw ConfigError("fixed-point supports only --format json");
    }
    DensityMatrix input = resolve_input(cfg.input);
    DeutschInstance inst = make_instance(resolve_unitary(cfg.unitary, input.dimension()), input);
    FixedPointReport report = solve_fixed_points(inst, solver_options(cfg));
    return to_json(report).dump(2) + "\n";
}

struct SymbolResult {
    std::size_t symbol;
    double success;
    std::size_t fixed_space_dim;
    double residual;
};

std::string render_symbol_table(const std::vector<SymbolResult>& results, const json& extra, ReportFormat format,
                                bool with_fixed_space) {
    double mean = 0;
    for (const auto& r : results) {
        mean += r.success / static_cast<double>(results.size());
    }
    switch (format) {
        case ReportFormat::json: {
            json j = extra;
            json rows = json::array();
            for (const auto& r : results) {
                json row{{"symbol", r.symbol}, {"success", r.success}};
                if (with_fixed_space) {
                    row["fixed_space_dim"] = r.fixed_space_dim;
                    row["residual"] = r.residual;
                }
                rows.push_back(std::move(row));
            }
            j["symbols"] = std::move(rows);
            j["mean_success"] = mean;
            return j.dump(2) + "\n";
        }
        case ReportFormat::csv: {
            std::ostringstream out;
            out << (with_fixed_space ? "symbol,success,fixed_space_dim,residual\n" : "symbol,success\n");
            for (const auto& r : results) {
                out << r.symbol << ',' << format_number(r.success);
                if (with_fixed_space) {
                    out << ',' << r.fixed_space_dim << ',' << format_number(r.residual);
                }
                out << '\n';
            }
            return out.str();
        }
        case ReportFormat::markdown: {
            std::ostringstream out;
            out << (with_fixed_space ? "| symbol | success | fixed space dim |\n|---|---|---|\n"
                                     : "| symbol | success |\n|---|---|\n");
            for (const auto& r : results) {
                out << "| " << r.symbol << " | " << format_number(r.success) << " |";
                if (with_fixed_space) {
                    out << ' ' << r.fixed_space_dim << " |";
                }
                out << '\n';
            }
            out << "\nmean success: " << format_number(mean) << '\n';
            if (extra.contains("indistinguishable_pairs") && !extra["indistinguishable_pairs"].empty()) {
                out << "indistinguishable pairs: " << extra["indistinguishable_pairs"].dump() << '\n';
            }
            return out.str();
        }
    }
    return "";
}

std::string cmd_discriminate(const RunConfig& cfg, std::ostream& err) {
    ReportFormat format = parse_report_format(cfg.format);
    auto [alphabet, flags] = resolve_alphabet(cfg.alphabet);
    CompletionRule rule = parse_rule(cfg.rule);
    ComplexMatrix circuit = brun_circuit(alphabet, flags, rule);
    FixedPointOptions opts = solver_options(cfg);

    std::vector<SymbolResult> results;
    std::vector<DensityMatrix> outputs;
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
        DeutschInstance inst = make_instance(circuit, DensityMatrix::pure(alphabet.states[s]));
        FixedPointReport fp = solve_fixed_points(inst, opts);
        DensityMatrix out = cr_output(inst, fp.chosen);
        log(err, 2, "symbol " + std::to_string(s) + ": fixed space dim " + std::to_string(fp.fixed_space_dim));
        results.push_back({s, flag_weight(out, flags.vectors[s]), fp.fixed_space_dim, fp.residual});
        outputs.push_back(std::move(out));
    }
    json pairs = json::array();
    for (std::size_t a = 0; a < outputs.size(); ++a) {
        for (std::size_t b = a + 1; b < outputs.size(); ++b) {
            if (trace_distance(outputs[a], outputs[b]) <= 1e-9) {
                pairs.push_back({a, b});
            }
        }
    }
    json extra{{"model", "dctc"},
               {"rule", cfg.rule},
               {"alphabet_size", alphabet.size()},
               {"alphabet_rank", span_rank(alphabet.states)},
               {"indistinguishable_pairs", pairs}};
    return render_symbol_table(results, extra, format, true);
}

std::string cmd_pctc(const RunConfig& cfg) {
    ReportFormat format = parse_report_format(cfg.format);
    auto [alphabet, flags] = resolve_alphabet(cfg.alphabet);
    CompletionRule rule = parse_rule(cfg.rule);
    const std::size_t d = flags.dimension();
    PctcInstance inst{brun_circuit(alphabet, flags, rule), DimensionSplit{{d, d}}};
    ComplexMatrix c = pctc_operator(inst);

    std::vector<SymbolResult> results;
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
        DensityMatrix out = pctc_map(c, DensityMatrix::pure(alphabet.states[s]));
        results.push_back({s, flag_weight(out, flags.vectors[s]), 0, 0.0});
    }
    json extra{{"model", "pctc"},
               {"rule", cfg.rule},
               {"alphabet_size", alphabet.size()},
               {"alphabet_rank", span_rank(alphabet.states)},
               {"operator", matrix_to_json(c)}};
    return render_symbol_table(results, extra, format, false);
}

std::string cmd_signal(const RunConfig& cfg) {
    ReportFormat format = parse_report_format(cfg.format);
    SignalingSetup setup(parse_rule(cfg.rule));
    SignalingOptions opts{cfg.prior_z, cfg.monte_carlo, cfg.seed};
    const std::vector<std::pair<FrameLabel, ChannelModel>> runs{
        {FrameLabel::proper_frame, ChannelModel::dctc},   {FrameLabel::improper_frame, ChannelModel::dctc},
        {FrameLabel::proper_frame, ChannelModel::pctc},   {FrameLabel::improper_frame, ChannelModel::pctc},
        {FrameLabel::proper_frame, ChannelModel::linear},
    };
    std::vector<ExperimentReport> reports;
    for (const auto& [frame, model] : runs) {
        reports.emplace_back(signaling_experiment(frame, model, opts, setup));
    }
    double witness = std::abs(std::get<SignalingReport>(reports[0]).mutual_information_bits -
                              std::get<SignalingReport>(reports[1]).mutual_information_bits);
    switch (format) {
        case ReportFormat::json: {
            json j{{"reports", json::parse(emit_report(reports, format))},
                   {"frame_inconsistency_witness_bits", witness}};
            return j.dump(2) + "\n";
        }
        case ReportFormat::csv:
            return emit_report(reports, format);
        case ReportFormat::markdown:
            return emit_report(reports, format) +
                   "\n**Frame-inconsistency witness:** |MI(proper, dctc) - MI(improper, dctc)| = " +
                   format_number(witness) + " bits\n";
    }
    return "";
}

std::string cmd_equivalence(const RunConfig& cfg) {
    ReportFormat format = parse_report_format(cfg.format);
    bool include_dctc;
    if (cfg.model == "all" || cfg.model == "dctc") {
        include_dctc = true;
    } else if (cfg.model == "linear") {
        include_dctc = false;
    } else {
        throw ConfigError("--model must be all, linear or dctc for equivalence");
    }
    std::vector<ExperimentReport> reports{preparation_equivalence(include_dctc)};
    return emit_report(reports, format);
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (!cfg.out_path) {
        out << text;
        return;
    }
    std::ofstream file(*cfg.out_path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot write '" + *cfg.out_path + "'");
    }
    file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ctclab: Deutsch and post-selected closed-timelike-curve simulations"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string format;
    std::string out_path;
    double tol = 0;
    std::uint64_t seed = 0;
    std::size_t monte_carlo = 0;
    auto* o_config = app.add_option("--config", config_path, "JSON config file");
    auto* o_out = app.add_option("--out", out_path, "write the report here instead of stdout");
    auto* o_format = app.add_option("--format", format, "json | csv | markdown");
    auto* o_tol = app.add_option("--tol", tol, "kernel threshold for the fixed-point solver");
    auto* o_seed = app.add_option("--seed", seed, "seed for Monte Carlo sampling");
    auto* o_mc = app.add_option("--monte-carlo", monte_carlo, "number of Monte Carlo samples (signal)");

    std::string unitary;
    std::string input;
    std::string alphabet;
    std::string model;
    std::string rule;
    double prior_z = 0.5;

    auto* fixed = app.add_subcommand("fixed-point", "solve the D-CTC fixed-point problem");
    auto* o_unitary = fixed->add_option("--unitary", unitary, "identity | swap | cnot | brun4");
    auto* o_input = fixed->add_option("--input", input, "z+ | z- | x+ | x- | mixed | xi0..xi3 | u0..u3");

    auto* disc = app.add_subcommand("discriminate", "run an alphabet through the Brun circuit");
    auto* o_alphabet = disc->add_option("--alphabet", alphabet, "four-state or a JSON file");
    auto* o_rule = disc->add_option("--rule", rule, "scrambled | rotation");

    auto* signal = app.add_subcommand("signal", "EPR signaling experiments in both frames");
    auto* o_prior = signal->add_option("--prior-z", prior_z, "probability that Alice uses the z code");
    auto* o_signal_rule = signal->add_option("--rule", rule, "scrambled | rotation");

    auto* equiv = app.add_subcommand("equivalence", "proper vs improper preparation");
    auto* o_model = equiv->add_option("--model", model, "all | linear | dctc");

    auto* pctc = app.add_subcommand("pctc", "the alphabet under the post-selected CTC");
    auto* o_pctc_alphabet = pctc->add_option("--alphabet", alphabet, "four-state or a JSON file");
    auto* o_pctc_rule = pctc->add_option("--rule", rule, "scrambled | rotation");

    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "ctclab: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    RunConfig cfg;
    cfg.subcommand = app.get_subcommands().front()->get_name();
    try {
        if (o_config->count() > 0) {
            apply_config_file(cfg, config_path);
        }
        if (o_format->count() > 0) cfg.format = format;
        if (o_out->count() > 0) cfg.out_path = out_path;
        if (o_tol->count() > 0) cfg.tol = tol;
        if (o_seed->count() > 0) cfg.seed = seed;
        if (o_mc->count() > 0) cfg.monte_carlo = monte_carlo;
        if (o_unitary->count() > 0) cfg.unitary = unitary;
        if (o_input->count() > 0) cfg.input = input;
        if (o_alphabet->count() + o_pctc_alphabet->count() > 0) cfg.alphabet = alphabet;
        if (o_rule->count() + o_signal_rule->count() + o_pctc_rule->count() > 0) cfg.rule = rule;
        if (o_prior->count() > 0) cfg.prior_z = prior_z;
        if (o_model->count() > 0) cfg.model = model;

        log(err, 1, "running " + cfg.subcommand);
        std::string text;
        if (cfg.subcommand == "fixed-point") {
            text = cmd_fixed_point(cfg);
        } else if (cfg.subcommand == "discriminate") {
            text = cmd_discriminate(cfg, err);
        } else if (cfg.subcommand == "signal") {
            text = cmd_signal(cfg);
        } else if (cfg.subcommand == "equivalence") {
            text = cmd_equivalence(cfg);
        } else {
            text = cmd_pctc(cfg);
        }
        write_output(cfg, text, out);
        return kExitOk;
    } catch (const SolverError& e) {
        err << "ctclab: solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const PostSelectionError& e) {
        err << "ctclab: solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const ConfigError& e) {
        err << "ctclab: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::invalid_argument& e) {
        err << "ctclab: invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const nlohmann::json::exception& e) {
        err << "ctclab: invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        err << "ctclab: solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    }
}

}  // namespace ctclab::cli
