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

#include "ctclab/report.h"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ctclab {

namespace {

using nlohmann::json;

// One flattened line of the CSV / markdown summary.
struct Row {
    std::string experiment;
    std::string frame;
    std::string model;
    std::string mutual_information;
    std::string success_z;
    std::string success_x;
    std::string trace_distance;
    std::string monte_carlo;
};

std::vector<Row> flatten(const ExperimentReport& report) {
    std::vector<Row> rows;
    if (const auto* s = std::get_if<SignalingReport>(&report)) {
        Row r{"signaling", std::string(to_string(s->frame)), std::string(to_string(s->model)),
              format_number(s->mutual_information_bits), format_number(s->per_symbol_success.at(0)),
              format_number(s->per_symbol_success.at(1)), "", ""};
        if (s->monte_carlo_mutual_information_bits) {
            r.monte_carlo = format_number(*s->monte_carlo_mutual_information_bits);
        }
        rows.push_back(std::move(r));
    } else if (const auto* e = std::get_if<EquivalenceReport>(&report)) {
        rows.push_back({"equivalence", "", "linear", "", "", "", format_number(e->trace_distance_linear), ""});
        if (e->dctc) {
            rows.push_back({"equivalence", "", "dctc", "", "", "", format_number(e->dctc->distance), ""});
        }
    } else if (const auto* d = std::get_if<DecorrelationReport>(&report)) {
        rows.push_back({"decorrelation", "", "dctc", "", "", "", format_number(d->distance), ""});
    }
    return rows;
}

std::string emit_csv(const std::vector<ExperimentReport>& reports) {
    std::ostringstream out;
    out << "experiment,frame,model,mutual_information_bits,success_z,success_x,trace_distance,"
           "monte_carlo_mutual_information_bits\n";
    for (const auto& report : reports) {
        for (const Row& r : flatten(report)) {
            out << r.experiment << ',' << r.frame << ',' << r.model << ',' << r.mutual_information << ','
                << r.success_z << ',' << r.success_x << ',' << r.trace_distance << ',' << r.monte_carlo << '\n';
        }
    }
    return out.str();
}

void markdown_joint_table(std::ostringstream& out, const SignalingReport& s) {
    out << "\n### " << to_string(s.frame) << " / " << to_string(s.model) << "\n\n";
    out << "| Alice \\ Bob |";
    for (const auto& c : s.joint.cols) {
        out << ' ' << c << " |";
    }
    out << "\n|---|";
    for (std::size_t i = 0; i < s.joint.cols.size(); ++i) {
        out << "---|";
    }
    out << '\n';
    for (std::size_t a = 0; a < s.joint.rows.size(); ++a) {
        out << "| " << s.joint.rows[a] << " |";
        for (double p : s.joint.probabilities[a]) {
            out << ' ' << format_number(p) << " |";
        }
        out << '\n';
    }
}

std::string emit_markdown(const std::vector<ExperimentReport>& reports) {
    std::ostringstream out;
    out << "| experiment | frame | model | mutual information (bits) | success z | success x | trace distance |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const auto& report : reports) {
        for (const Row& r : flatten(report)) {
            out << "| " << r.experiment << " | " << r.frame << " | " << r.model << " | " << r.mutual_information
                << " | " << r.success_z << " | " << r.success_x << " | " << r.trace_distance << " |\n";
        }
    }
    for (const auto& report : reports) {
        if (const auto* s = std::get_if<SignalingReport>(&report)) {
            markdown_joint_table(out, *s);
        }
    }
    return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") {
        return ReportFormat::json;
    }
    if (name == "csv") {
        return ReportFormat::csv;
    }
    if (name == "markdown") {
        return ReportFormat::markdown;
    }
    throw std::invalid_argument("unsupported format '" + std::string(name) + "'");
}

std::string format_number(double x) {
    if (x == 0.0) {
        x = 0.0;  // drop the sign of negative zero
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return std::string(buf, end);
}

std::string emit_report(const std::vector<ExperimentReport>& reports, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: {
            json arr = json::array();
            for (const auto& report : reports) {
                std::visit([&](const auto& r) { arr.push_back(to_json(r)); }, report);
            }
            return arr.dump(2) + "\n";
        }
        case ReportFormat::csv:
            return emit_csv(reports);
        case ReportFormat::markdown:
            return emit_markdown(reports);
    }
    throw std::invalid_argument("unsupported format");
}

json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array();
    json im = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("matrix must be an object with rows, cols, re, im");
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "rows" && key != "cols" && key != "re" && key != "im") {
            throw std::invalid_argument("unknown matrix key '" + key + "'");
        }
    }
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const json& re = j.at("re");
    json im = j.contains("im") ? j.at("im") : json();
    if (!re.is_array() || re.size() != rows) {
        throw std::invalid_argument("matrix 're' must have 'rows' rows");
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!re[r].is_array() || re[r].size() != cols) {
            throw std::invalid_argument("matrix 're' row has the wrong length");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            double imag = im.is_null() ? 0.0 : im.at(r).at(c).get<double>();
            entries.emplace_back(re[r][c].get<double>(), imag);
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

json state_to_json(const PureState& psi) {
    json re = json::array();
    json im = json::array();
    for (const Complex& z : psi.amplitudes()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}, {"split", psi.split().factors}};
}

PureState state_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("state must be an object with re, im");
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "re" && key != "im" && key != "split") {
            throw std::invalid_argument("unknown state key '" + key + "'");
        }
    }
    const json& re = j.at("re");
    if (!re.is_array() || re.empty()) {
        throw std::invalid_argument("state 're' must be a non-empty array");
    }
    std::vector<Complex> amps;
    for (std::size_t i = 0; i < re.size(); ++i) {
        double imag = j.contains("im") ? j.at("im").at(i).get<double>() : 0.0;
        amps.emplace_back(re[i].get<double>(), imag);
    }
    DimensionSplit split;
    if (j.contains("split")) {
        split.factors = j.at("split").get<std::vector<std::size_t>>();
    }
    return PureState::normalized(std::move(amps), std::move(split));
}

json to_json(const FixedPointReport& report) {
    json basis = json::array();
    for (const auto& b : report.basis_of_fixed_space) {
        basis.push_back(matrix_to_json(b));
    }
    return json{{"chosen", matrix_to_json(report.chosen.matrix())},
                {"fixed_space_dim", report.fixed_space_dim},
                {"unique", report.unique()},
                {"residual", report.residual},
                {"entropy_bits", report.entropy_bits},
                {"method", std::string(to_string(report.method))},
                {"selection", "maximum-entropy"},
                {"basis_of_fixed_space", std::move(basis)}};
}

json to_json(const SignalingReport& report) {
    json j{{"experiment", "signaling"},
           {"frame", std::string(to_string(report.frame))},
           {"model", std::string(to_string(report.model))},
           {"joint",
            {{"rows", report.joint.rows}, {"cols", report.joint.cols}, {"probabilities", report.joint.probabilities}}},
           {"mutual_information_bits", report.mutual_information_bits},
           {"per_symbol_success", report.per_symbol_success},
           {"notes", report.notes}};
    if (report.monte_carlo_mutual_information_bits) {
        j["monte_carlo"] = {{"samples", report.monte_carlo_samples},
                            {"mutual_information_bits", *report.monte_carlo_mutual_information_bits}};
    }
    return j;
}

json to_json(const EquivalenceReport& report) {
    json j{{"experiment", "equivalence"},
           {"proper_preparation", matrix_to_json(report.proper_preparation.matrix())},
           {"improper_preparation", matrix_to_json(report.improper_preparation.matrix())},
           {"trace_distance_linear", report.trace_distance_linear}};
    if (report.dctc) {
        j["dctc"] = {{"proper_output", matrix_to_json(report.dctc->proper_output.matrix())},
                     {"improper_output", matrix_to_json(report.dctc->improper_output.matrix())},
                     {"distance", report.dctc->distance}};
    }
    return j;
}

json to_json(const DecorrelationReport& report) {
    return json{{"experiment", "decorrelation"},
                {"alice_basis", report.alice_basis},
                {"improper_joint", matrix_to_json(report.improper_joint.matrix())},
                {"proper_joint", matrix_to_json(report.proper_joint.matrix())},
                {"distance", report.distance}};
}

}  // namespace ctclab
