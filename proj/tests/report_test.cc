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

#include <algorithm>

#include "ctclab/circuits.h"
#include "gtest/gtest.h"

using namespace ctclab;
using nlohmann::json;

namespace {

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(report, format_names) {
    ASSERT_EQ(parse_report_format("csv"), ReportFormat::csv);
    ASSERT_EQ(parse_report_format("markdown"), ReportFormat::markdown);
    ASSERT_THROW(parse_report_format("xml"), std::invalid_argument);
}

TEST(report, empty_documents) {
    ASSERT_EQ(emit_report({}, ReportFormat::json), "[]\n");
    ASSERT_EQ(count_lines(emit_report({}, ReportFormat::csv)), 1u);
    ASSERT_EQ(count_lines(emit_report({}, ReportFormat::markdown)), 2u);
}

TEST(report, single_signaling_row) {
    SignalingReport r = signaling_experiment(FrameLabel::proper_frame, ChannelModel::linear);
    std::string csv = emit_report({r}, ReportFormat::csv);
    ASSERT_EQ(count_lines(csv), 2u);
    ASSERT_NE(csv.find("signaling,proper_frame,linear,0,"), std::string::npos);
    std::string md = emit_report({r}, ReportFormat::markdown);
    ASSERT_NE(md.find("### proper_frame / linear"), std::string::npos);
    json j = json::parse(emit_report({r}, ReportFormat::json));
    ASSERT_EQ(j.at(0).at("model"), "linear");
}

TEST(report, emission_is_deterministic) {
    std::vector<ExperimentReport> all{signaling_experiment(FrameLabel::proper_frame, ChannelModel::dctc),
                                      preparation_equivalence(), decorrelation_comparison()};
    for (ReportFormat f : {ReportFormat::json, ReportFormat::csv, ReportFormat::markdown}) {
        ASSERT_EQ(emit_report(all, f), emit_report(all, f));
    }
    ASSERT_EQ(count_lines(emit_report(all, ReportFormat::csv)), 5u);
}

TEST(report, format_number) {
    ASSERT_EQ(format_number(0.5), "0.5");
    ASSERT_EQ(format_number(-0.0), "0");
    ASSERT_EQ(format_number(1), "1");
}

TEST(report, matrix_json_round_trip) {
    ComplexMatrix m{{1, Complex(0, 2)}, {3, Complex(-1, 0.5)}};
    json j = matrix_to_json(m);
    ASSERT_EQ(j.at("rows"), 2);
    ASSERT_EQ(matrix_from_json(j), m);
    ASSERT_EQ(matrix_from_json(json::parse(R"({"rows":1,"cols":2,"re":[[1,2]]})")), (ComplexMatrix{{1, 2}}));
    ASSERT_THROW(matrix_from_json(json::parse(R"({"rows":1,"cols":1,"re":[[1]],"extra":0})")), std::invalid_argument);
    ASSERT_THROW(matrix_from_json(json::parse(R"({"rows":2,"cols":1,"re":[[1]]})")), std::invalid_argument);
    ASSERT_THROW(matrix_from_json(json::parse("[1]")), std::invalid_argument);
}

TEST(report, state_json_round_trip) {
    PureState psi = bell_singlet();
    PureState back = state_from_json(state_to_json(psi));
    ASSERT_TRUE(same_ray(psi, back));
    ASSERT_EQ(back.split().factors, psi.split().factors);
    PureState unnormalized = state_from_json(json::parse(R"({"re":[1,1]})"));
    ASSERT_TRUE(same_ray(unnormalized, x_plus()));
    ASSERT_THROW(state_from_json(json::parse(R"({"re":[1],"phase":0})")), std::invalid_argument);
    ASSERT_THROW(state_from_json(json::parse(R"({"re":[]})")), std::invalid_argument);
}

TEST(report, fixed_point_json) {
    FourStateProtocol p = four_state_alphabet();
    auto inst = make_instance(brun_circuit(p.alphabet, p.flags), DensityMatrix::pure(p.alphabet.states[1]));
    json j = to_json(solve_fixed_points(inst));
    ASSERT_EQ(j.at("fixed_space_dim"), 1);
    ASSERT_EQ(j.at("unique"), true);
    ASSERT_EQ(j.at("method"), "kernel");
    ASSERT_EQ(j.at("selection"), "maximum-entropy");
    ComplexMatrix chosen = matrix_from_json(j.at("chosen"));
    ASSERT_LE(max_abs_diff(chosen, p.flags.vectors[1].projector()), 1e-9);
}
