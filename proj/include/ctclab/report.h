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

#ifndef CTCLAB_REPORT_H
#define CTCLAB_REPORT_H

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ctclab/dctc.h"
#include "ctclab/experiments.h"

namespace ctclab {

enum class ReportFormat { json, csv, markdown };

/// Throws std::invalid_argument naming the format when it is not one of
/// json, csv, markdown.
ReportFormat parse_report_format(std::string_view name);

using ExperimentReport = std::variant<SignalingReport, EquivalenceReport, DecorrelationReport>;

/// Deterministic serialization. CSV has one row per (experiment, frame,
/// model); an empty list yields just the header (CSV, markdown) or [] (JSON).
std::string emit_report(const std::vector<ExperimentReport>& reports, ReportFormat format);

// Matrix schema: {"rows": n, "cols": m, "re": [[...]], "im": [[...]]}.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// State schema: {"re": [...], "im": [...]} with optional "split": [...].
nlohmann::json state_to_json(const PureState& psi);
PureState state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FixedPointReport& report);
nlohmann::json to_json(const SignalingReport& report);
nlohmann::json to_json(const EquivalenceReport& report);
nlohmann::json to_json(const DecorrelationReport& report);

/// Shortest round-trippable decimal form.
std::string format_number(double x);

}  // namespace ctclab

#endif
