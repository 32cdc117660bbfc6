#pragma once

#include <string>
#include <string_view>

#include "supergraph/montecarlo.hpp"

namespace supergraph {

enum class ReportFormat {
    json,     // canonical report document
    csv,      // one row per trial: trial,connected,isolated,L1,L2
    pmf_csv,  // k,empirical,theory for degree experiments
};

ReportFormat parse_report_format(std::string_view text);

/// Deterministic rendering: identical reports give identical bytes, with
/// the single exception of meta.wall_time in JSON.
std::string render_report(const ExperimentReport& report, ReportFormat format);

/// Reads back a JSON report (trial records are not part of the JSON form).
ExperimentReport parse_report_json(std::string_view text);

}  // namespace supergraph
