#include "supergraph/report.hpp"

#include <stdexcept>

#include <json.hpp>

namespace supergraph {

namespace {

using Json = nlohmann::ordered_json;

Json meta_json(const ReportMeta& meta) {
    Json j;
    j["experiment"] = meta.experiment;
    j["config"] = meta.config;
    j["regime"] = meta.regime;
    j["sampler"] = meta.sampler;
    j["c"] = meta.c;
    j["N"] = meta.super_vertices;
    j["n"] = meta.vertices;
    j["p"] = meta.p;
    j["trials"] = meta.trials;
    j["seed"] = meta.seed;
    j["wall_time"] = meta.wall_time;
    return j;
}

std::string render_json(const ExperimentReport& report) {
    Json doc;
    doc["meta"] = meta_json(report.meta);
    doc["estimates"] = Json::object();
    for (const auto& [name, estimate] : report.estimates) {
        Json e;
        e["value"] = estimate.value;
        e["standard_error"] =
            estimate.standard_error ? Json(*estimate.standard_error) : Json(nullptr);
        doc["estimates"][name] = std::move(e);
    }
    doc["theory"] = Json::object();
    for (const auto& [name, value] : report.theory) doc["theory"][name] = value;
    doc["distributions"] = Json::object();
    for (const auto& [name, values] : report.distributions) doc["distributions"][name] = values;
    return doc.dump(2) + "\n";
}

std::string render_trials_csv(const ExperimentReport& report) {
    std::string out = "trial,connected,isolated,L1,L2\n";
    for (const auto& r : report.trial_records) {
        out += std::to_string(r.trial) + ',' + (r.connected ? "1" : "0") + ',' +
               std::to_string(r.isolated) + ',' + std::to_string(r.largest) + ',' +
               std::to_string(r.second_largest) + '\n';
    }
    return out;
}

std::string format_double(double x) { return Json(x).dump(); }

std::string render_pmf_csv(const ExperimentReport& report) {
    const auto empirical = report.distributions.find("degree_pmf_empirical");
    const auto theory = report.distributions.find("degree_pmf_theory");
    if (empirical == report.distributions.end() || theory == report.distributions.end()) {
        throw std::invalid_argument("pmf-csv format requires a degree experiment report");
    }
    // The final row is the lumped tail bucket (k >= K_max).
    std::string out = "k,empirical,theory\n";
    const std::size_t length = std::max(empirical->second.size(), theory->second.size());
    for (std::size_t k = 0; k < length; ++k) {
        const double e = k < empirical->second.size() ? empirical->second[k] : 0.0;
        const double t = k < theory->second.size() ? theory->second[k] : 0.0;
        out += std::to_string(k) + ',' + format_double(e) + ',' + format_double(t) + '\n';
    }
    return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    if (text == "pmf-csv") return ReportFormat::pmf_csv;
    throw std::invalid_argument("unknown report format '" + std::string(text) + "'");
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: return render_json(report);
        case ReportFormat::csv: return render_trials_csv(report);
        case ReportFormat::pmf_csv: return render_pmf_csv(report);
    }
    throw std::invalid_argument("unknown report format");
}

ExperimentReport parse_report_json(std::string_view text) {
    const auto doc = Json::parse(text);
    ExperimentReport report;
    const auto& meta = doc.at("meta");
    report.meta.experiment = meta.at("experiment").get<std::string>();
    report.meta.config = meta.at("config").get<std::string>();
    report.meta.regime = meta.at("regime").get<std::string>();
    report.meta.sampler = meta.at("sampler").get<std::string>();
    report.meta.c = meta.at("c").get<double>();
    report.meta.super_vertices = meta.at("N").get<std::uint64_t>();
    report.meta.vertices = meta.at("n").get<std::uint64_t>();
    report.meta.p = meta.at("p").get<double>();
    report.meta.trials = meta.at("trials").get<std::uint64_t>();
    report.meta.seed = meta.at("seed").get<std::uint64_t>();
    report.meta.wall_time = meta.at("wall_time").get<double>();
    for (const auto& [name, e] : doc.at("estimates").items()) {
        Estimate estimate{e.at("value").get<double>(), std::nullopt};
        if (!e.at("standard_error").is_null()) {
            estimate.standard_error = e.at("standard_error").get<double>();
        }
        report.estimates[name] = estimate;
    }
    for (const auto& [name, v] : doc.at("theory").items()) report.theory[name] = v.get<double>();
    for (const auto& [name, v] : doc.at("distributions").items()) {
        report.distributions[name] = v.get<std::vector<double>>();
    }
    return report;
}

}  // namespace supergraph
