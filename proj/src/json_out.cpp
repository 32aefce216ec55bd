#include <nlohmann/json.hpp>

#include "flab/json_out.hpp"

namespace flab {

namespace {

using json = nlohmann::ordered_json;

json root_json(const MoranRoot& root) {
    return {{"exponent", root.exponent}, {"residual", root.residual}};
}

} // namespace

std::string fixed_point_report_json(const FixedPointReport& report, double tolerance) {
    json doc;
    doc["iterations"] = report.iterations;
    doc["final_change"] = report.final_change;
    doc["contraction_ratio_observed"] = report.contraction_ratio_observed;
    doc["converged"] = report.converged;
    doc["tolerance"] = tolerance;
    return doc.dump(2) + "\n";
}

std::string dimension_estimate_json(const DimensionEstimate& estimate) {
    json doc;
    doc["dimension"] = estimate.slope;
    doc["intercept"] = estimate.intercept;
    doc["r_squared"] = estimate.r_squared;
    doc["fit_first"] = estimate.fit_first;
    doc["fit_last"] = estimate.fit_last;
    doc["method"] = estimate.series.method == BoxCountMethod::column_oscillation_2d
                        ? "column-oscillation-2d"
                        : "cube-grid-3d";
    doc["deltas"] = estimate.series.deltas;
    doc["counts"] = estimate.series.counts;
    return doc.dump(2) + "\n";
}

std::string moran_root_json(const MoranRoot& root) {
    return root_json(root).dump(2) + "\n";
}

std::string moran_bounds_json(const MoranRoot& r, const MoranRoot& R) {
    json doc;
    doc["lower"] = root_json(r);
    doc["upper"] = root_json(R);
    return doc.dump(2) + "\n";
}

std::string theorem_report_json(const TheoremReport& report) {
    json doc;
    doc["theorem_id"] = report.theorem_id;
    doc["hypothesis_satisfied"] = report.hypothesis_satisfied;
    json hv = json::object();
    for (const auto& [key, value] : report.hypothesis_values) hv[key] = value;
    doc["hypothesis_values"] = hv;
    json predicted;
    if (report.predicted.interval)
        predicted["interval"] = {report.predicted.interval->first, report.predicted.interval->second};
    else
        predicted["interval"] = nullptr;
    predicted["equality"] = report.predicted.equality;
    doc["predicted"] = predicted;
    json obs = json::object();
    for (const auto& [key, value] : report.observed) obs[key] = value;
    doc["observed"] = obs;
    doc["verdict"] = verdict_name(report.verdict);
    doc["summary"] = report.summary;
    return doc.dump(2) + "\n";
}

} // namespace flab
