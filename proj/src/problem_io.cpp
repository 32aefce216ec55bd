#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "flab/problem_io.hpp"
#include "flab/svg.hpp"

namespace flab {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw parse_error(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) fail(path.empty() ? item.key() : path + "." + item.key(), "unknown field");
    }
}

double to_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

// Complex values are written as [re, im]; a bare number means a real value.
cplx to_cplx(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2) fail(path, "expected [re, im] or a number");
    return {to_number(v[0], path + "[0]"), to_number(v[1], path + "[1]")};
}

std::vector<double> to_numbers(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(to_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// Generator sums are stored in their text form, e.g.
// "weierstrass:2,0.5 + (0,1)*takagi:0.5".
std::vector<GeneratorTerm> to_terms(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a generator text string");
    try {
        return parse_terms_text(v.get<std::string>());
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

ScalingEntry to_scaling(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected a scaling object");
    if (!v.contains("form") || !v["form"].is_string()) fail(path + ".form", "expected a string");
    const std::string form = v["form"].get<std::string>();
    ScalingEntry entry;
    if (form == "constant") {
        reject_unknown(v, path, {"form", "value"});
        if (!v.contains("value")) fail(path + ".value", "missing");
        entry.form = ScalingFunction::Form::constant;
        entry.constant = to_cplx(v["value"], path + ".value");
    } else if (form == "affine") {
        reject_unknown(v, path, {"form", "slope", "intercept"});
        if (!v.contains("slope") || !v.contains("intercept"))
            fail(path, "affine scaling needs slope and intercept");
        entry.form = ScalingFunction::Form::affine_in_t;
        entry.slope = to_cplx(v["slope"], path + ".slope");
        entry.intercept = to_cplx(v["intercept"], path + ".intercept");
    } else if (form == "sampled") {
        reject_unknown(v, path, {"form", "spec"});
        if (!v.contains("spec")) fail(path + ".spec", "missing");
        entry.form = ScalingFunction::Form::sampled;
        entry.terms = to_terms(v["spec"], path + ".spec");
    } else {
        fail(path + ".form", "unknown form '" + form + "'");
    }
    return entry;
}

} // namespace

ProblemFile parse_problem_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(e.what());
    }
    if (!doc.is_object()) throw parse_error("top level: expected an object");
    reject_unknown(doc, "",
                   {"version", "knots", "germ", "base", "scalings", "values", "grid_exponent",
                    "seed"});
    for (const char* key : {"version", "knots", "germ", "base", "scalings"})
        if (!doc.contains(key)) fail(key, "missing");

    ProblemFile file;
    if (!doc["version"].is_number_integer()) fail("version", "expected an integer");
    file.version = doc["version"].get<int>();
    if (file.version != 1) fail("version", "unsupported version " + std::to_string(file.version));

    file.knots = to_numbers(doc["knots"], "knots");
    file.germ = to_terms(doc["germ"], "germ");
    file.base = to_terms(doc["base"], "base");
    if (!doc["scalings"].is_array() || doc["scalings"].empty())
        fail("scalings", "expected a nonempty array");
    for (std::size_t i = 0; i < doc["scalings"].size(); ++i)
        file.scalings.push_back(to_scaling(doc["scalings"][i], "scalings[" + std::to_string(i) + "]"));

    if (doc.contains("values")) {
        if (!doc["values"].is_array()) fail("values", "expected an array");
        std::vector<cplx> values;
        for (std::size_t i = 0; i < doc["values"].size(); ++i)
            values.push_back(to_cplx(doc["values"][i], "values[" + std::to_string(i) + "]"));
        file.values = std::move(values);
    }
    if (doc.contains("grid_exponent")) {
        if (!doc["grid_exponent"].is_number_integer()) fail("grid_exponent", "expected an integer");
        file.grid_exponent = doc["grid_exponent"].get<int>();
        if (file.grid_exponent < 1 || file.grid_exponent > 24)
            fail("grid_exponent", "must lie in [1, 24]");
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
            fail("seed", "expected a nonnegative integer");
        const auto s = doc["seed"].get<std::int64_t>();
        if (s < 0) fail("seed", "expected a nonnegative integer");
        file.seed = static_cast<std::uint64_t>(s);
    }
    return file;
}

ProblemFile load_problem_file(const std::string& path) {
    return parse_problem_json(read_text_file(path));
}

std::string problem_to_json(const ProblemFile& file) {
    json doc;
    doc["version"] = file.version;
    doc["knots"] = file.knots;
    doc["germ"] = terms_text(file.germ);
    doc["base"] = terms_text(file.base);
    doc["scalings"] = json::array();
    for (const ScalingEntry& s : file.scalings) {
        json e;
        switch (s.form) {
        case ScalingFunction::Form::constant:
            e["form"] = "constant";
            e["value"] = {s.constant.real(), s.constant.imag()};
            break;
        case ScalingFunction::Form::affine_in_t:
            e["form"] = "affine";
            e["slope"] = {s.slope.real(), s.slope.imag()};
            e["intercept"] = {s.intercept.real(), s.intercept.imag()};
            break;
        case ScalingFunction::Form::sampled:
            e["form"] = "sampled";
            e["spec"] = terms_text(s.terms);
            break;
        }
        doc["scalings"].push_back(e);
    }
    if (file.values) {
        doc["values"] = json::array();
        for (const cplx& v : *file.values) doc["values"].push_back({v.real(), v.imag()});
    }
    doc["grid_exponent"] = file.grid_exponent;
    doc["seed"] = file.seed;
    return doc.dump(2) + "\n";
}

std::int64_t working_grid_size(const ProblemFile& file) {
    require_input(file.knots.size() >= 3, "need at least 3 knots");
    const auto intervals = static_cast<std::int64_t>(file.knots.size()) - 1;
    std::int64_t cells = 2;
    for (int l = 0; l < file.grid_exponent; ++l) {
        cells *= intervals;
        require_input(cells <= (std::int64_t{1} << 26), "working grid too large");
    }
    return cells + 1;
}

FractalProblem realize_problem(const ProblemFile& file) {
    Partition partition{file.knots};
    const double x0 = partition.x_first();
    const double x1 = partition.x_last();
    const std::int64_t m = working_grid_size(file);

    for (const GeneratorTerm& t : file.germ)
        require_input(t.spec.kind != GeneratorKind::linear_through_endpoints ||
                          !t.spec.parameters.empty(),
                      "a linear term in the germ needs explicit endpoints");
    const SampledFunction germ = sample_terms(file.germ, x0, x1, m);

    // The endpoint-free linear form is the germ's chord; resolve it now that
    // the germ endpoints are known.
    std::vector<GeneratorTerm> base_terms = file.base;
    for (GeneratorTerm& t : base_terms) {
        if (t.spec.kind != GeneratorKind::linear_through_endpoints || !t.spec.parameters.empty())
            continue;
        const cplx a = germ.value(0);
        const cplx b = germ.value(m - 1);
        t.spec.parameters = {a.real(), a.imag(), b.real(), b.imag()};
    }
    const SampledFunction base = sample_terms(base_terms, x0, x1, m);

    std::vector<ScalingFunction> scalings;
    for (const ScalingEntry& entry : file.scalings) {
        switch (entry.form) {
        case ScalingFunction::Form::constant:
            scalings.push_back(ScalingFunction::make_constant(entry.constant));
            break;
        case ScalingFunction::Form::affine_in_t:
            scalings.push_back(ScalingFunction::make_affine(entry.slope, entry.intercept));
            break;
        case ScalingFunction::Form::sampled:
            scalings.push_back(ScalingFunction::make_sampled(sample_terms(entry.terms, x0, x1, m)));
            break;
        }
    }
    return {std::move(partition), germ, base, std::move(scalings), file.values};
}

} // namespace flab
