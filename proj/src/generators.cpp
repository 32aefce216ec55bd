#include "flab/generators.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "flab/parallel.hpp"

namespace flab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
// ln(1e12): series kinds truncate once the dropped tail falls below 1e-12 of
// the full coefficient sum.
constexpr double kTailLog = 27.631021115928547;

struct KindName {
    GeneratorKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {GeneratorKind::polynomial, "polynomial"},
    {GeneratorKind::trig_sum, "trig-sum"},
    {GeneratorKind::weierstrass, "weierstrass"},
    {GeneratorKind::takagi, "takagi"},
    {GeneratorKind::hilbert_coordinate_1, "hilbert-coordinate-1"},
    {GeneratorKind::hilbert_coordinate_2, "hilbert-coordinate-2"},
    {GeneratorKind::constant, "constant"},
    {GeneratorKind::linear_through_endpoints, "linear-through-endpoints"},
};

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-9; }

// Hilbert index -> cell coordinates at depth d (side n = 2^d); classic
// quadrant rotation walk.
void hilbert_d2xy(int depth, std::uint64_t k, std::uint64_t& x, std::uint64_t& y) {
    const std::uint64_t n = std::uint64_t{1} << depth;
    x = 0;
    y = 0;
    std::uint64_t t = k;
    for (std::uint64_t s = 1; s < n; s <<= 1) {
        const std::uint64_t rx = 1 & (t / 2);
        const std::uint64_t ry = 1 & (t ^ rx);
        if (ry == 0) {
            if (rx == 1) {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::swap(x, y);
        }
        x += s * rx;
        y += s * ry;
        t /= 4;
    }
}

int series_depth(double decay_log) {
    return static_cast<int>(std::ceil(kTailLog / decay_log));
}

double weierstrass_eval(double lambda, double sigma, double phase, double t) {
    const int kmax = series_depth(sigma * std::log(lambda));
    const double w = std::pow(lambda, -sigma);
    double u = std::fmod(t + phase, 1.0);
    double coeff = 1.0;
    double acc = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        acc += coeff * std::cos(kTwoPi * u);
        coeff *= w;
        u = std::fmod(lambda * u, 1.0);
    }
    return acc;
}

double takagi_eval(double w, double phase, double t) {
    const int kmax = series_depth(std::log(1.0 / w));
    double u = std::fmod(t + phase, 1.0);
    double coeff = 1.0;
    double acc = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        acc += coeff * std::abs(u - std::round(u));
        coeff *= w;
        u = std::fmod(2.0 * u, 1.0);
    }
    return acc;
}

double hilbert_eval(int depth, int axis, double t) {
    const std::uint64_t total = std::uint64_t{1} << (2 * depth);
    const double u = t * static_cast<double>(total) - 0.5;
    auto vertex = [&](std::uint64_t k) {
        const auto c = hilbert_cell_center(depth, k);
        return c[static_cast<std::size_t>(axis)];
    };
    if (u <= 0.0) return vertex(0);
    if (u >= static_cast<double>(total - 1)) return vertex(total - 1);
    const auto k0 = static_cast<std::uint64_t>(u);
    const double w = u - static_cast<double>(k0);
    const double a = vertex(k0);
    const double b = vertex(k0 + 1);
    return a + w * (b - a);
}

} // namespace

std::array<double, 2> hilbert_cell_center(int depth, std::uint64_t k) {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    hilbert_d2xy(depth, k, x, y);
    const double inv = 1.0 / static_cast<double>(std::uint64_t{1} << (depth + 1));
    return {static_cast<double>(2 * x + 1) * inv, static_cast<double>(2 * y + 1) * inv};
}

const char* kind_name(GeneratorKind kind) {
    for (const auto& kn : kKindNames)
        if (kn.kind == kind) return kn.name;
    throw internal_error("unknown generator kind");
}

GeneratorKind kind_from_name(std::string_view name) {
    for (const auto& kn : kKindNames)
        if (name == kn.name) return kn.kind;
    throw invalid_input("unknown generator kind '" + std::string(name) + "'");
}

GeneratorSpec parse_spec_text(std::string_view text) {
    GeneratorSpec spec;
    const std::size_t colon = text.find(':');
    spec.kind = kind_from_name(text.substr(0, colon));
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const std::size_t comma = rest.find(',');
            std::string_view tok = rest.substr(0, comma);
            if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.begin(), tok.end(), v);
            if (ec != std::errc() || ptr != tok.end())
                throw parse_error("bad generator parameter '" + std::string(tok) + "'");
            spec.parameters.push_back(v);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    validate_spec(spec);
    return spec;
}

namespace {

// Shortest round-trip form; to_chars keeps the decimal separator '.' in every
// locale.
std::string fmt_num(double v) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw internal_error("number formatting failed");
    return {buf, ptr};
}

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view tok, const char* what) {
    tok = trimmed(tok);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.begin(), tok.end(), v);
    if (ec != std::errc() || ptr != tok.end())
        throw parse_error(std::string("bad ") + what + " '" + std::string(tok) + "'");
    return v;
}

GeneratorTerm parse_one_term(std::string_view text) {
    text = trimmed(text);
    if (text.empty()) throw parse_error("empty generator term");
    GeneratorTerm term;
    std::size_t star = std::string_view::npos;
    int depth = 0;
    for (std::size_t i = 0; i < text.size() && depth >= 0; ++i) {
        if (text[i] == '(') ++depth;
        else if (text[i] == ')') --depth;
        else if (text[i] == '*' && depth == 0 && star == std::string_view::npos) star = i;
    }
    if (depth != 0)
        throw parse_error("unbalanced parentheses in '" + std::string(text) + "'");
    if (star != std::string_view::npos) {
        std::string_view w = trimmed(text.substr(0, star));
        text = trimmed(text.substr(star + 1));
        if (!w.empty() && w.front() == '(') {
            if (w.back() != ')') throw parse_error("unterminated weight '" + std::string(w) + "'");
            w = w.substr(1, w.size() - 2);
            const std::size_t comma = w.find(',');
            if (comma == std::string_view::npos)
                throw parse_error("complex weight wants the form (re,im)");
            term.weight = {parse_number(w.substr(0, comma), "weight"),
                           parse_number(w.substr(comma + 1), "weight")};
        } else {
            term.weight = {parse_number(w, "weight"), 0.0};
        }
    }
    term.spec = parse_spec_text(text);
    return term;
}

} // namespace

std::vector<GeneratorTerm> parse_terms_text(std::string_view text) {
    std::vector<GeneratorTerm> out;
    int depth = 0;
    char prev = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        // A top-level '+' separates terms unless it sits where a sign can:
        // after an exponent marker or a parameter/weight delimiter.
        if (c == '+' && depth == 0 && prev != 0 && prev != 'e' && prev != 'E' && prev != ':' &&
            prev != ',' && prev != '*' && prev != '(') {
            out.push_back(parse_one_term(text.substr(start, i - start)));
            start = i + 1;
            prev = 0;
            continue;
        }
        if (c != ' ' && c != '\t') prev = c;
    }
    out.push_back(parse_one_term(text.substr(start)));
    return out;
}

std::string spec_text(const GeneratorSpec& spec) {
    std::string out = kind_name(spec.kind);
    if (!spec.parameters.empty()) out += ':';
    for (std::size_t i = 0; i < spec.parameters.size(); ++i) {
        if (i) out += ',';
        out += fmt_num(spec.parameters[i]);
    }
    return out;
}

std::string terms_text(const std::vector<GeneratorTerm>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " + ";
        const cplx w = terms[i].weight;
        if (w != cplx{1.0, 0.0}) {
            if (w.imag() == 0.0)
                out += fmt_num(w.real());
            else
                out += '(' + fmt_num(w.real()) + ',' + fmt_num(w.imag()) + ')';
            out += '*';
        }
        out += spec_text(terms[i].spec);
    }
    return out;
}

void validate_spec(const GeneratorSpec& spec) {
    const auto& p = spec.parameters;
    for (double v : p)
        require_input(std::isfinite(v), "generator parameters must be finite");
    switch (spec.kind) {
    case GeneratorKind::polynomial:
        require_input(!p.empty(), "polynomial needs at least one coefficient");
        break;
    case GeneratorKind::trig_sum:
        require_input(!p.empty() && p.size() % 3 == 0,
                      "trig-sum needs (amplitude, frequency, phase) triples");
        break;
    case GeneratorKind::weierstrass:
        require_input(p.size() == 2 || p.size() == 3,
                      "weierstrass needs (lambda, sigma[, phase])");
        require_input(p[0] >= 2.0 && near_integer(p[0]), "weierstrass lambda must be an integer >= 2");
        require_input(p[1] > 0.0 && p[1] < 1.0, "weierstrass sigma must lie in (0,1)");
        break;
    case GeneratorKind::takagi:
        require_input(p.size() == 1 || p.size() == 2, "takagi needs (w[, phase])");
        require_input(p[0] > 0.0 && p[0] < 1.0, "takagi w must lie in (0,1)");
        break;
    case GeneratorKind::hilbert_coordinate_1:
    case GeneratorKind::hilbert_coordinate_2:
        require_input(p.size() == 1 && near_integer(p[0]) && p[0] >= 1.0 && p[0] <= 24.0,
                      "hilbert coordinate needs an integer depth in [1, 24]");
        break;
    case GeneratorKind::constant:
        require_input(p.size() == 1 || p.size() == 2, "constant needs (re[, im])");
        break;
    case GeneratorKind::linear_through_endpoints:
        // The parameter-free form is a placeholder for "chord through the
        // germ endpoints"; whoever samples it must resolve the endpoints.
        require_input(p.empty() || p.size() == 4,
                      "linear-through-endpoints needs (re0, im0, re1, im1)");
        break;
    }
}

cplx eval_generator(const GeneratorSpec& spec, double t) {
    const auto& p = spec.parameters;
    switch (spec.kind) {
    case GeneratorKind::polynomial: {
        double acc = 0.0;
        for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
        return {acc, 0.0};
    }
    case GeneratorKind::trig_sum: {
        double acc = 0.0;
        for (std::size_t i = 0; i + 2 < p.size(); i += 3)
            acc += p[i] * std::sin(kTwoPi * p[i + 1] * t + p[i + 2]);
        return {acc, 0.0};
    }
    case GeneratorKind::weierstrass:
        return {weierstrass_eval(p[0], p[1], p.size() > 2 ? p[2] : 0.0, t), 0.0};
    case GeneratorKind::takagi:
        return {takagi_eval(p[0], p.size() > 1 ? p[1] : 0.0, t), 0.0};
    case GeneratorKind::hilbert_coordinate_1:
        return {hilbert_eval(static_cast<int>(std::llround(p[0])), 0, t), 0.0};
    case GeneratorKind::hilbert_coordinate_2:
        return {hilbert_eval(static_cast<int>(std::llround(p[0])), 1, t), 0.0};
    case GeneratorKind::constant:
        return {p[0], p.size() > 1 ? p[1] : 0.0};
    case GeneratorKind::linear_through_endpoints:
        // Defined on the unit parameter; sample() feeds the normalized
        // grid coordinate so the chord spans the sampling domain.
        return cplx{p[0], p[1]} + t * (cplx{p[2], p[3]} - cplx{p[0], p[1]});
    }
    throw internal_error("unhandled generator kind");
}

SampledFunction sample(const GeneratorSpec& spec, double x0, double x1, std::int64_t m) {
    return sample_terms({GeneratorTerm{spec, cplx{1.0, 0.0}}}, x0, x1, m);
}

SampledFunction sample_terms(const std::vector<GeneratorTerm>& terms, double x0, double x1,
                             std::int64_t m) {
    require_input(!terms.empty(), "empty generator sum");
    require_input(m >= 2, "need at least 2 samples");
    require_input(std::isfinite(x0) && std::isfinite(x1) && x0 < x1, "bad sampling domain");
    for (const auto& term : terms) {
        validate_spec(term.spec);
        require_input(term.spec.kind != GeneratorKind::linear_through_endpoints ||
                          term.spec.parameters.size() == 4,
                      "endpoint chord is unresolved: give explicit endpoints");
    }

    std::vector<cplx> values(static_cast<std::size_t>(m));
    const double inv = 1.0 / static_cast<double>(m - 1);
    parallel_for(m, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t j = lo; j < hi; ++j) {
            const double u = static_cast<double>(j) * inv;
            const double t = x0 + (x1 - x0) * u;
            cplx acc{0.0, 0.0};
            for (const auto& term : terms) {
                const bool unit_param =
                    term.spec.kind == GeneratorKind::linear_through_endpoints;
                acc += term.weight * eval_generator(term.spec, unit_param ? u : t);
            }
            values[static_cast<std::size_t>(j)] = acc;
        }
    });
    return {x0, x1, std::move(values)};
}

} // namespace flab
