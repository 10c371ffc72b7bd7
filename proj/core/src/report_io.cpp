#include "landau/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace landau {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string library_version() { return LANDAU_VERSION_STRING; }

const std::map<std::string, std::string>& module_versions() {
    static const std::map<std::string, std::string> v{
        {"weight_audit", "1"}, {"coefficient_bounds", "1"}, {"norms", "1"},          {"term_ledger", "1"},
        {"solver", "2"},       {"picard", "1"},             {"boundary_decay", "1"}, {"snapshot", "1"},
    };
    return v;
}

namespace {

json grid_json(const GridSpec& g) {
    return {{"x_dims", g.x_dims},
            {"x_count", g.x_count},
            {"x_extent", g.x_extent},
            {"v_count", g.v_count},
            {"v_extent", g.v_extent},
            {"stencil_order", g.stencil_order},
            {"max_derivative_order", g.max_derivative_order}};
}

std::string finish(json body, const std::string& kind, const Provenance& p) {
    body["kind"] = kind;
    body["provenance"] = {{"config_hash", p.config_hash},
                          {"library_version", library_version()},
                          {"module_versions", module_versions()},
                          {"grid", grid_json(p.grid)}};
    return body.dump(2) + "\n";
}

json vec3(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

std::string report_json(const AuditReport& r, const Provenance& p) {
    json cases = json::array();
    for (const auto& c : r.cases) {
        cases.push_back({{"proposition", c.proposition},
                         {"name", c.name},
                         {"condition", c.condition},
                         {"claim", c.claim},
                         {"count", c.count},
                         {"has_slack", c.has_slack},
                         {"min_slack", to_string(c.min_slack)}});
    }
    json viol = json::array();
    for (const auto& v : r.violations) {
        viol.push_back({{"proposition", v.proposition},
                        {"name", v.name},
                        {"profile", v.profile},
                        {"lhs", to_string(v.lhs)},
                        {"rhs", to_string(v.rhs)}});
    }
    json b = {{"gamma", r.gamma},
              {"eta", to_string(r.eta)},
              {"delta", to_string(r.delta)},
              {"base", r.base},
              {"max_order", r.max_order},
              {"total_cases", r.total_cases},
              {"total_violations", r.total_violations},
              {"passed", r.passed()},
              {"cases", cases},
              {"violations", viol}};
    return finish(std::move(b), "AuditReport", p);
}

std::string report_json(const BoundReport& r, const Provenance& p) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"name", e.name},
                           {"kind", e.kind},
                           {"constant", e.constant},
                           {"samples", e.samples},
                           {"skipped", e.skipped},
                           {"violations", e.violations},
                           {"finite", e.finite},
                           {"worst_index", e.worst_index},
                           {"worst_v", vec3(e.worst_v)},
                           {"worst_x", e.worst_x}});
    }
    json b = {{"gamma", r.gamma},
              {"seed", r.seed},
              {"max_order", r.max_order},
              {"sample_points", r.sample_points},
              {"derivative_indices", r.derivative_indices},
              {"interpolation_box_constant", r.interpolation_box_constant},
              {"max_constant", r.max_constant()},
              {"all_finite", r.all_finite()},
              {"entries", entries}};
    return finish(std::move(b), "BoundReport", p);
}

std::string report_json(const KernelCheckReport& r, const Provenance& p) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"max_error", c.max_error},
                          {"tolerance", c.tolerance},
                          {"samples", c.samples},
                          {"passed", c.passed}});
    }
    json b = {{"gamma", r.gamma}, {"seed", r.seed}, {"passed", r.passed()}, {"checks", checks}};
    return finish(std::move(b), "KernelCheckReport", p);
}

std::string report_json(const EnergyReport& r, const Provenance& p) {
    json idx = json::array();
    for (const auto& s : r.indices) {
        idx.push_back({{"index", s.index.label()}, {"weight", s.weight}, {"y", s.y}, {"x", s.x}, {"ball", s.ball}});
    }
    json b = {{"max_order", r.max_order}, {"times", r.times},   {"indices", idx},
              {"y_total", r.y_total},     {"x_total", r.x_total}, {"ball_y", r.ball_y},
              {"ball_x", r.ball_x},       {"Y_T", r.Y_T},         {"X_T", r.X_T},
              {"E_T", r.E_T},             {"ball_energy", r.ball_energy}, {"has_ball", r.has_ball}};
    return finish(std::move(b), "EnergyReport", p);
}

std::string report_json(const TermLedger& r, const Provenance& p) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json vals = json::object();
        for (std::size_t k = 0; k < r.manifest.size() && k < row.values.size(); ++k) vals[r.manifest[k]] = row.values[k];
        rows.push_back({{"index", row.index.label()}, {"weight", row.weight}, {"values", vals}});
    }
    json totals = json::object();
    for (const auto& name : r.manifest) totals[name] = r.total(name);
    json b = {{"manifest", r.manifest},
              {"times", r.times},
              {"rows", rows},
              {"totals", totals},
              {"boundary_total", r.boundary_total()},
              {"all_nonnegative", r.all_nonnegative()}};
    return finish(std::move(b), "TermLedger", p);
}

std::string report_json(const ContractionHistory& h, const PicardParams& params, const Provenance& p) {
    json entries = json::array();
    for (const auto& e : h.entries) {
        json row = {{"iteration", e.iteration},
                    {"w_norm", e.w_norm},
                    {"g_norm", e.g_norm},
                    {"budget_ok", e.budget_ok}};
        row["ratio"] = e.has_ratio ? json(e.ratio) : json(nullptr);
        entries.push_back(row);
    }
    json par = {{"M0", params.M0},
                {"M_h", params.M_h},
                {"C_emp", params.C_emp},
                {"kappa", params.kappa},
                {"T", params.T},
                {"T0", params.T0},
                {"d0", params.d0},
                {"R_min", params.R_min},
                {"log_R_min", params.log_R_min},
                {"norm_order", params.norm_order},
                {"max_iters", params.max_iters},
                {"contraction_tol", params.contraction_tol},
                {"time_steps", params.time_steps}};
    json b = {{"entries", entries},       {"norm_order", h.norm_order}, {"norm_fallback", h.norm_fallback},
              {"converged", h.converged}, {"restarts", h.restarts},     {"T_used", h.T},
              {"params", par}};
    return finish(std::move(b), "ContractionHistory", p);
}

std::string report_json(const BoundaryDecayReport& r, const Provenance& p) {
    json runs = json::array();
    for (const auto& run : r.runs) runs.push_back({{"R", run.R}, {"totals", run.totals}, {"total", run.total}});
    json b = {{"gamma", r.params.gamma},
              {"eta", to_string(r.params.eta)},
              {"delta", to_string(r.params.delta())},
              {"runs", runs},
              {"exponent", r.exponent},
              {"term_exponents", r.term_exponents},
              {"expected_exponent", r.expected_exponent},
              {"fit_valid", r.fit_valid}};
    return finish(std::move(b), "BoundaryDecayReport", p);
}

std::string report_json(const SolveStats& s, const GronwallFit& fit, const Provenance& p) {
    json b = {{"steps", s.steps},
              {"dt", s.dt},
              {"max_added_viscosity", s.max_added_viscosity},
              {"stencil_fallback_points", s.stencil_fallback_points},
              {"max_stencil_reach", s.max_stencil_reach},
              {"min_F_ratio", s.min_F_ratio},
              {"positivity_ok", s.positivity_ok},
              {"gronwall", {{"C_envelope", fit.C_envelope}, {"C_fit", fit.C_fit}, {"holds", fit.holds}}}};
    return finish(std::move(b), "SolveSummary", p);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool lex_less(const MultiIndex& a, const MultiIndex& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.beta < b.beta;
}

}  // namespace

std::string energy_csv(const EnergyReport& r) {
    if (r.times.empty()) throw std::invalid_argument("energy_csv: report has no snapshots");
    std::vector<std::size_t> order(r.indices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(r.indices[a].index, r.indices[b].index); });

    std::string out = "t";
    for (std::size_t i : order) out += "," + csv_field("Y_" + r.indices[i].index.label());
    out += ",X_total\r\n";
    for (std::size_t k = 0; k < r.times.size(); ++k) {
        out += num(r.times[k]);
        for (std::size_t i : order) out += "," + num(r.indices[i].y[k]);
        out += "," + num(r.x_total[k]) + "\r\n";
    }
    return out;
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false, any = false;
    auto end_field = [&] {
        rec.push_back(field);
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(rec));
        rec.clear();
        any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        any = true;
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            ++i;
            end_record();
        } else if (c == '\n') {
            end_record();
        } else {
            field += c;
        }
    }
    if (quoted) throw std::invalid_argument("parse_csv: unterminated quoted field");
    if (any || !field.empty()) end_record();
    if (records.empty()) throw std::invalid_argument("parse_csv: no header");

    CsvTable t;
    t.header = records.front();
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size())
            throw std::invalid_argument("parse_csv: row " + std::to_string(r) + " has the wrong field count");
        std::vector<double> row;
        for (const auto& f : records[r]) {
            std::size_t used = 0;
            const double v = std::stod(f, &used);
            if (used != f.size()) throw std::invalid_argument("parse_csv: not a number: " + f);
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace landau
