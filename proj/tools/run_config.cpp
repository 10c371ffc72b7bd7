#include "run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace landau::lab {

namespace {

const std::map<std::string, Mode>& mode_table() {
    static const std::map<std::string, Mode> t{
        {"audit-weights", Mode::AuditWeights}, {"verify-kernels", Mode::VerifyKernels},
        {"verify-bounds", Mode::VerifyBounds}, {"solve-linear", Mode::SolveLinear},
        {"picard", Mode::Picard},              {"boundary-decay", Mode::BoundaryDecay},
    };
    return t;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError(field, "not a number: '" + text + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw ConfigError(field, "not a finite number: '" + text + "'");
    return v;
}

long long to_integer(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &used);
    } catch (const std::exception&) {
        throw ConfigError(field, "not an integer: '" + text + "'");
    }
    if (used != t.size()) throw ConfigError(field, "not an integer: '" + text + "'");
    return v;
}

int to_int(const std::string& field, const std::string& text) {
    const long long v = to_integer(field, text);
    if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(field, "out of range: " + text);
    return static_cast<int>(v);
}

bool to_bool(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(field, "not a boolean: '" + text + "'");
}

std::vector<double> to_list(const std::string& field, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_real(field, item));
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> t{
        {"run.mode", [](RunConfig& c, const std::string& v) { c.mode = parse_mode(trim(v)); }},
        {"run.seed",
         [](RunConfig& c, const std::string& v) {
             const long long s = to_integer("seed", v);
             if (s < 0) throw ConfigError("seed", "must be >= 0");
             c.seed = static_cast<std::uint64_t>(s);
         }},
        {"run.out", [](RunConfig& c, const std::string& v) { c.out = trim(v); }},
        {"model.gamma", [](RunConfig& c, const std::string& v) { c.gamma = to_real("gamma", v); }},
        {"model.eta",
         [](RunConfig& c, const std::string& v) {
             try {
                 c.eta = parse_rational(trim(v));
             } catch (const std::exception& e) {
                 throw ConfigError("eta", e.what());
             }
         }},
        {"grid.v_count", [](RunConfig& c, const std::string& v) { c.grid.v_count = to_int("grid.v_count", v); }},
        {"grid.v_extent", [](RunConfig& c, const std::string& v) { c.grid.v_extent = to_real("grid.v_extent", v); }},
        {"grid.x_dims", [](RunConfig& c, const std::string& v) { c.grid.x_dims = to_int("grid.x_dims", v); }},
        {"grid.x_count", [](RunConfig& c, const std::string& v) { c.grid.x_count = to_int("grid.x_count", v); }},
        {"grid.x_extent", [](RunConfig& c, const std::string& v) { c.grid.x_extent = to_real("grid.x_extent", v); }},
        {"grid.stencil_order",
         [](RunConfig& c, const std::string& v) { c.grid.stencil_order = to_int("grid.stencil_order", v); }},
        {"grid.max_derivative_order",
         [](RunConfig& c, const std::string& v) {
             c.grid.max_derivative_order = to_int("grid.max_derivative_order", v);
         }},
        {"solver.epsilon", [](RunConfig& c, const std::string& v) { c.epsilon = to_real("epsilon", v); }},
        {"solver.R", [](RunConfig& c, const std::string& v) { c.R = to_real("R", v); }},
        {"solver.dt", [](RunConfig& c, const std::string& v) { c.dt = to_real("dt", v); }},
        {"solver.scheme",
         [](RunConfig& c, const std::string& v) {
             const std::string t = trim(v);
             if (t == "imex") c.scheme = Scheme::IMEX;
             else if (t == "explicit") c.scheme = Scheme::Explicit;
             else throw ConfigError("scheme", "expected 'imex' or 'explicit', got '" + t + "'");
         }},
        {"solver.variant",
         [](RunConfig& c, const std::string& v) {
             const std::string t = trim(v);
             if (t == "bracket-inverse") c.variant = ReactionVariant::BracketInverse;
             else if (t == "unit") c.variant = ReactionVariant::Unit;
             else throw ConfigError("variant", "expected 'bracket-inverse' or 'unit', got '" + t + "'");
         }},
        {"solver.kappa",
         [](RunConfig& c, const std::string& v) {
             c.kappa = to_real("kappa", v);
             c.kappa_override = true;
         }},
        {"solver.d0", [](RunConfig& c, const std::string& v) { c.d0 = to_real("d0", v); }},
        {"solver.T",
         [](RunConfig& c, const std::string& v) {
             c.T = to_real("T", v);
             c.T_override = true;
         }},
        {"solver.max_order", [](RunConfig& c, const std::string& v) { c.max_order = to_int("max_order", v); }},
        {"solver.cfl_safety", [](RunConfig& c, const std::string& v) { c.cfl_safety = to_real("cfl_safety", v); }},
        {"solver.mollifier_epsilon",
         [](RunConfig& c, const std::string& v) { c.mollifier_epsilon = to_real("mollifier_epsilon", v); }},
        {"solver.snapshot_every",
         [](RunConfig& c, const std::string& v) { c.snapshot_every = to_int("snapshot_every", v); }},
        {"solver.ledger_every", [](RunConfig& c, const std::string& v) { c.ledger_every = to_int("ledger_every", v); }},
        {"solver.ledger", [](RunConfig& c, const std::string& v) { c.ledger = to_bool("ledger", v); }},
        {"data.kind",
         [](RunConfig& c, const std::string& v) {
             const std::string t = trim(v);
             if (t == "maxwellian") c.data = DataKind::Maxwellian;
             else if (t == "random") c.data = DataKind::Random;
             else throw ConfigError("data.kind", "expected 'maxwellian' or 'random', got '" + t + "'");
         }},
        {"data.scale", [](RunConfig& c, const std::string& v) { c.data_scale = to_real("data.scale", v); }},
        {"data.theta", [](RunConfig& c, const std::string& v) { c.data_theta = to_real("data.theta", v); }},
        {"picard.C_emp", [](RunConfig& c, const std::string& v) { c.C_emp = to_real("picard.C_emp", v); }},
        {"picard.M0_bound", [](RunConfig& c, const std::string& v) { c.M0_bound = to_real("picard.M0_bound", v); }},
        {"picard.max_iters",
         [](RunConfig& c, const std::string& v) { c.picard_max_iters = to_int("picard.max_iters", v); }},
        {"picard.tol", [](RunConfig& c, const std::string& v) { c.picard_tol = to_real("picard.tol", v); }},
        {"picard.time_steps",
         [](RunConfig& c, const std::string& v) { c.picard_steps = to_int("picard.time_steps", v); }},
        {"bounds.samples", [](RunConfig& c, const std::string& v) { c.bound_samples = to_int("bounds.samples", v); }},
        {"bounds.max_order",
         [](RunConfig& c, const std::string& v) { c.bound_max_order = to_int("bounds.max_order", v); }},
        {"kernels.samples",
         [](RunConfig& c, const std::string& v) { c.kernel_samples = to_int("kernels.samples", v); }},
        {"boundary.radii", [](RunConfig& c, const std::string& v) { c.radii = to_list("boundary.radii", v); }},
    };
    return t;
}

std::string real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Mode parse_mode(const std::string& s) {
    const auto it = mode_table().find(s);
    if (it == mode_table().end()) throw ConfigError("mode", "unknown mode '" + s + "'");
    return it->second;
}

std::string mode_name(Mode m) {
    for (const auto& [name, mode] : mode_table())
        if (mode == m) return name;
    return "?";
}

GridSpec default_grid() {
    GridSpec g;
    g.x_dims = 0;
    g.x_count = 8;
    g.v_count = 16;
    g.v_extent = 6.0;
    g.max_derivative_order = 4;
    return g;
}

void RunConfig::validate() const {
    if (!mode) throw ConfigError("mode", "required");
    if (!gamma) throw ConfigError("gamma", "required");
    try {
        model().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("gamma", e.what());
    }
    try {
        grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
    auto positive = [](const char* f, double v) {
        if (!(v > 0.0)) throw ConfigError(f, "must be > 0");
    };
    auto nonneg = [](const char* f, double v) {
        if (!(v >= 0.0)) throw ConfigError(f, "must be >= 0");
    };
    positive("epsilon", epsilon);
    positive("R", R);
    nonneg("dt", dt);
    positive("kappa", kappa);
    positive("d0", d0);
    nonneg("T", T);
    if (max_order < 0 || max_order > grid.max_derivative_order)
        throw ConfigError("max_order", "must lie in [0, grid.max_derivative_order]");
    positive("cfl_safety", cfl_safety);
    nonneg("mollifier_epsilon", mollifier_epsilon);
    if (snapshot_every < 1) throw ConfigError("snapshot_every", "must be >= 1");
    if (ledger_every < 1) throw ConfigError("ledger_every", "must be >= 1");
    positive("data.scale", data_scale);
    positive("data.theta", data_theta);
    nonneg("picard.C_emp", C_emp);
    nonneg("picard.M0_bound", M0_bound);
    if (picard_max_iters < 1) throw ConfigError("picard.max_iters", "must be >= 1");
    positive("picard.tol", picard_tol);
    if (picard_steps < 2) throw ConfigError("picard.time_steps", "must be >= 2");
    if (bound_samples < 1) throw ConfigError("bounds.samples", "must be >= 1");
    if (bound_max_order < 0 || bound_max_order > 2) throw ConfigError("bounds.max_order", "must lie in [0, 2]");
    if (kernel_samples < 1) throw ConfigError("kernels.samples", "must be >= 1");
    for (double r : radii) positive("boundary.radii", r);
    if (*mode == Mode::BoundaryDecay && !radii.empty() && radii.size() < 2)
        throw ConfigError("boundary.radii", "needs at least two radii");
}

ModelParams RunConfig::model() const { return ModelParams::make(gamma.value_or(0.0), eta); }

SolverConfig RunConfig::solver() const {
    SolverConfig s;
    s.params = model();
    s.weight = {d0, kappa};
    s.epsilon = epsilon;
    s.R = R;
    s.dt = dt;
    s.scheme = scheme;
    s.variant = variant;
    s.max_derivative_order = max_order;
    s.mollifier_epsilon = mollifier_epsilon;
    s.cfl_safety = cfl_safety;
    s.snapshot_every = snapshot_every;
    s.ledger_every = ledger_every;
    s.compute_ledger = ledger;
    return s;
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << "run.mode=" << (mode ? mode_name(*mode) : "") << "\n"
       << "run.seed=" << seed << "\n"
       << "model.gamma=" << (gamma ? real(*gamma) : "") << "\n"
       << "model.eta=" << to_string(eta) << "\n"
       << "grid=" << grid.describe() << " max_derivative_order=" << grid.max_derivative_order << "\n"
       << "solver.epsilon=" << real(epsilon) << "\n"
       << "solver.R=" << real(R) << "\n"
       << "solver.dt=" << real(dt) << "\n"
       << "solver.scheme=" << (scheme == Scheme::IMEX ? "imex" : "explicit") << "\n"
       << "solver.variant=" << (variant == ReactionVariant::Unit ? "unit" : "bracket-inverse") << "\n"
       << "solver.kappa=" << real(kappa) << (kappa_override ? " (set)" : "") << "\n"
       << "solver.d0=" << real(d0) << "\n"
       << "solver.T=" << real(T) << (T_override ? " (set)" : "") << "\n"
       << "solver.max_order=" << max_order << "\n"
       << "solver.cfl_safety=" << real(cfl_safety) << "\n"
       << "solver.mollifier_epsilon=" << real(mollifier_epsilon) << "\n"
       << "solver.snapshot_every=" << snapshot_every << "\n"
       << "solver.ledger_every=" << ledger_every << "\n"
       << "solver.ledger=" << ledger << "\n"
       << "data.kind=" << (data == DataKind::Random ? "random" : "maxwellian") << "\n"
       << "data.scale=" << real(data_scale) << "\n"
       << "data.theta=" << real(data_theta) << "\n"
       << "picard.C_emp=" << real(C_emp) << "\n"
       << "picard.M0_bound=" << real(M0_bound) << "\n"
       << "picard.max_iters=" << picard_max_iters << "\n"
       << "picard.tol=" << real(picard_tol) << "\n"
       << "picard.time_steps=" << picard_steps << "\n"
       << "bounds.samples=" << bound_samples << "\n"
       << "bounds.max_order=" << bound_max_order << "\n"
       << "kernels.samples=" << kernel_samples << "\n"
       << "boundary.radii=";
    for (std::size_t i = 0; i < radii.size(); ++i) os << (i ? "," : "") << real(radii[i]);
    os << "\n";
    return os.str();
}

void apply_ini(RunConfig& cfg, const std::string& text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::ini_parser::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config", e.message() + " at line " + std::to_string(e.line()));
    }
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ConfigError(section, "key outside of a section");
        for (const auto& [key, value] : body) {
            const std::string name = section + "." + key;
            const auto it = setters().find(name);
            if (it == setters().end()) throw ConfigError(name, "unknown key");
            it->second(cfg, value.data());
        }
    }
}

void apply_ini_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_ini(cfg, ss.str());
}

void apply_grid_flag(RunConfig& cfg, const std::string& spec) {
    // "vN[,xM]"; the axis letters are optional.
    auto count = [](std::string part, char axis) {
        if (!part.empty() && part.front() == axis) part.erase(0, 1);
        return to_int("grid", part);
    };
    const auto comma = spec.find(',');
    cfg.grid.v_count = count(spec.substr(0, comma), 'v');
    if (comma != std::string::npos) {
        cfg.grid.x_count = count(spec.substr(comma + 1), 'x');
        if (cfg.grid.x_dims == 0) cfg.grid.x_dims = 1;
    }
}

}  // namespace landau::lab
