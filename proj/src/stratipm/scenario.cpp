#include "stratipm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "stratipm/errors.hpp"
#include "stratipm/operators.hpp"
#include "stratipm/propagator.hpp"

namespace stratipm {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_u64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
    return buf;
}

// ---- enum names ----

const std::map<std::string, Domain> kDomainNames{
    {"torus", Domain::Torus}, {"strip", Domain::Strip}, {"plane_box", Domain::PlaneBox}};
const std::map<std::string, DtPolicy> kPolicyNames{{"fixed", DtPolicy::Fixed},
                                                   {"cfl", DtPolicy::Cfl}};
const std::map<std::string, InitFamily> kFamilyNames{
    {"band_limited", InitFamily::BandLimited},
    {"algebraic_tail", InitFamily::AlgebraicTail},
    {"witness_tail", InitFamily::WitnessTail},
    {"single_mode", InitFamily::SingleMode}};
const std::map<std::string, ProfileKind> kProfileNames{
    {"none", ProfileKind::Zero}, {"cosine", ProfileKind::CosineMode},
    {"gaussian", ProfileKind::GaussianBump}};

template <class T>
std::string enum_name(const std::map<std::string, T>& names, T v) {
    for (const auto& [k, t] : names)
        if (t == v) return k;
    return "?";
}

template <class T>
T enum_value(const std::map<std::string, T>& names, const std::string& s,
             const std::string& ctx) {
    auto it = names.find(s);
    if (it == names.end()) throw ConfigError(ctx + ": unknown value '" + s + "'");
    return it->second;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct ParsedDoc {
    // section -> key -> entry
    std::map<std::string, std::map<std::string, Entry>> sections;
    std::vector<std::pair<std::string, Entry>> predictions;  // ordered
    std::string origin;

    bool has(const std::string& sec, const std::string& key) const {
        auto s = sections.find(sec);
        return s != sections.end() && s->second.count(key) > 0;
    }
    std::string ctx(const std::string& sec, const std::string& key) const {
        auto s = sections.find(sec);
        const int line = (s != sections.end() && s->second.count(key))
                             ? s->second.at(key).line
                             : 0;
        return origin + ":" + std::to_string(line) + " [" + sec + "] " + key;
    }
    std::string get_str(const std::string& sec, const std::string& key, std::string dflt) {
        auto s = sections.find(sec);
        if (s == sections.end()) return dflt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return dflt;
        k->second.used = true;
        return k->second.value;
    }
    double get_num(const std::string& sec, const std::string& key, double dflt) {
        const std::string v = get_str(sec, key, "");
        if (v.empty()) return dflt;
        try {
            size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing");
            return x;
        } catch (...) {
            throw ConfigError(ctx(sec, key) + ": expected a number, got '" + v + "'");
        }
    }
    int get_int(const std::string& sec, const std::string& key, int dflt) {
        const double x = get_num(sec, key, dflt);
        if (x != std::floor(x)) throw ConfigError(ctx(sec, key) + ": expected an integer");
        return static_cast<int>(x);
    }
    std::uint64_t get_u64(const std::string& sec, const std::string& key, std::uint64_t dflt) {
        const std::string v = get_str(sec, key, "");
        if (v.empty()) return dflt;
        try {
            return std::stoull(v);
        } catch (...) {
            throw ConfigError(ctx(sec, key) + ": expected an unsigned integer");
        }
    }
    bool get_bool(const std::string& sec, const std::string& key, bool dflt) {
        const std::string v = get_str(sec, key, "");
        if (v.empty()) return dflt;
        if (v == "on" || v == "true" || v == "yes") return true;
        if (v == "off" || v == "false" || v == "no") return false;
        throw ConfigError(ctx(sec, key) + ": expected on/off");
    }
};

ParsedDoc parse_document(const std::string& text, const std::string& origin) {
    ParsedDoc doc;
    doc.origin = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    const std::vector<std::string> known_sections{
        "scenario", "sweep", "sweep_init", "solver", "solver2", "init", "init2",
        "sigma",    "sigma2", "kernel",    "inequalities", "checks", "predictions"};
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section");
            section = t.substr(1, t.size() - 2);
            if (std::find(known_sections.begin(), known_sections.end(), section) ==
                known_sections.end())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown section [" +
                                  section + "]");
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
        if (section == "predictions") {
            doc.predictions.emplace_back(key, Entry{val, lineno, true});
        } else {
            doc.sections[section][key] = Entry{val, lineno, false};
        }
    }
    return doc;
}

const std::vector<std::string> kInitKeys{
    "family", "seed",        "band",   "tail_exponent", "witness_s", "witness_eps",
    "kill_p0", "mean",       "normalize_hm", "norm_order", "mode1", "mode2", "amplitude"};

InitSpec read_init(ParsedDoc& doc, const std::string& sec, const InitSpec& dflt) {
    InitSpec init = dflt;
    if (doc.has(sec, "family"))
        init.family = enum_value(kFamilyNames, doc.get_str(sec, "family", ""), doc.ctx(sec, "family"));
    init.seed = doc.get_u64(sec, "seed", init.seed);
    init.band = doc.get_int(sec, "band", init.band);
    init.tail_exponent = doc.get_num(sec, "tail_exponent", init.tail_exponent);
    init.witness_s = doc.get_num(sec, "witness_s", init.witness_s);
    init.witness_eps = doc.get_num(sec, "witness_eps", init.witness_eps);
    init.kill_p0 = doc.get_bool(sec, "kill_p0", init.kill_p0);
    init.mean = doc.get_num(sec, "mean", init.mean);
    init.normalize_hm = doc.get_num(sec, "normalize_hm", init.normalize_hm);
    init.norm_order = doc.get_int(sec, "norm_order", init.norm_order);
    init.mode1 = doc.get_int(sec, "mode1", init.mode1);
    init.mode2 = doc.get_int(sec, "mode2", init.mode2);
    init.amplitude = doc.get_num(sec, "amplitude", init.amplitude);
    return init;
}

ProfileSpec read_sigma(ParsedDoc& doc, const std::string& sec, const ProfileSpec& dflt) {
    ProfileSpec out = dflt;
    if (doc.has(sec, "kind"))
        out.kind = enum_value(kProfileNames, doc.get_str(sec, "kind", ""), doc.ctx(sec, "kind"));
    out.amplitude = doc.get_num(sec, "amplitude", out.amplitude);
    out.mode = doc.get_num(sec, "mode", out.mode);
    out.center = doc.get_num(sec, "center", out.center);
    out.width = doc.get_num(sec, "width", out.width);
    return out;
}

SolverConfig read_solver(ParsedDoc& doc, const std::string& sec, const std::string& init_sec,
                         const std::string& sigma_sec, const SolverConfig& dflt) {
    SolverConfig cfg = dflt;
    if (doc.has(sec, "domain"))
        cfg.domain = enum_value(kDomainNames, doc.get_str(sec, "domain", ""), doc.ctx(sec, "domain"));
    cfg.N = doc.get_num(sec, "N", cfg.N);
    cfg.modes = doc.get_int(sec, "modes", cfg.modes);
    cfg.phys = doc.get_int(sec, "phys", cfg.phys);
    cfg.pmodes = doc.get_int(sec, "pmodes", cfg.pmodes);
    cfg.qmodes = doc.get_int(sec, "qmodes", cfg.qmodes);
    cfg.box_length = doc.get_num(sec, "box_length", cfg.box_length);
    cfg.m = doc.get_int(sec, "m", cfg.m);
    if (doc.has(sec, "dt_policy"))
        cfg.dt_policy =
            enum_value(kPolicyNames, doc.get_str(sec, "dt_policy", ""), doc.ctx(sec, "dt_policy"));
    cfg.dt = doc.get_num(sec, "dt", cfg.dt);
    cfg.dt_max = doc.get_num(sec, "dt_max", cfg.dt_max);
    cfg.cfl_safety = doc.get_num(sec, "cfl_safety", cfg.cfl_safety);
    cfg.final_time = doc.get_num(sec, "final_time", cfg.final_time);
    cfg.final_nt = doc.get_num(sec, "final_nt", cfg.final_nt);
    cfg.snapshot_dt = doc.get_num(sec, "snapshot_dt", cfg.snapshot_dt);
    cfg.snapshot_nt = doc.get_num(sec, "snapshot_nt", cfg.snapshot_nt);
    cfg.smallness = doc.get_num(sec, "smallness", cfg.smallness);
    cfg.dealias = doc.get_bool(sec, "dealias", cfg.dealias);
    cfg.nonlinear = doc.get_bool(sec, "nonlinear", cfg.nonlinear);
    cfg.init = read_init(doc, init_sec, cfg.init);
    cfg.sigma = read_sigma(doc, sigma_sec, cfg.sigma);
    return cfg;
}

RatePrediction parse_prediction(const std::string& key, const std::string& value,
                                const std::string& ctx) {
    // value: "<norm_id> : <exponent> : <tol> : two|one : <nt_lo> : <nt_hi>"
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(value);
    while (std::getline(in, cur, ':')) parts.push_back(trim(cur));
    if (parts.size() != 6)
        throw ConfigError(ctx + ": prediction '" + key + "' needs 6 ':'-separated fields");
    RatePrediction p;
    p.norm_id = parts[0];
    try {
        p.exponent = std::stod(parts[1]);
        p.tol = std::stod(parts[2]);
        p.nt_lo = std::stod(parts[4]);
        p.nt_hi = std::stod(parts[5]);
    } catch (...) {
        throw ConfigError(ctx + ": prediction '" + key + "' has malformed numbers");
    }
    if (parts[3] == "two")
        p.two_sided = true;
    else if (parts[3] == "one")
        p.two_sided = false;
    else
        throw ConfigError(ctx + ": prediction '" + key + "' side must be two|one");
    if (p.tol <= 0.0) throw ConfigError(ctx + ": prediction '" + key + "' tolerance must be > 0");
    return p;
}

const std::vector<std::string> kKinds{"linear_sweep", "nonlinear_run", "kernel_decay",
                                      "sharpness",    "inequalities",  "mean_laws"};

}  // namespace

std::vector<double> log_spaced_times(double N, double nt_lo, double nt_hi, int points) {
    if (nt_lo <= 0.0 || nt_hi <= nt_lo || points < 2)
        throw ParameterError("log_spaced_times: bad ladder");
    std::vector<double> ts(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
        ts[static_cast<size_t>(i)] =
            std::exp(std::log(nt_lo) +
                     (std::log(nt_hi) - std::log(nt_lo)) * i / (points - 1)) /
            N;
    return ts;
}

Scenario parse_config_text(const std::string& text, const std::string& origin) {
    ParsedDoc doc = parse_document(text, origin);
    Scenario s;
    s.id = doc.get_str("scenario", "id", "");
    if (s.id.empty()) throw ConfigError(origin + ": [scenario] id is required");
    s.kind = doc.get_str("scenario", "kind", "");
    if (std::find(kKinds.begin(), kKinds.end(), s.kind) == kKinds.end())
        throw ConfigError(doc.ctx("scenario", "kind") + ": unknown kind '" + s.kind + "'");
    s.anchor = doc.get_str("scenario", "anchor", "");
    s.description = doc.get_str("scenario", "description", "");

    if (doc.has("sweep", "domain"))
        s.sweep.domain = enum_value(kDomainNames, doc.get_str("sweep", "domain", ""),
                                    doc.ctx("sweep", "domain"));
    s.sweep.modes = doc.get_int("sweep", "modes", s.sweep.modes);
    s.sweep.pmodes = doc.get_int("sweep", "pmodes", s.sweep.pmodes);
    s.sweep.qmodes = doc.get_int("sweep", "qmodes", s.sweep.qmodes);
    s.sweep.m = doc.get_int("sweep", "m", s.sweep.m);
    s.sweep.N = doc.get_num("sweep", "N", s.sweep.N);
    s.sweep.nt_lo = doc.get_num("sweep", "nt_lo", s.sweep.nt_lo);
    s.sweep.nt_hi = doc.get_num("sweep", "nt_hi", s.sweep.nt_hi);
    s.sweep.points = doc.get_int("sweep", "points", s.sweep.points);
    s.sweep.init = read_init(doc, "sweep_init", s.sweep.init);

    s.solver = read_solver(doc, "solver", "init", "sigma", s.solver);
    if (doc.sections.count("solver2") || doc.sections.count("init2")) {
        s.has_solver2 = true;
        s.solver2 = read_solver(doc, "solver2", "init2", "sigma2", s.solver2);
    }

    s.kernel.xi_max = doc.get_num("kernel", "xi_max", s.kernel.xi_max);
    s.kernel.inner = doc.get_num("kernel", "inner", s.kernel.inner);
    s.kernel.nodes_per_panel = doc.get_int("kernel", "nodes_per_panel", s.kernel.nodes_per_panel);
    s.kernel.witness_eps = doc.get_num("kernel", "witness_eps", s.kernel.witness_eps);
    s.kernel.witness_s = doc.get_num("kernel", "witness_s", s.kernel.witness_s);
    s.kernel.ratio_s = doc.get_num("kernel", "ratio_s", s.kernel.ratio_s);
    s.kernel.gaussian_scale = doc.get_num("kernel", "gaussian_scale", s.kernel.gaussian_scale);
    s.kernel.nt_lo = doc.get_num("kernel", "nt_lo", s.kernel.nt_lo);
    s.kernel.nt_hi = doc.get_num("kernel", "nt_hi", s.kernel.nt_hi);
    s.kernel.points = doc.get_int("kernel", "points", s.kernel.points);
    s.kernel.truncation_tol = doc.get_num("kernel", "truncation_tol", s.kernel.truncation_tol);

    s.ineq.balancing_modes = doc.get_int("inequalities", "balancing_modes", s.ineq.balancing_modes);
    s.ineq.balancing_samples =
        doc.get_int("inequalities", "balancing_samples", s.ineq.balancing_samples);
    s.ineq.balancing_sobolev_m =
        doc.get_int("inequalities", "balancing_sobolev_m", s.ineq.balancing_sobolev_m);
    s.ineq.commutator_modes =
        doc.get_int("inequalities", "commutator_modes", s.ineq.commutator_modes);
    s.ineq.commutator_samples =
        doc.get_int("inequalities", "commutator_samples", s.ineq.commutator_samples);
    s.ineq.commutator_s = doc.get_num("inequalities", "commutator_s", s.ineq.commutator_s);
    s.ineq.convolution_modes =
        doc.get_int("inequalities", "convolution_modes", s.ineq.convolution_modes);
    s.ineq.convolution_samples =
        doc.get_int("inequalities", "convolution_samples", s.ineq.convolution_samples);
    s.ineq.convolution_s = doc.get_num("inequalities", "convolution_s", s.ineq.convolution_s);
    s.ineq.drift_tol = doc.get_num("inequalities", "drift_tol", s.ineq.drift_tol);
    s.ineq.balancing_slack = doc.get_num("inequalities", "balancing_slack", s.ineq.balancing_slack);
    s.ineq.seed = doc.get_u64("inequalities", "seed", s.ineq.seed);

    s.checks.profile_tol = doc.get_num("checks", "profile_tol", s.checks.profile_tol);
    s.checks.meanlaw_tol = doc.get_num("checks", "meanlaw_tol", s.checks.meanlaw_tol);
    s.checks.conservation_tol =
        doc.get_num("checks", "conservation_tol", s.checks.conservation_tol);
    s.checks.u_mean_tol = doc.get_num("checks", "u_mean_tol", s.checks.u_mean_tol);
    s.checks.boundary_tol = doc.get_num("checks", "boundary_tol", s.checks.boundary_tol);
    s.checks.require_ledger = doc.get_bool("checks", "require_ledger", s.checks.require_ledger);
    s.checks.kernel_variation_max =
        doc.get_num("checks", "kernel_variation_max", s.checks.kernel_variation_max);
    s.checks.ratio_bound = doc.get_num("checks", "ratio_bound", s.checks.ratio_bound);

    for (const auto& [key, entry] : doc.predictions)
        s.predictions.push_back(parse_prediction(
            key, entry.value, origin + ":" + std::to_string(entry.line)));

    // reject unknown keys with their location
    for (const auto& [sec, kv] : doc.sections)
        for (const auto& [key, entry] : kv)
            if (!entry.used)
                throw ConfigError(origin + ":" + std::to_string(entry.line) + ": unknown key '" +
                                  key + "' in [" + sec + "]");

    // cross-field invariants
    if (s.solver.sigma.kind != ProfileKind::Zero && s.solver.domain != Domain::PlaneBox)
        throw ConfigError(origin + ": sigma requires solver domain plane_box");
    return s;
}

Scenario parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("parse_config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

namespace {
void emit_init(std::ostringstream& out, const std::string& sec, const InitSpec& i) {
    out << "[" << sec << "]\n";
    out << "family = " << enum_name(kFamilyNames, i.family) << "\n";
    out << "seed = " << fmt_u64(i.seed) << "\n";
    out << "band = " << i.band << "\n";
    out << "tail_exponent = " << fmt(i.tail_exponent) << "\n";
    out << "witness_s = " << fmt(i.witness_s) << "\n";
    out << "witness_eps = " << fmt(i.witness_eps) << "\n";
    out << "kill_p0 = " << (i.kill_p0 ? "on" : "off") << "\n";
    out << "mean = " << fmt(i.mean) << "\n";
    out << "normalize_hm = " << fmt(i.normalize_hm) << "\n";
    out << "norm_order = " << i.norm_order << "\n";
    out << "mode1 = " << i.mode1 << "\n";
    out << "mode2 = " << i.mode2 << "\n";
    out << "amplitude = " << fmt(i.amplitude) << "\n\n";
}

void emit_solver(std::ostringstream& out, const std::string& sec, const std::string& init_sec,
                 const std::string& sigma_sec, const SolverConfig& c) {
    out << "[" << sec << "]\n";
    out << "domain = " << enum_name(kDomainNames, c.domain) << "\n";
    out << "N = " << fmt(c.N) << "\n";
    out << "modes = " << c.modes << "\n";
    out << "phys = " << c.phys << "\n";
    out << "pmodes = " << c.pmodes << "\n";
    out << "qmodes = " << c.qmodes << "\n";
    out << "box_length = " << fmt(c.box_length) << "\n";
    out << "m = " << c.m << "\n";
    out << "dt_policy = " << enum_name(kPolicyNames, c.dt_policy) << "\n";
    out << "dt = " << fmt(c.dt) << "\n";
    out << "dt_max = " << fmt(c.dt_max) << "\n";
    out << "cfl_safety = " << fmt(c.cfl_safety) << "\n";
    out << "final_time = " << fmt(c.final_time) << "\n";
    out << "final_nt = " << fmt(c.final_nt) << "\n";
    out << "snapshot_dt = " << fmt(c.snapshot_dt) << "\n";
    out << "snapshot_nt = " << fmt(c.snapshot_nt) << "\n";
    out << "smallness = " << fmt(c.smallness) << "\n";
    out << "dealias = " << (c.dealias ? "on" : "off") << "\n";
    out << "nonlinear = " << (c.nonlinear ? "on" : "off") << "\n\n";
    emit_init(out, init_sec, c.init);
    out << "[" << sigma_sec << "]\n";
    out << "kind = " << enum_name(kProfileNames, c.sigma.kind) << "\n";
    out << "amplitude = " << fmt(c.sigma.amplitude) << "\n";
    out << "mode = " << fmt(c.sigma.mode) << "\n";
    out << "center = " << fmt(c.sigma.center) << "\n";
    out << "width = " << fmt(c.sigma.width) << "\n\n";
}
}  // namespace

std::string emit_config(const Scenario& s) {
    std::ostringstream out;
    out << "[scenario]\n";
    out << "id = " << s.id << "\n";
    out << "kind = " << s.kind << "\n";
    out << "anchor = " << s.anchor << "\n";
    out << "description = " << s.description << "\n\n";

    out << "[sweep]\n";
    out << "domain = " << enum_name(kDomainNames, s.sweep.domain) << "\n";
    out << "modes = " << s.sweep.modes << "\n";
    out << "pmodes = " << s.sweep.pmodes << "\n";
    out << "qmodes = " << s.sweep.qmodes << "\n";
    out << "m = " << s.sweep.m << "\n";
    out << "N = " << fmt(s.sweep.N) << "\n";
    out << "nt_lo = " << fmt(s.sweep.nt_lo) << "\n";
    out << "nt_hi = " << fmt(s.sweep.nt_hi) << "\n";
    out << "points = " << s.sweep.points << "\n\n";
    emit_init(out, "sweep_init", s.sweep.init);

    emit_solver(out, "solver", "init", "sigma", s.solver);
    if (s.has_solver2) emit_solver(out, "solver2", "init2", "sigma2", s.solver2);

    out << "[kernel]\n";
    out << "xi_max = " << fmt(s.kernel.xi_max) << "\n";
    out << "inner = " << fmt(s.kernel.inner) << "\n";
    out << "nodes_per_panel = " << s.kernel.nodes_per_panel << "\n";
    out << "witness_eps = " << fmt(s.kernel.witness_eps) << "\n";
    out << "witness_s = " << fmt(s.kernel.witness_s) << "\n";
    out << "ratio_s = " << fmt(s.kernel.ratio_s) << "\n";
    out << "gaussian_scale = " << fmt(s.kernel.gaussian_scale) << "\n";
    out << "nt_lo = " << fmt(s.kernel.nt_lo) << "\n";
    out << "nt_hi = " << fmt(s.kernel.nt_hi) << "\n";
    out << "points = " << s.kernel.points << "\n";
    out << "truncation_tol = " << fmt(s.kernel.truncation_tol) << "\n\n";

    out << "[inequalities]\n";
    out << "balancing_modes = " << s.ineq.balancing_modes << "\n";
    out << "balancing_samples = " << s.ineq.balancing_samples << "\n";
    out << "balancing_sobolev_m = " << s.ineq.balancing_sobolev_m << "\n";
    out << "commutator_modes = " << s.ineq.commutator_modes << "\n";
    out << "commutator_samples = " << s.ineq.commutator_samples << "\n";
    out << "commutator_s = " << fmt(s.ineq.commutator_s) << "\n";
    out << "convolution_modes = " << s.ineq.convolution_modes << "\n";
    out << "convolution_samples = " << s.ineq.convolution_samples << "\n";
    out << "convolution_s = " << fmt(s.ineq.convolution_s) << "\n";
    out << "drift_tol = " << fmt(s.ineq.drift_tol) << "\n";
    out << "balancing_slack = " << fmt(s.ineq.balancing_slack) << "\n";
    out << "seed = " << fmt_u64(s.ineq.seed) << "\n\n";

    out << "[checks]\n";
    out << "profile_tol = " << fmt(s.checks.profile_tol) << "\n";
    out << "meanlaw_tol = " << fmt(s.checks.meanlaw_tol) << "\n";
    out << "conservation_tol = " << fmt(s.checks.conservation_tol) << "\n";
    out << "u_mean_tol = " << fmt(s.checks.u_mean_tol) << "\n";
    out << "boundary_tol = " << fmt(s.checks.boundary_tol) << "\n";
    out << "require_ledger = " << (s.checks.require_ledger ? "on" : "off") << "\n";
    out << "kernel_variation_max = " << fmt(s.checks.kernel_variation_max) << "\n";
    out << "ratio_bound = " << fmt(s.checks.ratio_bound) << "\n\n";

    out << "[predictions]\n";
    int idx = 0;
    for (const RatePrediction& p : s.predictions) {
        out << "pred_" << ++idx << " = " << p.norm_id << " : " << fmt(p.exponent) << " : "
            << fmt(p.tol) << " : " << (p.two_sided ? "two" : "one") << " : " << fmt(p.nt_lo)
            << " : " << fmt(p.nt_hi) << "\n";
    }
    return out.str();
}

// ---------------- presets ----------------

std::vector<std::string> preset_ids() {
    return {"torus-linear-rates", "torus-nonlinear-profile", "strip-rates",
            "plane-quasilinear",  "sharpness-witness",       "kernel-decay",
            "inequalities",       "mean-laws"};
}

Scenario preset(const std::string& id) {
    Scenario s;
    s.id = id;
    if (id == "torus-linear-rates") {
        s.kind = "linear_sweep";
        s.anchor = "tem_decay_est_T";
        s.description = "semigroup rate ladder for theta, u, u2 on the torus";
        s.sweep.domain = Domain::Torus;
        s.sweep.modes = 1024;
        s.sweep.m = 4;
        s.sweep.N = 1.0;
        s.sweep.nt_lo = 1.0;
        s.sweep.nt_hi = 2000.0;
        s.sweep.points = 33;
        s.sweep.init.family = InitFamily::AlgebraicTail;
        s.sweep.init.tail_exponent = 4.5;  // H^4-critical spectral tail
        s.sweep.init.kill_p0 = true;
        s.sweep.init.seed = 20240901;
        s.predictions = {{"theta_bar_H0", -2.0, 0.15, true, 10.0, 1000.0},
                         {"u_H0", -2.5, 0.15, true, 10.0, 1000.0},
                         {"u2_H0", -3.0, 0.15, true, 10.0, 1000.0}};
    } else if (id == "strip-rates") {
        s.kind = "linear_sweep";
        s.anchor = "thm:stb_O";
        s.description = "semigroup rate ladder on the horizontally periodic strip";
        s.sweep.domain = Domain::Strip;
        s.sweep.pmodes = 512;
        s.sweep.qmodes = 512;
        s.sweep.m = 4;
        s.sweep.N = 1.0;
        s.sweep.nt_lo = 1.0;
        s.sweep.nt_hi = 2000.0;
        s.sweep.points = 33;
        s.sweep.init.family = InitFamily::AlgebraicTail;
        s.sweep.init.tail_exponent = 4.5;
        s.sweep.init.kill_p0 = true;
        s.sweep.init.seed = 20240902;
        s.predictions = {{"u2_H0", -3.0, 0.2, true, 10.0, 1000.0}};
    } else if (id == "kernel-decay") {
        s.kind = "kernel_decay";
        s.anchor = "ker_est";
        s.description = "compensated L1 decay of the continuous-xi semigroup, Gaussian data";
        s.kernel.xi_max = 48.0;
        s.kernel.inner = 1e-16;
        s.kernel.nodes_per_panel = 10;
        s.kernel.ratio_s = 2.0;
        s.kernel.nt_lo = 1.0;
        s.kernel.nt_hi = 1e6;
        s.kernel.points = 31;
        s.checks.kernel_variation_max = 3.0;
        s.checks.ratio_bound = 10.0;
    } else if (id == "sharpness-witness") {
        s.kind = "sharpness";
        s.anchor = "prop_sharp";
        s.description = "lower-bound witness decay slopes, L1 and L2, j = 0 and 1";
        s.kernel.xi_max = 4e5;
        s.kernel.inner = 1e-16;
        s.kernel.nodes_per_panel = 10;
        s.kernel.witness_eps = 0.05;
        s.kernel.witness_s = 2.0;
        s.kernel.nt_lo = 1e2;
        s.kernel.nt_hi = 1e6;
        s.kernel.points = 25;
        const double e = s.kernel.witness_eps;
        auto bracket = [](double lo, double hi) {
            return std::pair<double, double>{0.5 * (lo + hi), 0.5 * (hi - lo)};
        };
        auto [c0, t0] = bracket(-(0.25 + 2 * e) - 0.02, -0.25 + 0.02);
        auto [c1, t1] = bracket(-(0.5 + 0.25 + 2 * e) - 0.02, -(0.5 + 0.25) + 0.02);
        auto [d0, u0] = bracket(-2 * e - 0.02, 0.02);
        auto [d1, u1] = bracket(-(0.5 + 2 * e) - 0.02, -0.5 + 0.02);
        s.predictions = {{"witness_L1_j0", c0, t0, true, 1e2, 1e6},
                         {"witness_L1_j1", c1, t1, true, 1e2, 1e6},
                         {"witness_L2_j0", d0, u0, true, 1e2, 1e6},
                         {"witness_L2_j1", d1, u1, true, 1e2, 1e6}};
    } else if (id == "mean-laws") {
        s.kind = "mean_laws";
        s.anchor = "lem_avg";
        s.description = "mean decay on the torus, mean conservation on the strip";
        s.solver.domain = Domain::Torus;
        s.solver.N = 2.0;
        s.solver.modes = 32;
        s.solver.m = 4;
        s.solver.dt_policy = DtPolicy::Fixed;
        s.solver.dt = 5e-3;
        s.solver.final_nt = 20.0;
        s.solver.snapshot_nt = 0.5;
        s.solver.init.family = InitFamily::BandLimited;
        s.solver.init.band = 6;
        s.solver.init.kill_p0 = false;
        s.solver.init.mean = 1.0;
        s.solver.init.normalize_hm = 0.02;
        s.solver.init.seed = 20240903;
        s.has_solver2 = true;
        s.solver2.domain = Domain::Strip;
        s.solver2.N = 2.0;
        s.solver2.pmodes = 32;
        s.solver2.qmodes = 32;
        s.solver2.m = 4;
        s.solver2.dt_policy = DtPolicy::Fixed;
        s.solver2.dt = 5e-3;
        s.solver2.final_nt = 20.0;
        s.solver2.snapshot_nt = 0.5;
        // low band + wide grid keeps the quadratic cascade inside the
        // truncation, so the discrete mean stays conserved
        s.solver2.init.family = InitFamily::BandLimited;
        s.solver2.init.band = 2;
        s.solver2.init.kill_p0 = false;
        s.solver2.init.normalize_hm = 0.01;
        s.solver2.init.seed = 20240904;
        s.checks.meanlaw_tol = 1e-8;
        s.checks.conservation_tol = 1e-8;
        s.checks.u_mean_tol = 1e-12;
        s.checks.boundary_tol = 1e-10;
    } else if (id == "torus-nonlinear-profile") {
        s.kind = "nonlinear_run";
        s.anchor = "def_sgm";
        s.description = "asymptotic profile: two-route sigma and mean-residual decay";
        s.solver.domain = Domain::Torus;
        s.solver.modes = 64;
        s.solver.m = 4;
        s.solver.smallness = 100.0;
        s.solver.final_nt = 200.0;
        s.solver.snapshot_nt = 1.0;
        s.solver.dt_policy = DtPolicy::Cfl;
        s.solver.dt_max = 8e-4;  // the flux integral is trapezoid, O(dt^2)
        s.solver.init.family = InitFamily::AlgebraicTail;
        s.solver.init.tail_exponent = 4.5;
        s.solver.init.kill_p0 = false;
        s.solver.init.mean = 0.3;
        s.solver.init.normalize_hm = 1.0;
        s.solver.init.seed = 20240905;
        s.checks.profile_tol = 1e-3;
        s.checks.require_ledger = true;
        s.checks.u_mean_tol = 1e-12;
        s.predictions = {{"mean_residual_L2", -2.0, 0.3, false, 10.0, 100.0}};
    } else if (id == "plane-quasilinear") {
        s.kind = "nonlinear_run";
        s.anchor = "tem_decay_est_sgm_2";
        s.description = "periodized box with compact sigma: u and grad u2 decay";
        s.solver.domain = Domain::PlaneBox;
        s.solver.box_length = 32.0;
        s.solver.modes = 160;
        s.solver.m = 4;
        s.solver.smallness = 100.0;
        s.solver.final_nt = 150.0;
        s.solver.snapshot_nt = 1.0;
        s.solver.dt_policy = DtPolicy::Cfl;
        s.solver.dt_max = 5e-3;
        s.solver.init.family = InitFamily::WitnessTail;
        s.solver.init.witness_s = 4.0;
        s.solver.init.witness_eps = 0.05;
        s.solver.init.kill_p0 = true;
        s.solver.init.normalize_hm = 1.0;
        s.solver.init.seed = 20240906;
        s.solver.sigma.kind = ProfileKind::GaussianBump;
        s.solver.sigma.amplitude = 0.5;
        s.solver.sigma.center = 16.0;
        s.solver.sigma.width = 1.3;
        s.checks.require_ledger = false;
        s.predictions = {{"u_H4", -0.5, 0.2, true, 10.0, 100.0},
                         {"grad_u2_Hm1", -1.0, 0.2, true, 10.0, 100.0}};
    } else if (id == "inequalities") {
        s.kind = "inequalities";
        s.anchor = "ineq_balancing";
        s.description = "balancing, commutator and convolution ensembles";
        s.ineq = InequalitySettings{};
    } else {
        throw ConfigError("preset: unknown id '" + id + "'");
    }
    return s;
}

// ---------------- runners ----------------

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path);
    out << content;
    if (!out) throw std::ios_base::failure("write failed for " + path);
}

std::string curves_csv(const std::map<std::string, DecayCurve>& curves) {
    std::ostringstream out;
    out << "t,Nt";
    for (const auto& [id, c] : curves) out << "," << id;
    out << "\n";
    if (curves.empty()) return out.str();
    const size_t n = curves.begin()->second.t.size();
    for (size_t i = 0; i < n; ++i) {
        out << fmt(curves.begin()->second.t[i]) << "," << fmt(curves.begin()->second.nt[i]);
        for (const auto& [id, c] : curves) out << "," << fmt(c.value[i]);
        out << "\n";
    }
    return out.str();
}

void append_report_rows(const DecayReport& rep, std::vector<CheckRow>& rows) {
    for (const RateRow& r : rep.rows) {
        std::ostringstream d;
        d << "fitted=" << fmt(r.fitted) << " predicted=" << fmt(r.predicted)
          << " tol=" << fmt(r.tol) << (r.two_sided ? " two_sided" : " one_sided");
        rows.push_back({r.norm_id, r.pass, d.str()});
    }
}

std::string summary_text(const Scenario& s, const std::vector<CheckRow>& rows, int exit_code) {
    std::ostringstream out;
    out << "# scenario: " << s.id << "\n";
    out << "# anchor: " << s.anchor << "\n";
    out << "# description: " << s.description << "\n";
    for (const CheckRow& r : rows)
        out << (r.pass ? "PASS " : "FAIL ") << r.name << " " << r.detail << "\n";
    out << "# exit: " << exit_code << "\n";
    return out.str();
}

int run_solver_checks(const Scenario& s, const SolverConfig& raw, const std::string& out_dir,
                      const std::string& tag, std::uint64_t seed_override,
                      std::vector<CheckRow>& rows, std::vector<std::string>& artifacts) {
    const SolverConfig cfg = resolve_solver(raw, seed_override);
    Trajectory traj = run(cfg);

    std::map<std::string, DecayCurve> curves = trajectory_curves(traj);
    const DecayReport rep = build_report(traj, s.predictions);
    if (s.checks.profile_tol > 0.0 ||
        std::any_of(s.predictions.begin(), s.predictions.end(),
                    [](const RatePrediction& p) { return p.norm_id == "mean_residual_L2"; })) {
        if (traj.status == RunStatus::Completed && cfg.sigma.kind == ProfileKind::Zero)
            curves["mean_residual_L2"] = extract_profile(traj).residual_curve;
    }
    const std::string csv_path = out_dir + "/" + s.id + tag + "_curves.csv";
    write_file(csv_path, curves_csv(curves));
    artifacts.push_back(csv_path);

    if (traj.status == RunStatus::BlowUp) {
        rows.push_back({"run" + tag, false, "blow_up at t=" + fmt(traj.status_time)});
        return 2;
    }
    if (traj.ledger_flagged && s.checks.require_ledger) {
        rows.push_back({"energy_ledger" + tag, false,
                        "violated at t=" + fmt(traj.ledger_violation_time)});
        return 3;
    }
    if (s.checks.require_ledger)
        rows.push_back({"energy_ledger" + tag, true,
                        "sup+N*int=" +
                            fmt(traj.snaps.back().ledger.sup_theta_hm_sq +
                                cfg.N * traj.snaps.back().ledger.int_r1_hm_sq) +
                            " bound=" + fmt(4.0 * traj.theta0_hm * traj.theta0_hm)});

    append_report_rows(rep, rows);

    const MeanLawReport laws = audit_mean_laws(traj);
    if (s.checks.meanlaw_tol > 0.0 && cfg.domain != Domain::Strip)
        rows.push_back({"mean_decay_law" + tag, laws.decay_law_max_rel <= s.checks.meanlaw_tol,
                        "max_rel=" + fmt(laws.decay_law_max_rel) + " tol=" +
                            fmt(s.checks.meanlaw_tol)});
    if (s.checks.conservation_tol > 0.0 && cfg.domain == Domain::Strip)
        rows.push_back({"mean_conservation" + tag,
                        laws.conservation_max_rel <= s.checks.conservation_tol,
                        "max_rel=" + fmt(laws.conservation_max_rel) + " tol=" +
                            fmt(s.checks.conservation_tol)});
    if (s.checks.u_mean_tol > 0.0)
        rows.push_back({"u_horizontal_mean" + tag,
                        std::max(laws.u1_mean_max, laws.u2_mean_max) <= s.checks.u_mean_tol,
                        "max=" + fmt(std::max(laws.u1_mean_max, laws.u2_mean_max)) + " tol=" +
                            fmt(s.checks.u_mean_tol)});
    if (s.checks.boundary_tol > 0.0 && cfg.domain == Domain::Strip)
        rows.push_back({"boundary_trace" + tag,
                        laws.boundary_trace_max <= s.checks.boundary_tol,
                        "max=" + fmt(laws.boundary_trace_max) + " tol=" +
                            fmt(s.checks.boundary_tol)});
    if (s.checks.profile_tol > 0.0) {
        const ProfileExtract prof = extract_profile(traj);
        rows.push_back({"profile_two_route" + tag, prof.rel_diff <= s.checks.profile_tol,
                        "rel_diff=" + fmt(prof.rel_diff) + " tol=" + fmt(s.checks.profile_tol)});
    }
    return 0;
}

}  // namespace

SolverConfig resolve_solver(const SolverConfig& in, std::uint64_t seed_override) {
    SolverConfig cfg = in;
    if (seed_override != 0) cfg.init.seed = seed_override;
    double theta0_norm = cfg.init.normalize_hm;
    if (cfg.smallness > 0.0) {
        double sigma_l1 = 0.0;
        if (cfg.domain != Domain::Strip) {
            const TorusGrid grid(cfg.modes, cfg.phys,
                                 cfg.domain == Domain::PlaneBox ? cfg.box_length : 1.0);
            if (theta0_norm <= 0.0) {
                TorusField th = make_initial_torus(grid, cfg.init);
                theta0_norm = norm(th, NormSpec::sobolev(cfg.m));
            }
            if (cfg.sigma.kind != ProfileKind::Zero)
                sigma_l1 = sample_profile(cfg.sigma, grid, 1.0).weighted_l1(cfg.m + 1, grid.length);
        } else if (theta0_norm <= 0.0) {
            StripFieldX th = make_initial_strip(StripGrid(cfg.pmodes, cfg.qmodes), cfg.init);
            theta0_norm = norm(th, NormSpec::sobolev(cfg.m));
        }
        cfg.N = cfg.smallness * (theta0_norm + sigma_l1);
    }
    if (cfg.final_nt > 0.0) cfg.final_time = cfg.final_nt / cfg.N;
    if (cfg.snapshot_nt > 0.0) cfg.snapshot_dt = cfg.snapshot_nt / cfg.N;
    return cfg;
}

ScenarioResult run_scenario(const Scenario& s, const std::string& out_dir, bool quiet,
                            std::uint64_t seed_override) {
    ScenarioResult res;
    try {
        std::filesystem::create_directories(out_dir);
    } catch (const std::exception& e) {
        res.exit_code = 4;
        res.checks.push_back({"io", false, e.what()});
        return res;
    }

    try {
        if (s.kind == "linear_sweep") {
            const std::vector<double> times =
                log_spaced_times(s.sweep.N, s.sweep.nt_lo, s.sweep.nt_hi, s.sweep.points);
            std::map<std::string, DecayCurve> curves;
            InitSpec init = s.sweep.init;
            if (seed_override != 0) init.seed = seed_override;
            if (s.sweep.domain == Domain::Strip) {
                StripFieldX th = make_initial_strip(StripGrid(s.sweep.pmodes, s.sweep.qmodes), init);
                curves = semigroup_norm_sweep(th, s.sweep.N, times, s.sweep.m);
            } else {
                TorusField th = make_initial_torus(TorusGrid(s.sweep.modes), init);
                curves = semigroup_norm_sweep(th, s.sweep.N, times, s.sweep.m);
            }
            const std::string csv = out_dir + "/" + s.id + "_curves.csv";
            write_file(csv, curves_csv(curves));
            res.artifacts.push_back(csv);
            append_report_rows(build_report(curves, s.predictions), res.checks);
        } else if (s.kind == "nonlinear_run") {
            res.exit_code =
                run_solver_checks(s, s.solver, out_dir, "", seed_override, res.checks,
                                  res.artifacts);
        } else if (s.kind == "mean_laws") {
            int rc1 = run_solver_checks(s, s.solver, out_dir, "_torus", seed_override,
                                        res.checks, res.artifacts);
            int rc2 = s.has_solver2
                          ? run_solver_checks(s, s.solver2, out_dir, "_strip", seed_override,
                                              res.checks, res.artifacts)
                          : 0;
            res.exit_code = rc1 != 0 ? rc1 : rc2;
        } else if (s.kind == "kernel_decay") {
            const double scale = s.kernel.gaussian_scale;
            auto density = [scale](double x1, double x2) {
                return std::exp(-(x1 * x1 + x2 * x2) / (scale * scale));
            };
            const PlaneQuadrature quad(
                {s.kernel.xi_max, s.kernel.inner, s.kernel.nodes_per_panel});
            const std::vector<double> times =
                log_spaced_times(1.0, s.kernel.nt_lo, s.kernel.nt_hi, s.kernel.points);
            PlaneSemigroupSweep sweep(density, quad, PlaneNormKind::L1, 0);
            DecayCurve l1 = sweep.curve(1.0, times);
            DecayCurve comp, ratio = kernel_decay_ratio(density, 1.0, times, s.kernel.ratio_s, quad);
            for (size_t i = 0; i < l1.t.size(); ++i)
                comp.push(l1.t[i], l1.nt[i], std::pow(1.0 + l1.nt[i], 0.25) * l1.value[i]);
            std::map<std::string, DecayCurve> curves{
                {"kernel_l1", l1}, {"kernel_l1_compensated", comp}, {"kernel_ratio", ratio}};
            const std::string csv = out_dir + "/" + s.id + "_curves.csv";
            write_file(csv, curves_csv(curves));
            res.artifacts.push_back(csv);

            try {
                plane_norm_quadrature(density, 1.0, times.back(), PlaneNormKind::L1, 0, quad,
                                      s.kernel.truncation_tol);
                res.checks.push_back({"truncation", true, "tol=" + fmt(s.kernel.truncation_tol)});
            } catch (const RefinementError& e) {
                res.checks.push_back({"truncation", false,
                                      "achieved=" + fmt(e.achieved_estimate)});
            }
            const double vmax = *std::max_element(comp.value.begin(), comp.value.end());
            const double vmin = *std::min_element(comp.value.begin(), comp.value.end());
            if (s.checks.kernel_variation_max > 0.0)
                res.checks.push_back(
                    {"compensated_variation", vmax / vmin <= s.checks.kernel_variation_max,
                     "max/min=" + fmt(vmax / vmin) + " bound=" +
                         fmt(s.checks.kernel_variation_max)});
            if (s.checks.ratio_bound > 0.0) {
                const double rmax =
                    *std::max_element(ratio.value.begin(), ratio.value.end());
                res.checks.push_back({"ratio_bounded", rmax <= s.checks.ratio_bound,
                                      "max=" + fmt(rmax) + " bound=" + fmt(s.checks.ratio_bound)});
                bool mono = true;
                for (size_t i = 1; i < ratio.value.size(); ++i)
                    mono = mono && ratio.value[i] <= ratio.value[i - 1] * (1.0 + 1e-2);
                res.checks.push_back({"ratio_nonincreasing", mono, "slack=1e-2"});
            }
        } else if (s.kind == "sharpness") {
            const std::vector<double> times =
                log_spaced_times(1.0, s.kernel.nt_lo, s.kernel.nt_hi, s.kernel.points);
            const PlaneQuadrature quad(
                {s.kernel.xi_max, s.kernel.inner, s.kernel.nodes_per_panel});
            std::map<std::string, DecayCurve> curves;
            for (int j = 0; j <= 1; ++j) {
                WitnessSpec spec{s.kernel.witness_eps, s.kernel.witness_s, j, s.kernel.xi_max};
                auto density = sharpness_witness(spec);
                PlaneSemigroupSweep l1(density, quad, PlaneNormKind::L1Weighted, j);
                PlaneSemigroupSweep l2(density, quad, PlaneNormKind::L2, j);
                curves["witness_L1_j" + std::to_string(j)] = l1.curve(1.0, times);
                curves["witness_L2_j" + std::to_string(j)] = l2.curve(1.0, times);
            }
            const std::string csv = out_dir + "/" + s.id + "_curves.csv";
            write_file(csv, curves_csv(curves));
            res.artifacts.push_back(csv);
            append_report_rows(build_report(curves, s.predictions), res.checks);
        } else if (s.kind == "inequalities") {
            InequalitySettings q = s.ineq;
            if (seed_override != 0) q.seed = seed_override;
            std::vector<double> Ms;
            for (int k = 0; k <= 10; ++k) Ms.push_back(std::pow(2.0, k));
            const InequalityReport bal = verify_balancing(
                q.balancing_modes, q.balancing_samples, Ms, q.balancing_sobolev_m, q.seed);
            res.checks.push_back({"balancing", bal.max_violation <= q.balancing_slack,
                                  "max_violation=" + fmt(bal.max_violation) + " slack=" +
                                      fmt(q.balancing_slack) + " ensemble=" +
                                      std::to_string(bal.ensemble)});
            const InequalityReport com =
                verify_commutator(q.commutator_modes, q.commutator_samples, q.commutator_s, q.seed);
            res.checks.push_back({"commutator", com.finite && com.drift <= q.drift_tol,
                                  "max_ratio=" + fmt(com.max_ratio) + " drift=" + fmt(com.drift) +
                                      " tol=" + fmt(q.drift_tol)});
            const InequalityReport con = verify_convolution(
                q.convolution_modes, q.convolution_samples, q.convolution_s, 1.0, 1.0, 1.0, q.seed);
            res.checks.push_back({"convolution", con.finite && con.drift <= q.drift_tol,
                                  "max_ratio=" + fmt(con.max_ratio) + " drift=" + fmt(con.drift) +
                                      " tol=" + fmt(q.drift_tol)});
            const InequalityReport ani = verify_convolution_aniso(
                q.convolution_modes, q.convolution_samples, q.convolution_s, q.seed);
            res.checks.push_back({"convolution_aniso", ani.finite && ani.drift <= q.drift_tol,
                                  "max_ratio=" + fmt(ani.max_ratio) + " drift=" + fmt(ani.drift) +
                                      " tol=" + fmt(q.drift_tol)});
            std::ostringstream csv;
            csv << "id,ensemble,max_ratio,mean_ratio,drift,max_violation\n";
            for (const InequalityReport* r : {&bal, &com, &con, &ani})
                csv << r->id << "," << r->ensemble << "," << fmt(r->max_ratio) << ","
                    << fmt(r->mean_ratio) << "," << fmt(r->drift) << "," << fmt(r->max_violation)
                    << "\n";
            const std::string path = out_dir + "/" + s.id + "_report.csv";
            write_file(path, csv.str());
            res.artifacts.push_back(path);
        } else {
            throw ConfigError("run_scenario: unknown kind '" + s.kind + "'");
        }
    } catch (const ConfigError& e) {
        res.exit_code = 1;
        res.checks.push_back({"config", false, e.what()});
    } catch (const ParameterError& e) {
        res.exit_code = 1;
        res.checks.push_back({"config", false, e.what()});
    } catch (const std::ios_base::failure& e) {
        res.exit_code = 4;
        res.checks.push_back({"io", false, e.what()});
    }

    if (res.exit_code == 0)
        for (const CheckRow& r : res.checks)
            if (!r.pass) res.exit_code = 5;

    try {
        const std::string sum = out_dir + "/" + s.id + "_summary.txt";
        write_file(sum, summary_text(s, res.checks, res.exit_code));
        res.artifacts.push_back(sum);
    } catch (const std::exception& e) {
        res.exit_code = 4;
        res.checks.push_back({"io", false, e.what()});
    }
    if (!quiet) {
        for (const CheckRow& r : res.checks)
            std::printf("%s %s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    }
    return res;
}

}  // namespace stratipm
