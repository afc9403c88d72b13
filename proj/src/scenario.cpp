#include "vatom/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vatom/metrology.hpp"
#include "vatom/svg.hpp"
#include "vatom/version.hpp"

namespace vatom {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kObservableNames = {"qfi_theta", "qfi_phi", "sigma_min",
                                                   "coherence", "hss",     "chi"};

void ScenarioConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    if (!(t_max >= 10.0 * dt)) throw ConfigError("t_max must be >= 10*dt");
    if (environment == Environment::Free) {
        if (!(gamma31 > 0.0)) throw ConfigError("gamma31 must be > 0");
        if (gamma21 < 0.0) throw ConfigError("gamma21 must be >= 0");
    }
    if (!(theta >= 0.0 && theta <= M_PI)) throw ConfigError("theta must be in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * M_PI)) throw ConfigError("phi must be in [0, 2*pi)");
    for (const auto& obs : observables) {
        if (std::find(kObservableNames.begin(), kObservableNames.end(), obs) ==
            kObservableNames.end())
            throw ConfigError("unknown observable: " + obs);
    }
    if (sweep_param != "phi" && sweep_param != "omega3c")
        throw ConfigError("sweep_param must be phi or omega3c");
    if (sweep_param == "omega3c" && environment == Environment::Free)
        throw ConfigError("omega3c sweep requires the pbg environment");
    if (sweep_param == "phi") {
        for (double v : sweep)
            if (!(v >= 0.0 && v < 2.0 * M_PI)) throw ConfigError("sweep phi out of [0, 2*pi)");
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_quote = !in_quote;
        if (line[i] == '#' && !in_quote) return line.substr(0, i);
    }
    return line;
}

std::string unquote(std::string v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

double parse_number(const std::string& v, int line_no) {
    // Accept plain numbers plus the pi shorthands the figure configs use.
    static const std::map<std::string, double> named = {
        {"pi", M_PI},        {"pi/2", M_PI / 2.0},     {"pi/3", M_PI / 3.0},
        {"pi/4", M_PI / 4.0}, {"pi/6", M_PI / 6.0},    {"3pi/2", 1.5 * M_PI},
        {"2pi", 2.0 * M_PI}};
    const auto it = named.find(v);
    if (it != named.end()) return it->second;
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line_no);
    }
}

std::vector<std::string> parse_array(const std::string& v, int line_no) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ConfigError("expected an array [ ... ]", line_no);
    std::vector<std::string> items;
    std::string body = v.substr(1, v.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(unquote(item));
    }
    return items;
}

} // namespace

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    cfg.observables.clear();
    bool saw_free_omega32 = false;

    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no);

        if (key == "environment") {
            const std::string v = unquote(value);
            if (v == "pbg") cfg.environment = Environment::Pbg;
            else if (v == "free") cfg.environment = Environment::Free;
            else throw ConfigError("environment must be pbg or free", line_no);
        } else if (key == "name") {
            cfg.name = unquote(value);
        } else if (key == "omega3c") {
            cfg.omega3c = parse_number(unquote(value), line_no);
        } else if (key == "omega32") {
            cfg.omega32 = parse_number(unquote(value), line_no);
            saw_free_omega32 = true;
        } else if (key == "gamma31") {
            cfg.gamma31 = parse_number(unquote(value), line_no);
        } else if (key == "gamma21") {
            cfg.gamma21 = parse_number(unquote(value), line_no);
        } else if (key == "theta") {
            cfg.theta = parse_number(unquote(value), line_no);
        } else if (key == "phi") {
            cfg.phi = parse_number(unquote(value), line_no);
        } else if (key == "state_kind") {
            const std::string v = unquote(value);
            if (v == "two_level") cfg.state_kind = StateKind::TwoLevel;
            else if (v == "qutrit_hss") cfg.state_kind = StateKind::QutritHSS;
            else throw ConfigError("state_kind must be two_level or qutrit_hss", line_no);
        } else if (key == "t_max") {
            cfg.t_max = parse_number(unquote(value), line_no);
        } else if (key == "dt") {
            cfg.dt = parse_number(unquote(value), line_no);
        } else if (key == "observables") {
            for (const auto& item : parse_array(value, line_no)) cfg.observables.push_back(item);
        } else if (key == "sweep") {
            for (const auto& item : parse_array(value, line_no))
                cfg.sweep.push_back(parse_number(item, line_no));
        } else if (key == "sweep_param") {
            cfg.sweep_param = unquote(value);
        } else {
            throw ConfigError("unknown key '" + key + "'", line_no);
        }
    }
    // Free space plots conventionally use the wider splitting.
    if (cfg.environment == Environment::Free && !saw_free_omega32) cfg.omega32 = 0.5;
    cfg.validate();
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

const std::vector<double> kPhiSweep = {0.0, M_PI / 2.0, M_PI, 1.5 * M_PI};
const std::vector<double> kOmega3cSweep = {-1.0, 0.2, 0.9};

ScenarioConfig base_pbg(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.environment = Environment::Pbg;
    cfg.omega3c = -1.0;
    cfg.omega32 = 0.1;
    cfg.t_max = 20.0;
    cfg.dt = 0.01;
    return cfg;
}

ScenarioConfig base_free(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.environment = Environment::Free;
    cfg.gamma31 = 1.0;
    cfg.gamma21 = 1.0;
    cfg.omega32 = 0.5;
    cfg.t_max = 10.0;
    cfg.dt = 0.01;
    return cfg;
}

} // namespace

std::vector<std::string> builtin_scenario_names() {
    return {"fig2", "fig3", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"};
}

std::vector<ScenarioConfig> builtin_scenario(const std::string& name) {
    const auto phi_pair = [&](const std::vector<std::string>& obs, StateKind kind) {
        ScenarioConfig pbg = base_pbg(name + "_pbg");
        ScenarioConfig free_ = base_free(name + "_free");
        for (auto* cfg : {&pbg, &free_}) {
            cfg->observables = obs;
            cfg->sweep = kPhiSweep;
            cfg->sweep_param = "phi";
            cfg->state_kind = kind;
        }
        return std::vector<ScenarioConfig>{pbg, free_};
    };
    const auto omega_single = [&](const std::vector<std::string>& obs, StateKind kind) {
        ScenarioConfig pbg = base_pbg(name + "_pbg");
        pbg.observables = obs;
        pbg.sweep = kOmega3cSweep;
        pbg.sweep_param = "omega3c";
        pbg.state_kind = kind;
        return std::vector<ScenarioConfig>{pbg};
    };

    if (name == "fig2") return phi_pair({"qfi_theta", "qfi_phi"}, StateKind::TwoLevel);
    if (name == "fig3") return omega_single({"qfi_theta", "qfi_phi"}, StateKind::TwoLevel);
    if (name == "fig5") return phi_pair({"sigma_min"}, StateKind::TwoLevel);
    if (name == "fig6") return omega_single({"sigma_min"}, StateKind::TwoLevel);
    if (name == "fig7") return phi_pair({"coherence"}, StateKind::TwoLevel);
    if (name == "fig8") return omega_single({"coherence"}, StateKind::TwoLevel);
    if (name == "fig9") return phi_pair({"hss", "chi"}, StateKind::QutritHSS);
    if (name == "fig10") return omega_single({"hss", "chi"}, StateKind::QutritHSS);
    throw ConfigError("unknown scenario '" + name + "'");
}

namespace {

bool wants(const ScenarioConfig& cfg, const std::string& obs) {
    return std::find(cfg.observables.begin(), cfg.observables.end(), obs) !=
           cfg.observables.end();
}

SweepResult compute_one(const ScenarioConfig& cfg, double sweep_value, bool swept,
                        EvalMode mode) {
    ScenarioConfig run = cfg;
    if (swept) {
        if (cfg.sweep_param == "phi") run.phi = sweep_value;
        else run.omega3c = sweep_value;
    }

    const TimeGrid grid = run.grid();
    const std::vector<double> times = grid.times();

    std::vector<Propagator> track;
    if (run.environment == Environment::Pbg) {
        const PbgParams p{run.omega32, run.omega3c};
        const ModeRoots roots = find_mode_roots(p);
        track = evaluate_grid(grid, p, roots, mode);
    } else {
        const FreeParams p{run.gamma31, run.gamma21, run.omega32};
        track = evaluate_grid(grid, p, mode);
    }

    const InitialAmplitudes c = initial_amplitudes(run.theta, run.phi, run.state_kind);
    const AmplitudeDerivatives dc = amplitude_derivatives(run.theta, run.phi, run.state_kind);

    const bool need_fisher =
        wants(run, "qfi_theta") || wants(run, "qfi_phi") || wants(run, "sigma_min");
    const bool need_hss = wants(run, "hss") || wants(run, "chi");

    SweepResult res;
    res.sweep_value = swept ? sweep_value : (cfg.sweep_param == "phi" ? run.phi : run.omega3c);
    res.min_state_eigenvalue = std::numeric_limits<double>::infinity();

    const std::size_t n = times.size();
    std::vector<double> qfi_t(n), qfi_p(n), sig(n), coh(n), hss_vals(n);
    std::vector<double> trace_defect(n), min_eig(n), norm2(n);

    std::exception_ptr error;
    const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (mode == EvalMode::Parallel)
    for (long i = 0; i < nn; ++i) {
        try {
            const DensityMatrix3 rho = density_matrix(track[i], c);
            const Eigen::Matrix3cd drho_theta = drho_dparam(track[i], c, dc.d_theta);
            const Eigen::Matrix3cd drho_phi = drho_dparam(track[i], c, dc.d_phi);

            trace_defect[i] = rho.trace_defect();
            min_eig[i] = rho.min_eigenvalue();
            norm2[i] = rho.rho(0, 0).real() + rho.rho(1, 1).real();

            if (need_fisher) {
                const QFIMatrix f = qfim(rho, drho_theta, drho_phi);
                qfi_t[i] = f.f_tt;
                qfi_p[i] = f.f_pp;
                try {
                    sig[i] = sigma_min(f);
                } catch (const SingularFisherError&) {
                    sig[i] = std::numeric_limits<double>::infinity();
                }
            }
            coh[i] = coherence_l1(rho);
            if (need_hss) hss_vals[i] = hss(drho_phi);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    for (std::size_t i = 0; i < n; ++i) {
        res.max_trace_defect = std::max(res.max_trace_defect, trace_defect[i]);
        res.min_state_eigenvalue = std::min(res.min_state_eigenvalue, min_eig[i]);
        res.max_amplitude_norm = std::max(res.max_amplitude_norm, norm2[i]);
    }

    const auto make_track = [&](const std::string& obs, std::vector<double> vals) {
        ObservableTrack t;
        t.name = obs;
        t.times = times;
        t.values = std::move(vals);
        res.tracks.emplace(obs, std::move(t));
    };
    if (wants(run, "qfi_theta")) make_track("qfi_theta", qfi_t);
    if (wants(run, "qfi_phi")) make_track("qfi_phi", qfi_p);
    if (wants(run, "sigma_min")) make_track("sigma_min", sig);
    if (wants(run, "coherence")) make_track("coherence", coh);
    if (need_hss) {
        ObservableTrack hss_track;
        hss_track.name = "hss";
        hss_track.times = times;
        hss_track.values = hss_vals;
        const HssWitness witness = hss_witness(hss_track);
        res.chi_backflow_integral = witness.backflow_integral;
        if (wants(run, "hss")) res.tracks.emplace("hss", std::move(hss_track));
        if (wants(run, "chi")) res.tracks.emplace("chi", witness.chi);
    }
    return res;
}

std::string format_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

std::vector<SweepResult> compute_scenario(const ScenarioConfig& cfg, EvalMode mode) {
    cfg.validate();
    std::vector<SweepResult> out;
    if (cfg.sweep.empty()) {
        out.push_back(compute_one(cfg, 0.0, false, mode));
    } else {
        for (double v : cfg.sweep) out.push_back(compute_one(cfg, v, true, mode));
    }
    return out;
}

ScenarioOutput run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                            bool write_svg, EvalMode mode) {
    cfg.validate();
    fs::create_directories(out_dir);
    const std::vector<SweepResult> results = compute_scenario(cfg, mode);

    // Columns in canonical order, restricted to what was requested.
    std::vector<std::string> columns;
    for (const auto& obs : kObservableNames)
        if (std::find(cfg.observables.begin(), cfg.observables.end(), obs) !=
            cfg.observables.end())
            columns.push_back(obs);

    ScenarioOutput out;
    json manifest;
    manifest["library"] = std::string("vatom ") + kVersion;
    manifest["config"] = {
        {"name", cfg.name},
        {"environment", cfg.environment == Environment::Pbg ? "pbg" : "free"},
        {"omega32", cfg.omega32},
        {"theta", cfg.theta},
        {"phi", cfg.phi},
        {"state_kind", cfg.state_kind == StateKind::TwoLevel ? "two_level" : "qutrit_hss"},
        {"t_max", cfg.t_max},
        {"dt", cfg.dt},
        {"observables", cfg.observables},
        {"sweep_param", cfg.sweep_param},
        {"sweep", cfg.sweep},
    };
    if (cfg.environment == Environment::Pbg) manifest["config"]["omega3c"] = cfg.omega3c;
    else {
        manifest["config"]["gamma31"] = cfg.gamma31;
        manifest["config"]["gamma21"] = cfg.gamma21;
    }
    manifest["outputs"] = json::array();

    for (std::size_t k = 0; k < results.size(); ++k) {
        const SweepResult& r = results[k];
        json entry;
        entry["sweep_index"] = k;
        entry[cfg.sweep_param] = r.sweep_value;
        entry["max_trace_defect"] = r.max_trace_defect;
        entry["min_state_eigenvalue"] = r.min_state_eigenvalue;
        entry["max_amplitude_norm"] = r.max_amplitude_norm;
        if (r.tracks.count("chi")) {
            // Integral of positive chi; summary beyond the witness itself.
            entry["chi_backflow_integral"] = r.chi_backflow_integral;
            entry["chi_backflow_integral_extension"] = true;
        }

        if (!columns.empty()) {
            const std::string fname = cfg.name + "_s" + std::to_string(k) + ".csv";
            const fs::path path = fs::path(out_dir) / fname;
            std::ofstream csv(path, std::ios::binary);
            csv << "t";
            for (const auto& colname : columns) csv << "," << colname;
            csv << "\n";
            const std::size_t n = cfg.grid().size();
            const std::vector<double> times = cfg.grid().times();
            for (std::size_t i = 0; i < n; ++i) {
                csv << format_value(times[i]);
                for (const auto& colname : columns)
                    csv << "," << format_value(r.tracks.at(colname).values[i]);
                csv << "\n";
            }
            out.csv_files.push_back(path.string());
            entry["csv"] = fname;
        }
        manifest["outputs"].push_back(entry);
    }

    if (write_svg && !columns.empty()) {
        for (const auto& colname : columns) {
            std::vector<SvgSeries> series;
            for (const auto& r : results) {
                SvgSeries s;
                s.label = cfg.sweep_param + " = " + format_value(r.sweep_value);
                s.x = r.tracks.at(colname).times;
                s.y = r.tracks.at(colname).values;
                series.push_back(std::move(s));
            }
            const fs::path path = fs::path(out_dir) / (cfg.name + "_" + colname + ".svg");
            write_line_chart(path.string(), cfg.name + ": " + colname, "t", colname, series);
            out.svg_files.push_back(path.string());
        }
    }

    const fs::path mpath = fs::path(out_dir) / (cfg.name + "_manifest.json");
    std::ofstream mf(mpath, std::ios::binary);
    mf << manifest.dump(2) << "\n";
    out.manifest_file = mpath.string();
    return out;
}

} // namespace vatom
