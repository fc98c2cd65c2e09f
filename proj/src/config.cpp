#include "eit/config.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "eit/errors.hpp"
#include "eit/lyapunov.hpp"
#include "eit/version.hpp"

#include <json.hpp>

namespace eit {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& s) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ConfigError("invalid numeric value for '" + key + "': " + s);
    return v;
}

int parse_int(const std::string& key, const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ConfigError("invalid integer value for '" + key + "': " + s);
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ConfigError("invalid seed value for '" + key + "': " + s);
    return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("invalid boolean value for '" + key + "': " + s);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    PhysicalParams& p = cfg.params;
    if (key == "g1") p.g1 = parse_double(key, value);
    else if (key == "g2") p.g2 = parse_double(key, value);
    else if (key == "Gamma1") p.Gamma1 = parse_double(key, value);
    else if (key == "Gamma2") p.Gamma2 = parse_double(key, value);
    else if (key == "gamma12") p.gamma12 = parse_double(key, value);
    else if (key == "gamma") p.gamma = parse_double(key, value);
    else if (key == "tau") p.tau = parse_double(key, value);
    else if (key == "Delta_c1") p.Delta_c1 = parse_double(key, value);
    else if (key == "Delta_c2") p.Delta_c2 = parse_double(key, value);
    else if (key == "delta_L1") p.delta_L1 = parse_double(key, value);
    else if (key == "delta_L2") p.delta_L2 = parse_double(key, value);
    else if (key == "N") p.N = parse_double(key, value);
    else if (key == "alpha1_in_re") p.alpha1_in.real(parse_double(key, value));
    else if (key == "alpha1_in_im") p.alpha1_in.imag(parse_double(key, value));
    else if (key == "alpha2_in_re") p.alpha2_in.real(parse_double(key, value));
    else if (key == "alpha2_in_im") p.alpha2_in.imag(parse_double(key, value));
    else if (key == "fano1_in") p.fano1_in = parse_double(key, value);
    else if (key == "fano2_in") p.fano2_in = parse_double(key, value);
    else if (key == "scan_min") cfg.scan_min = parse_double(key, value);
    else if (key == "scan_max") cfg.scan_max = parse_double(key, value);
    else if (key == "scan_points") cfg.scan_points = parse_int(key, value);
    else if (key == "omega") cfg.omega = parse_double(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "format") cfg.format = value;
    else if (key == "include_diagnostics") cfg.include_diagnostics = parse_bool(key, value);
    else if (key == "force_zero_coherence") cfg.force_zero_coherence = parse_bool(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

std::vector<double> RunConfig::grid() const {
    std::vector<double> g(scan_points);
    if (scan_points == 1) {
        g[0] = scan_min;
        return g;
    }
    const double step = (scan_max - scan_min) / (scan_points - 1);
    for (int i = 0; i < scan_points; ++i) g[i] = scan_min + step * i;
    return g;
}

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (scan_points < 1) throw ConfigError("scan_points: must be >= 1");
    if (!(scan_min <= scan_max)) throw ConfigError("scan_min: must be <= scan_max");
    if (!(omega >= 0.0)) throw ConfigError("omega: must be >= 0");
    if (format != "csv" && format != "json")
        throw ConfigError("format: must be 'csv' or 'json'");
    if (out.empty()) throw ConfigError("out: must not be empty");
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    RunConfig cfg;
    std::map<std::string, bool> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (seen[key]) throw ConfigError("duplicate config key '" + key + "'");
        seen[key] = true;
        apply_key(cfg, key, value);
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + ov + "'");
        apply_key(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

const std::map<std::string, std::string>& builtin_configs() {
    // couplings: g*sqrt(N/tau) = 1 Gamma (collective single-photon Rabi),
    // cooperativity g^2 N / (tau gamma Gamma/2) = 20
    static const std::map<std::string, std::string> configs = {
        {"fig1a", R"(# pump/probe noise spectra vs probe detuning, 9:1 intensity ratio
g1 = 3.1622776601683794e-04
g2 = 3.1622776601683794e-04
Gamma1 = 0.5
Gamma2 = 0.5
gamma12 = 0
gamma = 0.1
tau = 1e-3
Delta_c1 = 0
Delta_c2 = 0
delta_L1 = 0          # pump strictly on atomic resonance
N = 1e4
alpha1_in_re = 3.0
alpha1_in_im = 0
alpha2_in_re = 1.0    # |alpha1/alpha2|^2 = 9
alpha2_in_im = 0
fano1_in = 1          # coherent inputs
fano2_in = 1
scan_min = -2
scan_max = 2
scan_points = 401
omega = 5.3051647697298445e-02   # Gamma/(6 pi)
out = fig1a.csv
format = csv
)"},
        {"fig1b", R"(# pump-probe intensity correlations, equal intensities
g1 = 3.1622776601683794e-04
g2 = 3.1622776601683794e-04
Gamma1 = 0.5
Gamma2 = 0.5
gamma12 = 0
gamma = 0.1
tau = 1e-3
Delta_c1 = 0
Delta_c2 = 0
delta_L1 = 0
N = 1e4
alpha1_in_re = 2.0
alpha1_in_im = 0
alpha2_in_re = 2.0
alpha2_in_im = 0
fano1_in = 1
fano2_in = 1
scan_min = -2
scan_max = 2
scan_points = 401
omega = 5.3051647697298445e-02
out = fig1b.csv
format = csv
)"},
        {"empty_cavity", R"(# couplings off: every shot-normalized noise column is 1
g1 = 0
g2 = 0
Gamma1 = 0.5
Gamma2 = 0.5
gamma12 = 0
gamma = 0.1
tau = 1e-3
Delta_c1 = 0
Delta_c2 = 0
delta_L1 = 0
N = 1e4
alpha1_in_re = 3.0
alpha1_in_im = 0
alpha2_in_re = 1.0
alpha2_in_im = 0
fano1_in = 1
fano2_in = 1
scan_min = -2
scan_max = 2
scan_points = 101
omega = 5.3051647697298445e-02
out = empty_cavity.csv
format = csv
)"}};
    return configs;
}

RunConfig load_config(const std::string& name_or_path, const std::vector<std::string>& overrides) {
    const auto& builtins = builtin_configs();
    if (const auto it = builtins.find(name_or_path); it != builtins.end())
        return parse_config(it->second, overrides);
    std::ifstream in(name_or_path);
    if (!in) throw ConfigError("cannot open config '" + name_or_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

std::string config_to_text(const RunConfig& cfg) {
    const PhysicalParams& p = cfg.params;
    std::ostringstream out;
    out << "g1 = " << fmt17(p.g1) << '\n'
        << "g2 = " << fmt17(p.g2) << '\n'
        << "Gamma1 = " << fmt17(p.Gamma1) << '\n'
        << "Gamma2 = " << fmt17(p.Gamma2) << '\n'
        << "gamma12 = " << fmt17(p.gamma12) << '\n'
        << "gamma = " << fmt17(p.gamma) << '\n'
        << "tau = " << fmt17(p.tau) << '\n'
        << "Delta_c1 = " << fmt17(p.Delta_c1) << '\n'
        << "Delta_c2 = " << fmt17(p.Delta_c2) << '\n'
        << "delta_L1 = " << fmt17(p.delta_L1) << '\n'
        << "delta_L2 = " << fmt17(p.delta_L2) << '\n'
        << "N = " << fmt17(p.N) << '\n'
        << "alpha1_in_re = " << fmt17(p.alpha1_in.real()) << '\n'
        << "alpha1_in_im = " << fmt17(p.alpha1_in.imag()) << '\n'
        << "alpha2_in_re = " << fmt17(p.alpha2_in.real()) << '\n'
        << "alpha2_in_im = " << fmt17(p.alpha2_in.imag()) << '\n'
        << "fano1_in = " << fmt17(p.fano1_in) << '\n'
        << "fano2_in = " << fmt17(p.fano2_in) << '\n'
        << "scan_min = " << fmt17(cfg.scan_min) << '\n'
        << "scan_max = " << fmt17(cfg.scan_max) << '\n'
        << "scan_points = " << cfg.scan_points << '\n'
        << "omega = " << fmt17(cfg.omega) << '\n'
        << "out = " << cfg.out << '\n'
        << "format = " << cfg.format << '\n'
        << "include_diagnostics = " << (cfg.include_diagnostics ? "true" : "false") << '\n'
        << "force_zero_coherence = " << (cfg.force_zero_coherence ? "true" : "false") << '\n'
        << "seed = " << cfg.seed << '\n';
    return out.str();
}

ScanOutput execute_scan(const RunConfig& cfg, int n_threads) {
    cfg.validate();
    const PhysicalParams pn = nondimensionalize(cfg.params);
    const std::vector<double> grid = cfg.grid();

    SolveOptions solver;
    const std::vector<SteadyState> states = continuation_scan(pn, grid, solver);

    ScanOutput out;
    out.records.resize(states.size());
    if (cfg.include_diagnostics) out.diagnostics.resize(states.size());

    auto work = [&](size_t i) {
        PhysicalParams pi = pn;
        pi.delta_L2 = grid[i];
        const PointResult pr = scan_point(pi, states[i], cfg.omega, cfg.force_zero_coherence);
        out.records[i] = pr.record;
        if (cfg.include_diagnostics) {
            out.diagnostics[i].A = pr.A.A;
            out.diagnostics[i].D_corr = pr.D.D_corr;
            out.diagnostics[i].Sigma = solve_lyapunov_dagger(pr.A.A, pr.D.D_corr);
        }
    };

    // spectra phase: independent points, slot-indexed writes
    if (n_threads <= 1) {
        for (size_t i = 0; i < states.size(); ++i) {
            try {
                work(i);
            } catch (const std::exception& e) {
                throw ScanError(static_cast<int>(i), e.what());
            }
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        std::mutex err_mutex;
        std::exception_ptr first_error;
        int first_index = -1;
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < states.size(); i = next.fetch_add(1)) {
                    try {
                        work(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(err_mutex);
                        if (first_index < 0 || static_cast<int>(i) < first_index) {
                            first_error = std::current_exception();
                            first_index = static_cast<int>(i);
                        }
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (first_error) {
            try {
                std::rethrow_exception(first_error);
            } catch (const std::exception& e) {
                throw ScanError(first_index, e.what());
            }
        }
    }
    return out;
}

namespace {

const char* kCsvHeader =
    "delta_L2,omega,s_pump,s_probe,fano_pump,fano_probe,s_sum,s_diff,"
    "correlation_2C,correlation_norm";

void append_metadata_lines(std::ostringstream& out, const RunConfig& cfg) {
    out << "# eit-noise " << kVersion << '\n';
    out << "# convention: d(dx)/dt = -A dx + F; S(w) = (A - i w I)^-1 D (A+ + i w I)^-1; "
           "rates and detunings in units of Gamma = Gamma1 + Gamma2; "
           "noise columns shot-normalized (1 = coherent)\n";
    std::istringstream kv(config_to_text(cfg));
    std::string line;
    while (std::getline(kv, line)) out << "# " << line << '\n';
}

nlohmann::ordered_json matrix_to_json(const Mat12& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < 12; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < 12; ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string render_csv(const RunConfig& cfg, const std::vector<SpectrumRecord>& records) {
    std::ostringstream out;
    append_metadata_lines(out, cfg);
    out << kCsvHeader << '\n';
    for (const SpectrumRecord& r : records) {
        out << fmt17(r.delta_L2) << ',' << fmt17(r.omega) << ',' << fmt17(r.s_pump) << ','
            << fmt17(r.s_probe) << ',' << fmt17(r.fano_pump) << ',' << fmt17(r.fano_probe)
            << ',' << fmt17(r.s_sum) << ',' << fmt17(r.s_diff) << ','
            << fmt17(r.correlation_2C) << ',' << fmt17(r.correlation_norm) << '\n';
    }
    return out.str();
}

std::string render_json(const RunConfig& cfg, const ScanOutput& output) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["convention"] =
        "d(dx)/dt = -A dx + F; S(w) = (A - i w I)^-1 D (A+ + i w I)^-1; "
        "rates in Gamma units; noise shot-normalized";
    nlohmann::ordered_json cfg_json;
    std::istringstream kv(config_to_text(cfg));
    std::string line;
    while (std::getline(kv, line)) {
        const auto eq = line.find('=');
        cfg_json[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    j["config"] = cfg_json;
    nlohmann::ordered_json recs = nlohmann::ordered_json::array();
    for (const SpectrumRecord& r : output.records) {
        recs.push_back({{"delta_L2", r.delta_L2},
                        {"omega", r.omega},
                        {"s_pump", r.s_pump},
                        {"s_probe", r.s_probe},
                        {"fano_pump", r.fano_pump},
                        {"fano_probe", r.fano_probe},
                        {"s_sum", r.s_sum},
                        {"s_diff", r.s_diff},
                        {"correlation_2C", r.correlation_2C},
                        {"correlation_norm", r.correlation_norm}});
    }
    j["records"] = recs;
    if (!output.diagnostics.empty()) {
        nlohmann::ordered_json diags = nlohmann::ordered_json::array();
        for (const ScanPointDiagnostics& d : output.diagnostics)
            diags.push_back({{"A", matrix_to_json(d.A)},
                             {"D_corr", matrix_to_json(d.D_corr)},
                             {"Sigma", matrix_to_json(d.Sigma)}});
        j["diagnostics"] = diags;
    }
    return j.dump(2) + "\n";
}

ScanOutput run_scan(const RunConfig& cfg, int n_threads) {
    const ScanOutput output = execute_scan(cfg, n_threads);

    auto write_file = [](const std::string& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot write output file '" + path + "'");
        f << text;
    };

    if (cfg.format == "csv") {
        write_file(cfg.out, render_csv(cfg, output.records));
        if (cfg.include_diagnostics) {
            RunConfig diag_cfg = cfg;
            write_file(cfg.out + ".diag.json", render_json(diag_cfg, output));
        }
    } else {
        write_file(cfg.out, render_json(cfg, output));
    }
    return output;
}

RunConfig parse_csv_metadata(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    std::string kv_text;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        const std::string body = line.substr(2);
        if (body.find('=') != std::string::npos) kv_text += body + "\n";
    }
    return parse_config(kv_text);
}

}  // namespace eit
