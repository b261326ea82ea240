// schlogl: command-line front end.
//
// Every subcommand reads an optional JSON config (--config), applies flag
// overrides on top of it, validates the merged result, and writes CSV/JSON
// files into the output directory. Exit codes: 0 ok, 1 validation,
// 2 solver failure, 3 I/O.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "schlogl/csv.hpp"
#include "schlogl/errors.hpp"
#include "schlogl/hermitize.hpp"
#include "schlogl/oracle.hpp"
#include "schlogl/pauli.hpp"
#include "schlogl/qpe.hpp"
#include "schlogl/schlogl_cme.hpp"
#include "schlogl/variational.hpp"
#include "schlogl/vqsvd.hpp"

using nlohmann::json;
using namespace schlogl;

namespace {

constexpr const char* kOutEnv = "SCHLOGL_OUT_DIR";

struct Flags {
    std::string config_path;
    std::optional<std::string> preset;
    std::optional<double> volume;
    std::optional<int> n_trunc;
    std::optional<int> qubits;
    std::optional<double> v_start, v_stop, v_step;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    bool force = false;
    // vqd
    std::optional<int> reps;
    std::optional<int> max_iters;
    std::optional<int> restarts;
    std::optional<std::string> optimizer;
    std::optional<std::string> gradient;
    bool no_vqd = false;
    // qpe
    std::optional<int> precision;
    std::optional<std::uint64_t> shots;
    bool noiseless = false;
    // vqsvd
    std::optional<int> iterations;
    std::optional<int> depth;
    std::optional<double> lr;
    // truncation-study
    std::optional<std::string> strategy;
};

struct Context {
    std::string command;
    json cfg;
    std::string out_dir;
    bool force = false;
    int threads = 1;
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError("config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw DomainError("config " + path + " must hold a JSON object");
    return j;
}

template <class T>
void put(json& obj, const char* key, const std::optional<T>& v) {
    if (v) obj[key] = *v;
}

json merge(json cfg, const Flags& f) {
    if (!cfg.contains("system")) cfg["system"] = json::object();
    json& sys = cfg["system"];
    put(sys, "preset", f.preset);
    put(sys, "V", f.volume);
    put(sys, "N_trunc", f.n_trunc);
    put(cfg, "qubits", f.qubits);
    put(cfg, "seed", f.seed);
    if (f.v_start || f.v_stop || f.v_step) {
        if (!cfg.contains("volumes") || !cfg["volumes"].is_object()) cfg["volumes"] = json::object();
        put(cfg["volumes"], "start", f.v_start);
        put(cfg["volumes"], "stop", f.v_stop);
        put(cfg["volumes"], "step", f.v_step);
    }
    if (f.reps || f.max_iters || f.restarts || f.optimizer || f.gradient || f.no_vqd) {
        if (!cfg.contains("vqd")) cfg["vqd"] = json::object();
        put(cfg["vqd"], "reps", f.reps);
        put(cfg["vqd"], "max_iters", f.max_iters);
        put(cfg["vqd"], "restarts", f.restarts);
        put(cfg["vqd"], "optimizer", f.optimizer);
        put(cfg["vqd"], "gradient", f.gradient);
        if (f.no_vqd) cfg["vqd"]["enabled"] = false;
    }
    if (f.precision || f.shots || f.noiseless) {
        if (!cfg.contains("qpe")) cfg["qpe"] = json::object();
        put(cfg["qpe"], "precision_qubits", f.precision);
        put(cfg["qpe"], "shots", f.shots);
        if (f.noiseless) cfg["qpe"]["noiseless"] = true;
    }
    if (f.iterations || f.depth || f.lr) {
        if (!cfg.contains("vqsvd")) cfg["vqsvd"] = json::object();
        put(cfg["vqsvd"], "iterations", f.iterations);
        put(cfg["vqsvd"], "circuit_depth", f.depth);
        put(cfg["vqsvd"], "learning_rate", f.lr);
    }
    if (f.strategy) {
        if (!cfg.contains("truncation")) cfg["truncation"] = json::object();
        cfg["truncation"]["strategies"] = json::array({*f.strategy});
    }
    return cfg;
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw DomainError(std::string("config field '") + key + "' has the wrong type");
    }
}

int config_qubits(const json& cfg) {
    const int q = get_or<int>(cfg, "qubits", 2);
    if (q < 1 || q > 12) throw DomainError("qubits must be in [1, 12]");
    return q;
}

SchloglSystem config_system(const json& cfg) {
    json sys = cfg.value("system", json::object());
    if (!sys.is_object()) throw DomainError("config field 'system' must be an object");
    if (!sys.contains("N_trunc")) sys["N_trunc"] = n_trunc_for_qubits(config_qubits(cfg));
    if (!sys.contains("V")) sys["V"] = 1.0;
    return load_system_json(sys.dump());
}

std::vector<double> config_volumes(const json& cfg, double fallback) {
    if (!cfg.contains("volumes")) return {fallback};
    const json& v = cfg["volumes"];
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number()) throw DomainError("volumes must be numbers");
            out.push_back(x.get<double>());
        }
    } else if (v.is_object()) {
        const double start = get_or<double>(v, "start", fallback);
        const double stop = get_or<double>(v, "stop", start);
        const double step = get_or<double>(v, "step", 1.0);
        if (!(step > 0)) throw DomainError("volumes.step must be > 0");
        if (stop >= start) {
            const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
            for (long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
        }
    } else {
        throw DomainError("volumes must be an array or {start, stop, step}");
    }
    if (out.empty()) throw DomainError("volume grid is empty");
    for (double x : out) {
        if (!(x > 0)) throw DomainError("every volume must be > 0");
    }
    return out;
}

OptimizerKind parse_optimizer(const std::string& s) {
    if (s == "lbfgsb") return OptimizerKind::QuasiNewtonBounded;
    if (s == "adam") return OptimizerKind::Adam;
    throw DomainError("optimizer must be 'lbfgsb' or 'adam'");
}

GradientMode parse_gradient(const std::string& s) {
    if (s == "parameter-shift") return GradientMode::ParameterShift;
    if (s == "central-difference") return GradientMode::CentralDifference;
    throw DomainError("gradient must be 'parameter-shift' or 'central-difference'");
}

VQDConfig config_vqd(const json& cfg) {
    const json v = cfg.value("vqd", json::object());
    VQDConfig c;
    c.k = get_or<int>(v, "k", 2);
    c.max_iters = get_or<int>(v, "max_iters", 2000);
    c.restarts = get_or<int>(v, "restarts", 1);
    c.optimizer = parse_optimizer(get_or<std::string>(v, "optimizer", "lbfgsb"));
    c.gradient = parse_gradient(get_or<std::string>(v, "gradient", "parameter-shift"));
    c.learning_rate = get_or<double>(v, "learning_rate", 0.02);
    c.seed = get_or<std::uint64_t>(cfg, "seed", 0);
    if (v.contains("betas")) c.betas = v["betas"].get<std::vector<double>>();
    if (c.k < 2) throw DomainError("vqd.k must be >= 2");
    if (c.max_iters < 1) throw DomainError("vqd.max_iters must be >= 1");
    if (c.restarts < 1) throw DomainError("vqd.restarts must be >= 1");
    return c;
}

AnsatzSpec config_ansatz(const json& cfg, int n_qubits) {
    const json v = cfg.value("vqd", json::object());
    const int default_reps = n_qubits <= 2 ? 1 : (n_qubits == 3 ? 2 : 5);
    const int reps = get_or<int>(v, "reps", default_reps);
    if (reps < 1) throw DomainError("vqd.reps must be >= 1");
    return {n_qubits, reps, Rotation::RY, Entanglement::Linear};
}

QPEConfig config_qpe(const json& cfg) {
    const json v = cfg.value("qpe", json::object());
    QPEConfig c;
    c.precision_qubits = get_or<int>(v, "precision_qubits", 7);
    c.shots = get_or<std::uint64_t>(v, "shots", 500000);
    c.noiseless = get_or<bool>(v, "noiseless", false);
    c.seed = get_or<std::uint64_t>(cfg, "seed", 0);
    if (c.precision_qubits < 1 || c.precision_qubits > 12) throw DomainError("qpe.precision_qubits must be in [1, 12]");
    if (c.shots < 1) throw DomainError("qpe.shots must be >= 1");
    return c;
}

VQSVDConfig config_vqsvd(const json& cfg) {
    const json v = cfg.value("vqsvd", json::object());
    VQSVDConfig c;
    c.rank = get_or<int>(v, "rank", c.rank);
    if (v.contains("weights")) c.weights = v["weights"].get<std::vector<double>>();
    c.learning_rate = get_or<double>(v, "learning_rate", c.learning_rate);
    c.iterations = get_or<int>(v, "iterations", c.iterations);
    c.circuit_depth = get_or<int>(v, "circuit_depth", c.circuit_depth);
    c.seed = get_or<std::uint64_t>(cfg, "seed", 0);
    if (c.rank < 1) throw DomainError("vqsvd.rank must be >= 1");
    if (static_cast<int>(c.weights.size()) != c.rank) throw DomainError("vqsvd.weights must have rank entries");
    if (c.iterations < 1) throw DomainError("vqsvd.iterations must be >= 1");
    if (c.circuit_depth < 2) throw DomainError("vqsvd.circuit_depth must be >= 2");
    return c;
}

std::string header(const Context& ctx) {
    return comment_block("schlogl " + ctx.command + "\nconfig-hash: " + config_hash(ctx.cfg.dump()) +
                         "\nconfig: " + ctx.cfg.dump());
}

std::string path_in(const Context& ctx, const std::string& name) {
    return (std::filesystem::path(ctx.out_dir) / name).string();
}

void refuse_overwrite(const Context& ctx, const std::vector<std::string>& names) {
    if (ctx.force) return;
    for (const auto& n : names) {
        const std::string p = path_in(ctx, n);
        if (std::filesystem::exists(p)) throw IoError(p + " exists; pass --force to overwrite");
    }
}

void emit(const Context& ctx, const std::string& name, const std::string& body) {
    write_file_atomic(path_in(ctx, name), header(ctx) + body);
}

void emit_json(const Context& ctx, const std::string& name, json j) {
    j["config_hash"] = config_hash(ctx.cfg.dump());
    j["command"] = ctx.command;
    write_file_atomic(path_in(ctx, name), j.dump(2) + "\n");
}

int pauli_qubits_of(const GeneratorMatrix& q) {
    const auto d = static_cast<std::size_t>(q.dim());
    if (!is_power_of_two(d)) throw DomainError("Q dimension " + std::to_string(d) + " is not a power of two; set N_trunc = 2^n - 1");
    return log2_exact(d);
}

void cmd_build_q(const Context& ctx) {
    const SchloglSystem sys = config_system(ctx.cfg);
    refuse_overwrite(ctx, {"Q.csv", "Q_H.csv", "Q_spd.csv", "build_q.json"});
    const GeneratorMatrix q = build_generator(sys);
    emit(ctx, "Q.csv", matrix_to_csv(q.entries()));
    emit(ctx, "Q_H.csv", matrix_to_csv(block_embed(q).entries()));
    emit(ctx, "Q_spd.csv", matrix_to_csv(spd_form(q).entries()));
    json meta;
    meta["dim"] = q.dim();
    meta["V"] = sys.volume();
    meta["N_trunc"] = sys.n_trunc();
    meta["k"] = {sys.k1(), sys.k2(), sys.k3(), sys.k4()};
    meta["a"] = sys.a();
    meta["b"] = sys.b();
    if (sys.k2() * sys.k3() * sys.b() != 0.0) {
        meta["detailed_balance_ratio"] = sys.detailed_balance_ratio();
        meta["is_equilibrium"] = sys.is_equilibrium();
    }
    emit_json(ctx, "build_q.json", meta);
}

struct SweepRow {
    double v, lambda0, lambda1, lambda1_h, lambda1_vqd = std::nan("");
};

void cmd_sweep_eigs(const Context& ctx) {
    const SchloglSystem base = config_system(ctx.cfg);
    const std::vector<double> grid = config_volumes(ctx.cfg, base.volume());
    const bool run_vqd = get_or<bool>(ctx.cfg.value("vqd", json::object()), "enabled", true);
    std::optional<VQDConfig> vcfg;
    std::optional<AnsatzSpec> ansatz;
    if (run_vqd) {
        const int n = pauli_qubits_of(build_generator(base));
        if (n > 6) throw DomainError("VQD column needs Q of at most 64 states; pass --no-vqd for larger N_trunc");
        vcfg = config_vqd(ctx.cfg);
        ansatz = config_ansatz(ctx.cfg, n);
    }
    std::vector<SweepRow> rows(grid.size());
    std::vector<std::string> errors(grid.size());
    const auto n_pts = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(ctx.threads)
    for (long i = 0; i < n_pts; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            const SchloglSystem sys = base.with_volume(grid[k]);
            const GeneratorMatrix q = build_generator(sys);
            const LowSpectrum ls = low_spectrum(q);
            SweepRow r{grid[k], ls.lambda0, ls.lambda1, hermitian_lambda1(q)};
            if (vcfg) {
                const PauliSum p = decompose(spd_form(q));
                const VQDReport rep = vqd(p, *ansatz, *vcfg);
                r.lambda1_vqd = std::sqrt(std::max(rep.eigenvalue_estimates[1], 0.0));
            }
            rows[k] = r;
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!errors[k].empty()) throw SolverError("V=" + format_double(grid[k]) + ": " + errors[k]);
    }
    std::string csv = "V,lambda0,lambda1_nonhermitian,lambda1_hermitian,lambda1_vqd,vqd_abs_error\n";
    std::vector<double> ref, est;
    double worst_vqd = 0.0;
    for (const auto& r : rows) {
        const double err = std::abs(r.lambda1_vqd - r.lambda1_h);
        if (vcfg) worst_vqd = std::max(worst_vqd, err);
        csv += format_double(r.v) + "," + format_double(r.lambda0) + "," + format_double(r.lambda1) + "," +
               format_double(r.lambda1_h) + "," + (vcfg ? format_double(r.lambda1_vqd) : "") + "," +
               (vcfg ? format_double(err) : "") + "\n";
        ref.push_back(std::abs(r.lambda1));
        est.push_back(r.lambda1_h);
    }
    emit(ctx, "sweep_eigs.csv", csv);
    json meta;
    if (grid.size() >= 2) {
        const ComparisonMetrics m = compare(ref, est);
        meta["hermitian_vs_nonhermitian"] = {{"rmsd", m.rmsd}, {"r_squared", m.r_squared}};
    }
    if (vcfg) meta["vqd_max_abs_error"] = worst_vqd;
    meta["points"] = grid.size();
    emit_json(ctx, "sweep_eigs_metrics.json", meta);
}

void cmd_truncation_study(const Context& ctx) {
    json cfg = ctx.cfg;
    const json t = cfg.value("truncation", json::object());
    if (!cfg.contains("qubits")) cfg["qubits"] = get_or<int>(t, "qubits", 2);
    if (!cfg["system"].contains("V")) cfg["system"]["V"] = 8.5;
    const SchloglSystem sys = config_system(cfg);
    const GeneratorMatrix q = build_generator(sys);
    pauli_qubits_of(q);
    const HermitianOperator spd = spd_form(q);
    const std::vector<double> exact = hermitian_eigenvalues(spd.entries());
    const PauliSum full = decompose(spd);

    std::vector<std::string> names = {"default", "positive-first", "magnitude", "optimized"};
    if (t.contains("strategies")) names = t["strategies"].get<std::vector<std::string>>();
    std::string csv = "strategy,keep,terms_total,lambda0_estimate,lambda1_estimate,lambda0_abs_error,lambda1_pct_error\n";
    json summary = json::object();
    for (const auto& name : names) {
        const PauliSum sorted = sort_terms(full, parse_ordering(name));
        int min_exact0 = -1;
        for (int keep = 1; keep <= static_cast<int>(sorted.size()); ++keep) {
            const PauliSum tr = truncate(sorted, keep);
            const std::vector<double> e = hermitian_eigenvalues(tr.to_matrix());
            const double err0 = std::abs(e[0] - exact[0]);
            const double pct1 = 100.0 * std::abs(e[1] - exact[1]) / std::abs(exact[1]);
            if (min_exact0 < 0 && err0 < 0.005) min_exact0 = keep;
            csv += name + "," + std::to_string(keep) + "," + std::to_string(sorted.size()) + "," + format_double(e[0]) +
                   "," + format_double(e[1]) + "," + format_double(err0) + "," + format_double(pct1) + "\n";
        }
        summary[name] = {{"terms", sorted.size()}, {"minimal_exact_lambda0_keep", min_exact0}};
    }
    emit(ctx, "truncation_study.csv", csv);
    json meta;
    meta["full_terms"] = full.size();
    meta["V"] = sys.volume();
    meta["strategies"] = summary;
    emit_json(ctx, "truncation_study.json", meta);
    write_file_atomic(path_in(ctx, "q_spd_pauli.txt"), header(ctx) + full.to_text());
}

void cmd_vqd(const Context& ctx, bool exact0) {
    const SchloglSystem sys = config_system(ctx.cfg);
    const GeneratorMatrix q = build_generator(sys);
    const int n = pauli_qubits_of(q);
    const VQDConfig vcfg = config_vqd(ctx.cfg);
    const AnsatzSpec ansatz = config_ansatz(ctx.cfg, n);
    const HermitianOperator spd = spd_form(q);
    const PauliSum p = decompose(spd);
    const VQDReport r = exact0 ? vqd_exact0(p, ansatz, vcfg) : vqd(p, ansatz, vcfg);
    const std::vector<double> exact = hermitian_eigenvalues(spd.entries());
    json j = json::parse(report_to_json(r));
    j["oracle_eigenvalues"] = std::vector<double>(exact.begin(), exact.begin() + vcfg.k);
    j["V"] = sys.volume();
    j["ansatz"] = {{"qubits", n}, {"reps", ansatz.reps}, {"parameters", ansatz.n_params()}};
    const std::string stem = exact0 ? "vqd_exact0" : "vqd";
    emit_json(ctx, stem + "_report.json", j);
    emit(ctx, stem + "_trace.csv", trace_to_csv(r));
}

void cmd_qpe(const Context& ctx) {
    const SchloglSystem sys = config_system(ctx.cfg);
    const QPEConfig qcfg = config_qpe(ctx.cfg);
    const GeneratorMatrix q = build_generator(sys);
    const UnitaryOperator u = unitary_of(block_embed(q));
    const QPEResult r = qpe_run(u, qcfg);
    emit(ctx, "qpe_histogram.csv", histogram_to_csv(r));
    json j;
    j["V"] = sys.volume();
    j["phase"] = r.phase;
    j["lambda_schlogl"] = r.lambda_schlogl;
    j["lambda_unitary"] = {{"re", r.lambda_unitary.real()}, {"im", r.lambda_unitary.imag()}};
    j["oracle_smallest_singular_value"] = singular_values(q.entries()).front();
    j["phase_quantum"] = 2.0 * std::numbers::pi / std::ldexp(1.0, r.precision_qubits);
    j["shots"] = r.shots;
    emit_json(ctx, "qpe_result.json", j);
}

void cmd_zeromode(const Context& ctx) {
    if (!ctx.cfg.contains("qpe") || !ctx.cfg["qpe"].is_object()) {
        throw DomainError("config is missing the 'qpe' block (or pass --precision/--shots)");
    }
    const SchloglSystem sys = config_system(ctx.cfg);
    const QPEConfig qcfg = config_qpe(ctx.cfg);
    const VQSVDConfig scfg = config_vqsvd(ctx.cfg);
    const ZeromodeReport r = steady_state_pipeline(sys, qcfg, scfg);
    emit(ctx, "zeromode.csv", zeromode_to_csv(r));
    json j = json::parse(zeromode_report_json(r));
    j["V"] = sys.volume();
    emit_json(ctx, "zeromode_report.json", j);
}

int run(const std::string& command, const Flags& f) {
    Context ctx;
    ctx.command = command;
    ctx.force = f.force;
    ctx.cfg = merge(load_config(f.config_path), f);
    ctx.out_dir = get_or<std::string>(ctx.cfg, "output_dir", "out");
    if (const char* env = std::getenv(kOutEnv); env && *env) ctx.out_dir = env;
    if (f.out) ctx.out_dir = *f.out;
    const unsigned hw = std::thread::hardware_concurrency();
    ctx.threads = f.threads.value_or(hw == 0 ? 1 : static_cast<int>(hw));
    if (ctx.threads < 1) throw DomainError("threads must be >= 1");

    if (command == "build-q") cmd_build_q(ctx);
    else if (command == "sweep-eigs") cmd_sweep_eigs(ctx);
    else if (command == "truncation-study") cmd_truncation_study(ctx);
    else if (command == "vqd") cmd_vqd(ctx, false);
    else if (command == "vqd-exact0") cmd_vqd(ctx, true);
    else if (command == "qpe") cmd_qpe(ctx);
    else if (command == "zeromode") cmd_zeromode(ctx);
    std::cout << "wrote " << command << " outputs to " << ctx.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schlogl CME eigenvalues and steady states with emulated quantum solvers"};
    app.require_subcommand(1);
    Flags f;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"build-q", "Write Q, Q_H and Q_spd as CSV"},
        {"sweep-eigs", "Classical and VQD lambda1 over a volume grid"},
        {"truncation-study", "Eigenvalue errors of sorted, truncated Pauli sums"},
        {"vqd", "Variational quantum deflation on Q_spd"},
        {"vqd-exact0", "VQD with the constant zeromode fixed as level 0"},
        {"qpe", "Phase estimation on exp(-i Q_H)"},
        {"zeromode", "Steady state from QPE + VQSVD"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("-c,--config", f.config_path, "JSON config file");
        sub->add_option("--preset", f.preset, "monostable or bistable");
        sub->add_option("--V", f.volume, "System volume");
        sub->add_option("--N-trunc", f.n_trunc, "Largest retained molecule count");
        sub->add_option("--qubits", f.qubits, "Sets N_trunc = 2^qubits - 1 when N_trunc is not given");
        sub->add_option("--seed", f.seed, "RNG seed");
        sub->add_option("-o,--out", f.out, "Output directory (overrides " + std::string(kOutEnv) + ")");
        sub->add_flag("--force", f.force, "Overwrite existing outputs");
        if (name == "sweep-eigs") {
            sub->add_option("--v-start", f.v_start);
            sub->add_option("--v-stop", f.v_stop);
            sub->add_option("--v-step", f.v_step);
            sub->add_option("--threads", f.threads, "Worker threads for the volume grid");
            sub->add_flag("--no-vqd", f.no_vqd, "Skip the VQD column");
        }
        if (name == "sweep-eigs" || name == "vqd" || name == "vqd-exact0") {
            sub->add_option("--reps", f.reps, "Ansatz repetitions");
            sub->add_option("--max-iters", f.max_iters, "Evaluation budget per level");
            sub->add_option("--restarts", f.restarts, "Random starts per level");
            sub->add_option("--optimizer", f.optimizer, "lbfgsb or adam");
            sub->add_option("--gradient", f.gradient, "parameter-shift or central-difference");
        }
        if (name == "qpe" || name == "zeromode") {
            sub->add_option("--precision", f.precision, "Precision qubits");
            sub->add_option("--shots", f.shots, "Measurement shots");
            sub->add_flag("--noiseless", f.noiseless, "Use exact outcome probabilities");
        }
        if (name == "zeromode") {
            sub->add_option("--iterations", f.iterations, "VQSVD Adam steps");
            sub->add_option("--depth", f.depth, "VQSVD rotation layers");
            sub->add_option("--lr", f.lr, "VQSVD learning rate");
        }
        if (name == "truncation-study") {
            sub->add_option("--strategy", f.strategy, "default, positive-first, magnitude or optimized");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, f);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
