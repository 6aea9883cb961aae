// Copyright 2026 The bqsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "bqsp/baseline.hpp"
#include "bqsp/gates.hpp"
#include "bqsp/json_io.hpp"
#include "bqsp/nonunitary.hpp"
#include "bqsp/wigner.hpp"

namespace {

using namespace bqsp;

constexpr std::uint64_t kDefaultSeed = 20260101;

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInputFailure = 2, kNumericFailure = 3 };

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << text;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

std::vector<double> random_phases(std::mt19937_64 &rng, int count) {
    std::vector<double> out(count);
    for (auto &t : out) {
        t = 2 * kPi * uniform01(rng);
    }
    return out;
}

void write_wigner(const std::string &path, const Qumode &psi, const WignerGrid &grid) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    write_wigner_csv(out, wigner(psi, grid), grid);
}

WignerGrid make_grid(int points, double extent) {
    if (points < 1 || !(extent > 0)) {
        throw InputError("grid needs points >= 1 and extent > 0");
    }
    WignerGrid g;
    g.x_min = g.p_min = -extent;
    g.x_max = g.p_max = extent;
    g.n_points = points;
    return g;
}

struct SynthOptions {
    std::string spec_path;
    std::string out_path;
};

int run_synth(const SynthOptions &o) {
    const GateSpec spec = gate_spec_from_json(read_json(o.spec_path));
    const CompiledGate gate = compile_gate(spec);
    const VerifyReport rep = verify(gate);
    Json j = to_json(gate);
    j["metrics"] = to_json(rep);
    write_text(o.out_path, dump(j));
    size_t degree = 0;
    for (const auto &pr : gate.polynomials) {
        degree = std::max(degree, pr.p.degree());
    }
    std::ostream &log = o.out_path.empty() || o.out_path == "-" ? std::cerr : std::cout;
    log << std::setprecision(17) << "total_time " << gate.total_time << " " << time_units(gate.backend) << "\n"
        << "polynomial_degree " << degree << "\n"
        << "k " << gate.spec.k << "\n";
    return kOk;
}

struct VerifyOptions {
    std::string gate_path;
    std::string out_path;
    int n_trunc = 0;
    std::optional<double> max_infidelity;
    std::optional<double> max_leakage;
    std::optional<double> max_node_error;
    double max_defect = 1e-9;
};

int run_verify(const VerifyOptions &o) {
    const CompiledGate gate = compiled_gate_from_json(read_json(o.gate_path));
    const VerifyReport rep = verify(gate, o.n_trunc);
    const bool jc = gate.backend == Backend::jc;
    const double lim_inf = o.max_infidelity.value_or(jc ? 1e-5 : 1e-6);
    const double lim_leak = o.max_leakage.value_or(jc ? 1e-5 : 1e-6);
    const double lim_node = o.max_node_error.value_or(jc ? 1e-5 : 1e-8);
    std::vector<std::pair<std::string, bool>> checks = {
        {"infidelity", rep.infidelity <= lim_inf},
        {"leakage", rep.leakage <= lim_leak},
        {"node_errors", rep.max_node_error() <= lim_node},
        {"normalization_defect", rep.normalization_defect <= o.max_defect},
    };
    Json j = to_json(rep);
    std::string failed;
    for (const auto &[name, ok] : checks) {
        if (!ok && failed.empty()) {
            failed = name;
        }
    }
    j["passed"] = failed.empty();
    if (!failed.empty()) {
        j["failed_metric"] = failed;
    }
    write_text(o.out_path, dump(j));
    if (!failed.empty()) {
        std::cerr << "verification failed: " << failed << "\n";
        return kVerifyFailed;
    }
    return kOk;
}

struct SweepOptions {
    std::string backend = "dispersive";
    int n_max = 4;
    int samples = 50;
    std::uint64_t seed = kDefaultSeed;
    int points = 4;
    double t_max = 0;
    std::string out_path;
};

int run_sweep(const SweepOptions &o) {
    const Backend backend = backend_from_string(o.backend);
    if (o.n_max < 0 || o.samples < 1 || o.points < 1) {
        throw InputError("need n_max >= 0, samples >= 1, points >= 1");
    }
    std::mt19937_64 rng(o.seed);
    std::optional<JcContext> ctx;
    double qsp_time = 4 * kPi;
    if (backend == Backend::jc) {
        ctx = make_jc_context(o.n_max);
        qsp_time = 5.0 * ctx->kernels.degree() * jc_round_phase(o.n_max);
    }
    const double t_max = o.t_max > 0 ? o.t_max : (backend == Backend::jc ? 2 * qsp_time : 8 * kPi);
    SimConfig cfg;
    cfg.n_trunc = o.n_max + 2;

    using Row = std::tuple<int, double, std::string, double, double>;
    std::vector<Row> rows;
    for (int id = 0; id < o.samples; id++) {
        const std::vector<double> th = random_phases(rng, o.n_max + 1);
        const CompiledGate gate = backend == Backend::jc ? jc_snap_compile(th, *ctx) : snap_compile(th);
        const VerifyReport rep = verify(gate, cfg.n_trunc);
        rows.emplace_back(id, gate.total_time, "qsp", rep.infidelity, rep.leakage);
        for (int i = 1; i <= o.points; i++) {
            const double t = t_max * i / o.points;
            const MultiToneResult mt = backend == Backend::jc ? jc_multitone_snap(th, 2 * kPi / t, cfg)
                                                              : dispersive_multitone_snap(th, 2 * kPi / t, cfg);
            const SnapScore sc = score_snap(mt.op, th, backend);
            rows.emplace_back(id, mt.gate_time, "multitone", sc.infidelity, sc.leakage);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
        return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
               std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
    });
    std::ostringstream os;
    os << std::setprecision(17);
    os << "#units=" << time_units(backend) << " seed=" << o.seed << "\n";
    os << "sample_id,method,gate_time,infidelity,leakage\n";
    for (const auto &[id, t, method, inf, leak] : rows) {
        os << id << "," << method << "," << t << "," << inf << "," << leak << "\n";
    }
    write_text(o.out_path, os.str());
    return kOk;
}

struct CatOptions {
    int k = 5;
    double alpha = 4;
    int n_trunc = 64;
    int points = 101;
    double extent = 6;
    std::string wigner_prefix = "wigner";
    std::string out_path;
};

int run_cat(const CatOptions &o) {
    const CompiledGate gate = cat_compile(o.k);
    const CoherentState in = coherent_state(o.alpha, o.n_trunc);
    const SequenceResult run = simulate(gate, o.n_trunc);
    const HybridState out = apply(run.op, attach_qubit(in.amplitudes, kG));
    const Qumode result = qubit_branch(out, kG);
    Qumode target = Qumode::Zero(o.n_trunc);
    for (int l = 0; l < o.k; l++) {
        target += expi(kPi * l * (l - o.k) / o.k) *
                  coherent_state(o.alpha * expi(2 * kPi * l / o.k), o.n_trunc).amplitudes;
    }
    target /= target.norm();
    const auto xi = rotation_decomposition(gate.polynomials.at(0).p, o.k);
    const WignerGrid grid = make_grid(o.points, o.extent);
    write_wigner(o.wigner_prefix + "_input.csv", in.amplitudes, grid);
    write_wigner(o.wigner_prefix + "_output.csv", result, grid);
    Json j = {{"k", o.k},
              {"alpha", o.alpha},
              {"n_trunc", o.n_trunc},
              {"fidelity", state_fidelity(result, target)},
              {"qubit_leakage", 1 - result.squaredNorm()},
              {"xi", to_json(xi)},
              {"total_time", gate.total_time},
              {"wigner_files", {o.wigner_prefix + "_input.csv", o.wigner_prefix + "_output.csv"}}};
    write_text(o.out_path, dump(j));
    return kOk;
}

struct NlaOptions {
    double gain = 2;
    int n_max = 7;
    double alpha = 0.5;
    std::string state = "coherent";
    std::uint64_t seed = kDefaultSeed;
    int points = 101;
    double extent = 3;
    std::string wigner_prefix = "nla_wigner";
    std::string out_path;
};

int run_nla(const NlaOptions &o) {
    const int levels = o.n_max + 1;
    Qumode in;
    if (o.state == "coherent") {
        in = truncated_coherent(o.alpha, levels);
    } else if (o.state == "cat") {
        in = truncated_coherent(o.alpha, levels) + truncated_coherent(-o.alpha, levels);
        if (in.norm() < 1e-12) {
            throw InputError("cat state vanishes for this alpha");
        }
        in /= in.norm();
    } else {
        throw InputError("state must be 'coherent' or 'cat'");
    }
    const KrausGate gate = kraus_compile(nla_amplitudes(o.gain, o.n_max));
    const MeasurementOutcome res = apply_and_measure(in, gate, BranchRequest::g, o.seed);
    Qumode ideal(levels);
    double p_analytic = 0;
    for (int n = 0; n < levels; n++) {
        ideal(n) = std::pow(o.gain, n) * in(n);
        p_analytic += std::pow(o.gain, 2.0 * (n - o.n_max)) * std::norm(in(n));
    }
    ideal /= ideal.norm();
    const WignerGrid grid = make_grid(o.points, o.extent);
    const Eigen::MatrixXd w_in = wigner(in, grid);
    const Eigen::MatrixXd w_out = wigner(res.post_state, grid);
    {
        std::ofstream f(o.wigner_prefix + "_input.csv");
        write_wigner_csv(f, w_in, grid);
        std::ofstream g(o.wigner_prefix + "_output.csv");
        write_wigner_csv(g, w_out, grid);
    }
    Json j = {{"gain", o.gain},
              {"n_max", o.n_max},
              {"alpha", o.alpha},
              {"state", o.state},
              {"measurement", to_json(res)},
              {"p_g", res.probability},
              {"p_g_analytic", p_analytic},
              {"fidelity", state_fidelity(res.post_state, ideal)},
              {"min_wigner_before", w_in.minCoeff()},
              {"min_wigner_after", w_out.minCoeff()}};
    int code = kOk;
    if (o.state == "cat") {
        const bool deeper = w_out.minCoeff() < w_in.minCoeff();
        j["negativity_increased"] = deeper;
        if (!deeper) {
            std::cerr << "verification failed: min_wigner_after\n";
            code = kVerifyFailed;
        }
    }
    write_text(o.out_path, dump(j));
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Compile bosonic gates into QSP schedules and verify them in a truncated Fock x qubit simulator."};
    app.require_subcommand(1);

    SynthOptions synth;
    auto *c_synth = app.add_subcommand("synth", "Compile a GateSpec JSON into a CompiledGate JSON");
    c_synth->add_option("spec", synth.spec_path, "GateSpec JSON file")->required();
    c_synth->add_option("-o,--output", synth.out_path, "Output file (default stdout)");

    VerifyOptions ver;
    auto *c_verify = app.add_subcommand("verify", "Simulate a CompiledGate JSON and check its metrics");
    c_verify->add_option("gate", ver.gate_path, "CompiledGate JSON file")->required();
    c_verify->add_option("-o,--output", ver.out_path, "Report file (default stdout)");
    c_verify->add_option("--n_trunc", ver.n_trunc, "Fock truncation (default depends on the gate)");
    c_verify->add_option("--max-infidelity", ver.max_infidelity, "Threshold (default 1e-6, JC 1e-5)");
    c_verify->add_option("--max-leakage", ver.max_leakage, "Threshold (default 1e-6, JC 1e-5)");
    c_verify->add_option("--max-node-error", ver.max_node_error, "Threshold (default 1e-8, JC 1e-5)");
    c_verify->add_option("--max-defect", ver.max_defect, "Normalization defect threshold")->capture_default_str();

    SweepOptions sw;
    auto *c_sweep = app.add_subcommand("sweep", "QSP vs multi-tone SNAP infidelity over random phase sets");
    c_sweep->add_option("--backend", sw.backend, "dispersive or jc")->capture_default_str();
    c_sweep->add_option("--n_max", sw.n_max, "Maximum boson number")->capture_default_str();
    c_sweep->add_option("--samples", sw.samples, "Number of random phase sets")->capture_default_str();
    c_sweep->add_option("--seed", sw.seed, "RNG seed")->capture_default_str();
    c_sweep->add_option("--points", sw.points, "Multi-tone gate times t_max*i/points")->capture_default_str();
    c_sweep->add_option("--t_max", sw.t_max, "Longest multi-tone gate time (default 8pi, JC twice the QSP time)");
    c_sweep->add_option("-o,--output", sw.out_path, "CSV file (default stdout)");

    CatOptions cat;
    auto *c_cat = app.add_subcommand("cat", "Prepare a k-component cat from a coherent state");
    c_cat->add_option("--k", cat.k, "Number of components")->capture_default_str();
    c_cat->add_option("--alpha", cat.alpha, "Coherent amplitude")->capture_default_str();
    c_cat->add_option("--n_trunc", cat.n_trunc, "Fock truncation")->capture_default_str();
    c_cat->add_option("--grid", cat.points, "Wigner grid points per axis")->capture_default_str();
    c_cat->add_option("--extent", cat.extent, "Wigner grid half-width")->capture_default_str();
    c_cat->add_option("--wigner-prefix", cat.wigner_prefix, "Prefix for <prefix>_input.csv, <prefix>_output.csv")
        ->capture_default_str();
    c_cat->add_option("-o,--output", cat.out_path, "Report file (default stdout)");

    NlaOptions nla;
    auto *c_nla = app.add_subcommand("nla", "Noiseless linear amplification with heralding on g");
    c_nla->add_option("--gain", nla.gain, "Gain G > 1")->capture_default_str();
    c_nla->add_option("--n_max", nla.n_max, "Maximum boson number")->capture_default_str();
    c_nla->add_option("--alpha", nla.alpha, "Input amplitude")->capture_default_str();
    c_nla->add_option("--state", nla.state, "coherent or cat")->capture_default_str();
    c_nla->add_option("--seed", nla.seed, "RNG seed (echoed in the report)")->capture_default_str();
    c_nla->add_option("--grid", nla.points, "Wigner grid points per axis")->capture_default_str();
    c_nla->add_option("--extent", nla.extent, "Wigner grid half-width")->capture_default_str();
    c_nla->add_option("--wigner-prefix", nla.wigner_prefix, "Prefix for <prefix>_input.csv, <prefix>_output.csv")
        ->capture_default_str();
    c_nla->add_option("-o,--output", nla.out_path, "Report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInputFailure;
    }

    std::cout << std::setprecision(17);
    try {
        if (*c_synth) {
            return run_synth(synth);
        }
        if (*c_verify) {
            return run_verify(ver);
        }
        if (*c_sweep) {
            return run_sweep(sw);
        }
        if (*c_cat) {
            return run_cat(cat);
        }
        if (*c_nla) {
            return run_nla(nla);
        }
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputFailure;
    } catch (const NumericError &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumericFailure;
    } catch (const Json::exception &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputFailure;
    }
    return kOk;
}
