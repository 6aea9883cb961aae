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

#ifndef BQSP_JSON_IO_HPP
#define BQSP_JSON_IO_HPP

#include <string>
#include <vector>

#include "bqsp/gates.hpp"
#include "bqsp/nonunitary.hpp"
#include "json.hpp"

namespace bqsp {

using Json = nlohmann::json;

namespace detail {

template <typename T>
T field(const Json &j, const char *key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception &) {
        throw InputError(std::string("field '") + key + "' has the wrong type");
    }
}

template <typename T>
T required(const Json &j, const char *key) {
    if (!j.contains(key)) {
        throw InputError(std::string("missing field '") + key + "'");
    }
    return field<T>(j, key, T{});
}

inline const Json &required_array(const Json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw InputError(std::string("field '") + key + "' must be an array");
    }
    return j.at(key);
}

}  // namespace detail

inline Json complex_to_json(cplx v) { return Json::array({v.real(), v.imag()}); }

inline cplx complex_from_json(const Json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError("complex values are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json to_json(const std::vector<cplx> &v) {
    Json out = Json::array();
    for (const auto &c : v) {
        out.push_back(complex_to_json(c));
    }
    return out;
}

inline std::vector<cplx> complex_list_from_json(const Json &j) {
    if (!j.is_array()) {
        throw InputError("expected an array of complex values");
    }
    std::vector<cplx> out;
    for (const auto &e : j) {
        out.push_back(complex_from_json(e));
    }
    return out;
}

inline Json to_json(const Polynomial &p) { return to_json(p.coeffs()); }

inline Json to_json(const Qumode &v) {
    Json out = Json::array();
    for (Eigen::Index n = 0; n < v.size(); n++) {
        out.push_back(complex_to_json(v(n)));
    }
    return out;
}

inline Json to_json(const AngleSet &a) {
    Json angles = Json::array();
    for (size_t m = 0; m < a.thetas.size(); m++) {
        angles.push_back({{"theta", a.thetas[m]}, {"phi", a.phis[m]}, {"lambda", a.lambdas[m]}});
    }
    return {{"convention", to_string(a.convention)},
            {"phase_step_rad", a.phase_step},
            {"rounds", a.rounds()},
            {"angles", angles}};
}

inline AngleSet angle_set_from_json(const Json &j) {
    AngleSet a;
    a.convention = convention_from_string(detail::required<std::string>(j, "convention"));
    a.phase_step = detail::required<double>(j, "phase_step_rad");
    for (const auto &e : detail::required_array(j, "angles")) {
        a.thetas.push_back(detail::required<double>(e, "theta"));
        a.phis.push_back(detail::field<double>(e, "phi", 0.0));
        a.lambdas.push_back(detail::field<double>(e, "lambda", 0.0));
    }
    if (a.thetas.empty()) {
        throw InputError("angle set has no rotations");
    }
    if (j.contains("rounds") && detail::field<size_t>(j, "rounds", 0) != a.rounds()) {
        throw InputError("'rounds' does not match the number of angles");
    }
    return a;
}

inline Json to_json(const GateSpec &s) {
    return {{"kind", to_string(s.kind)}, {"k", s.k},        {"phases_rad", s.phases},
            {"n_max", s.n_max},          {"d", s.d},        {"L", s.L},
            {"theta_rad", s.theta},      {"check_window", s.check_window}};
}

inline GateSpec gate_spec_from_json(const Json &j) {
    if (!j.is_object()) {
        throw InputError("gate spec must be a JSON object");
    }
    GateSpec s;
    s.kind = gate_kind_from_string(detail::required<std::string>(j, "kind"));
    s.k = detail::field<int>(j, "k", 0);
    s.phases = detail::field<std::vector<double>>(j, "phases_rad", {});
    s.n_max = detail::field<int>(j, "n_max", -1);
    s.d = detail::field<int>(j, "d", 0);
    s.L = detail::field<int>(j, "L", 0);
    s.theta = detail::field<double>(j, "theta_rad", 0.0);
    s.check_window = detail::field<bool>(j, "check_window", true);
    return s;
}

inline std::string time_units(Backend b) { return b == Backend::jc ? "1/lambda" : "1/chi"; }

inline Json to_json(const CompiledGate &g) {
    Json sets = Json::array();
    for (const auto &a : g.angle_sets) {
        sets.push_back(to_json(a));
    }
    Json polys = Json::array();
    for (const auto &pr : g.polynomials) {
        polys.push_back({{"p", to_json(pr.p)}, {"q", to_json(pr.q)}});
    }
    return {{"backend", to_string(g.backend)},
            {"spec", to_json(g.spec)},
            {"total_time_units", time_units(g.backend)},
            {"total_time", g.total_time},
            {"round_duration", g.round_duration},
            {"h", g.h},
            {"s", g.s},
            {"angle_sets", sets},
            {"polynomials", polys}};
}

inline CompiledGate compiled_gate_from_json(const Json &j) {
    if (!j.is_object()) {
        throw InputError("compiled gate must be a JSON object");
    }
    CompiledGate g;
    g.backend = backend_from_string(detail::required<std::string>(j, "backend"));
    if (!j.contains("spec")) {
        throw InputError("missing field 'spec'");
    }
    g.spec = gate_spec_from_json(j.at("spec"));
    g.total_time = detail::required<double>(j, "total_time");
    g.round_duration = detail::required<double>(j, "round_duration");
    g.h = detail::field<int>(j, "h", 0);
    g.s = detail::field<int>(j, "s", 0);
    for (const auto &a : detail::required_array(j, "angle_sets")) {
        g.angle_sets.push_back(angle_set_from_json(a));
    }
    if (j.contains("polynomials")) {
        for (const auto &pr : detail::required_array(j, "polynomials")) {
            if (!pr.contains("p") || !pr.contains("q")) {
                throw InputError("polynomial entries need 'p' and 'q'");
            }
            g.polynomials.push_back({Polynomial(complex_list_from_json(pr.at("p"))),
                                     Polynomial(complex_list_from_json(pr.at("q"))), 0.0});
        }
    }
    const size_t expected = g.backend == Backend::jc ? 5 : 1;
    if (g.angle_sets.size() != expected) {
        throw InputError("expected " + std::to_string(expected) + " angle sets for backend " + to_string(g.backend));
    }
    if (g.backend == Backend::jc && static_cast<int>(g.spec.phases.size()) != g.spec.n_max + 1) {
        throw InputError("jc gate spec needs n_max+1 phases");
    }
    if (g.backend == Backend::dispersive && (g.spec.k < 1 || static_cast<int>(g.spec.phases.size()) != g.spec.k)) {
        throw InputError("dispersive gate spec needs k phases");
    }
    return g;
}

inline Json to_json(const VerifyReport &r) {
    return {{"infidelity", r.infidelity},
            {"leakage", r.leakage},
            {"node_errors", r.node_errors},
            {"normalization_defect", r.normalization_defect},
            {"total_time", r.total_time}};
}

inline Json to_json(const MeasurementOutcome &o) {
    return {{"branch", o.branch == kG ? "g" : "e"},
            {"probability", o.probability},
            {"post_state", to_json(o.post_state)},
            {"seed", o.seed}};
}

inline Json to_json(const KrausSpec &s) {
    return {{"a_amps", to_json(s.a_amps)}, {"b_amps", to_json(s.b_amps)}, {"backend", to_string(s.backend)}};
}

inline KrausSpec kraus_spec_from_json(const Json &j) {
    KrausSpec s;
    s.a_amps = complex_list_from_json(detail::required_array(j, "a_amps"));
    s.b_amps = complex_list_from_json(detail::required_array(j, "b_amps"));
    s.backend = backend_from_string(detail::field<std::string>(j, "backend", "dispersive"));
    return s;
}

inline Json to_json(const JcKernelSet &k) {
    Json re = Json::array(), im = Json::array();
    for (int n = 0; n <= k.n_max; n++) {
        re.push_back(to_json(k.real_kernels[n]));
        im.push_back(to_json(k.imag_kernels[n]));
    }
    return {{"n_max", k.n_max},       {"h", k.h},
            {"s", k.s},               {"phase_nodes", k.phase_nodes},
            {"real_kernels", re},     {"imag_kernels", im},
            {"deltas_r", k.deltas_r}, {"deltas_i", k.deltas_i},
            {"upsilon", k.upsilon}};
}

}  // namespace bqsp

#endif
