// Copyright 2026 The mpconc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpconc/app/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mpconc/states.hpp"

namespace mpconc::app {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json &obj, const std::set<std::string> &allowed,
                         const std::string &where) {
    for (const auto &[key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

const json &require(const json &obj, const std::string &key,
                    const std::string &where) {
    if (!obj.contains(key)) {
        throw ConfigError("missing key '" + key + "' in " + where);
    }
    return obj.at(key);
}

std::uint64_t as_unsigned(const json &v, const std::string &what) {
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ConfigError(what + " must be a non-negative integer");
}

double as_real(const json &v, const std::string &what) {
    if (!v.is_number()) {
        throw ConfigError(what + " must be a number");
    }
    return v.get<double>();
}

std::vector<std::size_t> as_index_list(const json &v, const std::string &what) {
    if (!v.is_array()) {
        throw ConfigError(what + " must be an array of integers");
    }
    std::vector<std::size_t> out;
    for (const auto &e : v) {
        out.push_back(static_cast<std::size_t>(as_unsigned(e, what)));
    }
    return out;
}

cplx as_amplitude(const json &v) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError("amplitudes must be numbers or [re, im] pairs");
}

Vector as_amplitudes(const json &v, const std::string &what) {
    if (!v.is_array() || v.empty()) {
        throw ConfigError(what + " must be a nonempty array of amplitudes");
    }
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = as_amplitude(v[i]);
    }
    return out;
}

StateSpec parse_state(const json &s) {
    if (!s.is_object()) {
        throw ConfigError("'state' must be an object");
    }
    const std::string type = require(s, "type", "state").get<std::string>();
    if (type == "ghz") {
        reject_unknown_keys(s, {"type", "N", "d"}, "ghz state");
        GhzSpec g;
        g.n = as_unsigned(require(s, "N", "ghz state"), "ghz N");
        if (s.contains("d")) {
            g.d = as_unsigned(s.at("d"), "ghz d");
        }
        return g;
    }
    if (type == "w") {
        reject_unknown_keys(s, {"type", "N"}, "w state");
        return WSpec{as_unsigned(require(s, "N", "w state"), "w N")};
    }
    if (type == "product") {
        reject_unknown_keys(s, {"type", "locals"}, "product state");
        const json &locals = require(s, "locals", "product state");
        if (!locals.is_array() || locals.empty()) {
            throw ConfigError("product 'locals' must be a nonempty array");
        }
        ProductSpec p;
        for (const auto &l : locals) {
            p.locals.push_back(as_amplitudes(l, "product local"));
        }
        return p;
    }
    if (type == "random") {
        reject_unknown_keys(s, {"type", "dims", "seed"}, "random state");
        RandomSpec r;
        r.dims = as_index_list(require(s, "dims", "random state"), "random dims");
        r.seed = as_unsigned(require(s, "seed", "random state"), "random seed");
        return r;
    }
    if (type == "explicit") {
        reject_unknown_keys(s, {"type", "dims", "amplitudes"}, "explicit state");
        ExplicitSpec e;
        e.dims = as_index_list(require(s, "dims", "explicit state"), "explicit dims");
        e.amplitudes =
            as_amplitudes(require(s, "amplitudes", "explicit state"), "explicit amplitudes");
        return e;
    }
    throw ConfigError("unknown state type '" + type + "'");
}

MeasuredSpec parse_measured(const json &m) {
    if (m.is_string()) {
        const auto text = m.get<std::string>();
        if (text == "all") {
            return {MeasuredSpec::Kind::all, {}};
        }
        if (text == "drop_last") {
            return {MeasuredSpec::Kind::drop_last, {}};
        }
        throw ConfigError("'measured' must be \"all\", \"drop_last\" or a list");
    }
    return {MeasuredSpec::Kind::list, as_index_list(m, "measured")};
}

} // namespace

OutputFormat parse_output_format(const std::string &text) {
    if (text == "json") {
        return OutputFormat::json;
    }
    if (text == "csv") {
        return OutputFormat::csv;
    }
    throw ConfigError("output format must be 'csv' or 'json', got '" + text + "'");
}

ExperimentConfig parse_config(const json &doc) {
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown_keys(doc,
                        {"state", "visibility", "measured", "shots", "seed",
                         "output_format"},
                        "config");
    ExperimentConfig cfg;
    try {
        cfg.state = parse_state(require(doc, "state", "config"));
        if (doc.contains("visibility")) {
            const double v = as_real(doc.at("visibility"), "visibility");
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ConfigError("visibility must lie in [0, 1]");
            }
            cfg.visibility = v;
        }
        if (doc.contains("measured")) {
            cfg.measured = parse_measured(doc.at("measured"));
        }
        if (doc.contains("shots")) {
            const auto shots = as_unsigned(doc.at("shots"), "shots");
            if (shots < 1) {
                throw ConfigError("shots must be a positive integer");
            }
            cfg.shots = shots;
        }
        if (doc.contains("seed")) {
            cfg.seed = as_unsigned(doc.at("seed"), "seed");
        }
        if (doc.contains("output_format")) {
            cfg.output_format =
                parse_output_format(doc.at("output_format").get<std::string>());
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("config '" + path.string() + "' is not valid JSON: " +
                          e.what());
    }
    return parse_config(doc);
}

PureState build_state(const StateSpec &spec, std::size_t two_copy_cap) {
    return std::visit(
        [&](const auto &s) -> PureState {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GhzSpec>) {
                return ghz(s.n, s.d, two_copy_cap);
            } else if constexpr (std::is_same_v<T, WSpec>) {
                return w_state(s.n, two_copy_cap);
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                return product_state(s.locals, two_copy_cap);
            } else if constexpr (std::is_same_v<T, RandomSpec>) {
                return random_pure(SubsystemDims(s.dims, two_copy_cap), s.seed);
            } else {
                return PureState(SubsystemDims(s.dims, two_copy_cap), s.amplitudes);
            }
        },
        spec);
}

SubsystemSet resolve_measured(const MeasuredSpec &spec, std::size_t n) {
    switch (spec.kind) {
    case MeasuredSpec::Kind::all:
        return SubsystemSet::all(n);
    case MeasuredSpec::Kind::drop_last:
        if (n < 2) {
            throw ConfigError("drop_last needs at least two subsystems");
        }
        return SubsystemSet::all_but(n, n - 1);
    case MeasuredSpec::Kind::list:
        return SubsystemSet(spec.indices, n);
    }
    throw ConfigError("invalid measured set");
}

std::string describe(const StateSpec &spec) {
    std::ostringstream os;
    std::visit(
        [&](const auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GhzSpec>) {
                os << "ghz{N=" << s.n << ",d=" << s.d << "}";
            } else if constexpr (std::is_same_v<T, WSpec>) {
                os << "w{N=" << s.n << "}";
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                os << "product{factors=" << s.locals.size() << "}";
            } else if constexpr (std::is_same_v<T, RandomSpec>) {
                os << "random{dims=[";
                for (std::size_t j = 0; j < s.dims.size(); ++j) {
                    os << (j ? "," : "") << s.dims[j];
                }
                os << "],seed=" << s.seed << "}";
            } else {
                os << "explicit{length=" << s.amplitudes.size() << "}";
            }
        },
        spec);
    return os.str();
}

} // namespace mpconc::app
