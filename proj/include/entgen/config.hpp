// config.hpp — JSON model configurations (schema v1) and report serialization

#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"

#include "entgen/baths.hpp"
#include "entgen/coeffs.hpp"
#include "entgen/criterion.hpp"
#include "entgen/oracle.hpp"

namespace entgen {

// Malformed or unreadable configuration. what() carries a location: line, field path, or both.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace entgen

namespace entgen::config {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using qlin::CMat;

inline constexpr int kSchemaVersion = 1;

/// A Markovian generator given directly by its coefficient blocks.
struct MarkovianModel {
    coeffs::BlockCoeffMatrix k;
    friend bool operator==(const MarkovianModel&, const MarkovianModel&) = default;
};

using ModelSpec = std::variant<MarkovianModel, baths::ThermalBath, baths::OUNoise, baths::WienerFieldModel,
                               baths::DeltaFamily, baths::CustomEqualTime>;

struct ModelConfig {
    int schema_version = kSchemaVersion;
    ModelSpec model;
    std::optional<double> t0;  // default initial time for correlation models
    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

inline const char* variant_key(const ModelSpec& m) {
    static constexpr std::array<const char*, 6> keys{"markovian", "thermal", "ou_dephasing", "wiener", "delta_family",
                                                     "custom_equal_time"};
    return keys.at(m.index());
}

inline bool is_correlation_model(const ModelSpec& m) { return !std::holds_alternative<MarkovianModel>(m); }

inline baths::CorrelationModel to_correlation_model(const ModelSpec& m) {
    return std::visit(
        [](const auto& v) -> baths::CorrelationModel {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MarkovianModel>)
                throw ConfigError("markovian configs carry no correlation model");
            else
                return v;
        },
        m);
}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("field " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

inline const json& member(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required key \"") + key + "\"");
    return *it;
}

inline double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number, got " + std::string(j.type_name()));
    return j.get<double>();
}

inline cplx complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected a complex number as [re, im]");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

inline CMat matrix(const json& j, const std::string& path, std::size_t n) {
    if (!j.is_array() || j.size() != n)
        fail(path, "expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix of [re, im] pairs");
    CMat m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::string rp = path + "/" + std::to_string(r);
        if (!j[r].is_array() || j[r].size() != n) fail(rp, "expected a row of " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = complex(j[r][c], rp + "/" + std::to_string(c));
    }
    return m;
}

inline CMat optional_matrix(const json& obj, const std::string& path, const char* key, std::size_t n) {
    const auto it = obj.find(key);
    return it == obj.end() ? CMat::zeros(n, n) : matrix(*it, path + "/" + key, n);
}

inline baths::Vec3c vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) fail(path, "expected a 3-vector of [re, im] pairs");
    return {complex(j[0], path + "/0"), complex(j[1], path + "/1"), complex(j[2], path + "/2")};
}

inline void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) fail(path + "/" + key, "unknown key");
    }
}

inline void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object, got " + std::string(j.type_name()));
}

// Wraps library validation failures with the field path of the offending model.
template <class F>
void validated(const std::string& path, F&& check) {
    try {
        check();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

inline MarkovianModel read_markovian(const json& j, const std::string& p) {
    require_object(j, p);
    reject_unknown(j, p, {"k11", "k22", "k12", "h11", "h22", "h12"});
    MarkovianModel m;
    m.k.k11 = optional_matrix(j, p, "k11", 3);
    m.k.k22 = optional_matrix(j, p, "k22", 3);
    m.k.k12 = optional_matrix(j, p, "k12", 3);
    m.k.h11 = optional_matrix(j, p, "h11", 3);
    m.k.h22 = optional_matrix(j, p, "h22", 3);
    m.k.h12 = optional_matrix(j, p, "h12", 3);
    validated(p, [&] { coeffs::validate(m.k); });
    return m;
}

inline baths::ThermalBath read_thermal(const json& j, const std::string& p) {
    require_object(j, p);
    reject_unknown(j, p, {"beta", "modes"});
    baths::ThermalBath b;
    b.beta = number(member(j, p, "beta"), p + "/beta");
    const json& modes = member(j, p, "modes");
    if (!modes.is_array()) fail(p + "/modes", "expected an array of modes");
    for (std::size_t l = 0; l < modes.size(); ++l) {
        const std::string mp = p + "/modes/" + std::to_string(l);
        require_object(modes[l], mp);
        reject_unknown(modes[l], mp, {"omega", "c1", "c2"});
        baths::ThermalBath::Mode m;
        m.omega = number(member(modes[l], mp, "omega"), mp + "/omega");
        m.c1 = vec3(member(modes[l], mp, "c1"), mp + "/c1");
        m.c2 = vec3(member(modes[l], mp, "c2"), mp + "/c2");
        b.modes.push_back(m);
    }
    validated(p, [&] { baths::validate(b); });
    return b;
}

inline baths::OUNoise read_ou(const json& j, const std::string& p) {
    require_object(j, p);
    reject_unknown(j, p, {"epsilon", "omega_z"});
    baths::OUNoise o;
    o.epsilon = number(member(j, p, "epsilon"), p + "/epsilon");
    if (j.contains("omega_z")) o.omega_z = number(j["omega_z"], p + "/omega_z");
    if (!(o.epsilon > 0.0)) fail(p + "/epsilon", "must be > 0");
    return o;
}

inline baths::WienerFieldModel read_wiener(const json& j, const std::string& p) {
    require_object(j, p);
    reject_unknown(j, p, {"mu", "c"});
    baths::WienerFieldModel w;
    w.mu = matrix(member(j, p, "mu"), p + "/mu", 3);
    w.c = vec3(member(j, p, "c"), p + "/c");
    return w;
}

inline baths::DeltaProfile read_profile(const json& j, const std::string& p) {
    if (!j.is_string()) fail(p, "expected a profile name");
    const auto s = j.get<std::string>();
    for (auto prof : {baths::DeltaProfile::Exponential, baths::DeltaProfile::Gaussian, baths::DeltaProfile::Triangular})
        if (s == baths::to_string(prof)) return prof;
    fail(p, "unknown profile \"" + s + "\" (expected exponential, gaussian or triangular)");
}

inline baths::DeltaFamily read_delta(const json& j, const std::string& p) {
    require_object(j, p);
    reject_unknown(j, p, {"profile", "epsilon", "a_scale", "b_scale", "a_weight", "b_weight", "c_weight"});
    baths::DeltaFamily f;
    f.profile = read_profile(member(j, p, "profile"), p + "/profile");
    f.epsilon = number(member(j, p, "epsilon"), p + "/epsilon");
    if (!(f.epsilon > 0.0)) fail(p + "/epsilon", "must be > 0");
    if (j.contains("a_scale")) f.a_scale = number(j["a_scale"], p + "/a_scale");
    if (j.contains("b_scale")) f.b_scale = number(j["b_scale"], p + "/b_scale");
    f.a_weight = optional_matrix(j, p, "a_weight", 6);
    f.b_weight = optional_matrix(j, p, "b_weight", 6);
    f.c_weight = optional_matrix(j, p, "c_weight", 6);
    for (const char* key : {"a_weight", "b_weight", "c_weight"}) {
        const CMat& w = key[0] == 'a' ? f.a_weight : key[0] == 'b' ? f.b_weight : f.c_weight;
        validated(p + "/" + key, [&] { qlin::require_hermitian(w, key); });
    }
    return f;
}

inline baths::CustomEqualTime read_custom(const json& j, const std::string& p) {
    require_object(j, p);
    reject_unknown(j, p, {"table", "d"});
    baths::CustomEqualTime c;
    if (j.contains("d") == j.contains("table")) fail(p, "give exactly one of \"d\" or \"table\"");
    if (j.contains("d")) {
        c.table.emplace_back(0.0, matrix(j["d"], p + "/d", 6));
    } else {
        const json& t = j["table"];
        if (!t.is_array() || t.empty()) fail(p + "/table", "expected a nonempty array of {t0, d} entries");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string ep = p + "/table/" + std::to_string(i);
            require_object(t[i], ep);
            reject_unknown(t[i], ep, {"t0", "d"});
            const double t0 = number(member(t[i], ep, "t0"), ep + "/t0");
            if (!c.table.empty() && !(t0 > c.table.back().first)) fail(ep + "/t0", "entries must have increasing t0");
            c.table.emplace_back(t0, matrix(member(t[i], ep, "d"), ep + "/d", 6));
        }
    }
    for (std::size_t i = 0; i < c.table.size(); ++i)
        validated(p, [&] { qlin::require_hermitian(c.table[i].second, "custom_equal_time matrix"); });
    return c;
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

} // namespace detail

inline ModelConfig from_json(const json& root) {
    using namespace detail;
    require_object(root, "");
    reject_unknown(root, "", {"schema_version", "model", "t0"});
    const json& ver = member(root, "", "schema_version");
    if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion)
        fail("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
    ModelConfig cfg;
    if (root.contains("t0")) {
        cfg.t0 = number(root["t0"], "/t0");
        if (!(*cfg.t0 >= 0.0)) fail("/t0", "must be >= 0");
    }
    const json& model = member(root, "", "model");
    require_object(model, "/model");
    if (model.size() != 1)
        fail("/model", "expected exactly one of markovian, thermal, ou_dephasing, wiener, delta_family, custom_equal_time");
    const auto& [key, body] = *model.items().begin();
    const std::string p = "/model/" + key;
    if (key == "markovian") cfg.model = read_markovian(body, p);
    else if (key == "thermal") cfg.model = read_thermal(body, p);
    else if (key == "ou_dephasing") cfg.model = read_ou(body, p);
    else if (key == "wiener") cfg.model = read_wiener(body, p);
    else if (key == "delta_family") cfg.model = read_delta(body, p);
    else if (key == "custom_equal_time") cfg.model = read_custom(body, p);
    else fail(p, "unknown model variant");
    return cfg;
}

/// Parses a config document. Syntax errors report the line; schema errors the field path.
inline ModelConfig parse(const std::string& text, const std::string& source = "<config>") {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << source << ":" << detail::line_of(text, e.byte > 0 ? e.byte - 1 : 0) << ": syntax error: " << e.what();
        throw ConfigError(os.str());
    }
    try {
        return from_json(root);
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
}

inline ModelConfig load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

inline ojson to_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

inline ojson to_json(const CMat& m) {
    ojson rows = ojson::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline ojson to_json(const baths::Vec3c& v) { return ojson::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

inline ojson to_json(const ModelSpec& spec) {
    return std::visit(
        [](const auto& m) -> ojson {
            using T = std::decay_t<decltype(m)>;
            ojson o;
            if constexpr (std::is_same_v<T, MarkovianModel>) {
                o["k11"] = to_json(m.k.k11);
                o["k22"] = to_json(m.k.k22);
                o["k12"] = to_json(m.k.k12);
                o["h11"] = to_json(m.k.h11);
                o["h22"] = to_json(m.k.h22);
                o["h12"] = to_json(m.k.h12);
            } else if constexpr (std::is_same_v<T, baths::ThermalBath>) {
                o["beta"] = m.beta;
                o["modes"] = ojson::array();
                for (const auto& mode : m.modes)
                    o["modes"].push_back({{"omega", mode.omega}, {"c1", to_json(mode.c1)}, {"c2", to_json(mode.c2)}});
            } else if constexpr (std::is_same_v<T, baths::OUNoise>) {
                o["epsilon"] = m.epsilon;
                o["omega_z"] = m.omega_z;
            } else if constexpr (std::is_same_v<T, baths::WienerFieldModel>) {
                o["mu"] = to_json(m.mu);
                o["c"] = to_json(m.c);
            } else if constexpr (std::is_same_v<T, baths::DeltaFamily>) {
                o["profile"] = baths::to_string(m.profile);
                o["epsilon"] = m.epsilon;
                o["a_scale"] = m.a_scale;
                o["b_scale"] = m.b_scale;
                o["a_weight"] = to_json(m.a_weight);
                o["b_weight"] = to_json(m.b_weight);
                o["c_weight"] = to_json(m.c_weight);
            } else {
                o["table"] = ojson::array();
                for (const auto& [t0, d] : m.table) o["table"].push_back({{"t0", t0}, {"d", to_json(d)}});
            }
            return o;
        },
        spec);
}

inline ojson to_json(const ModelConfig& cfg) {
    ojson o;
    o["schema_version"] = cfg.schema_version;
    if (cfg.t0) o["t0"] = *cfg.t0;
    o["model"][variant_key(cfg.model)] = to_json(cfg.model);
    return o;
}

inline std::string serialize(const ModelConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

// Interleaved [re0, im0, re1, im1, ...].
template <std::size_t N>
ojson interleaved(const std::array<cplx, N>& v) {
    ojson a = ojson::array();
    for (const auto& z : v) {
        a.push_back(z.real());
        a.push_back(z.imag());
    }
    return a;
}

inline ojson to_json(const criterion::CriterionReport& r) {
    return {{"value", r.value},
            {"verdict", criterion::to_string(r.verdict)},
            {"regime", criterion::to_string(r.regime)},
            {"decision_tol", r.decision_tol},
            {"u_min", interleaved(r.u_min.u)},
            {"v_min", interleaved(r.v_min.u)},
            {"psi", interleaved(r.psi)},
            {"phi", interleaved(r.phi)},
            {"starts_used", r.starts_used},
            {"grid_points", r.grid_points},
            {"converged", r.converged}};
}

inline ojson to_json(const oracle::OracleReport& r) {
    return {{"min_pt_eig", r.min_pt_eig},
            {"verdict", criterion::to_string(r.verdict)},
            {"regime", criterion::to_string(r.regime)},
            {"threshold", r.threshold},
            {"dt_used", r.dt_used},
            {"n_samples", r.n_samples},
            {"grid_refined", r.grid_refined},
            {"psi", interleaved(r.psi)},
            {"phi", interleaved(r.phi)}};
}

} // namespace entgen::config
