#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "support.hpp"

using namespace entgen;
using namespace entgen::testing;

namespace {

const std::vector<std::string> kBundled{"common_bath",      "custom_table",     "decoupled",
                                        "delta_exponential", "delta_gaussian",   "delta_triangular",
                                        "ou_dephasing",      "pure_hamiltonian", "real_couplings",
                                        "wiener_flip",       "wiener_real"};

std::string error_of(const std::string& text) {
    try {
        config::parse(text, "doc.json");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Config, BundledConfigsRoundTrip) {
    for (const auto& name : kBundled) {
        const auto cfg = config::load(config_path(name + ".json"));
        const std::string text = config::serialize(cfg);
        const auto again = config::parse(text);
        EXPECT_TRUE(again == cfg) << name;
        EXPECT_EQ(config::serialize(again), text) << name;
    }
}

TEST(Config, BundledVariantsAreAllCovered) {
    std::set<std::string> keys;
    for (const auto& name : kBundled) keys.insert(config::variant_key(config::load(config_path(name + ".json")).model));
    EXPECT_EQ(keys, (std::set<std::string>{"markovian", "thermal", "ou_dephasing", "wiener", "delta_family",
                                           "custom_equal_time"}));
}

TEST(Config, SyntaxErrorReportsLine) {
    const std::string err = error_of("{\n  \"schema_version\": 1,\n  \"model\": {\n");
    EXPECT_NE(err.find("doc.json:4: syntax error"), std::string::npos) << err;
}

TEST(Config, SchemaVersionMustBeOne) {
    const std::string err = error_of(R"({"schema_version": 2, "model": {"ou_dephasing": {"epsilon": 1}}})");
    EXPECT_NE(err.find("/schema_version"), std::string::npos) << err;
    EXPECT_NE(error_of(R"({"model": {"ou_dephasing": {"epsilon": 1}}})").find("schema_version"), std::string::npos);
}

TEST(Config, UnknownKeysRejectedWithPath) {
    const std::string err = error_of(R"({"schema_version": 1, "model": {"ou_dephasing": {"epsilon": 1, "eps": 2}}})");
    EXPECT_NE(err.find("/model/ou_dephasing/eps"), std::string::npos) << err;
    EXPECT_NE(error_of(R"({"schema_version": 1, "extra": 0, "model": {"ou_dephasing": {"epsilon": 1}}})").find("/extra"),
              std::string::npos);
}

TEST(Config, BadEntryReportsFieldPath) {
    const std::string err = error_of(
        R"({"schema_version": 1, "model": {"wiener": {"mu": [[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],"x"]],
            "c": [[0,0],[0,0],[1,0]]}}})");
    EXPECT_NE(err.find("/model/wiener/mu/2/2"), std::string::npos) << err;
}

TEST(Config, ModelMustHaveOneVariant) {
    EXPECT_FALSE(error_of(R"({"schema_version": 1, "model": {}})").empty());
    EXPECT_FALSE(error_of(R"({"schema_version": 1, "model": {"bogus": {}}})").empty());
}

TEST(Config, NegativeT0Rejected) {
    const std::string err = error_of(R"({"schema_version": 1, "t0": -1, "model": {"ou_dephasing": {"epsilon": 1}}})");
    EXPECT_NE(err.find("/t0"), std::string::npos) << err;
}

TEST(Config, NonHermitianMarkovianBlockRejected) {
    const std::string err = error_of(
        R"({"schema_version": 1, "model": {"markovian": {"k11": [[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]}}})");
    EXPECT_NE(err.find("/model/markovian"), std::string::npos) << err;
}

TEST(Config, MissingFileIsConfigError) {
    EXPECT_THROW(config::load(config_path("does_not_exist")), ConfigError);
}

TEST(Config, CriterionReportFieldOrder) {
    const auto cfg = config::load(config_path("decoupled.json"));
    const auto& m = std::get<config::MarkovianModel>(cfg.model);
    const auto rep = criterion::decide(m.k, criterion::Regime::Markovian);
    const auto j = config::to_json(rep);
    std::vector<std::string> keys;
    for (const auto& [k, _] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"value", "verdict", "regime", "decision_tol", "u_min", "v_min", "psi",
                                              "phi", "starts_used", "grid_points", "converged"}));
    EXPECT_EQ(j["verdict"], "does_not_generate");
}

TEST(Config, OracleReportFieldOrder) {
    const auto cfg = config::load(config_path("decoupled.json"));
    const auto& m = std::get<config::MarkovianModel>(cfg.model);
    oracle::OracleOptions o;
    o.sampling = oracle::Grid{3};
    const auto j = config::to_json(oracle::certify(m.k, criterion::Regime::Markovian, o));
    std::vector<std::string> keys;
    for (const auto& [k, _] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"min_pt_eig", "verdict", "regime", "threshold", "dt_used", "n_samples",
                                              "grid_refined", "psi", "phi"}));
}

TEST(Csv, QuotesOnlyWhenNeeded) {
    EXPECT_EQ(csv::quote("plain"), "plain");
    EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
    EXPECT_EQ(csv::quote("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv::quote("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1e-12}) EXPECT_EQ(std::stod(csv::format(v)), v);
    EXPECT_EQ(csv::format(1.0), "1");
}

TEST(Csv, WriterEmitsRows) {
    std::ostringstream os;
    csv::Writer(os).row({"t", "value"}).row({"0.5", "x,y"});
    EXPECT_EQ(os.str(), "t,value\n0.5,\"x,y\"\n");
}
