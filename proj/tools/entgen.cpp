// entgen.cpp — command-line front end
//
// Exit codes: 0 does not generate, 3 generates, 4 boundary, 1 usage or input error,
// 2 internal fault. Commands without a verdict exit 0 on success.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entgen/entgen.hpp"

namespace {

using namespace entgen;

constexpr int kExitNo = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;
constexpr int kExitGenerates = 3;
constexpr int kExitBoundary = 4;

// Errors in user-supplied values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code(criterion::Verdict v) {
    switch (v) {
        case criterion::Verdict::Generates: return kExitGenerates;
        case criterion::Verdict::Boundary: return kExitBoundary;
        case criterion::Verdict::DoesNotGenerate: return kExitNo;
    }
    return kExitInternal;
}

struct Common {
    std::string config;
    std::string regime = "auto";
    std::optional<double> t0;
    unsigned threads = 1;
};

struct Resolved {
    coeffs::BlockCoeffMatrix k;
    criterion::Regime regime;
};

// Markovian configs are used as they stand; correlation models are reduced to D(t0).
Resolved resolve(const config::ModelConfig& cfg, const Common& c) {
    const double t0 = c.t0.value_or(cfg.t0.value_or(0.0));
    if (const auto* m = std::get_if<config::MarkovianModel>(&cfg.model)) {
        if (c.regime == "nonmarkovian") {
            if (m->k.has_hamiltonian())
                throw UsageError("--regime nonmarkovian: the config has Hamiltonian blocks, which equal-time correlation matrices cannot carry");
            return {m->k, criterion::Regime::NonMarkovian};
        }
        return {m->k, criterion::Regime::Markovian};
    }
    if (c.regime == "markovian")
        throw UsageError("--regime markovian needs a markovian config; got " + std::string(config::variant_key(cfg.model)));
    return {coeffs::equal_time_D(config::to_correlation_model(cfg.model), t0), criterion::Regime::NonMarkovian};
}

void add_common(CLI::App* cmd, Common& c, bool with_config = true) {
    if (with_config) cmd->add_option("config", c.config, "Model configuration (JSON, schema v1)")->required();
    cmd->add_option("--regime", c.regime, "markovian, nonmarkovian or auto (from the config)")
        ->check(CLI::IsMember({"auto", "markovian", "nonmarkovian"}));
    cmd->add_option("--t0", c.t0, "Initial time for correlation models (default: config t0 or 0)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

std::vector<double> parse_range(const std::string& spec) {
    // start:stop:steps
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--t0 expects start:stop:steps, got \"" + spec + "\"");
    double start, stop;
    long steps;
    try {
        std::size_t used = 0;
        start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("trailing");
        stop = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("trailing");
        steps = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw UsageError("--t0 expects start:stop:steps, got \"" + spec + "\"");
    }
    if (steps < 1) throw UsageError("--t0: steps must be >= 1");
    if (start < 0.0 || stop < start) throw UsageError("--t0: need 0 <= start <= stop");
    std::vector<double> grid;
    for (long i = 0; i < steps; ++i)
        grid.push_back(steps == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1));
    return grid;
}

void print_json(const config::ojson& j) { std::cout << j.dump(2) << "\n"; }

void log_line(const std::string& s) { std::cerr << s << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short-time entanglement generation for two qubits in a Gaussian environment"};
    app.require_subcommand(1);

    // check
    Common check_c;
    criterion::OptimizerOptions check_o;
    bool check_csv = false, check_json = false;
    auto* check = app.add_subcommand("check", "Decide entanglement generation with the criterion");
    add_common(check, check_c);
    check->add_option("--starts", check_o.starts, "Multi-start count")->check(CLI::PositiveNumber);
    check->add_flag("--grid", check_o.grid, "Exhaustive 20^4 grid before polishing");
    check->add_option("--grid-n", check_o.grid_n, "Grid nodes per angle")->check(CLI::PositiveNumber);
    check->add_option("--seed", check_o.seed, "Quasi-random start rotation");
    check->add_option("--decision-tol", check_o.decision_tol, "Relative decision tolerance")->check(CLI::NonNegativeNumber);
    auto* fmt_json = check->add_flag("--json", check_json, "JSON report (default)");
    check->add_flag("--csv", check_csv, "One-row CSV report")->excludes(fmt_json);

    // oracle
    Common orc_c;
    double orc_dt = 0.0;
    std::optional<long> orc_samples;
    std::string orc_sampling = "hybrid";
    std::optional<std::uint64_t> orc_seed;
    auto* orc = app.add_subcommand("oracle", "Brute-force PPT certification");
    add_common(orc, orc_c);
    orc->add_option("--dt", orc_dt, "Time step (default: regime-dependent)")->check(CLI::PositiveNumber);
    orc->add_option("--samples", orc_samples, "Random: state count; grid/hybrid: nodes per angle");
    orc->add_option("--sampling", orc_sampling, "hybrid, grid or random")->check(CLI::IsMember({"hybrid", "grid", "random"}));
    orc->add_option("--seed", orc_seed, "Seed (required for random sampling)");

    // scan-t0
    Common scan_c;
    criterion::OptimizerOptions scan_o;
    std::string scan_range;
    bool scan_oracle = false;
    auto* scan = app.add_subcommand("scan-t0", "Criterion over a grid of initial times (wiener models)");
    scan->add_option("config", scan_c.config, "Wiener model configuration")->required();
    scan->add_option("--t0", scan_range, "start:stop:steps")->required();
    scan->add_option("--starts", scan_o.starts, "Multi-start count")->check(CLI::PositiveNumber);
    scan->add_option("--seed", scan_o.seed, "Quasi-random start rotation");
    scan->add_option("--threads", scan_c.threads, "Worker threads")->check(CLI::PositiveNumber);
    scan->add_flag("--oracle", scan_oracle, "Add oracle columns");

    // dephase
    std::vector<double> deph_eps;
    double deph_t = 5.0, deph_omega = 0.0;
    int deph_steps = 50, deph_rk4 = 2048;
    std::optional<std::size_t> deph_mc;
    std::optional<std::uint64_t> deph_seed;
    bool deph_summary = false;
    unsigned deph_threads = 1;
    auto* deph = app.add_subcommand("dephase", "OU dephasing: closed form, RK4 and Monte Carlo");
    deph->add_option("--epsilon", deph_eps, "Correlation times (comma separated)")->required()->delimiter(',');
    deph->add_option("--t", deph_t, "Final time")->check(CLI::NonNegativeNumber);
    deph->add_option("--steps", deph_steps, "Output rows per epsilon after t = 0")->check(CLI::PositiveNumber);
    deph->add_option("--rk4-steps", deph_rk4, "RK4 steps per output time")->check(CLI::PositiveNumber);
    deph->add_option("--omega-z", deph_omega, "Free precession frequency (lab-frame column)");
    deph->add_option("--mc", deph_mc, "Monte-Carlo trajectories per row (>= 100)");
    deph->add_option("--seed", deph_seed, "Seed (required with --mc)");
    deph->add_flag("--summary", deph_summary, "Per-epsilon small-time coefficients instead of the time series");
    deph->add_option("--threads", deph_threads, "Worker threads")->check(CLI::PositiveNumber);

    // markov-limit
    std::string ml_config;
    std::vector<double> ml_eps;
    criterion::OptimizerOptions ml_o;
    auto* ml = app.add_subcommand("markov-limit", "Equal-time correlations and criterion along an epsilon sweep");
    ml->add_option("config", ml_config, "delta_family configuration")->required();
    ml->add_option("--eps", ml_eps, "Epsilon values (comma separated)")->required()->delimiter(',');
    ml->add_option("--starts", ml_o.starts, "Multi-start count")->check(CLI::PositiveNumber);
    ml->add_option("--seed", ml_o.seed, "Quasi-random start rotation");
    ml->add_option("--threads", ml_o.threads, "Worker threads")->check(CLI::PositiveNumber);

    // agree
    std::size_t agree_n = 100;
    std::optional<std::uint64_t> agree_seed;
    std::string agree_regime = "nonmarkovian";
    unsigned agree_threads = 1;
    auto* agree = app.add_subcommand("agree", "Criterion vs oracle on random models");
    agree->add_option("--models", agree_n, "Number of random models")->check(CLI::PositiveNumber);
    agree->add_option("--seed", agree_seed, "Seed")->required();
    agree->add_option("--regime", agree_regime, "markovian or nonmarkovian")->check(CLI::IsMember({"markovian", "nonmarkovian"}));
    agree->add_option("--threads", agree_threads, "Worker threads")->check(CLI::PositiveNumber);

    // ou-path
    double path_eps = 1.0, path_step = 0.01;
    std::size_t path_n = 1000;
    std::uint64_t path_seed = 0;
    auto* path = app.add_subcommand("ou-path", "Sample a stationary OU path");
    path->add_option("--epsilon", path_eps, "Correlation time")->check(CLI::PositiveNumber);
    path->add_option("--step", path_step, "Time step")->check(CLI::PositiveNumber);
    path->add_option("--n", path_n, "Number of steps");
    path->add_option("--seed", path_seed, "Seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        csv::Writer out(std::cout);

        if (*check) {
            check_o.threads = check_c.threads;
            const auto cfg = config::load(check_c.config);
            const auto r = resolve(cfg, check_c);
            const auto rep = criterion::decide(r.k, r.regime, check_o);
            if (check_csv) {
                out.row({"value", "verdict", "regime", "decision_tol", "starts_used", "converged"});
                out.row({csv::format(rep.value), criterion::to_string(rep.verdict), criterion::to_string(rep.regime),
                         csv::format(rep.decision_tol), std::to_string(rep.starts_used), rep.converged ? "true" : "false"});
            } else {
                print_json(config::to_json(rep));
            }
            log_line(std::string("check: ") + criterion::to_string(rep.verdict) + " (value " + csv::format(rep.value) + ")");
            return exit_code(rep.verdict);
        }

        if (*orc) {
            oracle::OracleOptions o;
            o.dt = orc_dt;
            o.threads = orc_c.threads;
            if (orc_samples && *orc_samples < 1) throw UsageError("--samples must be >= 1");
            if (orc_sampling == "random") {
                if (!orc_seed) throw UsageError("--sampling random requires --seed");
                o.sampling = oracle::Random{static_cast<std::size_t>(orc_samples.value_or(20000)), *orc_seed};
            } else if (orc_sampling == "grid") {
                o.sampling = oracle::Grid{static_cast<int>(orc_samples.value_or(12))};
            } else {
                o.sampling = oracle::Hybrid{static_cast<int>(orc_samples.value_or(12))};
            }
            const auto cfg = config::load(orc_c.config);
            const auto r = resolve(cfg, orc_c);
            const auto rep = oracle::certify(r.k, r.regime, o);
            print_json(config::to_json(rep));
            log_line(std::string("oracle: ") + criterion::to_string(rep.verdict) + " (min PT eigenvalue " +
                     csv::format(rep.min_pt_eig) + ")");
            return exit_code(rep.verdict);
        }

        if (*scan) {
            scan_o.threads = scan_c.threads;
            const auto grid = parse_range(scan_range);
            const auto cfg = config::load(scan_c.config);
            const auto* w = std::get_if<baths::WienerFieldModel>(&cfg.model);
            if (!w) throw UsageError(std::string("scan-t0 needs a wiener config; got ") + config::variant_key(cfg.model));
            const auto rows = criterion::scan_t0(*w, grid, scan_o);
            std::vector<std::string> header{"t0", "value", "verdict"};
            if (scan_oracle) header.insert(header.end(), {"oracle_min_eig", "oracle_verdict"});
            out.row(header);
            for (const auto& row : rows) {
                std::vector<std::string> f{csv::format(row.t0), csv::format(row.report.value),
                                           criterion::to_string(row.report.verdict)};
                if (scan_oracle) {
                    oracle::OracleOptions o;
                    o.threads = scan_c.threads;
                    const auto orep = oracle::certify(baths::CorrelationModel{*w}, row.t0, o);
                    f.push_back(csv::format(orep.min_pt_eig));
                    f.push_back(criterion::to_string(orep.verdict));
                }
                out.row(f);
            }
            return kExitNo;
        }

        if (*deph) {
            for (double e : deph_eps)
                if (!(e > 0.0)) throw UsageError("--epsilon values must be > 0");
            if (deph_mc && !deph_seed) throw UsageError("--mc requires --seed");
            if (deph_mc && *deph_mc < 100) throw UsageError("--mc needs at least 100 trajectories");
            const qlin::CMat plus{{0.5, 0.5}, {0.5, 0.5}};
            if (deph_summary) {
                out.row({"epsilon", "small_time_coefficient", "coefficient_times_epsilon", "fitted_coefficient",
                         "max_abs_exact_minus_rk4"});
                for (double e : deph_eps) {
                    const dynamics::DephasingModel m{deph_omega, e, 1.0};
                    // Γ(t)/(4t²) = c + O(t) from RK4, Richardson-extrapolated over t and t/2
                    auto ratio = [&](double ts) {
                        const double damping = 2.0 * dynamics::dephasing_rk4(m, plus, ts, deph_rk4)(0, 1).real();
                        return -std::log(damping) / (4.0 * ts * ts);
                    };
                    const double fitted = 2.0 * ratio(5e-3 * e) - ratio(1e-2 * e);
                    double dev = 0.0;
                    for (int i = 0; i <= deph_steps; ++i) {
                        const double t = deph_t * i / deph_steps;
                        const double ex = dynamics::dephasing_exact(m, plus, t)(0, 1).real();
                        const double rk = dynamics::dephasing_rk4(m, plus, t, deph_rk4)(0, 1).real();
                        dev = std::max(dev, std::abs(ex - rk) / 0.5);
                    }
                    const double c = dynamics::small_time_coefficient(m);
                    out.row({csv::format(e), csv::format(c), csv::format(c * e), csv::format(fitted), csv::format(dev)});
                }
                return kExitNo;
            }
            std::vector<std::string> header{"epsilon", "t", "exact", "rk4", "abs_dev", "markov", "lab_re", "lab_im"};
            if (deph_mc) header.insert(header.end(), {"mc", "mc_stderr"});
            out.row(header);
            for (double e : deph_eps) {
                const dynamics::DephasingModel m{deph_omega, e, 1.0};
                for (int i = 0; i <= deph_steps; ++i) {
                    const double t = deph_t * i / deph_steps;
                    const double ex = 2.0 * dynamics::dephasing_exact(m, plus, t)(0, 1).real();
                    const double rk = 2.0 * dynamics::dephasing_rk4(m, plus, t, deph_rk4)(0, 1).real();
                    const cplx lab = 2.0 * dynamics::to_lab_frame(m, dynamics::dephasing_exact(m, plus, t), t)(0, 1);
                    std::vector<std::string> f{csv::format(e),
                                               csv::format(t),
                                               csv::format(ex),
                                               csv::format(rk),
                                               csv::format(std::abs(ex - rk)),
                                               csv::format(std::exp(-dynamics::markov_dephasing_exponent(m, t))),
                                               csv::format(lab.real()),
                                               csv::format(lab.imag())};
                    if (deph_mc) {
                        const auto est = dynamics::dephasing_mc(m, plus, t, *deph_mc,
                                                                rng::stream_seed(*deph_seed, static_cast<std::uint64_t>(i)),
                                                                deph_threads);
                        f.push_back(csv::format(2.0 * est.state(0, 1).real()));
                        f.push_back(csv::format(2.0 * est.stderr_re));
                    }
                    out.row(f);
                }
            }
            return kExitNo;
        }

        if (*ml) {
            if (ml_eps.empty()) throw UsageError("--eps needs at least one value");
            for (double e : ml_eps)
                if (!(e > 0.0)) throw UsageError("--eps values must be > 0");
            const auto cfg = config::load(ml_config);
            const auto* f = std::get_if<baths::DeltaFamily>(&cfg.model);
            if (!f) throw UsageError(std::string("markov-limit needs a delta_family config; got ") + config::variant_key(cfg.model));
            out.row({"epsilon", "d_eps_at_0", "criterion_value", "verdict"});
            for (double e : ml_eps) {
                baths::DeltaFamily fe = *f;
                fe.epsilon = e;
                const auto rep = criterion::decide(baths::CorrelationModel{fe}, 0.0, ml_o);
                out.row({csv::format(e), csv::format(baths::delta_family_value(fe, 0.0)), csv::format(rep.value),
                         criterion::to_string(rep.verdict)});
            }
            return kExitNo;
        }

        if (*agree) {
            oracle::AgreementOptions o;
            o.criterion.threads = agree_threads;
            o.oracle.threads = agree_threads;
            const auto regime = agree_regime == "markovian" ? criterion::Regime::Markovian : criterion::Regime::NonMarkovian;
            const auto s = oracle::agreement_suite(agree_n, *agree_seed, regime, o);
            out.row({"model_id", "criterion_value", "oracle_min_eig", "agree"});
            for (const auto& row : s.rows)
                out.row({std::to_string(row.model_id), csv::format(row.criterion_value), csv::format(row.oracle_min_eig),
                         row.boundary ? "boundary" : row.agree ? "true" : "false"});
            log_line("agree: " + std::to_string(s.agree) + " agree, " + std::to_string(s.disagree) + " disagree, " +
                     std::to_string(s.boundary) + " boundary");
            return kExitNo;
        }

        if (*path) {
            auto eng = rng::make_engine(path_seed, 0);
            const auto xs = baths::sample_ou_path(path_eps, path_step, path_n, eng);
            out.row({"t", "value"});
            for (std::size_t i = 0; i < xs.size(); ++i) out.row({csv::format(path_step * static_cast<double>(i)), csv::format(xs[i])});
            return kExitNo;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
