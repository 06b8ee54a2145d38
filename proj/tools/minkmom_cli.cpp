// Command-line front end: moment computation, verification suites, the
// asymptotic-error tables, negative moments, the entire extension and the
// Stern block means.  All numeric output is decimal strings; JSON reports
// carry the full configuration so runs are reproducible byte for byte.

#include "minkmom/asymptotics.hpp"
#include "minkmom/checkpoint.hpp"
#include "minkmom/entire.hpp"
#include "minkmom/moments.hpp"
#include "minkmom/negative.hpp"
#include "minkmom/oracle.hpp"
#include "minkmom/special.hpp"
#include "minkmom/stern.hpp"
#include "minkmom/sternmeans.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace minkmom;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailure = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitResourceLimit = 4;

struct GlobalOptions {
    int digits = 30;
    int order = 64;
    int extension = 0;
    std::string backend = "simple";
    int iters = 0;
    int threads = 0;
    std::string out;
    std::string format = "json";
    std::string in;
};

json config_json(const GlobalOptions& g) {
    return json{{"digits", g.digits},   {"order", g.order},   {"ext", g.extension},
                {"backend", g.backend}, {"iters", g.iters},   {"threads", g.threads},
                {"format", g.format}};
}

EngineConfig engine_config(const GlobalOptions& g) {
    EngineConfig cfg;
    cfg.digits = g.digits;
    cfg.order = g.order;
    cfg.extension = g.extension;
    cfg.backend = backend_from_name(g.backend);
    cfg.max_iterations = g.iters;
    cfg.threads = g.threads;
    return cfg;
}

MomentVector load_or_fail(const std::string& path, int digits) {
    if (path.empty())
        throw std::runtime_error("this command needs --in CHECKPOINT");
    LoadedCheckpoint lc = load_checkpoint(path, digits);
    return std::move(lc.moments);
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(1) << "\n";
    } else {
        std::ofstream f(out);
        if (!f)
            throw std::runtime_error("cannot write " + out);
        f << j.dump(1) << "\n";
    }
}

std::pair<unsigned, unsigned> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error("range must be A:B");
    const unsigned a = static_cast<unsigned>(std::stoul(s.substr(0, colon)));
    const unsigned b = static_cast<unsigned>(std::stoul(s.substr(colon + 1)));
    if (a > b)
        throw std::runtime_error("range must satisfy A <= B");
    return {a, b};
}

std::string dec(const Real& x, int digits) { return to_decimal_string(x, digits); }

// -------------------------------------------------------------------------
// compute
// -------------------------------------------------------------------------

int cmd_compute(const GlobalOptions& g, const std::string& warm_path,
                const std::string& model_name_str) {
    EngineConfig cfg = engine_config(g);
    cfg.validate();
    MomentVector mv;
    std::optional<MomentVector> warm;
    if (!warm_path.empty()) {
        LoadedCheckpoint lc = load_checkpoint(warm_path, g.digits);
        warm = std::move(lc.moments);
    }

    if (cfg.backend == Backend::bootstrap) {
        AsymptoticModel model;
        model.ctx = PrecisionContext(cfg.digits, 10);
        ModelKind kind = model_from_name(model_name_str);
        if (kind == ModelKind::improved) {
            if (!warm)
                throw std::runtime_error("bootstrap --model improved needs --warm CHECKPOINT "
                                         "to fit the oscillation coefficients");
            model = build_model(*warm);
            const unsigned hi = static_cast<unsigned>(warm->order());
            FitResult fit = fit_improved_model(*warm, model.lambda, hi / 2, hi);
            model.fit_a = fit.a;
            model.fit_b = fit.b;
            model.fitted = true;
        }
        std::vector<Real> ext = extension_table(model, kind, static_cast<unsigned>(cfg.order) + 1,
                                                static_cast<unsigned>(cfg.extension));
        mv = bootstrap_moments(cfg, ext);
    } else if (cfg.backend == Backend::alkauskas) {
        mv = alkauskas_moments(cfg);
    } else if (warm) {
        std::vector<Real> start = warm->values;
        start.resize(static_cast<std::size_t>(cfg.order) + 1, Real(0));
        mv = fixed_point_moments(cfg, std::move(start));
    } else {
        mv = fixed_point_moments(cfg);
    }

    const std::string out = g.out.empty() ? "moments.json" : g.out;
    save_checkpoint(mv, out);

    PrecisionScope scope(mv.ctx());
    const Real lambda = lambda_const(mv);
    IdentityReport rep = identity_suite(mv, lambda);
    json j;
    j["config"] = config_json(g);
    j["checkpoint"] = out;
    j["iterations"] = mv.iterations;
    j["converged"] = mv.converged;
    j["at_error_floor"] = mv.at_error_floor;
    j["final_step"] = dec(mv.final_step, 6);
    j["tail_estimate"] = dec(mv.tail_estimate(), 6);
    j["sum_check_residual"] = dec(rep.sum_residual, 6); // sum m_j + tail - 5/2
    if (cfg.backend == Backend::bootstrap)
        j["check_epsilon"] = dec(mv.check_epsilon, 6);
    std::cout << j.dump(1) << "\n";

    if (!mv.converged && !mv.at_error_floor) {
        std::cerr << "non-convergence: step " << dec(mv.final_step, 4) << " above threshold 1e-"
                  << g.digits << " and above the truncation floor\n";
        return kExitNoConvergence;
    }
    return 0;
}

// -------------------------------------------------------------------------
// verify
// -------------------------------------------------------------------------

json row_json(const IdentityRow& r, int digits) {
    return json{{"n", r.n},
                {"lhs", dec(r.lhs, digits)},
                {"rhs_truncated", dec(r.rhs, digits)},
                {"tail", dec(r.tail, 8)},
                {"residual", dec(r.residual, 8)}};
}

int cmd_verify(const GlobalOptions& g, const std::string& suite, int oracle_level) {
    MomentVector mv = load_or_fail(g.in, g.digits);
    PrecisionScope scope(mv.ctx());
    const unsigned N = static_cast<unsigned>(mv.order());
    bool ok = true;
    json j;
    j["config"] = config_json(g);
    j["suite"] = suite;
    j["order"] = mv.order();

    if (suite == "identities") {
        const Real lambda = lambda_const(mv);
        IdentityReport rep = identity_suite(mv, lambda);
        const Real tail_est = mv.tail_estimate();
        // error-propagation gates: coefficient mass ~ N^(n-1) sqrt(N) entries
        // of size tail_est, with the acceptance floors at order >= 400
        auto gate = [&](unsigned n) {
            Real scaled = 50 * pow(Real(N), static_cast<int>(n) - 1) * sqrt(Real(N)) * tail_est;
            Real floor = pow10(-10);
            return scaled > floor ? scaled : floor;
        };
        json rows = json::array();
        for (const auto& r : rep.rows) {
            json rj = row_json(r, mv.digits);
            rj["gate"] = dec(gate(r.n), 4);
            rj["pass"] = abs(r.residual) < gate(r.n);
            if (!rj["pass"].get<bool>())
                ok = false;
            rows.push_back(std::move(rj));
        }
        j["rows"] = std::move(rows);
        const Real gate52 = gate(1);
        Real gate_n2 = 50 * Real(N) * sqrt(Real(N)) * tail_est;
        if (gate_n2 < pow10(-9))
            gate_n2 = pow10(-9);
        j["sum_check"] = {{"residual", dec(rep.sum_residual, 8)},
                          {"tail", dec(rep.sum_tail, 8)},
                          {"gate", dec(gate52, 4)},
                          {"pass", abs(rep.sum_residual) < gate52}};
        j["weighted_check"] = {{"residual", dec(rep.weighted_residual, 8)},
                               {"tail", dec(rep.weighted_tail, 8)},
                               {"gate", dec(gate_n2, 4)},
                               {"pass", abs(rep.weighted_residual) < gate_n2}};
        ok = ok && j["sum_check"]["pass"].get<bool>() && j["weighted_check"]["pass"].get<bool>();
    } else if (suite == "spectral") {
        // exact route: sum_{2k<=n} C(n,2k) == 2^(n-1)
        bool exact_ok = true;
        for (unsigned n = 1; n <= std::min<unsigned>(N, 256); ++n) {
            BigInt acc = 0, b = 1;
            for (unsigned k = 0; 2 * k <= n; ++k) {
                acc += b;
                b *= n - 2 * k;
                if (n >= 2 * k + 1)
                    b *= n - 2 * k - 1;
                b /= (2 * k + 1) * (2 * k + 2);
            }
            if (acc != BigInt(1) << (n - 1)) {
                exact_ok = false;
                break;
            }
        }
        // engine route: the m-pass of the all-ones phi vector is 1/2 per slot
        PhiVector ones;
        ones.even.assign(N / 2 + 1, Real(1));
        std::vector<Real> slots = moments_from_phi(ones, mv.order(), g.threads);
        Real worst = 0;
        for (unsigned n = 1; n <= N; ++n) {
            Real d = abs(slots[n] - Real(1) / 2);
            if (d > worst)
                worst = d;
        }
        const Real gate = pow10(-(mv.digits - 3));
        j["exact_binomial_halving"] = exact_ok;
        j["slot0"] = dec(slots[0], 6);
        j["max_norm_deviation"] = dec(worst, 6);
        j["gate"] = dec(gate, 4);
        ok = exact_ok && slots[0] == 1 && worst < gate;
        j["pass"] = ok;
    } else if (suite == "oracle") {
        const unsigned max_n = std::min<unsigned>(N, 64);
        auto brackets = moment_oracle_batch(max_n, oracle_level);
        const Real widen = mv.tail_estimate();
        json fails = json::array();
        for (unsigned n = 0; n <= max_n; ++n) {
            if (!brackets[n].contains(mv.values[n], widen)) {
                ok = false;
                fails.push_back(n);
            }
        }
        j["level"] = oracle_level;
        j["checked"] = max_n + 1;
        j["widen"] = dec(widen, 4);
        j["failures"] = std::move(fails);
        j["pass"] = ok;
    } else if (suite == "asymptotic") {
        const Real lambda = lambda_const(mv);
        const PrecisionContext actx(mv.digits, 10);
        const Real rho = rho_const(phi_vector(mv, g.threads), actx);
        const Real rho_dev = abs(rho * sqrt(Real(2)) - lambda);
        const unsigned lo = N / 2, hi = 3 * N / 4;
        Real worst = 0;
        for (unsigned n = lo; n <= hi; ++n) {
            Real dev = abs(mv.values[n] / (lambda * S_shifted(Real(0), n, actx)) - 1);
            if (dev > worst)
                worst = dev;
        }
        j["rho_sqrt2_minus_lambda"] = dec(rho_dev, 6);
        j["ratio_range"] = {lo, hi};
        j["max_ratio_deviation"] = dec(worst, 6);
        bool rho_ok = rho_dev < pow10(-8);
        bool ratio_ok = worst < Real(1) / 100;
        j["pass"] = rho_ok && ratio_ok;
        ok = rho_ok && ratio_ok;
    } else {
        throw std::runtime_error("unknown suite: " + suite +
                                 " (expected identities|spectral|oracle|asymptotic)");
    }

    emit(j, g.out);
    return ok ? 0 : kExitVerifyFailure;
}

// -------------------------------------------------------------------------
// asympt / figure1
// -------------------------------------------------------------------------

void write_error_csv(const std::vector<ErrorRow>& rows, const std::string& model,
                     const std::string& path, int digits) {
    std::ostream* out = &std::cout;
    std::ofstream f;
    if (!path.empty()) {
        f.open(path);
        if (!f)
            throw std::runtime_error("cannot write " + path);
        out = &f;
    }
    *out << "n,sqrt_n,m_n," << "model" << ",kappa,E0,Ehalf,Eint\n";
    for (const auto& r : rows) {
        *out << r.n << ',' << dec(r.sqrt_n, digits) << ',' << dec(r.m, digits) << ','
             << dec(r.model, digits) << ',' << dec(r.kappa, digits) << ',' << dec(r.e0, digits)
             << ',' << dec(r.ehalf, digits) << ',' << dec(r.eint, digits) << "\n";
    }
    (void)model;
}

int cmd_asympt(const GlobalOptions& g, const std::string& model_str, const std::string& range_str,
               const std::string& csv_path) {
    MomentVector mv = load_or_fail(g.in, g.digits);
    PrecisionScope scope(mv.ctx());
    auto [from, to] = parse_range(range_str);
    if (to > static_cast<unsigned>(mv.order()))
        throw std::runtime_error("range exceeds the checkpoint order");
    const Real lambda = lambda_const(mv);
    ModelKind kind = model_from_name(model_str);
    Real a = 0, b = 0;
    if (kind == ModelKind::improved) {
        FitResult fit = fit_improved_model(mv, lambda, from, to);
        a = fit.a;
        b = fit.b;
    }
    auto rows = error_series(mv, lambda, from, to, kind, a, b);
    write_error_csv(rows, model_str, csv_path, mv.digits);
    return 0;
}

int cmd_figure1(const GlobalOptions& g, const std::string& range_str, const std::string& csv_path) {
    MomentVector mv = load_or_fail(g.in, g.digits);
    PrecisionScope scope(mv.ctx());
    auto [from, to] = parse_range(range_str);
    if (to > static_cast<unsigned>(mv.order()))
        throw std::runtime_error("range exceeds the checkpoint order");
    const Real lambda = lambda_const(mv);
    auto rows = error_series(mv, lambda, from, to, ModelKind::sint);
    write_error_csv(rows, "Sint", csv_path, mv.digits);
    return 0;
}

// -------------------------------------------------------------------------
// negative / mz / stern-mean
// -------------------------------------------------------------------------

int cmd_negative(const GlobalOptions& g, unsigned k_max) {
    MomentVector mv = load_or_fail(g.in, g.digits);
    PrecisionScope scope(mv.ctx());
    const Real lambda = lambda_const(mv);
    json j;
    j["config"] = config_json(g);
    json values = json::array();
    auto negs = m_negative_table(k_max, mv);
    for (unsigned n = 1; n <= k_max; ++n)
        values.push_back(json{{"n", -static_cast<int>(n)}, {"value", dec(negs[n], mv.digits)}});
    j["negative_moments"] = std::move(values);
    IdentityReport rep = identity_suite(mv, lambda);
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back(row_json(r, mv.digits));
    j["identity_suite"] = std::move(rows);
    j["sum_check_residual"] = dec(rep.sum_residual, 8);
    j["weighted_check_residual"] = dec(rep.weighted_residual, 8);
    emit(j, g.out);
    return 0;
}

int cmd_mz(const GlobalOptions& g, const std::string& z_str, int taylor_order, bool crosscheck) {
    MomentVector mv = load_or_fail(g.in, g.digits);
    PrecisionScope scope(mv.ctx());
    json j;
    j["config"] = config_json(g);
    EntireMomentEvaluator ev(mv);
    if (taylor_order >= 0) {
        TaylorAtZero t = taylor_at_zero(mv, static_cast<unsigned>(taylor_order));
        json coeffs = json::array();
        for (std::size_t n = 0; n < t.coeffs.size(); ++n)
            coeffs.push_back(json{{"n", n},
                                  {"value", dec(t.coeffs[n], mv.digits)},
                                  {"tail_bound", dec(t.tail_bounds[n], 6)}});
        j["taylor"] = std::move(coeffs);
        j["tails_ok"] = t.tails_ok;
    } else {
        Real z(z_str);
        auto v = ev.evaluate(z);
        j["z"] = z_str;
        j["value"] = dec(v.value, mv.digits);
        j["tail_bound"] = dec(v.tail_bound, 6);
        j["certified"] = v.certified;
        if (crosscheck) {
            auto w = ev.via_binomial_series(z);
            j["binomial_route"] = dec(w.value, mv.digits);
            j["binomial_route_tail"] = dec(w.tail_bound, 6);
            j["route_difference"] = dec(abs(v.value - w.value), 6);
        }
    }
    emit(j, g.out);
    return 0;
}

int cmd_stern_mean(const GlobalOptions& g, int levels) {
    MomentVector mv;
    if (!g.in.empty()) {
        mv = load_or_fail(g.in, g.digits);
    } else {
        // alpha needs moments; a modest self-contained run is plenty for the
        // 2^-order tail of its series
        EngineConfig cfg = engine_config(g);
        cfg.order = std::max(cfg.order, 256);
        cfg.backend = Backend::simple;
        cfg.max_iterations = 120;
        mv = fixed_point_moments(cfg);
    }
    PrecisionScope scope(mv.ctx());
    BetaEstimate be = beta_estimate(levels, mv);
    json j;
    j["config"] = config_json(g);
    json table = json::array();
    for (std::size_t n = 0; n < be.s_table.size(); ++n)
        table.push_back(json{{"level", n}, {"S", dec(be.s_table[n], mv.digits)}});
    j["block_log_means"] = std::move(table);
    j["alpha"] = dec(be.alpha, mv.digits);
    j["beta"] = dec(be.value, 10);
    j["beta_error_bar"] = dec(be.error_bar, 4);
    emit(j, g.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moments of the Minkowski question-mark measure via the Stern sequence"};
    app.require_subcommand(1);
    // let `minkmom compute --order 400` resolve --order against the parent
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--digits", g.digits, "requested decimal digits")->capture_default_str();
    app.add_option("--order", g.order, "truncation order N")->capture_default_str();
    app.add_option("--ext", g.extension, "asymptotic extension order M (bootstrap)");
    app.add_option("--backend", g.backend, "simple|alkauskas|bootstrap")->capture_default_str();
    app.add_option("--iters", g.iters, "iteration cap (0 = 2 sqrt(N/log 2) + 10)");
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
    app.add_option("--out", g.out, "output path (default stdout / moments.json)");
    app.add_option("--format", g.format, "json|csv")->capture_default_str();
    app.add_option("--in", g.in, "input checkpoint");

    auto* compute = app.add_subcommand("compute", "iterate the moment fixed point, write a checkpoint");
    std::string warm, boot_model = "sint";
    compute->add_option("--warm", warm, "warm-start checkpoint");
    compute->add_option("--model", boot_model, "bootstrap extension model: sint|s0|improved|zero");

    auto* verify = app.add_subcommand("verify", "run an invariant suite against a checkpoint");
    std::string suite;
    int oracle_level = 16;
    verify->add_option("--suite", suite, "identities|spectral|oracle|asymptotic")->required();
    verify->add_option("--level", oracle_level, "oracle Riemann level")->capture_default_str();

    auto* asympt = app.add_subcommand("asympt", "emit the asymptotic-error table as CSV");
    std::string model = "Sint", range = "100:400", csv;
    asympt->add_option("--model", model, "S0|Shalf|Sint|improved")->capture_default_str();
    asympt->add_option("--range", range, "A:B inclusive")->capture_default_str();
    asympt->add_option("--csv", csv, "CSV output path (default stdout)");

    auto* negative = app.add_subcommand("negative", "negative moments and the identity suite");
    unsigned neg_k = 8;
    negative->add_option("--n", neg_k, "compute m_-1..m_-K")->capture_default_str();

    auto* mz = app.add_subcommand("mz", "evaluate the entire extension z -> m_z");
    std::string z_str;
    int taylor_order = -1;
    bool crosscheck = false;
    mz->add_option("--z", z_str, "evaluation point (decimal string)");
    mz->add_option("--taylor", taylor_order, "emit Taylor coefficients d_0..d_J");
    mz->add_flag("--crosscheck", crosscheck, "also evaluate the binomial-series route");

    auto* stern_mean = app.add_subcommand("stern-mean", "block log-means, alpha and beta");
    int levels = 18;
    stern_mean->add_option("--levels", levels, "highest block level")->capture_default_str();

    auto* fig = app.add_subcommand("figure1", "normalized asymptotic errors for plotting");
    std::string fig_range = "100:400", fig_csv;
    fig->add_option("--range", fig_range, "A:B inclusive")->capture_default_str();
    fig->add_option("--csv", fig_csv, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute)
            return cmd_compute(g, warm, boot_model);
        if (*verify)
            return cmd_verify(g, suite, oracle_level);
        if (*asympt)
            return cmd_asympt(g, model, range, csv);
        if (*negative)
            return cmd_negative(g, neg_k);
        if (*mz) {
            if (taylor_order < 0 && z_str.empty())
                throw std::runtime_error("mz needs --z VALUE or --taylor J");
            return cmd_mz(g, z_str, taylor_order, crosscheck);
        }
        if (*stern_mean)
            return cmd_stern_mean(g, levels);
        if (*fig)
            return cmd_figure1(g, fig_range, fig_csv);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const PrecisionError& e) {
        std::cerr << "precision: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
