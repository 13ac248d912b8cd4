#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <stdexcept>

#include "CLI11.hpp"
#include "reports.hpp"

using namespace siegel;
using namespace siegel::cli;

namespace {

enum Exit { kOk = 0, kInternal = 1, kParse = 2, kNumeric = 3, kCheckFailed = 4 };

struct Output {
    Json report;
    std::string csv;
};

const std::vector<std::string> kLedgerFormulas = {
    "ledger: c = ln(5/3) / (8 pi Q^6)",
    "ledger: K1 = 2 (1 - mu^{-1}(c)^2)^{-6}",
    "ledger: K2 = max(2, K1^(B+1)), M = 2 K2 - 1",
    "ledger: ln K = 2M (pi M - ln 16) + M ln K2",
    "ledger: 1 - gamma = (16/pi) (sqrt2 (sqrt3 - 1) / 16)^(M/2)",
};

long effective_B(const RunConfig& cfg, const QuadraticIrrational& cf) { return cfg.B > 0 ? cfg.B : cf.B(); }

bool is_golden(const QuadraticIrrational& cf) { return value(cf) == value(QuadraticIrrational::parse(";1")); }

std::string csv_path(const RunConfig& cfg) {
    if (!cfg.csv.empty()) return cfg.csv;
    if (cfg.out.empty()) return {};
    std::filesystem::path p(cfg.out);
    return p.replace_extension(".csv").string();
}

Output cmd_bounds(const RunConfig& cfg) {
    auto cf = QuadraticIrrational::parse(cfg.cf);
    auto ledger = constants_ledger(cfg.Q, effective_B(cfg, cf));
    auto br = scaling_bounds(cf, ledger);
    auto uc = uniform_constants(ledger.B, cf.s(), br.scase, ledger);
    Surd a = alpha(cf);
    auto [bh_lo, bh_hi] = bh_bounds(a);

    Json res;
    res["alpha"] = a.to_double();
    res["alpha_exact"] = a.str();
    res["s"] = cf.s();
    res["ledger"] = to_json(ledger);
    res["ln_K1_closed_form"] = ln_K1_closed_form(cfg.Q);
    res["scaling_bounds"] = to_json(br);
    res["uniform_constants"] = to_json(uc);
    res["bh_bounds"] = {bh_lo, bh_hi};
    res["cylinder_modulus"] = cylinder_modulus(a.to_double());
    res["triangle_criterion"] = triangle_criterion(a.to_double());

    std::vector<Check> checks;
    checks.push_back({"lower bound at least alpha", br.lower >= a.to_double() && br.lower_excess.sign() >= 0,
                      Json{{"lower", br.lower}}});
    checks.push_back({"upper bound at most 1", br.upper_vacuous || br.upper <= TowerReal(1.0),
                      Json{{"upper", br.upper_vacuous ? "1 (vacuous)" : render_one_minus(br.one_minus_upper)}}});
    auto formulas = kLedgerFormulas;
    formulas.push_back("case split: period parity, alpha against 1/sqrt2 (odd) or 1/2 (even)");
    formulas.push_back("small-alpha cases: exponent floor(s log2 vartheta)");
    formulas.push_back("Buff-Henriksen: alpha < |lambda| < 1");
    formulas.push_back("cylinder modulus: -pi / ln(alpha^2)");
    return {make_report(cfg, formulas, res, checks), {}};
}

Output cmd_lambda(const RunConfig& cfg) {
    auto cf = QuadraticIrrational::parse(cfg.cf);
    bool rotation = cfg.control == "rotation";
    Model model = rotation ? Model::Rotation : Model::Polynomial;
    auto seq = iterate_returns(cf, cfg.n_max, cfg.bits, cfg.escape, model);
    escalate_precision(seq, cf);
    auto est = scaling_sequence(seq, cf.s());
    if (est.empty()) throw std::invalid_argument("n_max too small for any scaling estimate");
    double a = alpha(cf).to_double();
    const ScalingEstimate& last = est.back();
    int transient = bh_transient(est, a);

    Json res;
    res["alpha"] = a;
    res["s"] = cf.s();
    Json list = Json::array();
    for (const auto& e : est) list.push_back(to_json(e));
    res["estimates"] = list;
    res["abs_lambda"] = last.abs_lambda_hat;
    res["transient"] = transient;
    Json esc = Json::array();
    for (const auto& p : seq.points) esc.push_back(p.escalation);
    res["escalation"] = esc;

    std::vector<Check> checks;
    checks.push_back({"alpha < |lambda| < 1 past the transient", transient >= 0, Json{{"transient", transient}}});
    std::vector<std::string> formulas = {"lambda_hat = w_{n+s} / w_n, denominator conjugated for odd s",
                                         "lambda = (w_{n+s} - w_n) / (w_n - w_{n-s})",
                                         "Buff-Henriksen: alpha < |lambda| < 1"};
    if (rotation) {
        double dev = std::fabs(last.abs_lambda_hat - a) / a;
        checks.push_back({"rigid rotation gives |lambda| = alpha", dev <= 1e-6, Json{{"relative_deviation", dev}}});
        formulas.push_back("rigid rotation: {q_{n+s} theta} = (-1)^s alpha {q_n theta}");
    } else {
        checks.push_back({"estimators agree", last.gap < 1e-3, Json{{"gap", last.gap}}});
        auto ledger = constants_ledger(cfg.Q, effective_B(cfg, cf));
        auto br = scaling_bounds(cf, ledger);
        checks.push_back({"scaling lower bound", last.abs_lambda_hat >= br.lower,
                          Json{{"lower", "alpha * (" + render_one_plus(br.lower_excess) + ")"}}});
        checks.push_back({"scaling upper bound", br.upper_vacuous || TowerReal(last.abs_lambda_hat) <= br.upper,
                          Json{{"upper", br.upper_vacuous ? "1 (vacuous)" : render_one_minus(br.one_minus_upper)}}});
        try {
            auto strip = strip_heights(value(cf).to_double(), last.abs_lambda_hat);
            double rl = rengel_lower_bound(a, strip.gamma_max);
            res["strip"] = to_json(strip);
            checks.push_back({"Rengel lower bound", last.abs_lambda_hat >= rl, Json{{"bound", rl}}});
        } catch (const std::runtime_error& e) {
            checks.push_back({"Rengel lower bound", false, Json{{"error", e.what()}}});
        }
        formulas.push_back("Rengel: |lambda| >= alpha^(gamma_max / pi)");
        formulas.push_back("scaling bounds from the constants ledger");
        for (const auto& f : kLedgerFormulas) formulas.push_back(f);
    }
    return {make_report(cfg, formulas, res, checks), returns_csv(seq)};
}

Output cmd_angles(const RunConfig& cfg) {
    auto cf = QuadraticIrrational::parse(cfg.cf);
    auto fwd = iterate_returns(cf, cfg.n_max, cfg.bits, cfg.escape);
    escalate_precision(fwd, cf);
    auto bwd = backward_returns(cf, cfg.n_max, cfg.bits);
    auto rep = return_angles(fwd, bwd);

    Json res = to_json(rep);
    std::vector<Check> checks;
    double err = std::max(rep.forward_separation.error, rep.backward_separation.error);
    checks.push_back({"directions converged to 0.5 degrees", err < 0.5, Json{{"error", err}}});
    if (is_golden(cf)) {
        double f = rep.forward_separation.degrees, b = rep.backward_separation.degrees;
        checks.push_back({"forward separation 107.2 +- 0.5", std::fabs(f - 107.2) <= 0.5, Json{{"degrees", f}}});
        checks.push_back({"backward separation 119.6 +- 0.5", std::fabs(b - 119.6) <= 0.5, Json{{"degrees", b}}});
    }
    return {make_report(cfg,
                        {"direction: arg(z_{q_n} - 1) per parity class",
                         "limit: Aitken extrapolation of the last four terms"},
                        res, checks),
            {}};
}

Output cmd_blaschke_fit(const RunConfig& cfg) {
    auto cf = QuadraticIrrational::parse(cfg.cf);
    auto r = solve_t(cf, cfg.tol);
    CircleLift lift{r.t, false};
    // long orbit so that the closest-return offset divided by q is negligible
    auto conv = convergents(cf, 80);
    long q = conv[r.convergent_index - 1].q.get_si();
    for (const auto& c : conv)
        if (c.q <= 10000000 && c.q > q) q = c.q.get_si();
    double theta = value(cf).to_double();
    auto rho = rotation_number(lift, q);
    double residual = std::fabs(rho.rho - theta);

    Json res;
    res["theta"] = theta;
    res["t"] = r.t;
    res["t_bracket"] = {r.t_lo, r.t_hi};
    res["enclosure"] = r.enclosure;
    res["convergent_index"] = r.convergent_index;
    res["iterations"] = r.iterations;
    res["rho"] = rho.rho;
    res["residual"] = residual;
    std::vector<Check> checks;
    checks.push_back({"enclosure within tolerance", r.enclosure <= cfg.tol, Json{{"enclosure", r.enclosure}}});
    checks.push_back({"residual at most 1e-8", residual <= 1e-8, Json{{"residual", residual}, {"steps", q}}});
    return {make_report(cfg,
                        {"lift: g(x) = t + x + atan2(-sin(2 pi x)/3, 1 - cos(2 pi x)/3) / pi",
                         "rotation side: sign of g^{q_n}(0) - p_n against sign of q_n theta - p_n",
                         "residual: |(g^{q}(0)) / q - theta|"},
                        res, checks),
            lift_csv(lift, 1000)};
}

Output cmd_xratio_verify(const RunConfig& cfg) {
    auto cf = QuadraticIrrational::parse(cfg.cf);
    if (cfg.trials < 1) throw std::invalid_argument("trials must be positive");
    auto sol = solve_t(cf, cfg.tol);
    CircleLift lift{sol.t, false};
    std::mt19937_64 rng(cfg.seed);
    SamplerOptions any, crit, far;
    crit.force_critical = true;
    far.noncritical_ratio = 4.0;

    double worst = 0.0, far_dev = 0.0;
    int fails = 0, not_allowable = 0, critical = 0;
    for (int i = 0; i < cfg.trials; ++i) {
        auto config = sample_allowable(rng, i % 2 ? crit : any);
        if (!is_allowable(config)) ++not_allowable;
        if (i % 2) ++critical;
        auto r = xratio_inequality_check(lift, config);
        if (!r.pass) ++fails;
        worst = std::max(worst, r.product);
    }
    int far_trials = std::max(1, cfg.trials / 5);
    for (int i = 0; i < far_trials; ++i) {
        auto r = xratio_inequality_check(lift, sample_allowable(rng, far));
        far_dev = std::max(far_dev, std::fabs(r.product - 1.0));
    }

    Json res;
    res["t"] = sol.t;
    res["trials"] = cfg.trials;
    res["critical_trials"] = critical;
    res["max_product"] = worst;
    res["failures"] = fails;
    res["noncritical_trials"] = far_trials;
    res["noncritical_max_deviation"] = far_dev;
    std::vector<Check> checks;
    checks.push_back({"configurations allowable", not_allowable == 0, Json{{"rejected", not_allowable}}});
    checks.push_back({"every product at most 8", fails == 0, Json{{"max_product", worst}}});
    checks.push_back({"non-critical products within 1e-2 of 1", far_dev <= 1e-2, Json{{"max_deviation", far_dev}}});
    return {make_report(cfg,
                        {"chi = K'(k) / (2 K(k)), k = (1 - sqrt Cr) / (1 + sqrt Cr)",
                         "Cr = |a-b| |c-d| / (|a-c| |d-b|)",
                         "product of chi(g(a), g(b), g(c), g(d)) / chi(a, b, c, d) over the configuration"},
                        res, checks),
            {}};
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--cf", cfg.cf, "continued fraction 'preperiod;period', e.g. ';1' or '3,1;2,4'")
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "JSON report path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel disk scaling computations"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* bounds = app.add_subcommand("bounds", "constants ledger and scaling bounds");
    add_common(bounds, cfg);
    bounds->add_option("--Q", cfg.Q, "quasiconformal constant of the ledger")->capture_default_str()->check(
        CLI::PositiveNumber);
    bounds->add_option("--B", cfg.B, "bound on partial quotients (default: largest in --cf)")->check(
        CLI::NonNegativeNumber);

    auto* lambda = app.add_subcommand("lambda", "closest returns and scaling estimates");
    add_common(lambda, cfg);
    lambda->add_option("--nmax", cfg.n_max, "last convergent index")->capture_default_str()->check(
        CLI::PositiveNumber);
    lambda->add_option("--bits", cfg.bits, "working precision")->capture_default_str()->check(CLI::Range(64, 1 << 16));
    lambda->add_option("--escape", cfg.escape, "escape radius")->capture_default_str()->check(CLI::PositiveNumber);
    lambda->add_option("--control", cfg.control, "orbit model")
        ->capture_default_str()
        ->check(CLI::IsMember({"polynomial", "rotation"}));
    lambda->add_option("--Q", cfg.Q, "ledger constant for the bound checks")->capture_default_str()->check(
        CLI::PositiveNumber);
    lambda->add_option("--B", cfg.B, "bound on partial quotients")->check(CLI::NonNegativeNumber);
    lambda->add_option("--csv", cfg.csv, "CSV path (default: --out with .csv)");

    auto* angles = app.add_subcommand("angles", "directions of forward and backward closest returns");
    add_common(angles, cfg);
    angles->add_option("--nmax", cfg.n_max, "last convergent index")->capture_default_str()->check(
        CLI::PositiveNumber);
    angles->add_option("--bits", cfg.bits, "working precision")->capture_default_str()->check(CLI::Range(64, 1 << 16));
    angles->add_option("--escape", cfg.escape, "escape radius")->capture_default_str()->check(CLI::PositiveNumber);

    auto* fit = app.add_subcommand("blaschke-fit", "parameter t with rotation number theta");
    add_common(fit, cfg);
    fit->add_option("--tol", cfg.tol, "rotation-number tolerance")->capture_default_str()->check(
        CLI::PositiveNumber);
    fit->add_option("--csv", cfg.csv, "CSV path for lift samples (default: --out with .csv)");

    auto* xr = app.add_subcommand("xratio-verify", "cross-ratio inequality on random configurations");
    add_common(xr, cfg);
    xr->add_option("--trials", cfg.trials, "number of configurations")->capture_default_str()->check(
        CLI::PositiveNumber);
    xr->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    xr->add_option("--tol", cfg.tol, "tolerance for the lift parameter")->capture_default_str()->check(
        CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();

    Output out;
    try {
        if (sub == bounds)
            out = cmd_bounds(cfg);
        else if (sub == lambda)
            out = cmd_lambda(cfg);
        else if (sub == angles)
            out = cmd_angles(cfg);
        else if (sub == fit)
            out = cmd_blaschke_fit(cfg);
        else
            out = cmd_xratio_verify(cfg);
    } catch (const ParseError& e) {
        std::cerr << "siegel-cli: parse error: " << e.what() << '\n';
        return kParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "siegel-cli: invalid argument: " << e.what() << '\n';
        return kParse;
    } catch (const PrecisionError& e) {
        std::cerr << "siegel-cli: numeric failure at n = " << e.failing_n << ": " << e.what() << '\n';
        return kNumeric;
    } catch (const AmbiguityError& e) {
        std::cerr << "siegel-cli: numeric failure at backward step " << e.step << ": " << e.what() << '\n';
        return kNumeric;
    } catch (const std::runtime_error& e) {
        std::cerr << "siegel-cli: numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "siegel-cli: " << e.what() << '\n';
        return kInternal;
    }

    std::string text = out.report.dump(2) + "\n";
    try {
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            write_atomic(cfg.out, text);
            std::string csv = csv_path(cfg);
            if (!out.csv.empty() && !csv.empty()) write_atomic(csv, out.csv);
        }
    } catch (const std::exception& e) {
        std::cerr << "siegel-cli: " << e.what() << '\n';
        return kInternal;
    }
    return out.report["status"] == "ok" ? kOk : kCheckFailed;
}
