#include "reports.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace siegel::cli {

Json to_json(const RunConfig& cfg) {
    Json j;
    j["command"] = cfg.command;
    j["cf"] = cfg.cf;
    j["n_max"] = cfg.n_max;
    j["precision_bits"] = cfg.bits;
    j["escape_radius"] = cfg.escape;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["control"] = cfg.control;
    j["Q"] = cfg.Q;
    j["B"] = cfg.B;
    j["tol"] = cfg.tol;
    j["out"] = cfg.out;
    j["csv"] = cfg.csv;
    return j;
}

Json to_json(const TowerReal& x) {
    Json j;
    j["text"] = x.str();
    j["sign"] = x.sign();
    j["level"] = x.level();
    j["mag"] = x.mag();
    j["recip"] = x.recip();
    j["exact"] = x.exact();
    return j;
}

Json to_json(const ConstantsLedger& l) {
    Json j;
    j["Q"] = l.Q;
    j["B"] = l.B;
    j["c"] = l.c;
    j["ln_K1"] = l.ln_K1;
    j["K1"] = to_json(l.K1);
    j["K2"] = to_json(l.K2);
    j["M"] = to_json(l.M);
    j["K"] = to_json(l.K);
    j["one_minus_gamma"] = to_json(l.one_minus_gamma);
    return j;
}

Json to_json(const BoundsReport& r) {
    Json j;
    j["case"] = case_tag(r.scase);
    j["alpha"] = r.alpha;
    j["s"] = r.s;
    j["vartheta"] = r.vartheta;
    j["B"] = r.B;
    j["exponent"] = r.exponent;
    j["lower"] = r.lower;
    j["lower_excess"] = to_json(r.lower_excess);
    j["lower_text"] = "alpha * (" + render_one_plus(r.lower_excess) + ")";
    j["upper"] = to_json(r.upper);
    j["one_minus_upper"] = to_json(r.one_minus_upper);
    j["upper_text"] = r.upper_vacuous ? std::string("1 (vacuous)") : render_one_minus(r.one_minus_upper);
    j["upper_vacuous"] = r.upper_vacuous;
    j["note"] = r.note;
    return j;
}

Json to_json(const UniformConstants& u) {
    Json j;
    j["C2"] = to_json(u.C2);
    j["delta2"] = to_json(u.delta2);
    j["bound"] = to_json(u.bound);
    j["vacuous"] = u.vacuous;
    return j;
}

Json to_json(const ScalingEstimate& e) {
    Json j;
    j["n"] = e.n;
    j["lambda_hat"] = {e.lambda_hat.real(), e.lambda_hat.imag()};
    j["lambda"] = {e.lambda.real(), e.lambda.imag()};
    j["abs_lambda_hat"] = e.abs_lambda_hat;
    j["abs_lambda"] = e.abs_lambda;
    j["gap"] = e.gap;
    if (e.cauchy >= 0.0)
        j["cauchy"] = e.cauchy;
    else
        j["cauchy"] = nullptr;
    return j;
}

Json to_json(const Direction& d) { return Json{{"degrees", d.degrees}, {"error", d.error}}; }

Json to_json(const AngleReport& r) {
    Json j;
    j["forward_odd"] = to_json(r.forward_odd);
    j["forward_even"] = to_json(r.forward_even);
    j["backward_odd"] = to_json(r.backward_odd);
    j["backward_even"] = to_json(r.backward_even);
    j["forward_separation"] = to_json(r.forward_separation);
    j["backward_separation"] = to_json(r.backward_separation);
    return j;
}

Json to_json(const StripReport& r) {
    Json j;
    j["gamma_min"] = r.gamma_min;
    j["gamma_max"] = r.gamma_max;
    j["points_in_window"] = r.points_in_window;
    j["orbit_length"] = r.orbit_length;
    Json w = Json::array();
    for (const auto& s : r.windows)
        w.push_back({{"top", s.top}, {"gamma_min", s.gamma_min}, {"gamma_max", s.gamma_max}, {"bins", s.bins_used}});
    j["windows"] = w;
    return j;
}

Json make_report(const RunConfig& cfg, const std::vector<std::string>& formulas, Json result,
                 const std::vector<Check>& checks) {
    Json j;
    j["schema"] = kSchema;
    j["config"] = to_json(cfg);
    j["formulas"] = formulas;
    j["result"] = std::move(result);
    Json cs = Json::array();
    for (const Check& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = cs;
    j["status"] = all_pass(checks) ? "ok" : "check-failed";
    return j;
}

bool all_pass(const std::vector<Check>& checks) {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string returns_csv(const ReturnSequence& seq) {
    std::ostringstream os;
    os.precision(17);
    os << "n,q_n,re_z,im_z,abs_z_minus_1,arg_z_minus_1\n";
    for (const ReturnPoint& p : seq.points)
        os << p.n << ',' << p.q.get_str() << ',' << p.z_re << ',' << p.z_im << ',' << p.dist << ','
           << std::arg(p.w) << '\n';
    return os.str();
}

std::string lift_csv(const CircleLift& lift, int samples) {
    std::ostringstream os;
    os.precision(17);
    os << "x,g_x\n";
    for (int i = 0; i <= samples; ++i) {
        double x = static_cast<double>(i) / samples;
        os << x << ',' << lift_eval(lift, x) << '\n';
    }
    return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

}  // namespace siegel::cli
