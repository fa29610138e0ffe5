// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "certistoch/dvw.hpp"
#include "certistoch/monte_carlo.hpp"
#include "certistoch/process.hpp"
#include "certistoch/psi.hpp"
#include "certistoch/series_model.hpp"
#include "certistoch/subgauss.hpp"
#include "certistoch/validation.hpp"

namespace certistoch::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string& s) {
    double v = 0;
    const auto* end = s.data() + s.size();
    auto r = std::from_chars(s.data(), end, v);
    if (r.ec != std::errc{} || r.ptr != end) throw UsageError("not a number: '" + s + "'");
    return v;
}

// "kind:p1[,p2]"
std::pair<std::string, std::vector<double>> kind_and_params(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, {}};
    std::vector<double> ps;
    for (const auto& s : split(spec.substr(colon + 1), ',')) ps.push_back(to_double(s));
    return {spec.substr(0, colon), ps};
}

void need(const std::vector<double>& ps, std::size_t lo, std::size_t hi, const std::string& what) {
    if (ps.size() < lo || ps.size() > hi) throw UsageError("wrong parameter count for " + what);
}

PsiFamily parse_family(const std::string& spec) {
    auto [kind, ps] = kind_and_params(spec);
    if (kind == "power") {
        need(ps, 1, 1, "power:alpha");
        return PsiFamily::power(ps[0]);
    }
    if (kind == "exppower") {
        need(ps, 2, 2, "exppower:a,beta");
        return PsiFamily::exp_power(ps[0], ps[1]);
    }
    if (kind == "logpower") {
        need(ps, 1, 1, "logpower:lambda");
        return PsiFamily::log_power(ps[0]);
    }
    throw UsageError("unknown psi family '" + kind + "' (power, exppower, logpower)");
}

json family_json(const PsiFamily& f) {
    switch (f.kind()) {
        case PsiKind::power: return {{"kind", "power"}, {"alpha", f.alpha()}};
        case PsiKind::exp_power: return {{"kind", "exppower"}, {"a", f.a()}, {"beta", f.beta()}};
        case PsiKind::log_power: return {{"kind", "logpower"}, {"lambda", f.lambda()}};
        case PsiKind::tabulated: return {{"kind", f.name()}};
    }
    return {};
}

// "1.5", "pi", "pi/2", "pi*0.25"
double parse_A(const std::string& s) {
    if (s.rfind("pi", 0) == 0) {
        if (s == "pi") return std::numbers::pi;
        if (s.size() > 3 && s[2] == '/') return std::numbers::pi / to_double(s.substr(3));
        if (s.size() > 3 && s[2] == '*') return std::numbers::pi * to_double(s.substr(3));
        throw UsageError("cannot read A='" + s + "'");
    }
    return to_double(s);
}

struct Globals {
    std::string config;
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 42;
    int workers = 0;
};

std::uint64_t default_seed() {
    if (const char* s = std::getenv("CERTISTOCH_SEED")) {
        std::uint64_t v = 0;
        const std::string str(s);
        auto r = std::from_chars(str.data(), str.data() + str.size(), v);
        if (r.ec == std::errc{} && r.ptr == str.data() + str.size()) return v;
        throw UsageError("CERTISTOCH_SEED is not an unsigned integer");
    }
    return 42;
}

// Apply a JSON object of {"option-name": value} on top of the parsed flags.
void apply_config(CLI::App* leaf, const json& cfg) {
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        CLI::Option* opt = nullptr;
        for (CLI::App* app = leaf; app && !opt; app = app->get_parent()) opt = app->get_option_no_throw("--" + key);
        if (!opt) throw UsageError("config key '" + key + "' is not an option of this command");
        if (key == "config") throw UsageError("config may not nest");
        auto as_text = [](const json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
            if (v.is_number()) return v.dump();
            throw UsageError("config values must be scalars or arrays of scalars");
        };
        opt->clear();
        if (value.is_array()) {
            for (const auto& e : value) opt->add_result(as_text(e));
        } else {
            opt->add_result(as_text(value));
        }
        opt->run_callback();
    }
}

class Emitter {
public:
    Emitter(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

    bool csv() const { return g_.format == "csv"; }

    void write(const std::string& text) {
        if (g_.output.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(g_.output, std::ios::binary);
        if (!f) throw UsageError("cannot open output file " + g_.output);
        f << text;
    }

    // JSON document; in CSV mode the "rows" array (or the flat object) becomes a table.
    void emit(const json& doc) {
        if (!csv()) {
            write(doc.dump(2) + "\n");
            return;
        }
        std::ostringstream os;
        const json* rows = doc.contains("rows") ? &doc["rows"] : nullptr;
        if (rows && rows->is_array() && !rows->empty()) {
            bool first = true;
            for (const auto& [k, v] : (*rows)[0].items()) {
                (void)v;
                os << (first ? "" : ",") << k;
                first = false;
            }
            os << "\n";
            for (const auto& r : *rows) {
                first = true;
                for (const auto& [k, v] : r.items()) {
                    (void)k;
                    os << (first ? "" : ",") << cell(v);
                    first = false;
                }
                os << "\n";
            }
        } else {
            os << "key,value\n";
            for (const auto& [k, v] : doc.items())
                if (!v.is_structured()) os << k << "," << cell(v) << "\n";
        }
        write(os.str());
    }

    static std::string cell(const json& v) {
        if (v.is_number_float()) return fmt17(v.get<double>());
        if (v.is_string()) return v.get<std::string>();
        if (v.is_null()) return "";
        return v.dump();
    }

private:
    const Globals& g_;
    std::ostream& out_;
};

json num(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? json("inf") : (v < 0 ? json("-inf") : json("nan"));
}

struct CaseArgs {
    std::string A = "pi/2";
    double a = 0, b = 1, beta = 1, alpha = 0.5;
    double c_delta = 2 * std::numbers::sqrt2 * std::exp(-5.0 / 6.0);

    void bind(CLI::App* app) {
        app->add_option("--A", A, "spectral cutoff, number or pi/x")->capture_default_str();
        app->add_option("--a", a, "left end of the time interval")->capture_default_str();
        app->add_option("--b", b, "right end of the time interval")->capture_default_str();
        app->add_option("--beta", beta, "Hoelder exponent of the coefficients")->capture_default_str();
        app->add_option("--alpha", alpha, "psi exponent")->capture_default_str();
        app->add_option("--c-delta", c_delta, "determining constant C_Delta")->capture_default_str();
    }
    CaseStudyParams params() const {
        CaseStudyParams p;
        p.A = parse_A(A);
        p.a = a;
        p.b = b;
        p.beta = beta;
        p.alpha = alpha;
        p.C_Delta = c_delta;
        validate(p);
        return p;
    }
};

json params_json(const CaseStudyParams& p) {
    return {{"A", p.A}, {"a", p.a}, {"b", p.b}, {"beta", p.beta}, {"alpha", p.alpha}, {"C_Delta", p.C_Delta}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified probability bounds, truncation levels and Monte Carlo sample sizes", "certistoch"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    try {
        g.seed = default_seed();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    app.add_option("--config", g.config, "JSON file whose keys override command-line options");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output,-o", g.output, "write to this file instead of stdout");
    app.add_option("--seed", g.seed, "base seed (default: $CERTISTOCH_SEED or 42)");
    app.add_option("--workers", g.workers, "worker threads for parallel kernels (0 = all)");

    // bound
    auto* bound = app.add_subcommand("bound", "tail bounds for variables and process suprema");
    bound->require_subcommand(1);
    std::string family;
    double norm = 0;
    std::vector<double> eps_list;
    auto* b_tail = bound->add_subcommand("tail", "P{|xi| > eps} for xi in F_psi");
    b_tail->add_option("--family", family, "power:alpha | exppower:a,beta | logpower:lambda")->required();
    b_tail->add_option("--norm", norm, "||xi||_psi")->required();
    b_tail->add_option("--eps", eps_list, "comma-separated thresholds")->required()->delimiter(',');

    double inf_norm = 0, cbar = 0, hdelta = 1, p_fixed = 0, tau = 0;
    std::vector<double> domain{0, 1};
    bool majorant = false;
    auto* b_sup = bound->add_subcommand("sup", "B(p) for sup |X(t)| on an interval, optional tails");
    b_sup->add_option("--family", family, "psi family")->required();
    b_sup->add_option("--inf-norm", inf_norm, "inf_t ||X(t)||_psi")->required();
    b_sup->add_option("--cbar", cbar, "Hoelder constant")->required();
    b_sup->add_option("--hdelta", hdelta, "Hoelder exponent in (0, 1]")->capture_default_str();
    b_sup->add_option("--domain", domain, "c,d")->delimiter(',')->expected(2);
    auto* sup_p = b_sup->add_option("--p", p_fixed, "fixed p in (0,1); optimized when absent");
    b_sup->add_flag("--majorant", majorant, "also report the power-family analytic majorant");
    auto* sup_tau = b_sup->add_option("--tau", tau, "tau for the majorant (default delta/(2 alpha))");
    b_sup->add_option("--eps", eps_list, "thresholds for P{sup|X| > eps}")->delimiter(',');

    // kappa
    auto* kap = app.add_subcommand("kappa", "majorizing characteristic kappa(n)");
    std::vector<std::int64_t> ns;
    kap->add_option("--family", family, "psi family")->required();
    kap->add_option("--n", ns, "comma-separated n >= 1")->required()->delimiter(',');

    // mc
    auto* mc = app.add_subcommand("mc", "certified Monte Carlo");
    mc->require_subcommand(1);
    double eps = 0.1, delta = 0.05, L = 1, demo_a = 1, demo_b = 0.5;
    std::string route = "psi", ufam = "power:2";
    std::int64_t n_fixed = 0;
    auto* mc_cert = mc->add_subcommand("certify", "sample size for accuracy eps and reliability 1-delta");
    mc_cert->add_option("--eps", eps, "accuracy")->required();
    mc_cert->add_option("--delta", delta, "1 - reliability")->required();
    mc_cert->add_option("--route", route, "psi or orlicz")->check(CLI::IsMember({"psi", "orlicz"}))->capture_default_str();
    mc_cert->add_option("--family", family, "psi family (psi route)");
    mc_cert->add_option("--norm", norm, "||xi||_psi (psi route)");
    mc_cert->add_option("--L", L, "Orlicz norm bound (orlicz route)")->capture_default_str();
    mc_cert->add_option("--U", ufam, "power:p or exp:alpha (orlicz route)")->capture_default_str();

    auto* mc_run = mc->add_subcommand("run", "estimate sqrt(2pi) a E exp(-b xi), xi ~ N(0, a^2)");
    mc_run->add_option("--eps", eps, "accuracy")->capture_default_str();
    mc_run->add_option("--delta", delta, "1 - reliability")->capture_default_str();
    mc_run->add_option("--a", demo_a, "scale a")->capture_default_str();
    mc_run->add_option("--b", demo_b, "exponent b")->capture_default_str();
    auto* run_n = mc_run->add_option("--n", n_fixed, "sample size (certified when absent)");

    // model
    auto* model = app.add_subcommand("model", "case-study series model");
    model->require_subcommand(1);
    CaseArgs ca;
    std::int64_t cap = 100'000'000, N = 100, paths = 10;
    std::vector<double> grid_spec{0, 1, 11};
    bool zero = false;
    auto* m_sel = model->add_subcommand("select-n", "smallest N meeting (eps, 1-delta)");
    ca.bind(m_sel);
    m_sel->add_option("--eps", eps, "accuracy")->required();
    m_sel->add_option("--delta", delta, "1 - reliability")->required();
    m_sel->add_option("--cap", cap, "largest N searched")->capture_default_str();

    auto* m_sim = model->add_subcommand("simulate", "sample trajectories of X_N on a grid");
    ca.bind(m_sim);
    m_sim->add_option("--N", N, "truncation level")->capture_default_str();
    m_sim->add_option("--paths", paths, "number of paths")->capture_default_str();
    m_sim->add_option("--grid", grid_spec, "lo,hi,count")->delimiter(',')->expected(3);
    m_sim->add_flag("--zero", zero, "use the degenerate sampler xi_k = 0");

    auto* m_const = model->add_subcommand("constants", "remainder constants and B_hat_N");
    ca.bind(m_const);
    m_const->add_option("--N", N, "truncation level")->capture_default_str();

    // dvw
    auto* dvw = app.add_subcommand("dvw", "D_{V,W} spaces with V=|x|^b, W=|x|^a");
    dvw->require_subcommand(1);
    double da = 1, db = 1, zeta = 1, T_len = 1, delta_n = 0, inf_pre = 0, accuracy = 1, nu = 0.1, theta = 0.5;
    std::string tail_spec, prenorm_spec = "1,2", holder_spec;
    double brownian = 0;
    std::int64_t dN = 0;
    auto* d_pre = dvw->add_subcommand("prenorm", "prenorm of a registered tail family");
    d_pre->add_option("--a", da, "W exponent")->required();
    d_pre->add_option("--b", db, "V exponent")->required();
    d_pre->add_option("--tail", tail_spec, "pareto:c[,s] | cauchy:gamma[,s] | gaussian:sigma[,s]")->required();

    auto* d_chk = dvw->add_subcommand("check", "model reliability condition for accuracy and 1-nu");
    d_chk->add_option("--a", da, "W exponent")->required();
    d_chk->add_option("--b", db, "V exponent")->required();
    d_chk->add_option("--zeta", zeta, "Hoelder exponent of the basis")->required();
    d_chk->add_option("--T", T_len, "interval length")->capture_default_str();
    d_chk->add_option("--delta-n", delta_n, "Delta_N")->capture_default_str();
    d_chk->add_option("--inf-prenorm", inf_pre, "inf prenorm of the remainder")->capture_default_str();
    d_chk->add_option("--N", dN, "truncation level")->capture_default_str();
    d_chk->add_option("--prenorms", prenorm_spec, "s,e: ||xi_k|| = s k^-e")->capture_default_str();
    auto* hold_opt = d_chk->add_option("--holder", holder_spec, "c,e: C_k = c k^-e");
    auto* brown_opt = d_chk->add_option("--brownian", brownian, "C_k = (2/(pi k))^{1/2 - alpha}");
    d_chk->add_option("--accuracy", accuracy, "accuracy")->required();
    d_chk->add_option("--nu", nu, "1 - reliability")->required();
    auto* theta_opt = d_chk->add_option("--theta", theta, "theta in (0,1); optimized when absent");

    // subgauss
    auto* sg = app.add_subcommand("subgauss", "Sub_phi criteria and basis remainders");
    sg->require_subcommand(1);
    double cN = 0, lp_p = 2, gam = 2, alpha_rel = 0.05;
    auto* s_lp = sg->add_subcommand("lp-check", "L_p accuracy-reliability criteria");
    s_lp->add_option("--cN", cN, "tau budget c_N")->required();
    s_lp->add_option("--p", lp_p, "p >= 1")->capture_default_str();
    s_lp->add_option("--gamma", gam, "phi exponent (spliced when > 2)")->capture_default_str();
    s_lp->add_option("--delta", delta, "accuracy delta")->required();
    s_lp->add_option("--alpha", alpha_rel, "1 - reliability")->required();

    double C = 1, ae = 1, gamma_N = 0.1;
    std::vector<double> xs;
    auto* s_ct = sg->add_subcommand("ct-bound", "C(T) sup bound for sigma(h) = C h^ae");
    s_ct->add_option("--C", C, "Hoelder constant")->capture_default_str();
    s_ct->add_option("--ae", ae, "Hoelder exponent")->capture_default_str();
    s_ct->add_option("--zeta", zeta, "zeta >= 2")->required();
    s_ct->add_option("--gamma-N", gamma_N, "sup tau of the remainder")->required();
    s_ct->add_option("--T", T_len, "interval length")->capture_default_str();
    s_ct->add_option("--x", xs, "comma-separated levels")->required()->delimiter(',');

    std::string basis = "hermite-geometric";
    double btau = 1, bw = 0.5, balpha = 0.5;
    std::int64_t bN = 10;
    std::vector<double> bT{0, 1};
    auto* s_basis = sg->add_subcommand("basis", "remainder bound for an orthogonal-basis model");
    s_basis->add_option("--basis", basis, "cosine, hermite, hermite-geometric, chebyshev-t, chebyshev-u, legendre, laguerre, gegenbauer")
        ->capture_default_str();
    s_basis->add_option("--tau", btau, "tau")->capture_default_str();
    s_basis->add_option("--w", bw, "generating-function parameter in (0,1)")->capture_default_str();
    s_basis->add_option("--N", bN, "truncation level")->capture_default_str();
    s_basis->add_option("--alpha", balpha, "Laguerre/Gegenbauer parameter")->capture_default_str();
    s_basis->add_option("--p", lp_p, "L_p exponent")->capture_default_str();
    s_basis->add_option("--T", bT, "lo,hi")->delimiter(',')->expected(2);

    // validate
    auto* val = app.add_subcommand("validate", "empirical frequency vs bound experiments");
    val->require_subcommand(1);
    std::int64_t samples = 10'000'000, trials = 500, grid_points = 1000, extra = 2000;
    double eps_factor = 3;
    std::int64_t sup_N = 50, sup_paths = 1000;
    auto* v_tail = val->add_subcommand("tail-gauss", "Gaussian tail vs the sqrt(u) bound");
    v_tail->add_option("--eps", eps_list, "thresholds")->delimiter(',');
    v_tail->add_option("--samples", samples, "draws per threshold")->capture_default_str();
    auto* v_cov = val->add_subcommand("mc-coverage", "failure rate of certified Monte Carlo");
    v_cov->add_option("--eps", eps, "accuracy")->capture_default_str();
    v_cov->add_option("--delta", delta, "1 - reliability")->capture_default_str();
    v_cov->add_option("--trials", trials, "independent runs")->capture_default_str();
    v_cov->add_option("--a", demo_a, "scale a")->capture_default_str();
    v_cov->add_option("--b", demo_b, "exponent b")->capture_default_str();
    auto* v_sup = val->add_subcommand("sup-bound", "discretized sup of the series remainder vs its tail bound");
    v_sup->add_option("--N", sup_N, "truncation level")->capture_default_str();
    v_sup->add_option("--eps-factor", eps_factor, "eps as a multiple of B_hat_N")->capture_default_str();
    v_sup->add_option("--paths", sup_paths, "simulated remainders")->capture_default_str();
    v_sup->add_option("--grid-points", grid_points, "grid size for the sup")->capture_default_str();
    v_sup->add_option("--extra-terms", extra, "remainder terms kept beyond N")->capture_default_str();

    std::vector<std::string> argv_store{"certistoch"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    // Find the leaf subcommand that was invoked.
    CLI::App* leaf = &app;
    for (;;) {
        auto subs = leaf->get_subcommands();
        if (subs.empty()) break;
        leaf = subs.front();
    }

    try {
        if (!g.config.empty()) {
            std::ifstream f(g.config);
            if (!f) throw UsageError("cannot read config file " + g.config);
            json cfg;
            try {
                cfg = json::parse(f);
            } catch (const json::exception& e) {
                throw UsageError(std::string("config is not valid JSON: ") + e.what());
            }
            apply_config(leaf, cfg);
        }
        Emitter em(g, out);

        if (leaf == b_tail) {
            const auto fam = parse_family(family);
            json rows = json::array();
            for (double e : eps_list) {
                const bool closed = closed_form_tail(fam, norm, e).has_value();
                rows.push_back({{"eps", e}, {"bound", tail_bound(fam, norm, e)}, {"closed_form", closed}});
            }
            em.emit({{"family", family_json(fam)}, {"norm", norm}, {"rows", rows}});
        } else if (leaf == b_sup) {
            if (domain.size() != 2) throw UsageError("--domain needs c,d");
            ProcessSpec spec{parse_family(family), inf_norm, {cbar, hdelta}, {domain[0], domain[1]}};
            const auto sb = sup_p->count() ? sup_norm_bound(spec, p_fixed) : sup_norm_bound(spec);
            json doc{{"family", family_json(spec.family)},
                     {"value", sb.value},
                     {"p_used", sb.p_used},
                     {"base", sb.base},
                     {"integral_term", sb.integral_term}};
            if (majorant) {
                const std::optional<double> t = sup_tau->count() ? std::optional<double>(tau) : std::nullopt;
                const auto mj = sup_norm_bound_power_majorant(spec, sb.p_used, t);
                doc["majorant"] = {{"value", mj.value}, {"integral_term", mj.integral_term}};
            }
            json rows = json::array();
            for (double e : eps_list) rows.push_back({{"eps", e}, {"bound", sup_tail_bound(sb, spec.family, e)}});
            doc["rows"] = rows;
            em.emit(doc);
        } else if (leaf == kap) {
            const auto fam = parse_family(family);
            json rows = json::array();
            for (auto n : ns) rows.push_back({{"n", n}, {"kappa", kappa(fam, n)}});
            em.emit({{"family", family_json(fam)}, {"rows", rows}});
        } else if (leaf == mc_cert) {
            McRequest req{eps, delta, OrliczRoute{1, UFamily::power(2)}};
            json doc{{"eps", eps}, {"delta", delta}, {"route", route}};
            if (route == "psi") {
                if (family.empty()) throw UsageError("psi route needs --family and --norm");
                req.route = PsiRoute{PsiVariable{parse_family(family), norm, {}}};
                doc["family"] = family_json(std::get<PsiRoute>(req.route).v.family);
                doc["norm"] = norm;
            } else {
                auto [k, ps] = kind_and_params(ufam);
                need(ps, 1, 1, "U");
                UFamily U = k == "power" ? UFamily::power(ps[0])
                            : k == "exp" ? UFamily::exp_alpha(ps[0])
                                         : throw UsageError("U must be power:p or exp:alpha");
                req.route = OrliczRoute{L, U};
                doc["L"] = L;
                doc["U"] = ufam;
            }
            json head{{"n", certify(req)}};
            head.update(doc);
            em.emit(head);
        } else if (leaf == mc_run) {
            DemoIntegral d{demo_a, demo_b};
            std::int64_t n = n_fixed;
            json doc = json::object();
            if (!run_n->count()) {
                const double nrm = demo_norm_for(d, 0.5, delta);
                n = sample_size_psi({PsiFamily::power(0.5), nrm, d.moment_fn()}, eps, delta);
                doc["norm"] = nrm;
            }
            const auto r = run_certified(d.sampler(), n, g.seed, g.workers);
            json head{{"n", r.n_certified}, {"estimate", r.estimate}, {"eps", eps}, {"delta", delta},
                      {"route", "psi"},     {"seed", r.seed},         {"truth", d.truth()}};
            head.update(doc);
            em.emit(head);
        } else if (leaf == m_sel) {
            const auto p = ca.params();
            const auto c = select_truncation(p, eps, delta, cap);
            em.emit({{"N", c.N},
                     {"threshold", c.threshold},
                     {"B_hat_at_N", c.B_hat_at_N},
                     {"B_hat_at_N_minus_1", num(c.B_hat_at_N_minus_1)},
                     {"eps", eps},
                     {"delta", delta},
                     {"params", params_json(p)}});
        } else if (leaf == m_sim) {
            if (grid_spec.size() != 3 || grid_spec[2] < 1) throw UsageError("--grid needs lo,hi,count");
            const auto count = static_cast<std::size_t>(grid_spec[2]);
            std::vector<double> grid(count);
            for (std::size_t j = 0; j < count; ++j)
                grid[j] = count == 1 ? grid_spec[0]
                                     : grid_spec[0] + (grid_spec[1] - grid_spec[0]) * static_cast<double>(j) / (count - 1);
            SeriesModel m{ca.params(), N, g.seed, zero ? XiSampler::zero : XiSampler::gaussian};
            const auto P = simulate(m, grid, paths, g.workers);
            if (em.csv()) {
                std::ostringstream os;
                os << "t";
                for (std::int64_t i = 0; i < paths; ++i) os << ",path_" << i;
                os << "\n";
                for (std::size_t j = 0; j < count; ++j) {
                    os << fmt17(grid[j]);
                    for (std::int64_t i = 0; i < paths; ++i) os << "," << fmt17(P.at(i, j));
                    os << "\n";
                }
                em.write(os.str());
            } else {
                json jp = json::array();
                for (std::int64_t i = 0; i < paths; ++i) {
                    json row = json::array();
                    for (std::size_t j = 0; j < count; ++j) row.push_back(P.at(i, j));
                    jp.push_back(row);
                }
                em.emit({{"N", N}, {"seed", g.seed}, {"params", params_json(m.params)}, {"t", grid}, {"paths", jp}});
            }
        } else if (leaf == m_const) {
            const auto p = ca.params();
            const auto c = remainder_constants(p);
            em.emit({{"params", params_json(p)},
                     {"c1t", c.c1t},
                     {"c2t", c.c2t},
                     {"c3t", c.c3t},
                     {"c1h", c.c1h},
                     {"c2h", c.c2h},
                     {"c3h", c.c3h},
                     {"c4h", c.c4h},
                     {"K", c.K},
                     {"N", N},
                     {"C_hat_N", c_hat_N(p, N)},
                     {"variance_tail", variance_tail_bound(p, N)},
                     {"B_hat_N", B_hat_N(p, N)}});
        } else if (leaf == d_pre) {
            const DvwSpace sp{da, db};
            auto [k, ps] = kind_and_params(tail_spec);
            need(ps, 1, 2, "tail");
            const double s = ps.size() > 1 ? ps[1] : 1.0;
            const TailFamily tf = k == "pareto"     ? TailFamily::pareto(ps[0], s)
                                  : k == "cauchy"   ? TailFamily::cauchy(ps[0], s)
                                  : k == "gaussian" ? TailFamily::gaussian(ps[0], s)
                                                    : throw UsageError("tail must be pareto, cauchy or gaussian");
            const double closed = dvw_prenorm_closed(sp, tf);
            const double grid = dvw_prenorm(sp, [&](double x) { return tf(x); });
            em.emit({{"a", da}, {"b", db}, {"q", sp.q()}, {"tail", tail_spec}, {"prenorm", closed},
                     {"grid_prenorm", grid}, {"rel_diff", std::abs(grid - closed) / closed}});
        } else if (leaf == d_chk) {
            const DvwSpace sp{da, db};
            auto pre = split(prenorm_spec, ',');
            if (pre.empty() || pre.size() > 2) throw UsageError("--prenorms needs s[,e]");
            const double ps = to_double(pre[0]), pe = pre.size() > 1 ? to_double(pre[1]) : 0.0;
            DvwModel m;
            m.N = dN;
            m.inf_prenorm = inf_pre;
            m.Delta_N = delta_n;
            m.zeta = zeta;
            m.T_len = T_len;
            m.prenorm = [ps, pe](std::int64_t k) { return ps * std::pow(static_cast<double>(k), -pe); };
            if (brown_opt->count()) {
                const double al = brownian;
                m.holder_C = [al](std::int64_t k) {
                    return std::pow(2 / (std::numbers::pi * static_cast<double>(k)), 0.5 - al);
                };
            } else if (hold_opt->count()) {
                auto hs = split(holder_spec, ',');
                if (hs.empty() || hs.size() > 2) throw UsageError("--holder needs c[,e]");
                const double hc = to_double(hs[0]), he = hs.size() > 1 ? to_double(hs[1]) : 0.0;
                m.holder_C = [hc, he](std::int64_t k) { return hc * std::pow(static_cast<double>(k), -he); };
            } else {
                throw UsageError("dvw check needs --holder or --brownian");
            }
            const auto r = theta_opt->count() ? dvw_model_check(sp, m, accuracy, nu, theta)
                                              : dvw_model_check(sp, m, accuracy, nu);
            em.emit({{"pass", r.pass}, {"lhs", r.lhs}, {"nu", nu}, {"theta", r.theta}, {"tail_sum", r.tail_sum}});
        } else if (leaf == s_lp) {
            const auto phi = gam > 2 ? PhiFunction::spliced(gam) : PhiFunction::pure_power(gam);
            const auto r = lp_criteria({cN, lp_p}, phi, delta, alpha_rel);
            em.emit({{"pass", r.pass},
                     {"c_N", cN},
                     {"reliability_limit", r.reliability_limit},
                     {"shape_limit", r.shape_limit}});
        } else if (leaf == s_ct) {
            const double thr = ct_threshold(C, ae, zeta, gamma_N, T_len);
            json rows = json::array();
            for (double x : xs) rows.push_back({{"x", x}, {"bound", ct_tail_bound(C, ae, zeta, gamma_N, T_len, x)}});
            em.emit({{"threshold", thr}, {"rows", rows}});
        } else if (leaf == s_basis) {
            if (bT.size() != 2) throw UsageError("--T needs lo,hi");
            BasisRemainderInput in;
            in.basis = basis_from_string(basis);
            in.tau = btau;
            in.w = bw;
            in.N = bN;
            in.alpha = balpha;
            in.p = lp_p;
            in.T = {bT[0], bT[1]};
            const auto r = basis_remainder(in);
            json br = json::object();
            for (const auto& t : r.breakdown) br[t.name] = t.value;
            em.emit({{"basis", basis},
                     {"sup", r.sup_value},
                     {"argsup_t", r.argsup_t},
                     {"c_N", r.c_N},
                     {"breakdown", br}});
        } else if (leaf == v_tail) {
            if (eps_list.empty()) eps_list = {3, 4, 5};
            json rows = json::array();
            bool all = true;
            for (std::size_t i = 0; i < eps_list.size(); ++i) {
                const auto r = validate_tail_gauss(eps_list[i], samples, derive_seed(g.seed, i), g.workers);
                all = all && r.pass;
                rows.push_back({{"eps", eps_list[i]}, {"bound", r.bound}, {"frequency", r.frequency},
                                {"trials", r.trials}, {"pass", r.pass}});
            }
            em.emit({{"id", "tail-gauss"}, {"pass", all}, {"seed", g.seed}, {"rows", rows}});
        } else if (leaf == v_cov) {
            const auto r = validate_mc_coverage({demo_a, demo_b}, eps, delta, trials, g.seed, g.workers);
            em.emit({{"id", r.report.id},
                     {"bound", r.report.bound},
                     {"frequency", r.report.frequency},
                     {"trials", r.report.trials},
                     {"pass", r.report.pass},
                     {"n_certified", r.n_certified},
                     {"norm", r.norm},
                     {"seed", g.seed},
                     {"note", r.report.note}});
        } else if (leaf == v_sup) {
            const double e = eps_factor * B_hat_N(CaseStudyParams{}, sup_N);
            const auto r = validate_sup_bound(sup_N, e, sup_paths, grid_points, extra, g.seed, g.workers);
            em.emit({{"id", r.id},
                     {"eps", e},
                     {"bound", r.bound},
                     {"frequency", r.frequency},
                     {"trials", r.trials},
                     {"pass", r.pass},
                     {"seed", g.seed},
                     {"note", r.note}});
        } else {
            throw UsageError("no command given");
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kUsage;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return kCap;
    } catch (const DivergenceError& e) {
        err << "divergence: " << e.what() << " (exponent " << fmt17(e.exponent) << ")\n";
        return kValidity;
    } catch (const ValidityError& e) {
        err << "not valid: " << e.what() << " (threshold " << fmt17(e.threshold) << ")\n";
        return kValidity;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidity;
    }
    return kOk;
}

}  // namespace certistoch::cli
