// Command-line front end: construct the soliton profile, evolve the
// reduced flow, run the verification suites, and emit deterministic CSV.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hopf/curvature.hpp"
#include "hopf/flow.hpp"
#include "hopf/forms.hpp"
#include "hopf/metric.hpp"
#include "hopf/soliton.hpp"
#include "hopf/surface.hpp"
#include "hopf/util.hpp"

namespace {

using namespace hopf;
namespace fs = std::filesystem;

struct RunConfig {
    double alpha_mod = std::exp(-2.0);
    double alpha_arg = 0.0;
    double beta_mod = std::exp(-1.0);
    double beta_arg = 0.0;
    double L = 40.0;
    int N = 2001;
    double T = 10.0;
    double dt0 = 1e-2;
    double dt_max = 0.5;
    double record_dt = 1.0;
    double target = 0.0;
    double tol = 1e-8;
    std::uint64_t seed = 12345;
    std::string out = ".";

    SurfaceParams surface() const {
        return surface_params(std::polar(alpha_mod, alpha_arg), std::polar(beta_mod, beta_arg));
    }

    void validate() const {
        if (!(alpha_mod > 0.0 && alpha_mod < 1.0) || !(beta_mod > 0.0 && beta_mod < 1.0))
            throw CLI::ValidationError("moduli must lie in (0,1)");
        if (N < 3 || N % 2 == 0)
            throw CLI::ValidationError("N must be odd and at least 3 (grid must contain x = 0)");
        if (!(tol > 0.0)) throw CLI::ValidationError("tolerances must be positive");
        if (!(L > 0.0)) throw CLI::ValidationError("L must be positive");
    }

    fs::path out_path(const std::string& name) const {
        fs::create_directories(out);
        return fs::path(out) / name;
    }
};

std::vector<double> make_grid(double L, int N) {
    std::vector<double> g(static_cast<std::size_t>(N));
    const double h = 2.0 * L / (N - 1);
    for (int i = 0; i < N; ++i) g[static_cast<std::size_t>(i)] = -L + i * h;
    return g;
}

// ---------------------------------------------------------------- soliton

int cmd_soliton(const RunConfig& cfg) {
    cfg.validate();
    const SurfaceParams p = cfg.surface();
    const auto grid = make_grid(cfg.L, cfg.N);
    const SolitonProfile sol = solve_profile(p, grid);
    const MetricProfile g = sol.as_metric_profile();

    {
        io::CsvWriter csv(cfg.out_path("soliton.csv").string(),
                          {"x", "kappa", "kappa_x", "kappa_xx"});
        for (double x : grid) {
            const Jet2 j = sol.jet(x);
            csv.row({x, j.v, j.d1, j.d2});
        }
    }

    // asymptotics and the residual are probed where doubles still resolve
    // the k -> 1 tail (beyond |x| ~ 37 kappa rounds to exactly 1)
    const double L_rep = std::min(cfg.L, 30.0);
    const AsymptoticsReport rep = check_asymptotics(g, p, L_rep, 1e-6);
    std::vector<double> resolvable;
    for (double x : grid) {
        const double k = sol.k_of_x(x);
        if (k > 0.0 && k < 1.0) resolvable.push_back(x);
    }
    const double residual = soliton_residual(g, p.mu, resolvable);

    {
        std::ofstream f(cfg.out_path("soliton_report.txt"));
        f << "surface: a=" << io::fmt17(p.a) << " b=" << io::fmt17(p.b)
          << " mu=" << io::fmt17(p.mu) << " c_k=" << io::fmt17(p.c_k) << "\n";
        f << "gauge: kappa(0) = 0.5\n";
        f << "soliton_residual over the grid: " << io::fmt17(residual) << "\n";
        f << "asymptotics at x = +-" << io::fmt17(L_rep) << ":\n";
        for (const auto& it : rep.items)
            f << "  " << it.name << " = " << io::fmt17(it.value)
              << (it.pass ? "  PASS" : "  FAIL") << "\n";
    }

    const bool ok = residual < cfg.tol && rep.all_pass;
    std::printf("%s soliton residual %.3e (tol %.1e), asymptotics %s\n", ok ? "PASS" : "FAIL",
                residual, cfg.tol, rep.all_pass ? "pass" : "fail");
    return ok ? 0 : 1;
}

// ------------------------------------------------------------------- flow

MetricProfile load_initial_csv(const std::string& path, double L, int N) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open initial data file: " + path);
    std::string line;
    std::getline(f, line); // header x,k,theta
    std::vector<double> xs, thetas;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string fx, fk, fth;
        if (!std::getline(ss, fx, ',') || !std::getline(ss, fk, ',') || !std::getline(ss, fth))
            throw std::runtime_error("snapshot row needs columns x,k,theta");
        xs.push_back(std::stod(fx));
        thetas.push_back(std::stod(fth));
    }
    if (static_cast<int>(xs.size()) != N)
        throw std::runtime_error("initial data row count does not match N");
    const double h = 2.0 * L / (N - 1);
    for (int i = 0; i < N; ++i)
        if (std::abs(xs[static_cast<std::size_t>(i)] - (-L + i * h)) > 1e-9)
            throw std::runtime_error("initial data grid does not match L, N");
    // linear interpolation of the tabulated logit; finite-difference jets
    auto theta_at = [xs, thetas, L, h](double x) {
        const double pos = (x + L) / h;
        const auto i = static_cast<std::size_t>(std::min<double>(
            std::max(0.0, std::floor(pos)), static_cast<double>(xs.size()) - 2));
        const double t = pos - static_cast<double>(i);
        return (1.0 - t) * thetas[i] + t * thetas[i + 1];
    };
    return MetricProfile::diagonal([theta_at, h](double x) {
        const double th = theta_at(x);
        const double k = 1.0 / (1.0 + std::exp(-th));
        const double w = k * (1.0 - k);
        const double thp = (theta_at(x + h) - theta_at(x - h)) / (2.0 * h);
        const double thpp = (theta_at(x + h) - 2.0 * th + theta_at(x - h)) / (h * h);
        return Jet2{k, w * thp, w * (1.0 - 2.0 * k) * thp * thp + w * thpp};
    });
}

int cmd_flow(const RunConfig& cfg, const std::string& initial, double bump_amp, double bump_center,
             double bump_width) {
    cfg.validate();
    const SurfaceParams p = cfg.surface();
    const SolitonProfile sol(p);

    MetricProfile init = sol.as_metric_profile();
    if (initial == "bump")
        init = soliton_with_bump(sol, bump_amp, bump_center, bump_width);
    else if (initial != "soliton")
        init = load_initial_csv(initial, cfg.L, cfg.N);

    FlowControls c;
    c.L = cfg.L;
    c.N = cfg.N;
    c.dt0 = cfg.dt0;
    c.dt_max = cfg.dt_max;
    c.record_dt = cfg.record_dt;
    c.target = cfg.target;

    FlowState final_state;
    const auto traj = run_flow(init, p, cfg.T, c, &final_state);

    {
        io::CsvWriter csv(cfg.out_path("trajectory.csv").string(),
                          {"t", "C_low", "C_high", "shift", "aligned_sup_error", "torsion_norm"});
        for (const auto& d : traj)
            csv.row({d.t, d.C_low, d.C_high, d.shift, d.aligned_sup_error, d.torsion_norm});
    }
    {
        io::CsvWriter csv(cfg.out_path("snapshot.csv").string(), {"x", "k", "theta"});
        for (std::size_t i = 0; i < final_state.grid.size(); ++i)
            csv.row({final_state.grid[i], final_state.k_at(i), final_state.theta[i]});
    }

    bool monotone = true;
    double prev = 1e300;
    for (const auto& d : traj) {
        const double env = std::max(d.C_low, d.C_high);
        if (env > prev + 1e-6) monotone = false;
        prev = env;
    }
    const bool target_ok = cfg.target <= 0.0 || traj.back().aligned_sup_error < cfg.target;
    const bool ok = monotone && target_ok;
    std::printf("%s flow to t=%.6g: aligned %.3e, envelope %s\n", ok ? "PASS" : "FAIL",
                final_state.t, traj.back().aligned_sup_error,
                monotone ? "monotone" : "NOT monotone");
    return ok ? 0 : 1;
}

// ----------------------------------------------------------------- verify

struct ReportRow {
    std::string check;
    std::string point;
    double residual;
    bool pass;
};

void oracle_order_rows(const SurfaceParams& p, std::vector<ReportRow>& rows) {
    const SolitonProfile sol(p);
    auto sine = [](double off, double amp, double w, double ph) {
        return ProfileFn([=](double x) {
            const double s = std::sin(w * x + ph), c = std::cos(w * x + ph);
            return Jet2{off + amp * s, amp * w * c, -amp * w * w * s};
        });
    };
    auto with_sech = [](ProfileFn f, double amp, double w) {
        return ProfileFn([f = std::move(f), amp, w](double x) {
            const Jet2 j = f(x);
            const double s = 1.0 / std::cosh(w * x), t = std::tanh(w * x);
            return Jet2{j.v + amp * s, j.d1 - amp * w * s * t,
                        j.d2 + amp * w * w * (s * t * t - s * (1.0 - t * t))};
        });
    };
    struct Named {
        std::string name;
        MetricProfile g;
    };
    const MetricProfile gsol = sol.as_metric_profile();
    std::vector<Named> profiles;
    profiles.push_back({"soliton", gsol});
    profiles.push_back(
        {"soliton_bumped", {with_sech(gsol.k, 0.01, 1.0), gsol.n, constant_fn(0.0), constant_fn(1.0)}});
    profiles.push_back({"smooth_1",
                        {sine(0.7, 0.15, 0.9, 0.3), sine(0.1, 0.1, 1.3, 1.0),
                         sine(0.0, 0.08, 0.7, 2.0), constant_fn(1.0)}});
    profiles.push_back({"smooth_2",
                        {sine(0.65, 0.2, 1.1, 0.0), sine(-0.05, 0.12, 0.8, 0.7),
                         sine(0.02, 0.1, 1.7, 0.2), constant_fn(1.0)}});
    profiles.push_back({"diag_sine", MetricProfile::diagonal(sine(0.5, 0.3, 0.5, 0.0))});

    const double hs[3] = {1e-2, 5e-3, 2.5e-3};
    const double sample_x[3] = {-1.3, 0.4, 1.7};
    for (const auto& pr : profiles) {
        double errs[3] = {0.0, 0.0, 0.0};
        for (int j = 0; j < 3; ++j)
            for (double x : sample_x)
                errs[j] = std::max(
                    errs[j],
                    (bismut_ricci_oracle(pr.g, x, hs[j]) - bismut_ricci(pr.g, x)).max_abs());
        for (int j = 0; j + 1 < 3; ++j) {
            const double order = std::log2(errs[j] / errs[j + 1]);
            rows.push_back({"oracle_order", pr.name + "/h" + std::to_string(j),
                            std::abs(order - 2.0), order >= 1.8 && order <= 2.2});
        }
    }
}

void even_type_rows(const SurfaceParams& p, Rng& rng, bool perturbed,
                    std::vector<ReportRow>& rows) {
    const SolitonProfile sol(p);
    const MetricProfile g = sol.as_metric_profile();
    double lambda0 = 0.0;
    bool have_lambda = false;
    double lambda_spread = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double x = rng.uniform(-10.0, 10.0);
        const std::string pt = io::fmt17(x);
        const double fr = forms::frobenius_residual(g, p, x, perturbed);
        rows.push_back({"even_frobenius", pt, fr, fr < 1e-9});
        const double iso = forms::isotropy_residual(g, p, x);
        rows.push_back({"even_isotropy", pt, iso, iso < 1e-9});
        const double re = forms::real_part_residual(g, p, x);
        rows.push_back({"even_real_part", pt, re, re < 1e-9});
        const auto proj = forms::projection_identity_residual(g, p, x);
        rows.push_back({"even_projection", pt, std::max(proj.residual, proj.fit_residual),
                        proj.residual < 1e-9 && proj.fit_residual < 1e-9});
        if (!have_lambda) {
            lambda0 = proj.lambda;
            have_lambda = true;
        }
        lambda_spread = std::max(lambda_spread, std::abs(proj.lambda - lambda0));
    }
    rows.push_back({"even_lambda_constant", "all", lambda_spread, lambda_spread < 1e-9});
}

void odd_type_rows(const SurfaceParams& p, Rng& rng, std::vector<ReportRow>& rows) {
    const SolitonProfile sol(p);
    const MetricProfile gsol = sol.as_metric_profile();
    const MetricProfile tanh_profile = MetricProfile::diagonal([](double x) {
        const double t = std::tanh(x / 2.0);
        return Jet2{0.5 + 0.3 * t, 0.15 * (1.0 - t * t), -0.15 * t * (1.0 - t * t)};
    });
    const MetricProfile sine_profile = MetricProfile::diagonal([](double x) {
        const double s = std::sin(0.5 * x), c = std::cos(0.5 * x);
        return Jet2{0.5 + 0.3 * s, 0.15 * c, -0.075 * s};
    });
    const MetricProfile logistic_diag = MetricProfile::diagonal([](double x) {
        const double k = 1.0 / (1.0 + std::exp(-x));
        const double d = k * (1.0 - k);
        return Jet2{k, d, d * (1.0 - 2.0 * k)};
    });

    const std::pair<const char*, const MetricProfile*> cases[] = {{"soliton", &gsol},
                                                                  {"tanh", &tanh_profile},
                                                                  {"sine", &sine_profile},
                                                                  {"logistic", &logistic_diag}};
    for (const auto& [name, prof] : cases)
        for (int i = 0; i < 5; ++i) {
            const double x = rng.uniform(-8.0, 8.0);
            const double r = forms::odd_type_residual(*prof, p, x);
            rows.push_back({std::string("odd_type_") + name, io::fmt17(x), r, r < 1e-9});
        }
}

void phi_rows(const SurfaceParams& p, Rng& rng, int samples, std::vector<ReportRow>& rows) {
    const double e1 = -2.0 * p.a / (p.a + p.b);
    const double e2 = -2.0 * p.b / (p.a + p.b);
    for (int i = 0; i < samples; ++i) {
        const cxd z1 = std::polar(rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.2831853));
        const cxd z2 = std::polar(rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.2831853));
        const double phi = forms::phi_solve(z1, z2, p);
        const double res = std::abs(std::norm(z1) * std::pow(phi, e1) +
                                    std::norm(z2) * std::pow(phi, e2) - 1.0);
        rows.push_back({"phi_identity", std::to_string(i), res, res < 1e-12});
    }
    // closed form on the z2 = 0 axis
    for (double r : {0.5, 1.0, 1.7}) {
        const double phi = forms::phi_solve(cxd(r, 0.0), cxd(0.0, 0.0), p);
        const double res = std::abs(phi - std::pow(r, (p.a + p.b) / p.a));
        rows.push_back({"phi_axis", io::fmt17(r), res, res < 1e-10});
    }
    // equal-moduli closed form
    const SurfaceParams pe = surface_params(std::exp(-1.0), std::exp(-1.0));
    for (int i = 0; i < 5; ++i) {
        const cxd z1 = std::polar(rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.2831853));
        const cxd z2 = std::polar(rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.2831853));
        const double res = std::abs(forms::phi_solve(z1, z2, pe) - (std::norm(z1) + std::norm(z2)));
        rows.push_back({"phi_equal_moduli", std::to_string(i), res, res < 1e-10});
    }
    for (int i = 0; i < 50; ++i) {
        const cxd z1 = std::polar(rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.2831853));
        const cxd z2 = std::polar(rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.2831853));
        const Mat2c L = forms::ddbar_log_phi(z1, z2, p, 2e-3);
        const auto [lo, hi] = L.hermitian_eigenvalues();
        rows.push_back({"phi_ddbar_semipositive", std::to_string(i), std::max(0.0, -lo),
                        lo >= -1e-6 && hi > 0.0});
    }
}

int cmd_verify(const RunConfig& cfg, bool perturb, int samples) {
    cfg.validate();
    const SurfaceParams p = cfg.surface();
    Rng rng(cfg.seed);

    std::vector<ReportRow> rows;
    oracle_order_rows(p, rows);
    even_type_rows(p, rng, perturb, rows);
    odd_type_rows(p, rng, rows);
    phi_rows(p, rng, samples, rows);

    bool all = true;
    {
        io::CsvWriter csv(cfg.out_path("report.csv").string(),
                          {"check", "point", "residual", "pass"});
        for (const auto& r : rows) {
            csv.raw_row({r.check, r.point, io::fmt17(r.residual), r.pass ? "1" : "0"});
            all = all && r.pass;
        }
    }
    std::printf("%s verify: %zu checks%s\n", all ? "PASS" : "FAIL", rows.size(),
                perturb ? " (with injected perturbation)" : "");
    return all ? 0 : 1;
}

// -------------------------------------------------------------------- phi

int cmd_phi(const RunConfig& cfg, int samples) {
    cfg.validate();
    const SurfaceParams p = cfg.surface();
    Rng rng(cfg.seed);
    const double e1 = -2.0 * p.a / (p.a + p.b);
    const double e2 = -2.0 * p.b / (p.a + p.b);

    bool all = true;
    {
        io::CsvWriter csv(cfg.out_path("phi.csv").string(),
                          {"re_z1", "im_z1", "re_z2", "im_z2", "phi", "identity_residual",
                           "eig_min", "eig_max"});
        for (int i = 0; i < samples; ++i) {
            const cxd z1 = std::polar(rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.2831853));
            const cxd z2 = std::polar(rng.uniform(0.4, 1.4), rng.uniform(0.0, 6.2831853));
            const double phi = forms::phi_solve(z1, z2, p);
            const double res = std::abs(std::norm(z1) * std::pow(phi, e1) +
                                        std::norm(z2) * std::pow(phi, e2) - 1.0);
            const auto [lo, hi] = forms::ddbar_log_phi(z1, z2, p, 2e-3).hermitian_eigenvalues();
            csv.row({z1.real(), z1.imag(), z2.real(), z2.imag(), phi, res, lo, hi});
            all = all && res < 1e-12 && lo >= -1e-6 && hi > 0.0;
        }
    }
    std::printf("%s phi: %d samples\n", all ? "PASS" : "FAIL", samples);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pluriclosed steady solitons on diagonal Hopf surfaces: construction, "
                 "flow convergence, and generalized Kahler verification"};
    app.set_config("--config", "", "key=value config file; flags override");

    RunConfig cfg;
    app.add_option("--alpha-mod", cfg.alpha_mod, "modulus of alpha, in (0,1)")->capture_default_str();
    app.add_option("--alpha-arg", cfg.alpha_arg, "argument of alpha")->capture_default_str();
    app.add_option("--beta-mod", cfg.beta_mod, "modulus of beta, in (0,1)")->capture_default_str();
    app.add_option("--beta-arg", cfg.beta_arg, "argument of beta")->capture_default_str();
    app.add_option("--L", cfg.L, "grid half-width")->capture_default_str();
    app.add_option("--N", cfg.N, "node count (odd)")->capture_default_str();
    app.add_option("--T", cfg.T, "flow end time")->capture_default_str();
    app.add_option("--out", cfg.out, "output directory")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--tol", cfg.tol, "pass/fail tolerance")->capture_default_str();

    auto* sol_cmd = app.add_subcommand("soliton", "solve the soliton profile and export it");

    auto* flow_cmd = app.add_subcommand("flow", "evolve the reduced pluriclosed flow");
    std::string initial = "soliton";
    double bump_amp = 3.0, bump_center = 2.0, bump_width = 6.0;
    flow_cmd->add_option("--initial", initial, "soliton | bump | <snapshot.csv>")
        ->capture_default_str();
    flow_cmd->add_option("--dt0", cfg.dt0, "initial time step")->capture_default_str();
    flow_cmd->add_option("--dt-max", cfg.dt_max, "time step cap")->capture_default_str();
    flow_cmd->add_option("--record-dt", cfg.record_dt, "diagnostic interval")->capture_default_str();
    flow_cmd->add_option("--target", cfg.target, "stop when aligned error drops below (0 = off)")
        ->capture_default_str();
    flow_cmd->add_option("--bump-amplitude", bump_amp, "bump preset amplitude")->capture_default_str();
    flow_cmd->add_option("--bump-center", bump_center, "bump preset center")->capture_default_str();
    flow_cmd->add_option("--bump-width", bump_width, "bump preset width")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    bool perturb = false;
    int samples = 100;
    verify_cmd->add_flag("--perturb", perturb, "inject an ansatz-violating perturbation");
    verify_cmd->add_option("--samples", samples, "number of sampled points")->capture_default_str();

    auto* phi_cmd = app.add_subcommand("phi", "sample the automorphic potential and i ddbar log Phi");
    int phi_samples = 100;
    phi_cmd->add_option("--samples", phi_samples, "number of sampled points")->capture_default_str();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage error
    }

    try {
        if (sol_cmd->parsed()) return cmd_soliton(cfg);
        if (flow_cmd->parsed()) return cmd_flow(cfg, initial, bump_amp, bump_center, bump_width);
        if (verify_cmd->parsed()) return cmd_verify(cfg, perturb, samples);
        if (phi_cmd->parsed()) return cmd_phi(cfg, phi_samples);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
