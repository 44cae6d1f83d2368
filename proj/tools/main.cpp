#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sepcert/io.hpp"
#include "sepcert/version.hpp"

namespace {

using namespace sepcert;

constexpr int kExitSeparable = 0;
constexpr int kExitError = 1;
constexpr int kExitEntangled = 3;
constexpr int kExitBoundary = 4;

int exit_code_of(Verdict v) {
    switch (v) {
        case Verdict::Separable: return kExitSeparable;
        case Verdict::Entangled: return kExitEntangled;
        case Verdict::Boundary: return kExitBoundary;
    }
    return kExitError;
}

struct GlobalOpts {
    bool json = false;
    bool quiet = false;
    uint64_t seed = 0;
    double tol = 1e-9;
    int grid = 0;  // 0 = per-command default
};

SearchConfig config_for(const GlobalOpts& g, int default_grid) {
    SearchConfig cfg;
    cfg.grid_points_per_angle = g.grid > 0 ? g.grid : default_grid;
    return cfg;
}

void print_human_report(const ReportDocument& r) {
    std::printf("verdict:          %s\n", r.verdict.c_str());
    std::printf("min m_plus:       %s (violation threshold %g)\n",
                format_double(r.min_m_plus).c_str(), r.violation_threshold);
    std::printf("min m_minus seen: %s\n", format_double(r.min_m_minus_observed).c_str());
    std::printf("witness angles u: %s %s %s\n", format_double(r.witness_angles[0]).c_str(),
                format_double(r.witness_angles[1]).c_str(),
                format_double(r.witness_angles[2]).c_str());
    std::printf("witness angles v: %s %s %s\n", format_double(r.witness_angles[3]).c_str(),
                format_double(r.witness_angles[4]).c_str(),
                format_double(r.witness_angles[5]).c_str());
    std::printf("ppt min eig:      %s\n", format_double(r.ppt_min_eigenvalue).c_str());
    std::printf("ppt spectrum:     %s %s %s %s\n", format_double(r.ppt_spectrum[0]).c_str(),
                format_double(r.ppt_spectrum[1]).c_str(), format_double(r.ppt_spectrum[2]).c_str(),
                format_double(r.ppt_spectrum[3]).c_str());
    std::printf("ppt verdict:      %s\n", r.ppt_verdict.c_str());
    std::printf("agreement:        %s\n", r.agreement ? "yes" : "no");
    std::printf("converged:        %s\n", r.converged ? "yes" : "no");
    std::printf("concurrence:      %s\n", format_double(r.concurrence).c_str());
    std::printf("chsh max:         %s\n", format_double(r.chsh_max).c_str());
}

int analyze_density(const DensityMatrix& rho, const GlobalOpts& g, int default_grid) {
    const SearchConfig cfg = config_for(g, default_grid);
    const CriterionReport cr = certify(rho, cfg);
    const ReportDocument report =
        make_report(cr, concurrence(rho), chsh_max(rho), g.seed, cfg, g.tol);
    if (g.json)
        std::printf("%s\n", serialize_report(report).c_str());
    else if (!g.quiet)
        print_human_report(report);
    return exit_code_of(cr.verdict);
}

int cmd_analyze(const std::string& path, const GlobalOpts& g) {
    const StateDocument doc = load_state_file(path, g.tol);
    return analyze_density(doc.density(), g, 8);
}

int cmd_werner_single(double beta, const GlobalOpts& g) {
    return analyze_density(werner(beta), g, 8);
}

int cmd_werner_scan(const std::string& range, const GlobalOpts& g) {
    double from = 0.0, to = 0.0;
    int steps = 0;
    if (std::sscanf(range.c_str(), "%lf,%lf,%d", &from, &to, &steps) != 3 || steps < 2)
        throw Error(Error::Kind::Parse, "parse error: --scan expects from,to,steps with steps >= 2");

    const LocalFrame id = LocalFrame::identity();
    std::printf("beta,m_plus_identity_frame,ppt_min_eig,verdict,concurrence,chsh_max\n");
    double flip_beta = -1.0;
    Verdict prev = Verdict::Separable;
    for (int i = 0; i < steps; ++i) {
        const double beta = from + (to - from) * i / (steps - 1);
        const DensityMatrix rho = werner(beta);
        const HefeiMargins m = hefei_margins(rho, id);
        const PptResult ppt = ppt_test(rho, g.tol);
        std::printf("%s,%s,%s,%s,%s,%s\n", format_double(beta).c_str(),
                    format_double(m.m_plus).c_str(), format_double(ppt.min_eigenvalue).c_str(),
                    to_string(ppt.verdict).c_str(), format_double(concurrence(rho)).c_str(),
                    format_double(chsh_max(rho)).c_str());
        if (i > 0 && prev != Verdict::Entangled && ppt.verdict == Verdict::Entangled &&
            flip_beta < 0.0)
            flip_beta = beta;
        prev = ppt.verdict;
    }
    if (flip_beta >= 0.0)
        std::printf("# verdict_flip_beta=%s\n", format_double(flip_beta).c_str());
    else
        std::printf("# verdict_flip_beta=none\n");
    return 0;
}

int cmd_bench(int count, const std::string& ensemble, const GlobalOpts& g) {
    if (count < 1)
        throw Error(Error::Kind::Domain, "domain error: --count must be >= 1");
    if (ensemble != "pure" && ensemble != "mixed" && ensemble != "separable")
        throw Error(Error::Kind::Domain, "domain error: unknown ensemble " + ensemble);

    const SearchConfig cfg = config_for(g, 4);
    const Rng base(g.seed);
    const auto t0 = std::chrono::steady_clock::now();

    std::printf("index,ppt_min_eig,ppt_verdict,min_m_plus,hefei_verdict,agreement,concurrence,chsh_max\n");
    int agree = 0;
    int boundary_excluded = 0;
    for (int i = 0; i < count; ++i) {
        Rng rng = base.split(static_cast<uint64_t>(i));
        DensityMatrix rho = [&] {
            if (ensemble == "pure") return pure_to_density(random_pure(rng));
            if (ensemble == "mixed") return random_mixed(rng, 4);
            return random_separable(rng, 1 + i % 4);
        }();
        const CriterionReport cr = certify(rho, cfg);
        const bool boundary =
            cr.verdict == Verdict::Boundary || cr.ppt.verdict == Verdict::Boundary;
        if (boundary)
            ++boundary_excluded;
        else if (cr.verdict == cr.ppt.verdict)
            ++agree;
        std::printf("%d,%s,%s,%s,%s,%s,%s,%s\n", i,
                    format_double(cr.ppt.min_eigenvalue).c_str(),
                    to_string(cr.ppt.verdict).c_str(), format_double(cr.min_m_plus).c_str(),
                    to_string(cr.verdict).c_str(), cr.agreement ? "1" : "0",
                    format_double(concurrence(rho)).c_str(),
                    format_double(chsh_max(rho)).c_str());
    }
    const int counted = count - boundary_excluded;
    std::printf("# agreement_rate=%s\n",
                format_double(counted > 0 ? static_cast<double>(agree) / counted : 1.0).c_str());
    std::printf("# boundary_excluded=%d\n", boundary_excluded);
    const auto t1 = std::chrono::steady_clock::now();
    if (!g.quiet)
        std::fprintf(stderr, "wall_ms=%lld\n",
                     static_cast<long long>(
                         std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()));
    return 0;
}

int cmd_verify(int trials, const GlobalOpts& g) {
    if (trials < 1)
        throw Error(Error::Kind::Domain, "domain error: --trials must be >= 1");

    Rng rng(g.seed, 0x5e9fc);
    const auto random_frame = [&rng] {
        return LocalFrame::from_angles(
            {rng.uniform() * 2 * M_PI, rng.uniform() * M_PI, rng.uniform() * 2 * M_PI},
            {rng.uniform() * 2 * M_PI, rng.uniform() * M_PI, rng.uniform() * 2 * M_PI});
    };

    AlgebraReport worst{};
    const auto fold = [](double& acc, double x) { acc = std::max(acc, x); };
    for (int i = 0; i <= trials; ++i) {
        const LocalFrame f = (i == 0) ? LocalFrame::identity() : random_frame();
        const AlgebraReport rep = verify_algebra(f);
        fold(worst.clifford, rep.clifford);
        fold(worst.gamma5_product, rep.gamma5_product);
        fold(worst.gamma5_anticommute, rep.gamma5_anticommute);
        fold(worst.gamma5_commute, rep.gamma5_commute);
        fold(worst.gk_g0_identities, rep.gk_g0_identities);
        fold(worst.duality, rep.duality);
        fold(worst.duality_projected, rep.duality_projected);
        fold(worst.projectors, rep.projectors);
        fold(worst.b_conjugation, rep.b_conjugation);
        fold(worst.su2_structure, rep.su2_structure);
        fold(worst.ab_commutators, rep.ab_commutators);
    }

    double expectation_direct = 0.0, expectation_pt = 0.0;
    for (int i = 0; i < trials; ++i) {
        const DensityMatrix rho = random_mixed(rng, 1 + static_cast<int>(rng.next_u64() % 4));
        const IdentityResiduals res = expectation_identity_check(
            rho, random_frame(), rng.uniform() * M_PI, rng.uniform() * 2 * M_PI);
        expectation_direct = std::max(expectation_direct, res.direct);
        expectation_pt = std::max(expectation_pt, res.time_reversed);
    }

    double schmidt_infidelity = 0.0, expansion_norm = 0.0, expansion_residual = 0.0;
    for (int i = 0; i < trials; ++i) {
        const PureState p = random_pure(rng);
        const SchmidtForm sf = schmidt_decompose(p);
        schmidt_infidelity =
            std::max(schmidt_infidelity, std::abs(1.0 - sf.reconstruct().fidelity(p)));
        const LocalFrame f = LocalFrame::from_unitaries(sf.u, sf.v);
        const ExpansionCoefficients ec = expansion_coefficients(pure_to_density(p), f);
        expansion_norm = std::max(
            expansion_norm, std::abs(ec.a1 * ec.a1 + ec.a2 * ec.a2 + ec.a3 * ec.a3 - 1.0));
        expansion_residual = std::max(expansion_residual, ec.residual);
    }

    const std::vector<std::pair<std::string, double>> rows = {
        {"clifford_anticommutators", worst.clifford},
        {"gamma5_product", worst.gamma5_product},
        {"gamma5_anticommute", worst.gamma5_anticommute},
        {"gamma5_commute_gkg0", worst.gamma5_commute},
        {"gk_g0_identities", worst.gk_g0_identities},
        {"duality", worst.duality},
        {"duality_projected", worst.duality_projected},
        {"projectors", worst.projectors},
        {"b_conjugation", worst.b_conjugation},
        {"su2_structure", worst.su2_structure},
        {"ab_commutators", worst.ab_commutators},
        {"expectation_identity_direct", expectation_direct},
        {"expectation_identity_time_reversed", expectation_pt},
        {"schmidt_roundtrip_infidelity", schmidt_infidelity},
        {"expansion_unit_norm", expansion_norm},
        {"expansion_reconstruction", expansion_residual},
    };
    bool ok = true;
    for (const auto& [name, value] : rows) {
        const bool pass = value < 1e-9;
        ok = ok && pass;
        if (!g.quiet)
            std::printf("%-36s %-12s max_residual=%s\n", name.c_str(), pass ? "pass" : "FAIL",
                        format_double(value).c_str());
    }
    return ok ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit separability certification via the chiral frame criterion"};
    app.set_version_flag("--version", sepcert::kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_flag("--json", g.json, "emit machine-readable JSON reports");
    app.add_flag("--quiet", g.quiet, "suppress human-readable output");
    app.add_option("--seed", g.seed, "seed for all randomized commands (default 0)");
    app.add_option("--tol", g.tol, "validation and PPT tolerance (default 1e-9)");
    app.add_option("--grid", g.grid, "frame-search grid points per angle");

    std::string analyze_path;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "certify a state file; exit 0=separable 3=entangled 4=boundary 1=error");
    analyze->fallthrough();
    analyze->add_option("path", analyze_path, "state file (JSON)")->required();

    double werner_beta = 0.0;
    std::string werner_scan;
    CLI::App* werner_cmd = app.add_subcommand("werner", "analyze the Werner family");
    werner_cmd->fallthrough();
    CLI::Option* beta_opt = werner_cmd->add_option("--beta", werner_beta, "single mixing parameter");
    CLI::Option* scan_opt =
        werner_cmd->add_option("--scan", werner_scan, "from,to,steps CSV sweep");
    beta_opt->excludes(scan_opt);

    int bench_count = 100;
    std::string bench_ensemble = "mixed";
    CLI::App* bench = app.add_subcommand("bench", "random-ensemble agreement benchmark (CSV)");
    bench->fallthrough();
    bench->add_option("--count", bench_count, "number of states");
    bench->add_option("--ensemble", bench_ensemble, "pure | mixed | separable");

    int verify_trials = 100;
    CLI::App* verify = app.add_subcommand("verify", "algebraic identity self-tests");
    verify->fallthrough();
    verify->add_option("--trials", verify_trials, "random frames/states per identity class");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(analyze_path, g);
        if (app.got_subcommand(werner_cmd)) {
            if (!werner_scan.empty()) return cmd_werner_scan(werner_scan, g);
            if (beta_opt->count() == 0)
                throw sepcert::Error(sepcert::Error::Kind::Domain,
                                     "domain error: werner needs --beta or --scan");
            return cmd_werner_single(werner_beta, g);
        }
        if (app.got_subcommand(bench)) return cmd_bench(bench_count, bench_ensemble, g);
        if (app.got_subcommand(verify)) return cmd_verify(verify_trials, g);
    } catch (const sepcert::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
