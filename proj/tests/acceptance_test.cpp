// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sepcert/io.hpp"
#include "sepcert/search.hpp"

using namespace sepcert;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LocalFrame random_frame(Rng& rng) {
    return LocalFrame::from_angles(
        {rng.uniform() * 2 * kPi, rng.uniform() * kPi, rng.uniform() * 2 * kPi},
        {rng.uniform() * 2 * kPi, rng.uniform() * kPi, rng.uniform() * 2 * kPi});
}

SearchConfig ensemble_config() {
    SearchConfig cfg;
    cfg.grid_points_per_angle = 4;
    return cfg;
}

// 1. Werner scan flip at beta = 1/3 within one step, under 10 s.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const LocalFrame id = LocalFrame::identity();
    double flip = -1.0;
    for (int i = 0; i < 1001; ++i) {
        const double beta = i / 1000.0;
        const PptResult ppt = ppt_test(werner(beta));
        if (ppt.verdict == Verdict::Entangled && flip < 0.0) flip = beta;
        (void)hefei_margins(werner(beta), id);
        (void)concurrence(werner(beta));
        (void)chsh_max(werner(beta));
    }
    const double elapsed = seconds_since(t0);
    const bool pass = std::abs(flip - 1.0 / 3.0) <= 1e-3 && elapsed < 10.0;
    report(1, "werner scan flips at beta = 1/3", pass,
           "flip=" + format_double(flip) + " elapsed_s=" + format_double(elapsed));
}

// 2. Identity-frame Werner margin equals ((1-beta)/2)^2 - beta^2 to 1e-12.
void criterion_2() {
    const LocalFrame id = LocalFrame::identity();
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double beta = i / 10.0;
        const double margin = hefei_margins(werner(beta), id).m_plus;
        const double closed = 0.25 * (1.0 - beta) * (1.0 - beta) - beta * beta;
        worst = std::max(worst, std::abs(margin - closed));
    }
    report(2, "analytic werner margin at the identity frame", worst < 1e-12,
           "max_dev=" + format_double(worst));
}

// 3. Singlet certificate: min_m_plus = -1 +- 1e-9, PPT min = -1/2 +- 1e-12.
void criterion_3() {
    const CriterionReport r = certify(pure_to_density(PureState::singlet()));
    const bool pass = r.verdict == Verdict::Entangled &&
                      std::abs(r.min_m_plus + 1.0) <= 1e-9 &&
                      std::abs(r.ppt.min_eigenvalue + 0.5) <= 1e-12 && r.agreement;
    report(3, "singlet certificate", pass,
           "min_m_plus=" + format_double(r.min_m_plus) +
               " ppt_min=" + format_double(r.ppt.min_eigenvalue));
}

// 4. beta = 1/2 Werner: CHSH-silent (sqrt 2) yet entangled by PPT and search.
void criterion_4() {
    const DensityMatrix w = werner(0.5);
    const double chsh = chsh_max(w);
    const CriterionReport r = certify(w, ensemble_config());
    const bool pass = std::abs(chsh - std::sqrt(2.0)) <= 1e-10 && chsh < 2.0 &&
                      ppt_test(w).verdict == Verdict::Entangled &&
                      r.verdict == Verdict::Entangled;
    report(4, "CHSH-silence of werner(1/2)", pass, "chsh=" + format_double(chsh));
}

// 5. Oracle equivalence on 1000 mixed states away from the PPT boundary.
void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    const SearchConfig cfg = ensemble_config();
    const Rng base(2718281828ULL);
    int used = 0;
    int agree = 0;
    uint64_t stream = 0;
    while (used < 1000) {
        Rng rng = base.split(stream++);
        const DensityMatrix rho = random_mixed(rng, 4);
        const PptResult ppt = ppt_test(rho);
        if (std::abs(ppt.min_eigenvalue) <= 1e-3) continue;
        ++used;
        const CriterionReport r = certify(rho, cfg);
        if (r.verdict == ppt.verdict) ++agree;
    }
    const double elapsed = seconds_since(t0);
    const bool pass = agree == 1000 && elapsed < 300.0;
    report(5, "hefei search agrees with PPT on 1000 mixed states", pass,
           "agree=" + std::to_string(agree) + "/1000 elapsed_s=" + format_double(elapsed));
}

// 6. First inequality holds on 1000 random (state, frame) pairs.
void criterion_6() {
    Rng rng(31415926ULL);
    double worst = 1e300;
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = random_mixed(rng, 1 + static_cast<int>(rng.next_u64() % 4));
        worst = std::min(worst, hefei_margins(rho, random_frame(rng)).m_minus);
    }
    report(6, "first inequality m_minus >= 0 on random pairs", worst >= -1e-9,
           "min_m_minus=" + format_double(worst));
}

// 7. No violating frame exists for 500 separable-by-construction states.
void criterion_7() {
    const SearchConfig cfg = ensemble_config();
    const Rng base(1618033988ULL);
    double worst = 1e300;
    bool none_entangled = true;
    for (int i = 0; i < 500; ++i) {
        Rng rng = base.split(static_cast<uint64_t>(i));
        const DensityMatrix rho = random_separable(rng, 1 + i % 4);
        const CriterionReport r = certify(rho, cfg);
        worst = std::min(worst, r.min_m_plus);
        none_entangled = none_entangled && r.verdict != Verdict::Entangled;
    }
    const bool pass = worst >= -1e-7 && none_entangled;
    report(7, "separable ensemble shows no violation", pass,
           "min_m_plus=" + format_double(worst));
}

// 8. Algebraic identity residuals below 1e-12 over 100 random frames.
void criterion_8() {
    Rng rng(1414213562ULL);
    double clifford = 0.0, products = 0.0, duality = 0.0, conjugation = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const LocalFrame f = (i == 0) ? LocalFrame::identity() : random_frame(rng);
        const AlgebraReport rep = verify_algebra(f);
        clifford = std::max(clifford, rep.clifford);
        products = std::max({products, rep.gamma5_product, rep.gk_g0_identities});
        duality = std::max({duality, rep.duality, rep.duality_projected});
        conjugation = std::max(conjugation, rep.b_conjugation);
    }
    const double worst = std::max({clifford, products, duality, conjugation});
    report(8, "gamma algebra residuals", worst < 1e-12,
           "clifford=" + format_double(clifford) + " products=" + format_double(products) +
               " duality=" + format_double(duality) +
               " conjugation=" + format_double(conjugation));
}

// 9. Expectation identities hold to 1e-9 over 1000 random tuples.
void criterion_9() {
    Rng rng(2236067977ULL);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = random_mixed(rng, 1 + static_cast<int>(rng.next_u64() % 4));
        const IdentityResiduals r = expectation_identity_check(
            rho, random_frame(rng), rng.uniform() * kPi, rng.uniform() * 2 * kPi);
        worst = std::max({worst, r.direct, r.time_reversed});
    }
    report(9, "expectation identities", worst < 1e-9, "max_residual=" + format_double(worst));
}

// 10. Schmidt round trip and chiral expansion on 1000 Haar states.
void criterion_10() {
    Rng rng(1732050807ULL);
    double infidelity = 0.0, norm_dev = 0.0, recon = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const PureState p = random_pure(rng);
        const SchmidtForm sf = schmidt_decompose(p);
        infidelity = std::max(infidelity, std::abs(1.0 - sf.reconstruct().fidelity(p)));
        const LocalFrame f = LocalFrame::from_unitaries(sf.u, sf.v);
        const ExpansionCoefficients e = expansion_coefficients(pure_to_density(p), f);
        norm_dev = std::max(norm_dev,
                            std::abs(e.a1 * e.a1 + e.a2 * e.a2 + e.a3 * e.a3 - 1.0));
        recon = std::max(recon, e.residual);
    }
    const bool pass = infidelity <= 1e-10 && norm_dev <= 1e-9 && recon <= 1e-9;
    report(10, "schmidt round trip and expansion", pass,
           "infidelity=" + format_double(infidelity) + " norm_dev=" + format_double(norm_dev) +
               " reconstruction=" + format_double(recon));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%s: %d/10 criteria passed\n", failures == 0 ? "OK" : "FAILED", 10 - failures);
    return failures;
}
