#include "doctest.h"
#include "test_helpers.hpp"

using namespace sepcert;
using namespace sepcert::testing;

TEST_CASE("ppt_test on canonical states") {
    const PptResult mm = ppt_test(validate_density(CMat::identity(4) * cplx(0.25, 0.0)));
    CHECK(mm.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mm.verdict == Verdict::Separable);

    const PptResult s = ppt_test(pure_to_density(PureState::singlet()));
    CHECK(s.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(s.spectrum[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(s.spectrum[2] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(s.spectrum[3] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(s.verdict == Verdict::Entangled);

    const PptResult w = ppt_test(werner(1.0 / 3.0));
    CHECK(std::abs(w.min_eigenvalue) < 1e-9);
    CHECK(w.verdict == Verdict::Boundary);

    double total = 0.0;
    for (double lam : s.spectrum) total += lam;
    CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("ppt verdict is invariant under local unitaries") {
    Rng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = random_state_any_rank(rng);
        const LocalFrame f = random_frame(rng);
        const DensityMatrix rotated = rotate_state(rho, f.u(), f.v());
        const PptResult a = ppt_test(rho);
        const PptResult b = ppt_test(rotated);
        CHECK(std::abs(a.min_eigenvalue - b.min_eigenvalue) < 1e-10);
        CHECK(a.verdict == b.verdict);
    }
}

TEST_CASE("hefei margins of the singlet at the identity frame") {
    const HefeiMargins m = hefei_margins(pure_to_density(PureState::singlet()), LocalFrame::identity());
    CHECK(std::abs(m.expectations.p_minus - 1.0) < 1e-14);
    CHECK(std::abs(m.expectations.p_plus) < 1e-14);
    CHECK(std::abs(m.expectations.g3_minus) < 1e-14);
    CHECK(std::abs(m.expectations.g3_plus) < 1e-14);
    CHECK(m.expectations.g2_minus == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(m.expectations.g1_minus) < 1e-14);
    CHECK(m.m_plus == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(std::abs(m.m_minus) < 1e-13);
}

TEST_CASE("hefei margins of the Werner family match the closed form") {
    const LocalFrame id = LocalFrame::identity();
    for (int i = 0; i <= 10; ++i) {
        const double beta = i / 10.0;
        const HefeiMargins m = hefei_margins(werner(beta), id);
        const double expected = 0.25 * (1.0 - beta) * (1.0 - beta) - beta * beta;
        CHECK(std::abs(m.m_plus - expected) < 1e-12);
        // only the g2 trace survives, carrying -beta
        CHECK(std::abs(m.expectations.g2_minus + beta) < 1e-13);
        CHECK(std::abs(m.expectations.g3_plus) < 1e-13);
        CHECK(std::abs(m.expectations.g1_minus) < 1e-13);
    }
    const HefeiMargins third = hefei_margins(werner(1.0 / 3.0), id);
    CHECK(std::abs(third.m_plus) < 1e-12);
}

TEST_CASE("hefei margins of the maximally mixed state are 1/4 at any frame") {
    Rng rng(67);
    const DensityMatrix mm = validate_density(CMat::identity(4) * cplx(0.25, 0.0));
    for (int trial = 0; trial < 20; ++trial) {
        const HefeiMargins m = hefei_margins(mm, random_frame(rng));
        CHECK(m.m_minus == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(m.m_plus == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(m.m_plus_all == doctest::Approx(0.25).epsilon(1e-13));
    }
}

TEST_CASE("first inequality and all-plus variant hold on random states") {
    Rng rng(71);
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = random_state_any_rank(rng);
        const HefeiMargins m = hefei_margins(rho, random_frame(rng));
        CHECK(m.m_minus >= -1e-9);
        CHECK(m.m_plus_all >= -1e-9);
    }
}

TEST_CASE("hefei margins are frame covariant") {
    Rng rng(73);
    for (int trial = 0; trial < 30; ++trial) {
        const DensityMatrix rho = random_state_any_rank(rng);
        const LocalFrame f = random_frame(rng);
        const HefeiMargins at_frame = hefei_margins(rho, f);
        const DensityMatrix pulled =
            rotate_state(rho, f.u().adjoint(), f.v().adjoint());
        const HefeiMargins at_identity = hefei_margins(pulled, LocalFrame::identity());
        CHECK(std::abs(at_frame.m_plus - at_identity.m_plus) < 1e-10);
        CHECK(std::abs(at_frame.m_minus - at_identity.m_minus) < 1e-10);
    }
}

TEST_CASE("bloch fast path reproduces the operator route") {
    Rng rng(79);
    for (int trial = 0; trial < 300; ++trial) {
        const DensityMatrix rho = random_state_any_rank(rng);
        const LocalFrame f = random_frame(rng);
        const HefeiMargins slow = hefei_margins(rho, f);
        const auto [r, s] = bloch_vectors(rho);
        const HefeiMargins fast = hefei_margins_bloch(r, s, correlation_matrix(rho), f);
        CHECK(std::abs(slow.m_plus - fast.m_plus) < 1e-12);
        CHECK(std::abs(slow.m_minus - fast.m_minus) < 1e-12);
        CHECK(std::abs(slow.m_plus_all - fast.m_plus_all) < 1e-12);
        CHECK(std::abs(slow.expectations.g2_minus - fast.expectations.g2_minus) < 1e-12);
    }
}

TEST_CASE("expectation identities at pinned points") {
    const LocalFrame id = LocalFrame::identity();
    const DensityMatrix mm = validate_density(CMat::identity(4) * cplx(0.25, 0.0));
    const IdentityResiduals r0 = expectation_identity_check(mm, id, 0.0, 0.0);
    CHECK(r0.direct < 1e-12);
    CHECK(r0.time_reversed < 1e-12);

    // both sides equal 1/4 for the maximally mixed state
    const PureState phi = chiral_state(id, 0.0, 0.0);
    cplx val = 0.0;
    const std::vector<cplx> w = mm.matrix().apply({phi[0], phi[1], phi[2], phi[3]});
    for (int i = 0; i < 4; ++i) val += std::conj(phi[i]) * w[static_cast<size_t>(i)];
    CHECK(std::abs(val - cplx(0.25, 0.0)) < 1e-14);

    Rng rng(83);
    const DensityMatrix s = pure_to_density(PureState::singlet());
    for (int trial = 0; trial < 50; ++trial) {
        const IdentityResiduals r = expectation_identity_check(
            s, random_frame(rng), rng.uniform() * kPi, rng.uniform() * 2 * kPi);
        CHECK(r.direct < 1e-10);
        CHECK(r.time_reversed < 1e-10);
    }
}

TEST_CASE("expectation identities over random tuples") {
    Rng rng(89);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const DensityMatrix rho = random_state_any_rank(rng);
        const IdentityResiduals r = expectation_identity_check(
            rho, random_frame(rng), rng.uniform() * kPi, rng.uniform() * 2 * kPi);
        worst = std::max({worst, r.direct, r.time_reversed});
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("concurrence of canonical states") {
    CHECK(concurrence(pure_to_density(PureState::singlet())) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence(pure_to_density(PureState::basis(1))) < 1e-8);

    Rng rng(97);
    for (int trial = 0; trial < 20; ++trial) {
        CHECK(concurrence(random_separable(rng, 1)) < 1e-7);
    }

    // Werner closed form max(0, (3 beta - 1)/2), brute-forced over the grid
    for (int i = 0; i <= 20; ++i) {
        const double beta = i / 20.0;
        const double expected = std::max(0.0, (3.0 * beta - 1.0) / 2.0);
        CHECK(std::abs(concurrence(werner(beta)) - expected) < 1e-10);
    }
    CHECK(concurrence(werner(0.5)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("chsh maximum of canonical states") {
    CHECK(chsh_max(pure_to_density(PureState::singlet())) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(chsh_max(validate_density(CMat::identity(4) * cplx(0.25, 0.0))) < 1e-7);

    // Werner correlation matrix is -beta I, so chsh = 2 sqrt(2) beta
    for (int i = 0; i <= 10; ++i) {
        const double beta = i / 10.0;
        const auto t = correlation_matrix(werner(beta));
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                CHECK(std::abs(t[static_cast<size_t>(k)][static_cast<size_t>(l)] -
                               (k == l ? -beta : 0.0)) < 1e-13);
        CHECK(std::abs(chsh_max(werner(beta)) - 2.0 * std::sqrt(2.0) * beta) < 1e-10);
    }

    // beta = 1/2: entangled per PPT yet CHSH-silent
    const DensityMatrix w = werner(0.5);
    CHECK(chsh_max(w) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(chsh_max(w) < 2.0);
    CHECK(ppt_test(w).verdict == Verdict::Entangled);
}
