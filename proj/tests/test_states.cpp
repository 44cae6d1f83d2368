#include "doctest.h"
#include "test_helpers.hpp"

using namespace sepcert;
using namespace sepcert::testing;

TEST_CASE("validate_density accepts the maximally mixed and product states") {
    CMat mm = CMat::identity(4) * cplx(0.25, 0.0);
    CHECK_NOTHROW(validate_density(mm));

    CMat prod(4, 4);
    prod(0, 0) = 1.0;
    CHECK_NOTHROW(validate_density(prod));
}

TEST_CASE("validate_density rejects broken inputs by invariant") {
    CMat neg(4, 4);
    neg(0, 0) = 0.5;
    neg(1, 1) = 0.6;
    neg(3, 3) = -0.1;
    CHECK_THROWS_WITH_AS(validate_density(neg), doctest::Contains("positivity error"), Error);

    CMat off = CMat::identity(4) * cplx(0.25, 0.0);
    off(0, 0) = 0.15;  // trace 0.9
    CHECK_THROWS_WITH_AS(validate_density(off), doctest::Contains("trace error"), Error);

    CMat nh = CMat::identity(4) * cplx(0.25, 0.0);
    nh(0, 1) = 0.1;
    CHECK_THROWS_WITH_AS(validate_density(nh), doctest::Contains("hermiticity error"), Error);
}

TEST_CASE("validate_density renormalizes sub-tolerance trace drift") {
    CMat m = CMat::identity(4) * cplx(0.25 * (1.0 + 1e-10), 0.0);
    const DensityMatrix rho = validate_density(m);
    CHECK(rho.renormalized());
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-15);
}

TEST_CASE("pure_to_density basics") {
    const DensityMatrix p = pure_to_density(PureState::basis(1));
    CMat expected(4, 4);
    expected(1, 1) = 1.0;
    CHECK(max_abs_diff(p.matrix(), expected) == 0.0);

    const DensityMatrix s = pure_to_density(PureState::singlet());
    CHECK(max_abs_diff(s.matrix(), singlet_projector_by_hand()) < 1e-15);
}

TEST_CASE("pure_to_density yields idempotent rank-1 projectors") {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = pure_to_density(random_pure(rng));
        CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
        CHECK(rho.min_eigenvalue() >= 0.0);
        CHECK(max_abs_diff(rho.matrix() * rho.matrix(), rho.matrix()) < 1e-10);
    }
}

TEST_CASE("pure state normalization is enforced") {
    CHECK_THROWS_AS(PureState({1.0, 1.0, 0.0, 0.0}), Error);
}

TEST_CASE("schmidt decomposition of canonical states") {
    const SchmidtForm basis = schmidt_decompose(PureState::basis(1));
    CHECK(basis.s1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(basis.s2) < 1e-12);
    CHECK(basis.reconstruct().fidelity(PureState::basis(1)) >= 1.0 - 1e-10);

    const SchmidtForm singlet = schmidt_decompose(PureState::singlet());
    CHECK(singlet.s1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(singlet.s2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("schmidt form of (|++> - |-->)/sqrt(2) rotates the second qubit by pi about axis 2") {
    const double r = 1.0 / std::sqrt(2.0);
    const PureState psi({r, 0.0, 0.0, -r});
    const SchmidtForm sf = schmidt_decompose(psi);
    CHECK(sf.s1 == doctest::Approx(r).epsilon(1e-12));
    CHECK(sf.s2 == doctest::Approx(r).epsilon(1e-12));
    CHECK(sf.reconstruct().fidelity(psi) >= 1.0 - 1e-10);

    // the v factor conjugates as the SO(3) rotation diag(-1, 1, -1)
    const auto rv = rotation_of_su2(sf.v);
    CHECK(rv[0][0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(rv[1][1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rv[2][2] == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("schmidt round trip on Haar-random states") {
    Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const PureState p = random_pure(rng);
        const SchmidtForm sf = schmidt_decompose(p);
        CHECK(sf.s1 >= sf.s2);
        CHECK(sf.s2 >= 0.0);
        CHECK(std::abs(sf.s1 * sf.s1 + sf.s2 * sf.s2 - 1.0) < 1e-10);
        CHECK(sf.delta >= 0.0);
        CHECK(sf.delta < 2 * kPi);
        CHECK(std::abs(sf.u.det() - cplx(1.0, 0.0)) < 1e-10);
        CHECK(std::abs(sf.v.det() - cplx(1.0, 0.0)) < 1e-10);
        CHECK(max_abs_diff(sf.u * sf.u.adjoint(), CMat::identity(2)) < 1e-10);
        CHECK(max_abs_diff(sf.v * sf.v.adjoint(), CMat::identity(2)) < 1e-10);
        worst = std::max(worst, 1.0 - sf.reconstruct().fidelity(p));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("partial transpose fixed points and the singlet") {
    const CMat mm = CMat::identity(4) * cplx(0.25, 0.0);
    CHECK(max_abs_diff(partial_transpose(mm), mm) == 0.0);

    CMat prod(4, 4);
    prod(1, 1) = 1.0;
    CHECK(max_abs_diff(partial_transpose(prod), prod) == 0.0);

    const CMat pt = partial_transpose(singlet_projector_by_hand());
    CHECK(max_abs_diff(pt, singlet_pt_by_hand()) == 0.0);
    const EigenDecomposition e = hermitian_eigh(pt);
    CHECK(e.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.eigenvalues[3] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("partial transpose is an exact involution preserving hermiticity and trace") {
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix rho = random_state_any_rank(rng);
        const CMat pt = partial_transpose(rho);
        CHECK(max_abs_diff(partial_transpose(pt), rho.matrix()) == 0.0);
        CHECK(max_abs_diff(pt, pt.adjoint()) < 1e-12);
        CHECK(std::abs(pt.trace().real() - 1.0) < 1e-12);
    }
}

TEST_CASE("partial time reversal shares the partial transpose spectrum") {
    const CMat mm = CMat::identity(4) * cplx(0.25, 0.0);
    CHECK(max_abs_diff(partial_time_reversal(mm), mm) < 1e-15);

    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix rho = random_state_any_rank(rng);
        const EigenDecomposition a = hermitian_eigh(partial_transpose(rho));
        const EigenDecomposition b = hermitian_eigh(partial_time_reversal(rho));
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(a.eigenvalues[static_cast<size_t>(k)] -
                           b.eigenvalues[static_cast<size_t>(k)]) < 1e-10);
    }

    const EigenDecomposition s =
        hermitian_eigh(partial_time_reversal(singlet_projector_by_hand()));
    CHECK(s.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("werner family endpoints and PPT minimum eigenvalue formula") {
    CHECK(max_abs_diff(werner(0.0).matrix(), CMat::identity(4) * cplx(0.25, 0.0)) == 0.0);
    CHECK(max_abs_diff(werner(1.0).matrix(), singlet_projector_by_hand()) < 1e-15);

    // Oracle: rho_w^TB assembled by hand from the hand-written singlet PT,
    // eigendecomposed, and compared against both the closed form (1-3b)/4
    // and the partial_transpose code path. The closed form is the minimum
    // for beta >= 0; below that the threefold (1+b)/4 branch dips under it.
    for (int i = 0; i <= 100; ++i) {
        const double beta = -1.0 / 3.0 + i * (4.0 / 3.0) / 100.0;
        CMat by_hand = singlet_pt_by_hand() * cplx(beta, 0.0);
        for (int d = 0; d < 4; ++d) by_hand(d, d) += (1.0 - beta) / 4.0;

        const double formula = (1.0 - 3.0 * beta) / 4.0;
        const double expected_min = std::min(formula, (1.0 + beta) / 4.0);

        const double oracle_min = hermitian_eigh(by_hand).eigenvalues[0];
        CHECK(std::abs(oracle_min - expected_min) < 1e-10);

        const EigenDecomposition impl = hermitian_eigh(partial_transpose(werner(beta)));
        CHECK(std::abs(impl.eigenvalues[0] - expected_min) < 1e-10);
        if (beta >= 0.0) CHECK(std::abs(impl.eigenvalues[0] - formula) < 1e-10);
        double formula_gap = 1e300;
        for (double lam : impl.eigenvalues) formula_gap = std::min(formula_gap, std::abs(lam - formula));
        CHECK(formula_gap < 1e-10);
        CHECK((impl.eigenvalues[0] < 0.0) == (beta > 1.0 / 3.0 + 1e-15));
    }

    CHECK_THROWS_AS(werner(1.0001), Error);
    CHECK_THROWS_AS(werner(-0.3339), Error);
}

TEST_CASE("random ensembles: determinism, rank, separability by construction") {
    const PureState a = random_pure(uint64_t{42});
    const PureState b = random_pure(uint64_t{42});
    for (int i = 0; i < 4; ++i) CHECK(a[i] == b[i]);

    const DensityMatrix m1 = random_mixed(uint64_t{42}, 4);
    const DensityMatrix m2 = random_mixed(uint64_t{42}, 4);
    CHECK(max_abs_diff(m1.matrix(), m2.matrix()) == 0.0);
    CHECK(hermitian_eigh(m1.matrix()).eigenvalues[0] > 0.0);  // full rank

    CHECK_THROWS_AS(random_mixed(uint64_t{1}, 5), Error);
    CHECK_THROWS_AS(random_separable(uint64_t{1}, 0), Error);

    // single product term: a pure product state, PPT-positive
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix sep = random_separable(rng, 1);
        CHECK(max_abs_diff(sep.matrix() * sep.matrix(), sep.matrix()) < 1e-10);
        CHECK(hermitian_eigh(partial_transpose(sep)).eigenvalues[0] >= -1e-10);
    }
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix sep = random_separable(rng, 1 + trial % 5);
        CHECK(hermitian_eigh(partial_transpose(sep)).eigenvalues[0] >= -1e-9);
    }
}
