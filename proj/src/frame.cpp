#include "sepcert/frame.hpp"

#include <algorithm>
#include <cmath>

namespace sepcert {

namespace {

const cplx kI(0.0, 1.0);

void check_su2(const CMat& m, const char* name) {
    if (m.rows() != 2 || m.cols() != 2)
        throw Error(Error::Kind::Shape, std::string("invalid-shape error: ") + name);
    if (max_abs_diff(m * m.adjoint(), CMat::identity(2)) > 1e-12 ||
        std::abs(m.det() - cplx(1.0, 0.0)) > 1e-12)
        throw Error(Error::Kind::Domain,
                    std::string("domain error: ") + name + " is not special unitary");
}

}  // namespace

CMat su2_from_euler(double a, double b, double g) {
    const double cb = std::cos(b / 2.0);
    const double sb = std::sin(b / 2.0);
    const cplx eam = std::polar(1.0, -a / 2.0);
    const cplx eap = std::polar(1.0, a / 2.0);
    const cplx egm = std::polar(1.0, -g / 2.0);
    const cplx egp = std::polar(1.0, g / 2.0);
    return CMat(2, 2, {eam * cb * egm, -eam * sb * egp, eap * sb * egm, eap * cb * egp});
}

std::array<std::array<double, 3>, 3> rotation_of_su2(const CMat& u) {
    std::array<std::array<double, 3>, 3> r{};
    for (int k = 0; k < 3; ++k) {
        const CMat m = u * pauli(k + 1) * u.adjoint();
        for (int l = 0; l < 3; ++l) {
            // R[l][k] = (1/2) Tr(sigma_l u sigma_k u^dag)
            r[static_cast<size_t>(l)][static_cast<size_t>(k)] =
                0.5 * trace_of_product(pauli(l + 1), m).real();
        }
    }
    return r;
}

std::array<std::array<double, 3>, 3> rotation_from_euler(double a, double b, double g) {
    const double ca = std::cos(a), sa = std::sin(a);
    const double cb = std::cos(b), sb = std::sin(b);
    const double cg = std::cos(g), sg = std::sin(g);
    return {{{ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb},
             {sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb},
             {-sb * cg, sb * sg, cb}}};
}

namespace {

double wrap_2pi(double a) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    a = std::fmod(a, two_pi);
    return a < 0.0 ? a + two_pi : a;
}

}  // namespace

std::array<double, 3> euler_from_rotation(const std::array<std::array<double, 3>, 3>& r) {
    const double r22 = std::clamp(r[2][2], -1.0, 1.0);
    const double beta = std::acos(r22);
    const double sb = std::sin(beta);
    if (sb > 1e-12) {
        const double alpha = std::atan2(r[1][2], r[0][2]);
        const double gamma = std::atan2(r[2][1], -r[2][0]);
        return {wrap_2pi(alpha), beta, wrap_2pi(gamma)};
    }
    if (r22 > 0.0) {
        // beta ~ 0: pure Rz(alpha + gamma)
        return {wrap_2pi(std::atan2(r[1][0], r[0][0])), 0.0, 0.0};
    }
    // beta ~ pi: R = Rz(alpha) Ry(pi) Rz(gamma), fold gamma into alpha.
    return {wrap_2pi(std::atan2(-r[0][1], -r[0][0])), beta, 0.0};
}

LocalFrame LocalFrame::from_angles(const std::array<double, 3>& angles_u,
                                   const std::array<double, 3>& angles_v) {
    for (double a : angles_u)
        if (!std::isfinite(a)) throw Error(Error::Kind::Domain, "domain error: non-finite angle");
    for (double a : angles_v)
        if (!std::isfinite(a)) throw Error(Error::Kind::Domain, "domain error: non-finite angle");
    CMat u = su2_from_euler(angles_u[0], angles_u[1], angles_u[2]);
    CMat v = su2_from_euler(angles_v[0], angles_v[1], angles_v[2]);
    return LocalFrame(angles_u, angles_v, std::move(u), std::move(v));
}

LocalFrame LocalFrame::from_flat(const std::array<double, 6>& angles) {
    return from_angles({angles[0], angles[1], angles[2]}, {angles[3], angles[4], angles[5]});
}

LocalFrame LocalFrame::identity() { return from_angles({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}); }

LocalFrame LocalFrame::from_unitaries(const CMat& u, const CMat& v) {
    check_su2(u, "u");
    check_su2(v, "v");
    const std::array<double, 3> au = euler_from_rotation(rotation_of_su2(u));
    const std::array<double, 3> av = euler_from_rotation(rotation_of_su2(v));
    // Rebuild from the recovered angles so flat_angles() round-trips exactly.
    return from_angles(au, av);
}

std::array<double, 6> LocalFrame::flat_angles() const {
    return {angles_u_[0], angles_u_[1], angles_u_[2], angles_v_[0], angles_v_[1], angles_v_[2]};
}

std::pair<std::array<CMat, 3>, std::array<CMat, 3>> build_observables(const LocalFrame& f) {
    std::array<CMat, 3> a;
    std::array<CMat, 3> b;
    const CMat id2 = pauli(0);
    for (int k = 0; k < 3; ++k) {
        a[static_cast<size_t>(k)] = kron(f.u() * pauli(k + 1) * f.u().adjoint(), id2);
        b[static_cast<size_t>(k)] = kron(id2, f.v() * pauli(k + 1) * f.v().adjoint());
    }
    return {a, b};
}

GammaSet build_gammas(const LocalFrame& f) {
    GammaSet g;
    auto [a, b] = build_observables(f);
    g.A = a;
    g.B = b;
    // Sign convention fixed so that gamma_1 gamma_0 = A2 B1,
    // gamma_2 gamma_0 = A2 B2, gamma_3 gamma_0 = A3 and
    // gamma5 = A3 B3 = -i g0 g1 g2 g3 all hold exactly.
    g.gamma[0] = g.A[0];
    g.gamma[1] = -kI * (g.A[2] * g.B[0]);
    g.gamma[2] = -kI * (g.A[2] * g.B[1]);
    g.gamma[3] = kI * g.A[1];
    g.gamma5 = g.A[2] * g.B[2];
    const CMat id4 = CMat::identity(4);
    g.P_plus = (id4 + g.gamma5) * cplx(0.5, 0.0);
    g.P_minus = (id4 - g.gamma5) * cplx(0.5, 0.0);
    for (int k = 0; k < 3; ++k)
        g.gk_g0[static_cast<size_t>(k)] = g.gamma[static_cast<size_t>(k) + 1] * g.gamma[0];
    return g;
}

ExpansionCoefficients expansion_coefficients(const DensityMatrix& rho_pure, const LocalFrame& f) {
    const GammaSet g = build_gammas(f);
    const CMat& rho = rho_pure.matrix();

    const CMat projected = g.P_minus * rho * g.P_minus;
    const double mismatch = max_abs_diff(projected, rho);
    if (mismatch > 1e-8)
        throw Error(Error::Kind::FrameMismatch,
                    "frame-mismatch error: P_- rho P_- deviates by " + std::to_string(mismatch));

    // Dual-basis normalization is 1: Tr(g_k g0 P_- g_l g0 P_-) = 2 delta_kl
    // against the expansion's prefactor 1/2 (exercised in the test suite).
    ExpansionCoefficients out{};
    std::array<double, 3> coeff{};
    for (int k = 0; k < 3; ++k)
        coeff[static_cast<size_t>(k)] =
            real_trace(trace_of_product(g.gk_g0[static_cast<size_t>(k)] * g.P_minus, rho));
    out.a1 = coeff[0];
    out.a2 = coeff[1];
    out.a3 = coeff[2];

    CMat recon = g.P_minus;
    for (int k = 0; k < 3; ++k)
        recon = recon + g.gk_g0[static_cast<size_t>(k)] * g.P_minus *
                            cplx(coeff[static_cast<size_t>(k)], 0.0);
    recon = recon * cplx(0.5, 0.0);
    out.residual = max_abs_diff(rho, recon);
    return out;
}

double AlgebraReport::max_residual() const {
    return std::max({clifford, gamma5_product, gamma5_anticommute, gamma5_commute,
                     gk_g0_identities, duality, duality_projected, projectors, b_conjugation,
                     su2_structure, ab_commutators});
}

AlgebraReport verify_algebra(const LocalFrame& f) {
    const GammaSet g = build_gammas(f);
    const CMat id4 = CMat::identity(4);
    AlgebraReport rep{};

    const double metric[4] = {1.0, -1.0, -1.0, -1.0};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const CMat anti = g.gamma[static_cast<size_t>(mu)] * g.gamma[static_cast<size_t>(nu)] +
                              g.gamma[static_cast<size_t>(nu)] * g.gamma[static_cast<size_t>(mu)];
            const double target = (mu == nu) ? 2.0 * metric[mu] : 0.0;
            rep.clifford =
                std::max(rep.clifford, max_abs_diff(anti, id4 * cplx(target, 0.0)));
        }
        const CMat a5 = g.gamma5 * g.gamma[static_cast<size_t>(mu)] +
                        g.gamma[static_cast<size_t>(mu)] * g.gamma5;
        rep.gamma5_anticommute = std::max(rep.gamma5_anticommute, a5.max_abs());
    }

    rep.gamma5_product =
        max_abs_diff(g.gamma5, -kI * (g.gamma[0] * g.gamma[1] * g.gamma[2] * g.gamma[3]));

    for (const CMat& gg : g.gk_g0) {
        const CMat comm = g.gamma5 * gg - gg * g.gamma5;
        rep.gamma5_commute = std::max(rep.gamma5_commute, comm.max_abs());
    }

    rep.gk_g0_identities = std::max({max_abs_diff(g.gk_g0[0], g.A[1] * g.B[0]),
                                     max_abs_diff(g.gk_g0[1], g.A[1] * g.B[1]),
                                     max_abs_diff(g.gk_g0[2], g.A[2])});

    // Duality: i g_k g0 gamma5 = -(1/2) eps_klm g_l g_m, i.e. the pair
    // product with cyclic (l, m) carries the opposite sign.
    for (int k = 0; k < 3; ++k) {
        const int l = (k + 1) % 3;
        const int m = (k + 2) % 3;
        const CMat lhs = kI * (g.gk_g0[static_cast<size_t>(k)] * g.gamma5);
        const CMat pair =
            g.gamma[static_cast<size_t>(l) + 1] * g.gamma[static_cast<size_t>(m) + 1];
        rep.duality = std::max(rep.duality, max_abs_diff(lhs, -pair));
        rep.duality_projected = std::max(
            rep.duality_projected,
            max_abs_diff(pair * g.P_minus, kI * (g.gk_g0[static_cast<size_t>(k)] * g.P_minus)));
    }

    rep.projectors = std::max({max_abs_diff(g.P_plus * g.P_plus, g.P_plus),
                               max_abs_diff(g.P_minus * g.P_minus, g.P_minus),
                               (g.P_plus * g.P_minus).max_abs(),
                               max_abs_diff(g.P_plus + g.P_minus, id4)});

    const CMat t2 = kron(pauli(0), pauli(2));
    for (const CMat& b : g.B) {
        rep.b_conjugation =
            std::max(rep.b_conjugation, max_abs_diff(t2 * b.transpose() * t2, -b));
    }

    for (int k = 0; k < 3; ++k) {
        const int l = (k + 1) % 3;
        const int m = (k + 2) % 3;
        rep.su2_structure = std::max(
            {rep.su2_structure,
             max_abs_diff(g.A[static_cast<size_t>(k)] * g.A[static_cast<size_t>(l)],
                          kI * g.A[static_cast<size_t>(m)]),
             max_abs_diff(g.B[static_cast<size_t>(k)] * g.B[static_cast<size_t>(l)],
                          kI * g.B[static_cast<size_t>(m)])});
        for (int j = 0; j < 3; ++j) {
            const CMat comm = g.A[static_cast<size_t>(k)] * g.B[static_cast<size_t>(j)] -
                              g.B[static_cast<size_t>(j)] * g.A[static_cast<size_t>(k)];
            rep.ab_commutators = std::max(rep.ab_commutators, comm.max_abs());
        }
    }

    return rep;
}

}  // namespace sepcert
