#pragma once

#include <array>

#include "sepcert/matrix.hpp"
#include "sepcert/states.hpp"

namespace sepcert {

/// Pair of local SU(2) rotations (u, v) parametrized by Z-Y-Z Euler angles.
/// Only conjugation u sigma_k u^dag matters downstream, so the double-cover
/// sign of u is irrelevant.
class LocalFrame {
public:
    static LocalFrame from_angles(const std::array<double, 3>& angles_u,
                                  const std::array<double, 3>& angles_v);
    static LocalFrame from_flat(const std::array<double, 6>& angles);
    static LocalFrame identity();
    /// Frame carrying given special-unitary matrices; Euler angles are
    /// recovered from the rotations they induce.
    static LocalFrame from_unitaries(const CMat& u, const CMat& v);

    const std::array<double, 3>& angles_u() const { return angles_u_; }
    const std::array<double, 3>& angles_v() const { return angles_v_; }
    std::array<double, 6> flat_angles() const;
    const CMat& u() const { return u_; }
    const CMat& v() const { return v_; }

private:
    LocalFrame(std::array<double, 3> au, std::array<double, 3> av, CMat u, CMat v)
        : angles_u_(au), angles_v_(av), u_(std::move(u)), v_(std::move(v)) {}

    std::array<double, 3> angles_u_;
    std::array<double, 3> angles_v_;
    CMat u_, v_;
};

/// SU(2) from Z-Y-Z Euler angles: Rz(a) Ry(b) Rz(g).
CMat su2_from_euler(double a, double b, double g);

/// SO(3) rotation induced by conjugation: u sigma_k u^dag = sum_l R[l][k] sigma_l.
std::array<std::array<double, 3>, 3> rotation_of_su2(const CMat& u);

/// Z-Y-Z rotation matrix Rz(a) Ry(b) Rz(g); equals rotation_of_su2 of the
/// matching SU(2) element.
std::array<std::array<double, 3>, 3> rotation_from_euler(double a, double b, double g);

/// Z-Y-Z Euler angles of a proper rotation matrix (beta in [0, pi]).
std::array<double, 3> euler_from_rotation(const std::array<std::array<double, 3>, 3>& r);

/// The frame-dependent operator family: local observables A_k, B_k, the
/// gamma matrices built from them, the chiral projectors, and the three
/// products gamma_k gamma_0 that span the chiral expansion.
struct GammaSet {
    std::array<CMat, 3> A;       // u sigma_k u^dag (x) 1
    std::array<CMat, 3> B;       // 1 (x) v tau_k v^dag
    std::array<CMat, 4> gamma;   // gamma_0..gamma_3
    CMat gamma5;                 // A3 B3
    CMat P_plus, P_minus;        // (1 +- gamma5)/2
    std::array<CMat, 3> gk_g0;   // gamma_1 gamma_0, gamma_2 gamma_0, gamma_3 gamma_0
};

/// A_k = u sigma_k u^dag (x) 1 and B_k = 1 (x) v tau_k v^dag.
std::pair<std::array<CMat, 3>, std::array<CMat, 3>> build_observables(const LocalFrame& f);

GammaSet build_gammas(const LocalFrame& f);

/// Coefficients of the chiral expansion of a pure projector living in the
/// P_minus sector of frame f:
///   rho = (1/2) [P_- + a1 g1g0 P_- + a2 g2g0 P_- + a3 g3g0 P_-],
/// with sum a_k^2 = 1. `residual` is the max-abs reconstruction error.
struct ExpansionCoefficients {
    double a1, a2, a3;
    double residual;
};

ExpansionCoefficients expansion_coefficients(const DensityMatrix& rho_pure, const LocalFrame& f);

/// Max-abs residuals of the algebraic identities the construction rests on.
/// All should sit at machine precision for every frame.
struct AlgebraReport {
    double clifford;            // {g_mu, g_nu} = 2 g_munu
    double gamma5_product;      // gamma5 = -i g0 g1 g2 g3
    double gamma5_anticommute;  // {gamma5, g_mu} = 0
    double gamma5_commute;      // [gamma5, g_k g0] = 0
    double gk_g0_identities;    // g1g0 = A2B1, g2g0 = A2B2, g3g0 = A3
    double duality;             // i g_k g0 gamma5 = -(1/2) eps_klm g_l g_m
    double duality_projected;   // (1/2) eps_klm g_l g_m P_- = i g_k g0 P_-
    double projectors;          // P+- idempotent, orthogonal, complete
    double b_conjugation;       // (1 (x) tau2) B_k^T (1 (x) tau2) = -B_k
    double su2_structure;       // A1 A2 = i A3 and cyclic; same for B
    double ab_commutators;      // [A_k, B_l] = 0

    double max_residual() const;
};

AlgebraReport verify_algebra(const LocalFrame& f);

}  // namespace sepcert
