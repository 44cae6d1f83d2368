#pragma once

#include <array>
#include <string>

#include "sepcert/frame.hpp"
#include "sepcert/states.hpp"

namespace sepcert {

enum class Verdict { Separable, Entangled, Boundary };

std::string to_string(Verdict v);

/// The six traces entering the chiral separability inequalities, plus the
/// two P_plus partners needed for the always-true all-plus variant.
struct HefeiExpectations {
    double p_minus, p_plus;    // <P->, <P+>
    double g3_minus, g3_plus;  // <g3 g0 P->, <g3 g0 P+>
    double g2_minus, g2_plus;  // <g2 g0 P->, <g2 g0 P+>
    double g1_minus, g1_plus;  // <g1 g0 P->, <g1 g0 P+>
};

/// Quadratic margins of the two inequalities at one frame. m_minus >= 0 for
/// every valid state; m_plus < 0 at any frame certifies entanglement.
/// m_plus_all is the all-P_plus variant, non-negative for every valid state.
struct HefeiMargins {
    double m_minus;
    double m_plus;
    double m_plus_all;
    HefeiExpectations expectations;
};

struct PptResult {
    double min_eigenvalue;
    std::array<double, 4> spectrum;  // ascending
    Verdict verdict;
};

/// Exact Peres-Horodecki test: spectrum of the partial transpose.
PptResult ppt_test(const DensityMatrix& rho, double tol = 1e-9);

/// Margins of the two chiral inequalities at frame f, all eight traces
/// computed against the frame's operator set.
HefeiMargins hefei_margins(const DensityMatrix& rho, const LocalFrame& f);

/// Same margins from the Bloch/correlation data (r, s, T) of rho --
/// algebraically identical to hefei_margins, two orders of magnitude
/// cheaper. Used by the frame search inner loop.
HefeiMargins hefei_margins_bloch(const std::array<double, 3>& r, const std::array<double, 3>& s,
                                 const std::array<std::array<double, 3>, 3>& t,
                                 const LocalFrame& f);

/// Rotation-matrix form of hefei_margins_bloch; avoids building any complex
/// matrices, so grid sweeps stay cheap.
HefeiMargins hefei_margins_bloch(const std::array<double, 3>& r, const std::array<double, 3>& s,
                                 const std::array<std::array<double, 3>, 3>& t,
                                 const std::array<std::array<double, 3>, 3>& ru,
                                 const std::array<std::array<double, 3>, 3>& rv);

/// Pure chiral state of the expansion family at frame f:
///   (u (x) v) [cos(theta/2) |+-> - sin(theta/2) e^{-i(phi+pi/2)} |-+>],
/// whose expansion coefficients are (sin t cos p, sin t sin p, cos t).
PureState chiral_state(const LocalFrame& f, double theta, double phi);

/// Residuals of the two expectation identities tying <Phi|rho|Phi> and
/// <Phi|t2 rho^TB t2|Phi> to the six traces. Both vanish identically; a
/// visible residual means the operator conventions are broken.
struct IdentityResiduals {
    double direct;
    double time_reversed;
};

IdentityResiduals expectation_identity_check(const DensityMatrix& rho, const LocalFrame& f,
                                             double theta, double phi);

/// Wootters concurrence in [0, 1].
double concurrence(const DensityMatrix& rho);

/// Maximal CHSH value 2 sqrt(m1 + m2) over local measurement settings,
/// from the two largest eigenvalues of T^T T. Values > 2 violate CHSH.
double chsh_max(const DensityMatrix& rho);

/// Correlation matrix T[k][l] = Tr(rho sigma_k (x) tau_l).
std::array<std::array<double, 3>, 3> correlation_matrix(const DensityMatrix& rho);

/// Local Bloch vectors r[k] = Tr(rho sigma_k (x) 1), s[l] = Tr(rho 1 (x) tau_l).
std::pair<std::array<double, 3>, std::array<double, 3>> bloch_vectors(const DensityMatrix& rho);

}  // namespace sepcert
