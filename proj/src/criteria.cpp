#include "sepcert/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace sepcert {

namespace {

double expect(const CMat& op, const CMat& rho) {
    return real_trace(trace_of_product(op, rho));
}

/// Hermitian square root of a PSD matrix; small negative roundoff clamped.
CMat sqrt_psd(const CMat& m) {
    const EigenDecomposition eig = hermitian_eigh(m, 1e-8);
    const int n = m.rows();
    CMat out(n, n);
    for (int k = 0; k < n; ++k) {
        const double lam = std::sqrt(std::max(eig.eigenvalues[static_cast<size_t>(k)], 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += lam * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    return out;
}

std::array<std::array<double, 3>, 3> rotate_correlation(
    const std::array<std::array<double, 3>, 3>& t,
    const std::array<std::array<double, 3>, 3>& ru,
    const std::array<std::array<double, 3>, 3>& rv) {
    // T' = Ru^T T Rv
    std::array<std::array<double, 3>, 3> out{};
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            double s = 0.0;
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n)
                    s += ru[static_cast<size_t>(m)][static_cast<size_t>(k)] *
                         t[static_cast<size_t>(m)][static_cast<size_t>(n)] *
                         rv[static_cast<size_t>(n)][static_cast<size_t>(l)];
            out[static_cast<size_t>(k)][static_cast<size_t>(l)] = s;
        }
    return out;
}

HefeiMargins margins_from_expectations(const HefeiExpectations& e) {
    HefeiMargins m;
    m.expectations = e;
    m.m_minus = e.p_minus * e.p_minus -
                (e.g3_minus * e.g3_minus + e.g2_minus * e.g2_minus + e.g1_minus * e.g1_minus);
    m.m_plus = e.p_plus * e.p_plus -
               (e.g3_plus * e.g3_plus + e.g2_minus * e.g2_minus + e.g1_minus * e.g1_minus);
    m.m_plus_all = e.p_plus * e.p_plus -
                   (e.g3_plus * e.g3_plus + e.g2_plus * e.g2_plus + e.g1_plus * e.g1_plus);
    return m;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Separable: return "separable";
        case Verdict::Entangled: return "entangled";
        case Verdict::Boundary: return "boundary";
    }
    return "unknown";
}

PptResult ppt_test(const DensityMatrix& rho, double tol) {
    const CMat pt = partial_transpose(rho);
    const EigenDecomposition eig = hermitian_eigh(pt, 1e-9);
    PptResult out;
    for (int i = 0; i < 4; ++i) out.spectrum[static_cast<size_t>(i)] = eig.eigenvalues[static_cast<size_t>(i)];
    out.min_eigenvalue = out.spectrum[0];
    if (out.min_eigenvalue < -tol)
        out.verdict = Verdict::Entangled;
    else if (out.min_eigenvalue <= tol)
        out.verdict = Verdict::Boundary;
    else
        out.verdict = Verdict::Separable;
    return out;
}

HefeiMargins hefei_margins(const DensityMatrix& rho, const LocalFrame& f) {
    const GammaSet g = build_gammas(f);
    const CMat& m = rho.matrix();

    HefeiExpectations e;
    e.p_minus = expect(g.P_minus, m);
    e.p_plus = expect(g.P_plus, m);
    e.g3_minus = expect(g.gk_g0[2] * g.P_minus, m);
    e.g3_plus = expect(g.gk_g0[2] * g.P_plus, m);
    e.g2_minus = expect(g.gk_g0[1] * g.P_minus, m);
    e.g2_plus = expect(g.gk_g0[1] * g.P_plus, m);
    e.g1_minus = expect(g.gk_g0[0] * g.P_minus, m);
    e.g1_plus = expect(g.gk_g0[0] * g.P_plus, m);

    if (e.p_minus < -1e-10 || e.p_plus < -1e-10)
        throw Error(Error::Kind::Internal, "internal error: projector expectation negative");
    return margins_from_expectations(e);
}

HefeiMargins hefei_margins_bloch(const std::array<double, 3>& r, const std::array<double, 3>& s,
                                 const std::array<std::array<double, 3>, 3>& t,
                                 const LocalFrame& f) {
    return hefei_margins_bloch(r, s, t, rotation_of_su2(f.u()), rotation_of_su2(f.v()));
}

HefeiMargins hefei_margins_bloch(const std::array<double, 3>& r, const std::array<double, 3>& s,
                                 const std::array<std::array<double, 3>, 3>& t,
                                 const std::array<std::array<double, 3>, 3>& ru,
                                 const std::array<std::array<double, 3>, 3>& rv) {
    const auto tp = rotate_correlation(t, ru, rv);
    std::array<double, 3> rp{};
    std::array<double, 3> sp{};
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m) {
            rp[static_cast<size_t>(k)] +=
                ru[static_cast<size_t>(m)][static_cast<size_t>(k)] * r[static_cast<size_t>(m)];
            sp[static_cast<size_t>(k)] +=
                rv[static_cast<size_t>(m)][static_cast<size_t>(k)] * s[static_cast<size_t>(m)];
        }

    // P+- = (1 +- A3 B3)/2 and the gk g0 products reduce to:
    //   g3 g0 P+- = (A3 +- B3)/2
    //   g2 g0 P-+ = (A2 B2 +- A1 B1)/2
    //   g1 g0 P-+ = (A2 B1 -+ A1 B2)/2
    HefeiExpectations e;
    e.p_minus = 0.5 * (1.0 - tp[2][2]);
    e.p_plus = 0.5 * (1.0 + tp[2][2]);
    e.g3_minus = 0.5 * (rp[2] - sp[2]);
    e.g3_plus = 0.5 * (rp[2] + sp[2]);
    e.g2_minus = 0.5 * (tp[1][1] + tp[0][0]);
    e.g2_plus = 0.5 * (tp[1][1] - tp[0][0]);
    e.g1_minus = 0.5 * (tp[1][0] - tp[0][1]);
    e.g1_plus = 0.5 * (tp[1][0] + tp[0][1]);
    return margins_from_expectations(e);
}

PureState chiral_state(const LocalFrame& f, double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx second = -s * std::polar(1.0, -(phi + 1.5707963267948966));
    const std::vector<cplx> vec = kron(f.u(), f.v()).apply({0.0, cplx(c, 0.0), second, 0.0});
    return PureState({vec[0], vec[1], vec[2], vec[3]});
}

IdentityResiduals expectation_identity_check(const DensityMatrix& rho, const LocalFrame& f,
                                             double theta, double phi) {
    const PureState phi_state = chiral_state(f, theta, phi);
    const HefeiExpectations e = hefei_margins(rho, f).expectations;

    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);

    const auto sandwich = [&](const CMat& op) {
        const std::vector<cplx> w = op.apply({phi_state[0], phi_state[1], phi_state[2], phi_state[3]});
        cplx val = 0.0;
        for (int i = 0; i < 4; ++i) val += std::conj(phi_state[i]) * w[static_cast<size_t>(i)];
        return real_trace(val);
    };

    const double lhs_direct = sandwich(rho.matrix());
    const double rhs_direct =
        0.5 * (e.p_minus + e.g3_minus * ct + e.g2_minus * st * sp + e.g1_minus * st * cp);

    const double lhs_pt = sandwich(partial_time_reversal(rho));
    const double rhs_pt =
        0.5 * (e.p_plus + e.g3_plus * ct - e.g2_minus * st * sp - e.g1_minus * st * cp);

    return {std::abs(lhs_direct - rhs_direct), std::abs(lhs_pt - rhs_pt)};
}

double concurrence(const DensityMatrix& rho) {
    const CMat y2 = kron(pauli(2), pauli(2));
    const CMat flipped = y2 * rho.matrix().conj() * y2;
    const CMat root = sqrt_psd(rho.matrix());
    const CMat m = root * flipped * root;  // Hermitian PSD, spectrum {lambda_i^2}
    const EigenDecomposition eig = hermitian_eigh(m, 1e-8);
    std::array<double, 4> lam;
    for (int i = 0; i < 4; ++i)
        lam[static_cast<size_t>(i)] = std::sqrt(std::max(eig.eigenvalues[static_cast<size_t>(i)], 0.0));
    // eigenvalues ascending: lam[3] is largest
    const double c = lam[3] - lam[2] - lam[1] - lam[0];
    return std::clamp(c, 0.0, 1.0);
}

double chsh_max(const DensityMatrix& rho) {
    const auto t = correlation_matrix(rho);
    CMat m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += t[static_cast<size_t>(k)][static_cast<size_t>(i)] *
                     t[static_cast<size_t>(k)][static_cast<size_t>(j)];
            m(i, j) = s;  // (T^T T)[i][j]
        }
    const EigenDecomposition eig = hermitian_eigh(m, 1e-10);
    const double top_two = std::max(eig.eigenvalues[1], 0.0) + std::max(eig.eigenvalues[2], 0.0);
    return 2.0 * std::sqrt(top_two);
}

std::array<std::array<double, 3>, 3> correlation_matrix(const DensityMatrix& rho) {
    std::array<std::array<double, 3>, 3> t{};
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            t[static_cast<size_t>(k)][static_cast<size_t>(l)] =
                real_trace(trace_of_product(kron(pauli(k + 1), pauli(l + 1)), rho.matrix()));
    return t;
}

std::pair<std::array<double, 3>, std::array<double, 3>> bloch_vectors(const DensityMatrix& rho) {
    std::array<double, 3> r{};
    std::array<double, 3> s{};
    for (int k = 0; k < 3; ++k) {
        r[static_cast<size_t>(k)] =
            real_trace(trace_of_product(kron(pauli(k + 1), pauli(0)), rho.matrix()));
        s[static_cast<size_t>(k)] =
            real_trace(trace_of_product(kron(pauli(0), pauli(k + 1)), rho.matrix()));
    }
    return {r, s};
}

}  // namespace sepcert
