#include "sepcert/states.hpp"

#include <algorithm>
#include <cmath>

namespace sepcert {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::array<cplx, 2> perp(const std::array<cplx, 2>& a) {
    return {-std::conj(a[1]), std::conj(a[0])};
}

cplx det2(const std::array<cplx, 2>& col0, const std::array<cplx, 2>& col1) {
    return col0[0] * col1[1] - col1[0] * col0[1];
}

}  // namespace

PureState::PureState(std::array<cplx, 4> amplitudes, double tol) : amp_(amplitudes) {
    double n2 = 0.0;
    for (const cplx& a : amp_) n2 += std::norm(a);
    const double n = std::sqrt(n2);
    if (std::abs(n - 1.0) > tol)
        throw Error(Error::Kind::Normalization,
                    "normalization error: |amplitudes| = " + std::to_string(n));
    for (cplx& a : amp_) a /= n;
}

double PureState::norm() const {
    double n2 = 0.0;
    for (const cplx& a : amp_) n2 += std::norm(a);
    return std::sqrt(n2);
}

cplx PureState::inner(const PureState& other) const {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(amp_[i]) * other.amp_[i];
    return s;
}

double PureState::fidelity(const PureState& other) const { return std::norm(inner(other)); }

PureState PureState::basis(int index) {
    if (index < 0 || index > 3)
        throw Error(Error::Kind::Domain, "domain error: basis index " + std::to_string(index));
    std::array<cplx, 4> a{};
    a[static_cast<size_t>(index)] = 1.0;
    return PureState(a);
}

PureState PureState::singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return PureState({0.0, r, -r, 0.0});
}

DensityMatrix validate_density(const CMat& m, double tol) {
    if (m.rows() != 4 || m.cols() != 4)
        throw Error(Error::Kind::Shape, "invalid-shape error: density matrix must be 4x4");
    if (!m.finite())
        throw Error(Error::Kind::Domain, "domain error: non-finite entries");
    const double herm = max_abs_diff(m, m.adjoint());
    if (herm > tol)
        throw Error(Error::Kind::Hermiticity,
                    "hermiticity error: max |rho - rho^dag| = " + std::to_string(herm));

    const double tr = m.trace().real();
    const double tr_dev = std::abs(tr - 1.0);
    if (tr_dev >= tol)
        throw Error(Error::Kind::Trace, "trace error: trace = " + std::to_string(tr));

    CMat fixed = m;
    bool renorm = false;
    if (tr_dev > 0.0) {
        fixed = m * cplx(1.0 / tr, 0.0);
        renorm = true;
    }

    const EigenDecomposition eig = hermitian_eigh(fixed, tol);
    const double min_eig = eig.eigenvalues.front();
    if (min_eig < -tol)
        throw Error(Error::Kind::Positivity,
                    "positivity error: min eigenvalue = " + std::to_string(min_eig));
    // Sub-tolerance negatives are kept in the matrix but clamped in the
    // reported figure.
    return DensityMatrix(std::move(fixed), renorm, std::max(min_eig, 0.0));
}

DensityMatrix pure_to_density(const PureState& p) {
    CMat m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = p[i] * std::conj(p[j]);
    return validate_density(m, 1e-9);
}

SchmidtForm schmidt_decompose(const PureState& p) {
    // Reshape the ket into the 2x2 coefficient matrix M with
    // psi = sum_ij M[i][j] |i>|j>, then take its SVD.
    CMat m(2, 2, {p[0], p[1], p[2], p[3]});
    const CMat gram = m.adjoint() * m;
    const EigenDecomposition eig = hermitian_eigh(gram, 1e-10);

    std::array<cplx, 2> w1{eig.vectors(0, 1), eig.vectors(1, 1)};
    std::array<cplx, 2> w2{eig.vectors(0, 0), eig.vectors(1, 0)};

    const std::vector<cplx> mw1 = m.apply({w1[0], w1[1]});
    const double s1 = std::sqrt(std::norm(mw1[0]) + std::norm(mw1[1]));
    std::array<cplx, 2> a1{mw1[0] / s1, mw1[1] / s1};

    std::array<cplx, 2> a2 = perp(a1);
    const std::vector<cplx> mw2 = m.apply({w2[0], w2[1]});
    const cplx zeta = std::conj(a2[0]) * mw2[0] + std::conj(a2[1]) * mw2[1];
    const double s2 = std::abs(zeta);
    if (s2 > 1e-15) {
        const cplx ph = zeta / s2;
        a2[0] *= ph;
        a2[1] *= ph;
    }

    // Special-unitary completion: scale the free columns so det(u)=det(v)=1
    // and push the leftover phase into delta.
    const cplx det_a = det2(a1, a2);
    const cplx det_w = det2({std::conj(w2[0]), std::conj(w2[1])},
                            {std::conj(w1[0]), std::conj(w1[1])});
    const cplx alpha = cplx(1.0, 0.0) / det_a;
    const cplx beta = cplx(1.0, 0.0) / det_w;
    const cplx eidelta = -det_a * det_w;

    SchmidtForm out;
    out.s1 = s1;
    out.s2 = s2;
    out.delta = std::atan2(eidelta.imag(), eidelta.real());
    if (out.delta < 0.0) out.delta += kTwoPi;
    out.u = CMat(2, 2, {a1[0], alpha * a2[0], a1[1], alpha * a2[1]});
    out.v = CMat(2, 2,
                 {beta * std::conj(w2[0]), std::conj(w1[0]), beta * std::conj(w2[1]),
                  std::conj(w1[1])});
    return out;
}

PureState SchmidtForm::reconstruct() const {
    const cplx c2 = -s2 * cplx(std::cos(delta), std::sin(delta));
    const std::vector<cplx> vec =
        kron(u, v).apply({0.0, cplx(s1, 0.0), c2, 0.0});
    return PureState({vec[0], vec[1], vec[2], vec[3]});
}

CMat partial_transpose(const CMat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw Error(Error::Kind::Shape, "invalid-shape error: partial transpose needs 4x4");
    CMat out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    out(2 * i + a, 2 * j + b) = rho(2 * i + b, 2 * j + a);
    return out;
}

CMat partial_transpose(const DensityMatrix& rho) { return partial_transpose(rho.matrix()); }

CMat partial_time_reversal(const CMat& rho) {
    const CMat t2 = kron(pauli(0), pauli(2));
    return t2 * partial_transpose(rho) * t2;
}

CMat partial_time_reversal(const DensityMatrix& rho) {
    return partial_time_reversal(rho.matrix());
}

DensityMatrix werner(double beta) {
    if (beta < -1.0 / 3.0 - 1e-12 || beta > 1.0 + 1e-12)
        throw Error(Error::Kind::Domain,
                    "domain error: werner beta = " + std::to_string(beta) +
                        " outside [-1/3, 1]");
    const PureState s = PureState::singlet();
    CMat m(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m(i, j) = beta * s[i] * std::conj(s[j]);
        m(i, i) += (1.0 - beta) / 4.0;
    }
    return validate_density(m, 1e-9);
}

std::array<cplx, 2> random_qubit(Rng& rng) {
    std::array<cplx, 2> a{cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal())};
    const double n = std::sqrt(std::norm(a[0]) + std::norm(a[1]));
    a[0] /= n;
    a[1] /= n;
    return a;
}

PureState random_pure(Rng& rng) {
    std::array<cplx, 4> a;
    double n2 = 0.0;
    for (cplx& z : a) {
        z = cplx(rng.normal(), rng.normal());
        n2 += std::norm(z);
    }
    const double n = std::sqrt(n2);
    for (cplx& z : a) z /= n;
    return PureState(a);
}

DensityMatrix random_mixed(Rng& rng, int rank) {
    if (rank < 1 || rank > 4)
        throw Error(Error::Kind::Domain, "domain error: rank " + std::to_string(rank));
    // Ginibre construction: rho = G G^dag / tr, Hilbert-Schmidt measure.
    CMat g(4, rank);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    CMat rho = g * g.adjoint();
    rho = rho * cplx(1.0 / rho.trace().real(), 0.0);
    return validate_density(rho, 1e-9);
}

DensityMatrix random_separable(Rng& rng, int terms) {
    if (terms < 1)
        throw Error(Error::Kind::Domain, "domain error: terms " + std::to_string(terms));
    std::vector<double> w(static_cast<size_t>(terms));
    double wsum = 0.0;
    for (double& x : w) {
        x = -std::log(1.0 - rng.uniform());  // Dirichlet(1,...,1)
        wsum += x;
    }
    CMat m(4, 4);
    for (int t = 0; t < terms; ++t) {
        const std::array<cplx, 2> a = random_qubit(rng);
        const std::array<cplx, 2> b = random_qubit(rng);
        std::array<cplx, 4> prod{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
        const double wt = w[static_cast<size_t>(t)] / wsum;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) += wt * prod[i] * std::conj(prod[j]);
    }
    return validate_density(m, 1e-9);
}

PureState random_pure(uint64_t seed) {
    Rng rng(seed);
    return random_pure(rng);
}

DensityMatrix random_mixed(uint64_t seed, int rank) {
    Rng rng(seed);
    return random_mixed(rng, rank);
}

DensityMatrix random_separable(uint64_t seed, int terms) {
    Rng rng(seed);
    return random_separable(rng, terms);
}

}  // namespace sepcert
