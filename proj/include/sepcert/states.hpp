#pragma once

#include <array>

#include "sepcert/matrix.hpp"
#include "sepcert/rng.hpp"

namespace sepcert {

/// Two-qubit ket in the product basis |++>, |+->, |-+>, |-->, with
/// |+> = (1,0)^T and |-> = (0,1)^T.
class PureState {
public:
    explicit PureState(std::array<cplx, 4> amplitudes, double tol = 1e-8);

    const std::array<cplx, 4>& amplitudes() const { return amp_; }
    cplx operator[](int i) const { return amp_[static_cast<size_t>(i)]; }

    double norm() const;
    cplx inner(const PureState& other) const;  // <this|other>
    double fidelity(const PureState& other) const;

    static PureState basis(int index);  // |++>,|+->,|-+>,|--> for 0..3
    static PureState singlet();

private:
    std::array<cplx, 4> amp_;
};

/// Validated 4x4 density matrix: Hermitian, unit trace, positive
/// semidefinite within tolerance.
class DensityMatrix {
public:
    const CMat& matrix() const { return mat_; }
    bool renormalized() const { return renormalized_; }
    double min_eigenvalue() const { return min_eig_; }

    friend DensityMatrix validate_density(const CMat& m, double tol);

private:
    DensityMatrix(CMat m, bool renorm, double min_eig)
        : mat_(std::move(m)), renormalized_(renorm), min_eig_(min_eig) {}

    CMat mat_;
    bool renormalized_;
    double min_eig_;
};

/// Canonical form of a pure two-qubit state:
///   |psi> = (u (x) v) [ s1 |+-> - s2 e^{i delta} |-+> ]
/// with s1 >= s2 >= 0, s1^2 + s2^2 = 1, det(u) = det(v) = 1.
struct SchmidtForm {
    double s1;
    double s2;
    double delta;  // in [0, 2 pi)
    CMat u;        // 2x2 special unitary
    CMat v;        // 2x2 special unitary

    PureState reconstruct() const;
};

DensityMatrix validate_density(const CMat& m, double tol = 1e-9);

DensityMatrix pure_to_density(const PureState& p);

SchmidtForm schmidt_decompose(const PureState& p);

/// Transpose of the second tensor factor. Hermitian and unit trace but in
/// general not positive; negativity is exactly the entanglement signal.
CMat partial_transpose(const CMat& rho);
CMat partial_transpose(const DensityMatrix& rho);

/// (1 (x) tau2) rho^{T_B} (1 (x) tau2); same spectrum as the partial
/// transpose, unitary conjugation.
CMat partial_time_reversal(const CMat& rho);
CMat partial_time_reversal(const DensityMatrix& rho);

/// Werner family (1-beta)/4 * I + beta |singlet><singlet|; positive for
/// beta in [-1/3, 1].
DensityMatrix werner(double beta);

PureState random_pure(Rng& rng);
DensityMatrix random_mixed(Rng& rng, int rank);
DensityMatrix random_separable(Rng& rng, int terms);

PureState random_pure(uint64_t seed);
DensityMatrix random_mixed(uint64_t seed, int rank);
DensityMatrix random_separable(uint64_t seed, int terms);

/// Haar-random single-qubit ket (used by random_separable; exposed for tests).
std::array<cplx, 2> random_qubit(Rng& rng);

}  // namespace sepcert
