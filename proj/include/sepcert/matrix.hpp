#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepcert {

using cplx = std::complex<double>;

/// Error taxonomy shared by the whole library. The kind names the violated
/// contract; the message carries the specifics.
class Error : public std::runtime_error {
public:
    enum class Kind {
        Shape,
        Hermiticity,
        Positivity,
        Trace,
        Normalization,
        Domain,
        FrameMismatch,
        Parse,
        Internal,
    };

    Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Dense complex matrix, row-major. Sizes are 2x2 and 4x4 throughout this
/// library (plus 3x3 for correlation-matrix work); nothing here is tuned
/// for larger problems.
class CMat {
public:
    CMat() : rows_(0), cols_(0) {}
    CMat(int rows, int cols);
    CMat(int rows, int cols, std::initializer_list<cplx> entries);

    static CMat identity(int n);
    static CMat zero(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    CMat operator+(const CMat& other) const;
    CMat operator-(const CMat& other) const;
    CMat operator*(const CMat& other) const;
    CMat operator*(cplx scalar) const;
    CMat operator-() const { return *this * cplx(-1.0, 0.0); }

    CMat adjoint() const;
    CMat transpose() const;
    CMat conj() const;

    cplx trace() const;
    cplx det() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// Matrix-vector product; v.size() must equal cols().
    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    bool finite() const;

private:
    int rows_, cols_;
    std::vector<cplx> data_;

    void check_same_shape(const CMat& other, const char* op) const;
};

inline CMat operator*(cplx scalar, const CMat& m) { return m * scalar; }

double max_abs_diff(const CMat& a, const CMat& b);

/// Kronecker product of two 2x2 blocks: (a (x) b)[2i+k][2j+l] = a[i][j] b[k][l].
CMat kron(const CMat& a, const CMat& b);

/// Pauli matrices, indexed 1..3. Index 0 returns the 2x2 identity.
CMat pauli(int k);

/// Spectrum of a Hermitian matrix, eigenvalues ascending. Eigenvectors are the
/// columns of `vectors`, orthonormal, each phase-fixed so its largest-magnitude
/// component is real positive (ties broken by lowest index).
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    CMat vectors;

    std::vector<cplx> eigenvector(int k) const;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices. Rejects input
/// whose max-abs deviation from its adjoint exceeds `tol`.
EigenDecomposition hermitian_eigh(const CMat& h, double tol = 1e-9);

/// Real part of a trace whose imaginary part must vanish; throws if
/// |Im| > tol (indicates a non-Hermitian observable or state upstream).
double real_trace(const cplx& t, double tol = 1e-10);

/// Tr(a*b) without forming the product.
cplx trace_of_product(const CMat& a, const CMat& b);

}  // namespace sepcert
