#include "sepcert/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sepcert {

namespace {

std::string shape_str(int r, int c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

CMat::CMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0)
        throw Error(Error::Kind::Shape, "invalid-shape error: " + shape_str(rows, cols));
}

CMat::CMat(int rows, int cols, std::initializer_list<cplx> entries) : CMat(rows, cols) {
    if (entries.size() != data_.size())
        throw Error(Error::Kind::Shape,
                    "invalid-shape error: " + std::to_string(entries.size()) + " entries for " +
                        shape_str(rows, cols));
    std::copy(entries.begin(), entries.end(), data_.begin());
}

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::zero(int rows, int cols) { return CMat(rows, cols); }

void CMat::check_same_shape(const CMat& other, const char* op) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error(Error::Kind::Shape, std::string("invalid-shape error in ") + op + ": " +
                                            shape_str(rows_, cols_) + " vs " +
                                            shape_str(other.rows_, other.cols_));
}

CMat CMat::operator+(const CMat& other) const {
    check_same_shape(other, "add");
    CMat out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

CMat CMat::operator-(const CMat& other) const {
    check_same_shape(other, "sub");
    CMat out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

CMat CMat::operator*(const CMat& other) const {
    if (cols_ != other.rows_)
        throw Error(Error::Kind::Shape, "invalid-shape error in mul: " + shape_str(rows_, cols_) +
                                            " vs " + shape_str(other.rows_, other.cols_));
    CMat out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < other.cols_; ++j) out(i, j) += aik * other(k, j);
        }
    }
    return out;
}

CMat CMat::operator*(cplx scalar) const {
    CMat out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * scalar;
    return out;
}

CMat CMat::adjoint() const {
    CMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMat CMat::transpose() const {
    CMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

CMat CMat::conj() const {
    CMat out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
    return out;
}

cplx CMat::trace() const {
    if (!square()) throw Error(Error::Kind::Shape, "invalid-shape error: trace of non-square");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

cplx CMat::det() const {
    if (!square()) throw Error(Error::Kind::Shape, "invalid-shape error: det of non-square");
    // Gaussian elimination with partial pivoting; fine at n <= 4.
    CMat a = *this;
    const int n = rows_;
    cplx d = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            d = -d;
        }
        d *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cplx f = a(r, col) / a(col, col);
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return d;
}

double CMat::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

std::vector<cplx> CMat::apply(const std::vector<cplx>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw Error(Error::Kind::Shape, "invalid-shape error: vector length " +
                                            std::to_string(v.size()) + " for " +
                                            shape_str(rows_, cols_));
    std::vector<cplx> out(rows_, cplx(0.0, 0.0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool CMat::finite() const {
    for (const cplx& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double max_abs_diff(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Error::Kind::Shape, "invalid-shape error in max_abs_diff");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

CMat kron(const CMat& a, const CMat& b) {
    if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
        throw Error(Error::Kind::Shape, "invalid-shape error: kron expects 2x2 factors");
    CMat out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

CMat pauli(int k) {
    const cplx I(0.0, 1.0);
    switch (k) {
        case 0: return CMat::identity(2);
        case 1: return CMat(2, 2, {0.0, 1.0, 1.0, 0.0});
        case 2: return CMat(2, 2, {0.0, -I, I, 0.0});
        case 3: return CMat(2, 2, {1.0, 0.0, 0.0, -1.0});
        default: throw Error(Error::Kind::Domain, "domain error: pauli index " + std::to_string(k));
    }
}

std::vector<cplx> EigenDecomposition::eigenvector(int k) const {
    std::vector<cplx> v(vectors.rows());
    for (int i = 0; i < vectors.rows(); ++i) v[i] = vectors(i, k);
    return v;
}

namespace {

// One cyclic Jacobi sweep position: annihilate A[p][q] with the unitary
// plane rotation U = [[c, -s e^{i psi}], [s e^{-i psi}, c]] applied to the
// (p,q) plane, accumulating eigenvectors in V.
void jacobi_rotate(CMat& a, CMat& v, int p, int q) {
    const cplx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cplx phase = apq / r;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    // annihilation condition: r (c^2 - s^2) + (aqq - app) c s = 0, i.e.
    // t^2 - 2 tau t - 1 = 0 with t = s/c; take the smaller-magnitude root
    const double tau = (aqq - app) / (2.0 * r);
    const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cplx spe = s * phase;             // s e^{i psi}
    const cplx spc = s * std::conj(phase);  // s e^{-i psi}
    const int n = a.rows();

    // Column update: A <- A U.
    for (int k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = c * akp + spc * akq;
        a(k, q) = -spe * akp + c * akq;
    }
    // Row update: A <- U^dag A.
    for (int k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = c * apk + spe * aqk;
        a(q, k) = -spc * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cplx(a(p, p).real(), 0.0);
    a(q, q) = cplx(a(q, q).real(), 0.0);

    for (int k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = c * vkp + spc * vkq;
        v(k, q) = -spe * vkp + c * vkq;
    }
}

double off_diagonal_norm(const CMat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Phase-fix one eigenvector column in place: largest-magnitude component made
// real positive, ties broken by lowest index.
void fix_phase(CMat& v, int col) {
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < v.rows(); ++i) {
        const double m = std::abs(v(i, col));
        if (m > best + 1e-14) {
            best = m;
            imax = i;
        }
    }
    if (best <= 0.0) return;
    const cplx z = v(imax, col);
    const cplx rot = std::conj(z) / std::abs(z);
    for (int i = 0; i < v.rows(); ++i) v(i, col) *= rot;
    v(imax, col) = cplx(v(imax, col).real(), 0.0);
}

bool lex_less(const CMat& v, int a, int b) {
    for (int i = 0; i < v.rows(); ++i) {
        const cplx& x = v(i, a);
        const cplx& y = v(i, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

}  // namespace

EigenDecomposition hermitian_eigh(const CMat& h, double tol) {
    if (!h.square()) throw Error(Error::Kind::Shape, "invalid-shape error: eigh of non-square");
    if (!h.finite()) throw Error(Error::Kind::Domain, "domain error: non-finite entries in eigh");
    const double herm_dev = max_abs_diff(h, h.adjoint());
    if (herm_dev > tol)
        throw Error(Error::Kind::Hermiticity,
                    "hermiticity error: max |H - H^dag| = " + std::to_string(herm_dev));

    const int n = h.rows();
    // Symmetrize to kill sub-tolerance asymmetry before iterating.
    CMat a = (h + h.adjoint()) * cplx(0.5, 0.0);
    CMat v = CMat::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-15 * scale) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int k = 0; k < n; ++k) fix_phase(v, k);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (a(x, x).real() != a(y, y).real()) return a(x, x).real() < a(y, y).real();
        return lex_less(v, x, y);
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.vectors = CMat(n, n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

double real_trace(const cplx& t, double tol) {
    if (std::abs(t.imag()) > tol)
        throw Error(Error::Kind::Internal,
                    "internal error: expectation has imaginary part " + std::to_string(t.imag()));
    return t.real();
}

cplx trace_of_product(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw Error(Error::Kind::Shape, "invalid-shape error in trace_of_product");
    cplx t = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
}

}  // namespace sepcert
