#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

#include "uqcm/kernels.hpp"

// Dense complex linear algebra at desk scale. Row-major matrices backed by
// the kernel layer; Hermitian eigenproblems solved by cyclic Jacobi
// rotations and SVD by one-sided (Hestenes) Jacobi, both of which converge
// to near machine precision on the dimensions this project touches.

namespace uqcm::linalg {

using cxd = std::complex<double>;
using Vec = std::vector<cxd>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cxd{}) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<cxd> vals);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cxd& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }
    cxd* data() { return a_.data(); }
    const cxd* data() const { return a_.data(); }
    cxd* row(std::size_t i) { return a_.data() + i * cols_; }
    const cxd* row(std::size_t i) const { return a_.data() + i * cols_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conjugate() const;
    cxd trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cxd s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cxd s) { return a *= s; }
    friend Matrix operator*(cxd s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec a_;
};

Vec mat_vec(const Matrix& a, const Vec& x);
Matrix outer(const Vec& x, const Vec& y);  // x y^dagger
Matrix kron(const Matrix& a, const Matrix& b);

bool approx_equal(const Matrix& a, const Matrix& b, double tol);
bool is_hermitian(const Matrix& a, double tol);
bool is_unitary(const Matrix& a, double tol);

// ---- vector helpers (kernel-backed) ----

cxd dot(const Vec& x, const Vec& y);  // <x|y>
double norm(const Vec& x);
void normalize(Vec& x);
void axpy(Vec& y, const Vec& x, cxd a);

// ---- decompositions ----

struct Eig {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns are eigenvectors
};
Eig eig_hermitian(const Matrix& a);

struct Svd {
    Matrix u;                   // m x min(m,n)... columns padded to n when m>=n
    std::vector<double> sigma;  // descending, length min(m,n)
    Matrix v;                   // n x min(m,n)
};
// a = u * diag(sigma) * v^dagger (thin form, both u and v have
// min(rows,cols) orthonormal columns)
Svd svd(const Matrix& a);

// Extends k orthonormal columns (d x k) to a d x d unitary.
Matrix orthonormal_completion(const Matrix& cols);

// Orthonormal basis of the column space of a (rank given or detected by
// tolerance); used to pull an encoding isometry out of a projector.
Matrix column_space_basis(const Matrix& a, double tol = 1e-9);

double spectral_norm(const Matrix& a);
double trace_norm_hermitian(const Matrix& a);  // sum |eigenvalues|
Matrix sqrt_psd(const Matrix& a);
// V f(diag) V^dagger of a Hermitian matrix
Matrix hermitian_function(const Matrix& h, const std::function<cxd(double)>& f);
// e^{-i t h} for Hermitian h
Matrix expm_hermitian(const Matrix& h, double t);

// ---- multi-qudit index plumbing ----

std::size_t dim_product(const std::vector<std::size_t>& dims);

// Full operator of u acting on `targets` of a register with local
// dimensions `dims`, identity elsewhere.
Matrix embed(const Matrix& u, const std::vector<std::size_t>& targets,
             const std::vector<std::size_t>& dims);

// In-place u on targets of a state vector over `dims`.
void apply_on_targets(Vec& psi, const std::vector<std::size_t>& dims,
                      const Matrix& u, const std::vector<std::size_t>& targets);

Matrix partial_trace(const Matrix& rho, const std::vector<std::size_t>& dims,
                     const std::vector<std::size_t>& keep);
// reduced density matrix over `keep` of a pure state
Matrix reduced_density(const Vec& psi, const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& keep);

// Operator-Schmidt regrouping of a square operator on `dims` with respect
// to the wire subset `part_a`: returns M[(a_out, a_in)][(b_out, b_in)] so
// that rank-one M corresponds to U = A (x) B across the bipartition.
Matrix operator_schmidt_matrix(const Matrix& u,
                               const std::vector<std::size_t>& dims,
                               const std::vector<std::size_t>& part_a);

// Reorders register wires: new wire i is old wire `order[i]`.
Vec permute_wires(const Vec& psi, const std::vector<std::size_t>& dims,
                  const std::vector<std::size_t>& order);

}  // namespace uqcm::linalg
