#include "uqcm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uqcm::linalg {

using kernels::active;

Matrix::Matrix(std::size_t rows, std::size_t cols,
               std::initializer_list<cxd> vals)
    : rows_(rows), cols_(cols), a_(vals) {
    if (a_.size() != rows * cols)
        throw std::invalid_argument("Matrix: initializer size mismatch");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::conjugate() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = std::conj(a_[i]);
    return m;
}

cxd Matrix::trace() const {
    cxd t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    return std::sqrt(active().nrm2sq(a_.data(), a_.size()));
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const cxd& z : a_) m = std::max(m, std::abs(z));
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Matrix +=: shape mismatch");
    active().axpy(a_.data(), o.a_.data(), 1.0, a_.size());
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Matrix -=: shape mismatch");
    active().axpy(a_.data(), o.a_.data(), -1.0, a_.size());
    return *this;
}

Matrix& Matrix::operator*=(cxd s) {
    active().scal(a_.data(), s, a_.size());
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("Matrix *: inner dimension mismatch");
    Matrix c(a.rows(), b.cols());
    active().matmul(c.data(), a.data(), b.data(), a.rows(), a.cols(), b.cols());
    return c;
}

Vec mat_vec(const Matrix& a, const Vec& x) {
    if (a.cols() != x.size())
        throw std::invalid_argument("mat_vec: dimension mismatch");
    Vec y(a.rows());
    active().matmul(y.data(), a.data(), x.data(), a.rows(), a.cols(), 1);
    return y;
}

Matrix outer(const Vec& x, const Vec& y) {
    Matrix m(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            m(i, j) = x[i] * std::conj(y[j]);
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cxd aij = a(i, j);
            if (aij == cxd{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return m;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    Matrix d = a;
    d -= b;
    return d.max_abs() <= tol;
}

bool is_hermitian(const Matrix& a, double tol) {
    if (!a.square()) return false;
    return approx_equal(a, a.adjoint(), tol);
}

bool is_unitary(const Matrix& a, double tol) {
    if (!a.square()) return false;
    return approx_equal(a.adjoint() * a, Matrix::identity(a.rows()), tol);
}

cxd dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    return active().dotc(x.data(), y.data(), x.size());
}

double norm(const Vec& x) {
    return std::sqrt(active().nrm2sq(x.data(), x.size()));
}

void normalize(Vec& x) {
    const double n = norm(x);
    if (n == 0.0) throw std::invalid_argument("normalize: zero vector");
    active().scal(x.data(), 1.0 / n, x.size());
}

void axpy(Vec& y, const Vec& x, cxd a) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
    active().axpy(y.data(), x.data(), a, x.size());
}

// ---------------------------------------------------------------------
// Hermitian eigenproblem, cyclic Jacobi.
// Each rotation zeroes B[p][q] with the unitary U = D(phi) J, where
// D = diag(e^{i phi}, 1) strips the phase of the pivot and J is the real
// Jacobi rotation of the remaining symmetric 2x2 block.
// ---------------------------------------------------------------------

namespace {

struct Rot {
    double c, s;  // real Jacobi cosine/sine
    cxd eiphi;    // phase of the pivot
};

Rot make_rot(double app, double aqq, cxd apq) {
    const double beta = std::abs(apq);
    Rot r;
    r.eiphi = apq / beta;
    const double tau = (aqq - app) / (2.0 * beta);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    return r;
}

double offdiag_sq(const Matrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (i != j) s += std::norm(b(i, j));
    return s;
}

}  // namespace

Eig eig_hermitian(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("eig_hermitian: not square");
    const std::size_t n = a.rows();
    Matrix b = a;
    // vt holds V^T so that rotations act on contiguous rows
    Matrix vt = Matrix::identity(n);

    const double scale = std::max(1.0, b.frobenius_norm());
    const double stop = 1e-28 * scale * scale;
    const double tiny = 1e-16 * scale;

    for (int sweep = 0; sweep < 64; ++sweep) {
        if (offdiag_sq(b) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cxd apq = b(p, q);
                if (std::abs(apq) <= tiny) continue;
                const Rot r =
                    make_rot(b(p, p).real(), b(q, q).real(), apq);
                const cxd cpe = r.c * std::conj(r.eiphi);
                const cxd spe = r.s * std::conj(r.eiphi);
                // rows: B <- U^dagger B
                const cxd mrow[4] = {cpe, -r.s, spe, r.c};
                active().mix2(b.row(p), b.row(q), mrow, n);
                // cols: B <- B U
                for (std::size_t i = 0; i < n; ++i) {
                    const cxd bip = b(i, p), biq = b(i, q);
                    b(i, p) = bip * (r.c * r.eiphi) - biq * r.s;
                    b(i, q) = bip * (r.s * r.eiphi) + biq * r.c;
                }
                // eigenvectors: V <- V U, done on V^T rows
                const cxd mv[4] = {r.c * r.eiphi, -r.s, r.s * r.eiphi, r.c};
                active().mix2(vt.row(p), vt.row(q), mv, n);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return b(i, i).real() < b(j, j).real();
    });

    Eig e;
    e.values.resize(n);
    e.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        e.values[j] = b(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) e.vectors(i, j) = vt(order[j], i);
    }
    return e;
}

// ---------------------------------------------------------------------
// One-sided (Hestenes) Jacobi SVD. Columns of A are stored as rows of a
// transposed working copy and pairwise orthogonalized; at convergence the
// column norms are the singular values and A V = U Sigma.
// ---------------------------------------------------------------------

namespace {

Svd svd_tall(const Matrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    Matrix gt = a.transpose();             // rows are columns of A
    Matrix vt = Matrix::identity(n);

    const double eps = 1e-15;
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = active().nrm2sq(gt.row(p), m);
                const double beta = active().nrm2sq(gt.row(q), m);
                const cxd gamma = active().dotc(gt.row(p), gt.row(q), m);
                const double g = std::abs(gamma);
                if (g <= eps * std::sqrt(alpha * beta) || g == 0.0) continue;
                rotated = true;
                const Rot r = make_rot(alpha, beta, gamma);
                const cxd mv[4] = {r.c * r.eiphi, -r.s, r.s * r.eiphi, r.c};
                active().mix2(gt.row(p), gt.row(q), mv, m);
                active().mix2(vt.row(p), vt.row(q), mv, n);
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sig(n);
    for (std::size_t j = 0; j < n; ++j)
        sig[j] = std::sqrt(active().nrm2sq(gt.row(j), m));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

    Svd s;
    s.sigma.resize(n);
    s.u = Matrix(m, n);
    s.v = Matrix(n, n);
    const double smax = sig[order[0]];
    const double null_tol = smax > 0.0 ? 1e-14 * smax : 0.0;
    std::size_t live = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        s.sigma[j] = sig[src];
        for (std::size_t i = 0; i < n; ++i) s.v(i, j) = vt(src, i);
        if (sig[src] > null_tol && sig[src] > 0.0) {
            const double inv = 1.0 / sig[src];
            for (std::size_t i = 0; i < m; ++i) s.u(i, j) = gt(src, i) * inv;
            live = j + 1;
        }
    }
    // null-space columns of U from an orthonormal completion
    if (live < n) {
        Matrix partial(m, live);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < live; ++j) partial(i, j) = s.u(i, j);
        Matrix full = orthonormal_completion(partial);
        for (std::size_t j = live; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i) s.u(i, j) = full(i, j);
    }
    return s;
}

}  // namespace

Svd svd(const Matrix& a) {
    if (a.rows() >= a.cols()) return svd_tall(a);
    Svd st = svd_tall(a.adjoint());
    Svd s;
    s.sigma = std::move(st.sigma);
    s.u = std::move(st.v);
    s.v = std::move(st.u);
    return s;
}

Matrix orthonormal_completion(const Matrix& cols) {
    const std::size_t d = cols.rows(), k = cols.cols();
    if (k > d) throw std::invalid_argument("orthonormal_completion: k > d");
    Matrix full(d, d);
    std::vector<Vec> basis;
    basis.reserve(d);
    for (std::size_t j = 0; j < k; ++j) {
        Vec c(d);
        for (std::size_t i = 0; i < d; ++i) c[i] = cols(i, j);
        basis.push_back(std::move(c));
    }
    std::vector<bool> used(d, false);
    while (basis.size() < d) {
        // candidate identity column with the largest residual
        double best = -1.0;
        std::size_t besti = 0;
        Vec bestr;
        for (std::size_t cand = 0; cand < d; ++cand) {
            if (used[cand]) continue;
            Vec r(d, cxd{});
            r[cand] = 1.0;
            for (int pass = 0; pass < 2; ++pass)
                for (const Vec& b : basis) {
                    const cxd ov = dot(b, r);
                    axpy(r, b, -ov);
                }
            const double nr = norm(r);
            if (nr > best) {
                best = nr;
                besti = cand;
                bestr = std::move(r);
            }
        }
        used[besti] = true;
        active().scal(bestr.data(), 1.0 / best, d);
        basis.push_back(std::move(bestr));
    }
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) full(i, j) = basis[j][i];
    return full;
}

Matrix column_space_basis(const Matrix& a, double tol) {
    const std::size_t d = a.rows(), n = a.cols();
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < n; ++j) {
        Vec r(d);
        for (std::size_t i = 0; i < d; ++i) r[i] = a(i, j);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) {
                const cxd ov = dot(b, r);
                axpy(r, b, -ov);
            }
        const double nr = norm(r);
        if (nr > tol) {
            active().scal(r.data(), 1.0 / nr, d);
            basis.push_back(std::move(r));
        }
    }
    Matrix out(d, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < d; ++i) out(i, j) = basis[j][i];
    return out;
}

double spectral_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    Svd s = svd(a);
    return s.sigma.empty() ? 0.0 : s.sigma[0];
}

double trace_norm_hermitian(const Matrix& a) {
    Eig e = eig_hermitian(a);
    double t = 0.0;
    for (double v : e.values) t += std::abs(v);
    return t;
}

Matrix hermitian_function(const Matrix& h,
                          const std::function<cxd(double)>& f) {
    Eig e = eig_hermitian(h);
    const std::size_t n = h.rows();
    Matrix fd(n, n);
    for (std::size_t i = 0; i < n; ++i) fd(i, i) = f(e.values[i]);
    return e.vectors * fd * e.vectors.adjoint();
}

Matrix sqrt_psd(const Matrix& a) {
    return hermitian_function(a, [](double x) {
        return cxd{std::sqrt(std::max(0.0, x)), 0.0};
    });
}

Matrix expm_hermitian(const Matrix& h, double t) {
    return hermitian_function(
        h, [t](double x) { return std::exp(cxd{0.0, -t * x}); });
}

// ---------------------------------------------------------------------
// multi-qudit index plumbing
// ---------------------------------------------------------------------

std::size_t dim_product(const std::vector<std::size_t>& dims) {
    std::size_t d = 1;
    for (std::size_t x : dims) d *= x;
    return d;
}

namespace {

// Strides of each wire and the enumeration of "free" (non-target) index
// combinations, shared by embed / apply_on_targets.
struct TargetPlan {
    std::vector<std::size_t> tstride;   // stride of each target wire
    std::size_t tdim = 1;               // product of target dims
    std::vector<std::size_t> toffsets;  // offset of each target sub-index
    std::vector<std::size_t> fstride;   // stride of each free wire
    std::vector<std::size_t> fdim;      // dim of each free wire
    std::size_t fcount = 1;             // number of free combinations
};

TargetPlan make_plan(const std::vector<std::size_t>& dims,
                     const std::vector<std::size_t>& targets) {
    const std::size_t w = dims.size();
    std::vector<std::size_t> stride(w, 1);
    for (std::size_t i = w; i-- > 1;) stride[i - 1] = stride[i] * dims[i];
    std::vector<bool> is_target(w, false);
    TargetPlan p;
    for (std::size_t t : targets) {
        if (t >= w) throw std::invalid_argument("target wire out of range");
        if (is_target[t]) throw std::invalid_argument("duplicate target wire");
        is_target[t] = true;
        p.tstride.push_back(stride[t]);
        p.tdim *= dims[t];
    }
    // offsets of all target sub-indices (target order = given order,
    // first target most significant)
    p.toffsets.assign(p.tdim, 0);
    {
        std::size_t rep = p.tdim;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const std::size_t dk = dims[targets[k]];
            rep /= dk;
            for (std::size_t idx = 0; idx < p.tdim; ++idx) {
                const std::size_t digit = (idx / rep) % dk;
                p.toffsets[idx] += digit * p.tstride[k];
            }
        }
    }
    for (std::size_t i = 0; i < w; ++i)
        if (!is_target[i]) {
            p.fstride.push_back(stride[i]);
            p.fdim.push_back(dims[i]);
            p.fcount *= dims[i];
        }
    return p;
}

std::size_t free_base(const TargetPlan& p, std::size_t fc) {
    std::size_t base = 0;
    for (std::size_t i = p.fdim.size(); i-- > 0;) {
        base += (fc % p.fdim[i]) * p.fstride[i];
        fc /= p.fdim[i];
    }
    return base;
}

}  // namespace

Matrix embed(const Matrix& u, const std::vector<std::size_t>& targets,
             const std::vector<std::size_t>& dims) {
    TargetPlan p = make_plan(dims, targets);
    if (u.rows() != p.tdim || u.cols() != p.tdim)
        throw std::invalid_argument("embed: gate dimension mismatch");
    const std::size_t d = dim_product(dims);
    Matrix m(d, d);
    for (std::size_t fc = 0; fc < p.fcount; ++fc) {
        const std::size_t base = free_base(p, fc);
        for (std::size_t a = 0; a < p.tdim; ++a)
            for (std::size_t b = 0; b < p.tdim; ++b)
                m(base + p.toffsets[a], base + p.toffsets[b]) = u(a, b);
    }
    return m;
}

void apply_on_targets(Vec& psi, const std::vector<std::size_t>& dims,
                      const Matrix& u, const std::vector<std::size_t>& targets) {
    TargetPlan p = make_plan(dims, targets);
    if (u.rows() != p.tdim || u.cols() != p.tdim)
        throw std::invalid_argument("apply_on_targets: gate dimension mismatch");
    if (psi.size() != dim_product(dims))
        throw std::invalid_argument("apply_on_targets: state dimension mismatch");

    // single-wire fast path through the pair-mixing kernel
    if (targets.size() == 1 && dims[targets[0]] == 2) {
        kernels::cxd g[4] = {u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
        kernels::apply_1q(psi.data(), psi.size(), p.tstride[0], g);
        return;
    }

    Vec in(p.tdim), out(p.tdim);
    for (std::size_t fc = 0; fc < p.fcount; ++fc) {
        const std::size_t base = free_base(p, fc);
        for (std::size_t a = 0; a < p.tdim; ++a) in[a] = psi[base + p.toffsets[a]];
        active().matmul(out.data(), u.data(), in.data(), p.tdim, p.tdim, 1);
        for (std::size_t a = 0; a < p.tdim; ++a) psi[base + p.toffsets[a]] = out[a];
    }
}

Matrix partial_trace(const Matrix& rho, const std::vector<std::size_t>& dims,
                     const std::vector<std::size_t>& keep) {
    TargetPlan p = make_plan(dims, keep);  // keep = "targets", trace the rest
    if (rho.rows() != dim_product(dims) || !rho.square())
        throw std::invalid_argument("partial_trace: dimension mismatch");
    Matrix out(p.tdim, p.tdim);
    for (std::size_t fc = 0; fc < p.fcount; ++fc) {
        const std::size_t base = free_base(p, fc);
        for (std::size_t a = 0; a < p.tdim; ++a)
            for (std::size_t b = 0; b < p.tdim; ++b)
                out(a, b) += rho(base + p.toffsets[a], base + p.toffsets[b]);
    }
    return out;
}

Matrix reduced_density(const Vec& psi, const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& keep) {
    TargetPlan p = make_plan(dims, keep);
    if (psi.size() != dim_product(dims))
        throw std::invalid_argument("reduced_density: dimension mismatch");
    Matrix out(p.tdim, p.tdim);
    for (std::size_t fc = 0; fc < p.fcount; ++fc) {
        const std::size_t base = free_base(p, fc);
        for (std::size_t a = 0; a < p.tdim; ++a) {
            const cxd va = psi[base + p.toffsets[a]];
            if (va == cxd{}) continue;
            for (std::size_t b = 0; b < p.tdim; ++b)
                out(a, b) += va * std::conj(psi[base + p.toffsets[b]]);
        }
    }
    return out;
}

Matrix operator_schmidt_matrix(const Matrix& u,
                               const std::vector<std::size_t>& dims,
                               const std::vector<std::size_t>& part_a) {
    const std::size_t d = dim_product(dims);
    if (u.rows() != d || u.cols() != d)
        throw std::invalid_argument("operator_schmidt_matrix: dimension mismatch");
    TargetPlan p = make_plan(dims, part_a);
    const std::size_t da = p.tdim, db = d / da;

    // maps from full index to (a, b) sub-indices
    std::vector<std::size_t> a_of(d), b_of(d);
    {
        std::vector<std::size_t> off_to_a(d, 0), seen(d, 0);
        for (std::size_t ai = 0; ai < da; ++ai) off_to_a[p.toffsets[ai]] = ai;
        for (std::size_t fc = 0; fc < p.fcount; ++fc) {
            const std::size_t base = free_base(p, fc);
            for (std::size_t ai = 0; ai < da; ++ai) {
                a_of[base + p.toffsets[ai]] = ai;
                b_of[base + p.toffsets[ai]] = fc;
            }
        }
    }
    Matrix m(da * da, db * db);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            m(a_of[r] * da + a_of[c], b_of[r] * db + b_of[c]) = u(r, c);
    return m;
}

Vec permute_wires(const Vec& psi, const std::vector<std::size_t>& dims,
                  const std::vector<std::size_t>& order) {
    const std::size_t w = dims.size();
    if (order.size() != w) throw std::invalid_argument("permute_wires: bad order");
    std::vector<std::size_t> stride(w, 1);
    for (std::size_t i = w; i-- > 1;) stride[i - 1] = stride[i] * dims[i];
    std::vector<std::size_t> ndims(w);
    for (std::size_t i = 0; i < w; ++i) ndims[i] = dims[order[i]];
    std::vector<std::size_t> nstride(w, 1);
    for (std::size_t i = w; i-- > 1;) nstride[i - 1] = nstride[i] * ndims[i];

    Vec out(psi.size());
    std::vector<std::size_t> digits(w);
    for (std::size_t idx = 0; idx < psi.size(); ++idx) {
        std::size_t rem = idx;
        for (std::size_t i = 0; i < w; ++i) {
            digits[i] = rem / stride[i];
            rem %= stride[i];
        }
        std::size_t nidx = 0;
        for (std::size_t i = 0; i < w; ++i) nidx += digits[order[i]] * nstride[i];
        out[nidx] = psi[idx];
    }
    return out;
}

}  // namespace uqcm::linalg
