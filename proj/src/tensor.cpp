#include "uqcm/tensor.hpp"

#include <cmath>

namespace uqcm::tensor {

using linalg::dim_product;

MPS::MPS(std::vector<std::vector<Matrix>> tensors, Matrix boundary_,
         std::vector<std::size_t> phys_dims_)
    : site_tensors(std::move(tensors)), boundary(std::move(boundary_)),
      phys_dims(std::move(phys_dims_)) {
    if (site_tensors.size() != phys_dims.size() || site_tensors.empty())
        throw std::invalid_argument("MPS: site count mismatch");
    for (std::size_t n = 0; n < sites(); ++n) {
        if (site_tensors[n].size() != phys_dims[n])
            throw std::invalid_argument("MPS: physical dimension mismatch at site " +
                                        std::to_string(n));
        const std::size_t r = site_tensors[n][0].rows(), c = site_tensors[n][0].cols();
        for (const Matrix& a : site_tensors[n])
            if (a.rows() != r || a.cols() != c)
                throw std::invalid_argument("MPS: ragged site tensors at site " +
                                            std::to_string(n));
        if (n > 0 && site_tensors[n][0].cols() != site_tensors[n - 1][0].rows())
            throw std::invalid_argument("MPS: bond mismatch between sites " +
                                        std::to_string(n - 1) + " and " +
                                        std::to_string(n));
    }
    if (boundary.cols() != site_tensors.back()[0].rows() ||
        boundary.rows() != site_tensors.front()[0].cols())
        throw std::invalid_argument("MPS: boundary shape mismatch");
}

std::vector<std::size_t> MPS::bond_dims() const {
    std::vector<std::size_t> b;
    b.push_back(site_tensors.front()[0].cols());
    for (const auto& site : site_tensors) b.push_back(site[0].rows());
    return b;
}

MPU::MPU(std::vector<std::vector<std::vector<Matrix>>> tensors,
         std::vector<std::size_t> phys_dims_)
    : site_tensors(std::move(tensors)), phys_dims(std::move(phys_dims_)) {
    if (site_tensors.size() != phys_dims.size() || site_tensors.empty())
        throw std::invalid_argument("MPU: site count mismatch");
    for (std::size_t n = 0; n < sites(); ++n) {
        if (site_tensors[n].size() != phys_dims[n])
            throw std::invalid_argument("MPU: output dimension mismatch");
        for (const auto& row : site_tensors[n])
            if (row.size() != phys_dims[n])
                throw std::invalid_argument("MPU: input dimension mismatch");
    }
    if (site_tensors.front()[0][0].cols() != 1 ||
        site_tensors.back()[0][0].rows() != 1)
        throw std::invalid_argument("MPU: boundary bonds must have dimension 1");
}

std::vector<std::size_t> MPU::bond_dims() const {
    std::vector<std::size_t> b;
    b.push_back(site_tensors.front()[0][0].cols());
    for (const auto& site : site_tensors) b.push_back(site[0][0].rows());
    return b;
}

namespace {

void check_contract_cap(std::size_t dim) {
    const std::size_t cap = desk_cap();
    std::size_t bits = 0, d = 1;
    while (d < dim) { d <<= 1; ++bits; }
    if (bits > cap) throw CapExceeded(bits, cap);
}

// Sequential SVD tensor-train factorization in the MPS convention.
// chi_max = 0 disables the bond cap. With normalize = true the remainder
// is rescaled after every truncation and `fidelity` tracks the kept weight.
struct TTResult {
    std::vector<std::vector<Matrix>> tensors;
    double fidelity = 1.0;
    bool truncated = false;
};

TTResult tt_factorize(Vec v, const std::vector<std::size_t>& dims,
                      std::size_t chi_max, double tol, bool normalize) {
    const std::size_t nsites = dims.size();
    TTResult out;
    out.tensors.resize(nsites);

    std::size_t chi_prev = 1;
    std::size_t drest = dim_product(dims);
    // v is the chi_prev x drest remainder, row-major
    for (std::size_t n = 0; n + 1 < nsites; ++n) {
        const std::size_t d = dims[n];
        const std::size_t drest2 = drest / d;
        Matrix m(chi_prev * d, drest2);
        for (std::size_t a = 0; a < chi_prev; ++a)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t rest = 0; rest < drest2; ++rest)
                    m(a * d + i, rest) = v[a * drest + i * drest2 + rest];

        auto s = linalg::svd(m);
        double total = 0.0;
        for (double sg : s.sigma) total += sg * sg;
        const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
        std::size_t rank = 0;
        for (double sg : s.sigma)
            if (sg > 1e-14 * smax && sg > 0.0) ++rank;
        rank = std::max<std::size_t>(rank, 1);
        std::size_t r = rank;
        if (chi_max > 0 && chi_max < r) r = chi_max;
        double kept = 0.0;
        for (std::size_t k = 0; k < r; ++k) kept += s.sigma[k] * s.sigma[k];
        const double discarded = std::max(0.0, total - kept);
        if (r < rank && discarded > tol) out.truncated = true;
        if (total > 0.0) out.fidelity *= kept / total;

        out.tensors[n].assign(d, Matrix(r, chi_prev));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t a = 0; a < chi_prev; ++a)
                for (std::size_t b = 0; b < r; ++b)
                    out.tensors[n][i](b, a) = s.u(a * d + i, b);

        const double scale = normalize && kept > 0.0 ? 1.0 / std::sqrt(kept) : 1.0;
        Vec next(r * drest2);
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t rest = 0; rest < drest2; ++rest)
                next[b * drest2 + rest] =
                    scale * s.sigma[b] * std::conj(s.v(rest, b));
        v = std::move(next);
        chi_prev = r;
        drest = drest2;
    }
    const std::size_t d = dims.back();
    out.tensors[nsites - 1].assign(d, Matrix(1, chi_prev));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < chi_prev; ++a)
            out.tensors[nsites - 1][i](0, a) = v[a * d + i];
    return out;
}

}  // namespace

PureState mps_contract(const MPS& m) {
    const std::size_t dim = dim_product(m.phys_dims);
    check_contract_cap(dim);

    // partial products A[n][i_n] ... A[0][i_1], joint index site-0-major
    std::vector<Matrix> partial{Matrix::identity(m.boundary.rows())};
    for (std::size_t n = 0; n < m.sites(); ++n) {
        const std::size_t d = m.phys_dims[n];
        std::vector<Matrix> next;
        next.reserve(partial.size() * d);
        for (const Matrix& p : partial)
            for (std::size_t i = 0; i < d; ++i)
                next.push_back(m.site_tensors[n][i] * p);
        partial = std::move(next);
    }
    Vec amps(dim);
    for (std::size_t idx = 0; idx < dim; ++idx)
        amps[idx] = (m.boundary * partial[idx]).trace();
    const double nrm = linalg::norm(amps);
    if (nrm < 1e-14)
        throw std::invalid_argument("mps_contract: zero-norm contraction");
    return PureState::normalized(std::move(amps), m.phys_dims);
}

MPS state_to_mps(const PureState& s, std::size_t chi_max, double tol) {
    TTResult tt = tt_factorize(s.amplitudes(), s.dims(), chi_max, tol, true);
    if (tt.truncated) throw TruncationError(tt.fidelity);
    Matrix b(1, 1);
    b(0, 0) = 1.0;
    return MPS(std::move(tt.tensors), std::move(b), s.dims());
}

MPS mps_from_sequential_circuit(const std::vector<Matrix>& unitaries,
                                std::size_t adversary_dim, const Vec& adversary_init,
                                const std::optional<Vec>& final_adversary) {
    if (unitaries.empty())
        throw std::invalid_argument("mps_from_sequential_circuit: no sites");
    if (adversary_init.size() != adversary_dim)
        throw std::invalid_argument("mps_from_sequential_circuit: adversary init size");
    if (std::abs(linalg::norm(adversary_init) - 1.0) > 1e-10)
        throw std::invalid_argument(
            "mps_from_sequential_circuit: adversary init not normalized");

    const std::size_t nsites = unitaries.size();
    std::vector<std::size_t> phys(nsites);
    std::vector<std::vector<Matrix>> tensors(nsites);
    for (std::size_t n = 0; n < nsites; ++n) {
        const Matrix& u = unitaries[n];
        if (!u.square() || u.rows() % adversary_dim != 0)
            throw std::invalid_argument(
                "mps_from_sequential_circuit: unitary dimension mismatch at site " +
                std::to_string(n));
        if (!linalg::is_unitary(u, 1e-10))
            throw std::invalid_argument(
                "mps_from_sequential_circuit: non-unitary step at site " +
                std::to_string(n));
        const std::size_t d = u.rows() / adversary_dim;
        phys[n] = d;
        tensors[n].assign(d, Matrix(adversary_dim, adversary_dim));
        // A^i[alpha][beta] = <i, alpha| U |0, beta>, site index major
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t a = 0; a < adversary_dim; ++a)
                for (std::size_t b = 0; b < adversary_dim; ++b)
                    tensors[n][i](a, b) = u(i * adversary_dim + a, b);
    }

    Vec fin;
    if (final_adversary) {
        fin = *final_adversary;
        if (fin.size() != adversary_dim)
            throw std::invalid_argument(
                "mps_from_sequential_circuit: final projection size");
        linalg::normalize(fin);
    } else {
        // dense run to extract the adversary's final state; it must decouple
        std::vector<std::size_t> dims = phys;
        dims.push_back(adversary_dim);
        check_contract_cap(dim_product(dims));
        Vec joint(dim_product(dims), cxd{});
        // all sites |0>, adversary in its init state
        for (std::size_t a = 0; a < adversary_dim; ++a) joint[a] = adversary_init[a];
        for (std::size_t n = 0; n < nsites; ++n)
            linalg::apply_on_targets(joint, dims, unitaries[n], {n, nsites});
        Matrix rho = linalg::reduced_density(joint, dims, {nsites});
        auto e = linalg::eig_hermitian(rho);
        const double purity = (rho * rho).trace().real();
        if (purity < 1.0 - 1e-9)
            throw std::invalid_argument(
                "mps_from_sequential_circuit: adversary does not decouple; "
                "provide a final projection");
        fin.resize(adversary_dim);
        for (std::size_t a = 0; a < adversary_dim; ++a)
            fin[a] = e.vectors(a, adversary_dim - 1);
    }

    return MPS(std::move(tensors), linalg::outer(adversary_init, fin), std::move(phys));
}

QtmResult qtm_run(const std::vector<Matrix>& program, const PureState& data,
                  const PureState& adversary) {
    const std::size_t dd = data.dim(), da = adversary.dim();
    Vec joint(dd * da);
    for (std::size_t i = 0; i < dd; ++i)
        for (std::size_t a = 0; a < da; ++a)
            joint[i * da + a] = data.amplitudes()[i] * adversary.amplitudes()[a];

    const std::vector<std::size_t> dims{dd, da};
    for (const Matrix& step : program) {
        if (step.rows() != dd * da || !step.square())
            throw std::invalid_argument("qtm_run: step dimension mismatch");
        joint = linalg::mat_vec(step, joint);
    }

    Matrix rho = linalg::reduced_density(joint, dims, {0});
    const double purity = (rho * rho).trace().real();
    const double residual = std::max(0.0, 1.0 - purity);

    auto e = linalg::eig_hermitian(rho);
    Vec top(dd);
    for (std::size_t i = 0; i < dd; ++i) top[i] = e.vectors(i, dd - 1);
    return {PureState::normalized(std::move(top), data.dims()), residual <= 1e-9,
            residual};
}

double bond_entanglement(const MPS& m, std::size_t cut) {
    if (cut == 0 || cut >= m.sites())
        throw std::invalid_argument("bond_entanglement: cut must split the chain");
    PureState psi = mps_contract(m);
    std::vector<std::size_t> left(cut);
    for (std::size_t i = 0; i < cut; ++i) left[i] = i;
    Matrix rho = linalg::reduced_density(psi.amplitudes(), psi.dims(), left);
    auto e = linalg::eig_hermitian(rho);
    double s = 0.0;
    for (double lam : e.values)
        if (lam > 1e-14) s -= lam * std::log2(lam);
    return s;
}

Matrix mpu_contract(const MPU& op) {
    const std::size_t dim = dim_product(op.phys_dims);
    check_contract_cap(dim);
    // accumulate over joint (out, in) pair digits, site 0 most significant
    std::vector<Matrix> partial{Matrix::identity(1)};
    for (std::size_t n = 0; n < op.sites(); ++n) {
        const std::size_t d = op.phys_dims[n];
        std::vector<Matrix> next;
        next.reserve(partial.size() * d * d);
        for (const Matrix& p : partial)
            for (std::size_t o = 0; o < d; ++o)
                for (std::size_t i = 0; i < d; ++i)
                    next.push_back(op.site_tensors[n][o][i] * p);
        partial = std::move(next);
    }
    Matrix u(dim, dim);
    for (std::size_t k = 0; k < partial.size(); ++k) {
        std::size_t rem = k, row = 0, col = 0;
        std::size_t block = partial.size();
        for (std::size_t n = 0; n < op.sites(); ++n) {
            const std::size_t d = op.phys_dims[n];
            block /= d * d;
            const std::size_t pair = rem / block;
            rem %= block;
            row = row * d + pair / d;
            col = col * d + pair % d;
        }
        u(row, col) = partial[k](0, 0);
    }
    return u;
}

MPU mpu_from_dense(const Matrix& op, const std::vector<std::size_t>& phys_dims) {
    const std::size_t dim = dim_product(phys_dims);
    if (op.rows() != dim || !op.square())
        throw std::invalid_argument("mpu_from_dense: dimension mismatch");

    const std::size_t nsites = phys_dims.size();
    std::vector<std::size_t> pair_dims(nsites);
    for (std::size_t n = 0; n < nsites; ++n) pair_dims[n] = phys_dims[n] * phys_dims[n];

    Vec v(dim * dim);
    for (std::size_t row = 0; row < dim; ++row)
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t r = row, c = col, k = 0;
            std::size_t rdiv = dim, cdiv = dim;
            for (std::size_t n = 0; n < nsites; ++n) {
                const std::size_t d = phys_dims[n];
                rdiv /= d;
                cdiv /= d;
                const std::size_t o = r / rdiv, i = c / cdiv;
                r %= rdiv;
                c %= cdiv;
                k = k * (d * d) + (o * d + i);
            }
            v[k] = op(row, col);
        }

    TTResult tt = tt_factorize(std::move(v), pair_dims, 0, 0.0, false);
    std::vector<std::vector<std::vector<Matrix>>> site_tensors(nsites);
    for (std::size_t n = 0; n < nsites; ++n) {
        const std::size_t d = phys_dims[n];
        site_tensors[n].assign(d, std::vector<Matrix>(d));
        for (std::size_t o = 0; o < d; ++o)
            for (std::size_t i = 0; i < d; ++i)
                site_tensors[n][o][i] = tt.tensors[n][o * d + i];
    }
    return MPU(std::move(site_tensors), phys_dims);
}

MPS apply_mpu(const MPS& m, const MPU& op) {
    if (m.phys_dims != op.phys_dims)
        throw std::invalid_argument("apply_mpu: physical dimension mismatch");
    std::vector<std::vector<Matrix>> tensors(m.sites());
    for (std::size_t n = 0; n < m.sites(); ++n) {
        const std::size_t d = m.phys_dims[n];
        tensors[n].reserve(d);
        for (std::size_t o = 0; o < d; ++o) {
            Matrix acc = linalg::kron(op.site_tensors[n][o][0], m.site_tensors[n][0]);
            for (std::size_t i = 1; i < d; ++i)
                acc += linalg::kron(op.site_tensors[n][o][i], m.site_tensors[n][i]);
            tensors[n].push_back(std::move(acc));
        }
    }
    // MPU boundary bonds are 1, so the joint boundary stays the MPS boundary
    return MPS(std::move(tensors), m.boundary, m.phys_dims);
}

HOMPS homps_decompose(const MPS& m, std::size_t d1) {
    if (d1 < 2) throw std::invalid_argument("homps_decompose: d1 must be >= 2");
    const auto bonds = m.bond_dims();
    const std::size_t chi = bonds.front();
    for (std::size_t b : bonds)
        if (b != chi)
            throw std::invalid_argument(
                "homps_decompose: bond dimensions must be uniform");
    std::size_t n1 = 0, p = 1;
    while (p < chi) { p *= d1; ++n1; }
    if (p != chi || n1 == 0)
        throw std::invalid_argument(
            "homps_decompose: bond dimension is not a positive power of d1");

    HOMPS h;
    h.n1 = n1;
    h.d1 = d1;
    h.chi = chi;
    h.chi1 = 1;
    h.boundary = m.boundary;
    h.phys_dims = m.phys_dims;
    h.chains.resize(m.sites());

    const std::vector<std::size_t> pair_dims(n1, d1 * d1);
    for (std::size_t n = 0; n < m.sites(); ++n) {
        for (std::size_t i = 0; i < m.phys_dims[n]; ++i) {
            const Matrix& a = m.site_tensors[n][i];
            Vec v(chi * chi);
            for (std::size_t mu = 0; mu < chi; ++mu)
                for (std::size_t nu = 0; nu < chi; ++nu) {
                    std::size_t k = 0, mm = mu, nn = nu, div = chi;
                    for (std::size_t s = 0; s < n1; ++s) {
                        div /= d1;
                        k = k * (d1 * d1) + (mm / div) * d1 + (nn / div);
                        mm %= div;
                        nn %= div;
                    }
                    v[k] = a(mu, nu);
                }
            TTResult tt = tt_factorize(std::move(v), pair_dims, 0, 0.0, false);
            HOMPS::Chain chain;
            chain.b.resize(n1);
            // convert to the literal tr(C B_1 B_2 ... B_n1) ordering
            for (std::size_t k = 0; k < n1; ++k) {
                chain.b[k].assign(d1, std::vector<Matrix>(d1));
                for (std::size_t mu = 0; mu < d1; ++mu)
                    for (std::size_t nu = 0; nu < d1; ++nu) {
                        chain.b[k][mu][nu] = tt.tensors[k][mu * d1 + nu].transpose();
                        h.chi1 = std::max(h.chi1, chain.b[k][mu][nu].cols());
                    }
            }
            Matrix c(1, 1);
            c(0, 0) = 1.0;
            chain.c = std::move(c);
            h.chains[n].push_back(std::move(chain));
        }
    }
    return h;
}

MPS homps_reconstruct(const HOMPS& h) {
    std::vector<std::vector<Matrix>> tensors(h.chains.size());
    for (std::size_t n = 0; n < h.chains.size(); ++n) {
        for (std::size_t i = 0; i < h.phys_dims[n]; ++i) {
            const HOMPS::Chain& chain = h.chains[n][i];
            Matrix a(h.chi, h.chi);
            for (std::size_t mu = 0; mu < h.chi; ++mu)
                for (std::size_t nu = 0; nu < h.chi; ++nu) {
                    Matrix prod = chain.c;
                    std::size_t mm = mu, nn = nu, div = h.chi;
                    for (std::size_t k = 0; k < h.n1; ++k) {
                        div /= h.d1;
                        prod = prod * chain.b[k][mm / div][nn / div];
                        mm %= div;
                        nn %= div;
                    }
                    a(mu, nu) = prod.trace();
                }
            tensors[n].push_back(std::move(a));
        }
    }
    return MPS(std::move(tensors), h.boundary, h.phys_dims);
}

}  // namespace uqcm::tensor
