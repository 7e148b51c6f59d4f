#include "uqcm/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace uqcm::codes {

using linalg::dim_product;

namespace {

int popcount64(std::uint64_t v) { return std::popcount(v); }

const cxd kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString::PauliString(std::size_t n, std::uint64_t x_bits, std::uint64_t z_bits,
                         int phase_pow)
    : n_(n), x_(x_bits), z_(z_bits), p_(((phase_pow % 4) + 4) % 4) {
    if (n_ == 0 || n_ > 64)
        throw std::invalid_argument("PauliString: length must be in 1..64");
    const std::uint64_t mask = n_ == 64 ? ~0ull : ((1ull << n_) - 1);
    if ((x_ & ~mask) || (z_ & ~mask))
        throw std::invalid_argument("PauliString: bits outside the register");
}

PauliString PauliString::identity(std::size_t n) { return PauliString(n, 0, 0, 0); }

PauliString PauliString::parse(const std::string& text) {
    std::size_t pos = 0;
    int p = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') p += 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        p += 1;
        ++pos;
    }
    const std::size_t n = text.size() - pos;
    if (n == 0) throw std::invalid_argument("PauliString: empty body in \"" + text + "\"");
    std::uint64_t x = 0, z = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t bit = 1ull << (n - 1 - j);
        switch (text[pos + j]) {
            case 'I': break;
            case 'X': x |= bit; break;
            case 'Z': z |= bit; break;
            case 'Y': x |= bit; z |= bit; p += 1; break;
            default:
                throw std::invalid_argument("PauliString: bad character '" +
                                            std::string(1, text[pos + j]) + "'");
        }
    }
    return PauliString(n, x, z, p);
}

PauliString PauliString::single(std::size_t n, char which, std::size_t wire) {
    if (wire >= n) throw std::invalid_argument("PauliString: wire out of range");
    const std::uint64_t bit = 1ull << (n - 1 - wire);
    switch (which) {
        case 'X': return PauliString(n, bit, 0, 0);
        case 'Z': return PauliString(n, 0, bit, 0);
        case 'Y': return PauliString(n, bit, bit, 1);
    }
    throw std::invalid_argument("PauliString: bad Pauli letter");
}

PauliString PauliString::operator*(const PauliString& o) const {
    if (o.n_ != n_) throw std::invalid_argument("PauliString: length mismatch");
    // X^x2 moves left through Z^z1 at cost (-1)^(z1 & x2)
    const int p = p_ + o.p_ + 2 * popcount64(z_ & o.x_);
    return PauliString(n_, x_ ^ o.x_, z_ ^ o.z_, p);
}

bool PauliString::commutes_with(const PauliString& o) const {
    if (o.n_ != n_) throw std::invalid_argument("PauliString: length mismatch");
    return ((popcount64(x_ & o.z_) + popcount64(z_ & o.x_)) % 2) == 0;
}

bool PauliString::is_hermitian() const {
    return ((p_ + popcount64(x_ & z_)) % 2) == 0;
}

std::size_t PauliString::weight() const {
    return std::size_t(popcount64(x_ | z_));
}

bool PauliString::same_unsigned(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
}

Matrix PauliString::to_matrix() const {
    const std::size_t d = std::size_t(1) << n_;
    Matrix m(d, d);
    const cxd ph = kPhase[p_];
    for (std::size_t b = 0; b < d; ++b) {
        const double sign = (popcount64(z_ & b) % 2) ? -1.0 : 1.0;
        m(b ^ x_, b) = ph * sign;
    }
    return m;
}

std::string PauliString::str() const {
    const int w = popcount64(x_ & z_);
    const int resid = ((p_ - w) % 4 + 4) % 4;
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[resid];
    for (std::size_t j = 0; j < n_; ++j) {
        const std::uint64_t bit = 1ull << (n_ - 1 - j);
        const bool xb = x_ & bit, zb = z_ & bit;
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

// ---- GF(2) symplectic span (phases ignored) ----

namespace {

class Gf2Span {
public:
    explicit Gf2Span(std::size_t n) : n_(n) {}

    // reduces (x, z) by the basis; true when it lies in the span
    bool contains(std::uint64_t x, std::uint64_t z) const {
        reduce(x, z);
        return x == 0 && z == 0;
    }

    // true when the row was independent and extended the basis
    bool add(std::uint64_t x, std::uint64_t z) {
        reduce(x, z);
        if (x == 0 && z == 0) return false;
        rows_.push_back({x, z, pivot(x, z)});
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        std::uint64_t x, z;
        int piv;
    };

    int pivot(std::uint64_t x, std::uint64_t z) const {
        for (int b = int(2 * n_) - 1; b >= 0; --b)
            if (bit(x, z, b)) return b;
        return -1;
    }

    static bool bit_of(std::uint64_t x, std::uint64_t z, int b, std::size_t n) {
        return b < int(n) ? (x >> b) & 1 : (z >> (b - int(n))) & 1;
    }
    bool bit(std::uint64_t x, std::uint64_t z, int b) const {
        return bit_of(x, z, b, n_);
    }

    void reduce(std::uint64_t& x, std::uint64_t& z) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Row& r : rows_) {
                if (bit(x, z, r.piv)) {
                    x ^= r.x;
                    z ^= r.z;
                    changed = true;
                }
            }
        }
    }

    std::size_t n_;
    std::vector<Row> rows_;
};

}  // namespace

StabilizerCode::StabilizerCode(std::size_t n, std::vector<PauliString> generators,
                               std::optional<PauliString> logical_x,
                               std::optional<PauliString> logical_z,
                               std::optional<std::string> label)
    : n_(n), gens_(std::move(generators)), lx_(std::move(logical_x)),
      lz_(std::move(logical_z)), label_(std::move(label)) {
    Gf2Span span(n_);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].size() != n_)
            throw std::invalid_argument("StabilizerCode: generator length mismatch");
        if (!gens_[i].is_hermitian())
            throw std::invalid_argument("StabilizerCode: generator is not Hermitian");
        for (std::size_t j = i + 1; j < gens_.size(); ++j)
            if (!gens_[i].commutes_with(gens_[j]))
                throw std::invalid_argument(
                    "StabilizerCode: generators anticommute at pair (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
        if (!span.add(gens_[i].x_bits(), gens_[i].z_bits()))
            throw std::invalid_argument("StabilizerCode: dependent generator at index " +
                                        std::to_string(i));
    }
    if (gens_.size() > n_)
        throw std::invalid_argument("StabilizerCode: too many generators");
    for (const auto& l : {lx_, lz_}) {
        if (!l) continue;
        if (l->size() != n_)
            throw std::invalid_argument("StabilizerCode: logical operator length mismatch");
        for (const PauliString& g : gens_)
            if (!l->commutes_with(g))
                throw std::invalid_argument(
                    "StabilizerCode: logical operator anticommutes with a stabilizer");
    }
    if (lx_ && lz_ && lx_->commutes_with(*lz_))
        throw std::invalid_argument("StabilizerCode: logical X and Z must anticommute");
}

CodeProjector::CodeProjector(Matrix m) : m_(std::move(m)) {
    if (!m_.square()) throw std::invalid_argument("CodeProjector: not square");
    if (!linalg::is_hermitian(m_, 1e-10))
        throw std::invalid_argument("CodeProjector: not Hermitian");
    if (!linalg::approx_equal(m_ * m_, m_, 1e-10))
        throw std::invalid_argument("CodeProjector: not idempotent");
    rank_ = std::size_t(std::llround(m_.trace().real()));
    iso_ = linalg::column_space_basis(m_, 1e-6);
    if (iso_.cols() != rank_)
        throw std::invalid_argument("CodeProjector: rank extraction failed");
}

GaugeCode::GaugeCode(std::size_t n_, std::vector<PauliString> gauge,
                     std::vector<PauliString> stabilizer)
    : n(n_), gauge_generators(std::move(gauge)),
      stabilizer_generators(std::move(stabilizer)) {
    Gf2Span gspan(n);
    for (const PauliString& g : gauge_generators) {
        if (g.size() != n) throw std::invalid_argument("GaugeCode: length mismatch");
        gspan.add(g.x_bits(), g.z_bits());
    }
    for (const PauliString& s : stabilizer_generators) {
        if (s.size() != n) throw std::invalid_argument("GaugeCode: length mismatch");
        if (!gspan.contains(s.x_bits(), s.z_bits()))
            throw std::invalid_argument("GaugeCode: stabilizer outside the gauge group");
        for (const PauliString& g : gauge_generators)
            if (!s.commutes_with(g))
                throw std::invalid_argument(
                    "GaugeCode: stabilizer fails to centralize the gauge group");
    }
}

CodeProjector projector_from_stabilizers(const StabilizerCode& code) {
    if (code.n() > desk_cap()) throw CapExceeded(code.n(), desk_cap());
    const std::size_t g = code.generators().size();
    const std::size_t d = std::size_t(1) << code.n();
    Matrix p(d, d);
    // sum over the full group, each element a signed permutation matrix
    for (std::size_t mask = 0; mask < (std::size_t(1) << g); ++mask) {
        PauliString elem = PauliString::identity(code.n());
        for (std::size_t i = 0; i < g; ++i)
            if (mask & (std::size_t(1) << i)) elem = elem * code.generators()[i];
        const cxd ph = kPhase[elem.phase_pow()];
        for (std::size_t b = 0; b < d; ++b) {
            const double sign = (popcount64(elem.z_bits() & b) % 2) ? -1.0 : 1.0;
            p(b ^ elem.x_bits(), b) += ph * sign;
        }
    }
    p *= cxd{1.0 / double(std::size_t(1) << g), 0.0};
    return CodeProjector(std::move(p));
}

KlReport kl_check(const CodeProjector& p, const std::vector<Matrix>& errors) {
    const std::size_t r = p.rank();
    const std::size_t m = errors.size();
    const Matrix& v = p.isometry();
    std::vector<Matrix> w;
    w.reserve(m);
    for (const Matrix& e : errors) {
        if (e.rows() != p.dim() || e.cols() != p.dim())
            throw std::invalid_argument("kl_check: error dimension mismatch");
        w.push_back(e * v);
    }

    KlReport rep;
    rep.a = Matrix(m, m);
    rep.correctable = true;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Matrix s = w[i].adjoint() * w[j];  // = V^dag Ei^dag Ej V
            const cxd aij = s.trace() / double(r);
            rep.a(i, j) = aij;
            Matrix dev = s - Matrix::identity(r) * aij;
            if (dev.max_abs() > 1e-9 && rep.correctable) {
                rep.correctable = false;
                rep.witness = std::make_pair(i, j);
            }
        }
    // Hermitize against roundoff and confirm positivity when correctable
    rep.a = (rep.a + rep.a.adjoint()) * cxd{0.5, 0.0};
    if (rep.correctable) {
        auto e = linalg::eig_hermitian(rep.a);
        if (e.values.front() < -1e-9) {
            rep.correctable = false;
            rep.witness = std::make_pair(std::size_t(0), std::size_t(0));
        }
    }
    return rep;
}

KrausChannel recovery_from_errors(const CodeProjector& p,
                                  const std::vector<Matrix>& errors) {
    KlReport rep = kl_check(p, errors);
    if (!rep.correctable)
        throw KLViolation(rep.witness->first, rep.witness->second);

    auto ediag = linalg::eig_hermitian(rep.a);
    const std::size_t m = errors.size();
    const std::size_t d = p.dim();
    std::vector<Matrix> kraus;
    for (std::size_t s = 0; s < m; ++s) {
        const double ds = ediag.values[s];
        if (ds <= 1e-10) continue;  // degenerate directions carry no weight
        Matrix f(d, d);
        for (std::size_t i = 0; i < m; ++i) {
            Matrix scaled = errors[i] * ediag.vectors(i, s);
            f += scaled;
        }
        Matrix rs = p.matrix() * f.adjoint();
        rs *= cxd{1.0 / std::sqrt(ds), 0.0};
        kraus.push_back(std::move(rs));
    }

    // trace-preserving completion: dump the unreachable complement onto a
    // fixed codeword
    Matrix q = Matrix::identity(d);
    for (const Matrix& k : kraus) q -= k.adjoint() * k;
    auto eq = linalg::eig_hermitian(q);
    linalg::Vec codeword(d);
    for (std::size_t i = 0; i < d; ++i) codeword[i] = p.isometry()(i, 0);
    for (std::size_t j = 0; j < d; ++j) {
        const double qv = eq.values[j];
        if (qv <= 1e-12) continue;
        linalg::Vec dir(d);
        for (std::size_t i = 0; i < d; ++i) dir[i] = eq.vectors(i, j);
        Matrix g = linalg::outer(codeword, dir);
        g *= cxd{std::sqrt(qv), 0.0};
        kraus.push_back(std::move(g));
    }
    return KrausChannel(std::move(kraus));
}

double qec_accuracy(const KrausChannel& recovery, const KrausChannel& noise,
                    const CodeProjector& p) {
    KrausChannel enc({p.isometry()});
    KrausChannel chain = core::compose(recovery, core::compose(noise, enc));
    return core::channel_distance(chain, enc);
}

bool is_logical(const Matrix& u, const CodeProjector& p) {
    if (u.rows() != p.dim() || !u.square())
        throw std::invalid_argument("is_logical: dimension mismatch");
    return (u * p.matrix() - p.matrix() * u).frobenius_norm() <= 1e-9;
}

bool is_logical(const KrausChannel& ch, const CodeProjector& p) {
    if (ch.input_dim() != p.dim() || ch.output_dim() != p.dim())
        throw std::invalid_argument("is_logical: dimension mismatch");
    // adjoint map fixes the projector
    Matrix adj(p.dim(), p.dim());
    for (const Matrix& k : ch.kraus_ops()) adj += k.adjoint() * p.matrix() * k;
    if ((adj - p.matrix()).max_abs() > 1e-9) return false;
    // code-supported states stay code-supported
    const Matrix& v = p.isometry();
    for (std::size_t a = 0; a < p.rank(); ++a)
        for (std::size_t b = 0; b < p.rank(); ++b) {
            linalg::Vec va(p.dim()), vb(p.dim());
            for (std::size_t i = 0; i < p.dim(); ++i) {
                va[i] = v(i, a);
                vb[i] = v(i, b);
            }
            Matrix rho = linalg::outer(va, vb);
            Matrix out = core::channel_apply(rho, ch);
            Matrix clipped = p.matrix() * out * p.matrix();
            if ((out - clipped).max_abs() > 1e-9) return false;
        }
    return true;
}

TransversalReport is_transversal(const UnitaryOp& u,
                                 const std::vector<std::vector<std::size_t>>& blocks) {
    const std::vector<std::size_t>& dims = u.dims();
    const std::size_t w = dims.size();
    {
        std::vector<bool> seen(w, false);
        for (const auto& blk : blocks)
            for (std::size_t q : blk) {
                if (q >= w || seen[q])
                    throw std::invalid_argument("is_transversal: blocks must partition the wires");
                seen[q] = true;
            }
        for (bool s : seen)
            if (!s) throw std::invalid_argument("is_transversal: blocks must partition the wires");
    }

    TransversalReport rep;
    rep.transversal = true;
    Matrix cur = u.matrix();
    std::vector<std::size_t> cur_wires(w);
    for (std::size_t i = 0; i < w; ++i) cur_wires[i] = i;

    for (std::size_t j = 0; j + 1 < blocks.size(); ++j) {
        std::vector<std::size_t> pos;
        std::vector<std::size_t> cur_dims;
        for (std::size_t q : cur_wires) cur_dims.push_back(dims[q]);
        for (std::size_t q : blocks[j]) {
            auto it = std::find(cur_wires.begin(), cur_wires.end(), q);
            pos.push_back(std::size_t(it - cur_wires.begin()));
        }
        Matrix m = linalg::operator_schmidt_matrix(cur, cur_dims, pos);
        auto s = linalg::svd(m);
        if (s.sigma.size() > 1 && s.sigma[1] > 1e-8 * s.sigma[0]) {
            rep.transversal = false;
            rep.factors.clear();
            return rep;
        }
        std::size_t da = 1;
        for (std::size_t q : blocks[j]) da *= dims[q];
        const std::size_t db = cur.rows() / da;

        Matrix a(da, da), rest(db, db);
        for (std::size_t r0 = 0; r0 < da; ++r0)
            for (std::size_t c0 = 0; c0 < da; ++c0)
                a(r0, c0) = s.u(r0 * da + c0, 0) * std::sqrt(double(da));
        const double scale = s.sigma[0] / std::sqrt(double(da));
        for (std::size_t r0 = 0; r0 < db; ++r0)
            for (std::size_t c0 = 0; c0 < db; ++c0)
                rest(r0, c0) = std::conj(s.v(r0 * db + c0, 0)) * scale;

        // keep factor phases canonical, push the rotation into the rest
        double best = 0.0;
        cxd top{1.0, 0.0};
        for (std::size_t r0 = 0; r0 < da; ++r0)
            for (std::size_t c0 = 0; c0 < da; ++c0)
                if (std::abs(a(r0, c0)) > best) {
                    best = std::abs(a(r0, c0));
                    top = a(r0, c0);
                }
        const cxd ph = top / std::abs(top);
        a *= std::conj(ph);
        rest *= ph;

        rep.factors.push_back(std::move(a));
        cur = std::move(rest);
        std::vector<std::size_t> remaining;
        for (std::size_t q : cur_wires)
            if (std::find(blocks[j].begin(), blocks[j].end(), q) == blocks[j].end())
                remaining.push_back(q);
        cur_wires = std::move(remaining);
    }
    rep.factors.push_back(std::move(cur));

    // the factors must rebuild the operator
    Matrix recon = Matrix::identity(u.dim());
    for (std::size_t j = 0; j < blocks.size(); ++j)
        recon = linalg::embed(rep.factors[j], blocks[j], dims) * recon;
    if (core::phase_aligned_fro_distance(u.matrix(), recon) > 1e-9) {
        rep.transversal = false;
        rep.factors.clear();
    }
    return rep;
}

std::vector<SurveyEntry> transversal_logical_survey(
    const StabilizerCode& code, const std::vector<Matrix>& single_block_gates,
    std::size_t max_word) {
    if (code.n() > desk_cap()) throw CapExceeded(code.n(), desk_cap());
    CodeProjector p = projector_from_stabilizers(code);
    const Matrix& v = p.isometry();

    // tensor powers of each alphabet gate
    std::vector<Matrix> lifted;
    for (const Matrix& g : single_block_gates) {
        if (g.rows() != 2 || !g.square() || !linalg::is_unitary(g, 1e-10))
            throw std::invalid_argument(
                "transversal_logical_survey: alphabet gates must be 2x2 unitaries");
        Matrix acc = g;
        for (std::size_t q = 1; q < code.n(); ++q) acc = linalg::kron(acc, g);
        lifted.push_back(std::move(acc));
    }

    std::vector<SurveyEntry> found;
    auto consider = [&](const std::vector<std::size_t>& word, const Matrix& uw) {
        if ((uw * p.matrix() - p.matrix() * uw).frobenius_norm() > 1e-9) return;
        Matrix logical = v.adjoint() * uw * v;
        for (const SurveyEntry& e : found)
            if (core::phase_aligned_fro_distance(e.logical, logical) < 1e-8) return;
        found.push_back({word, std::move(logical)});
    };

    struct Node {
        std::vector<std::size_t> word;
        Matrix u;
    };
    std::vector<Node> frontier{{{}, Matrix::identity(p.dim())}};
    consider({}, frontier[0].u);
    for (std::size_t len = 1; len <= max_word && !lifted.empty(); ++len) {
        if (frontier.size() * lifted.size() > 100000)
            throw std::invalid_argument("transversal_logical_survey: word budget exceeded");
        std::vector<Node> next;
        next.reserve(frontier.size() * lifted.size());
        for (const Node& node : frontier)
            for (std::size_t g = 0; g < lifted.size(); ++g) {
                Node ext{node.word, lifted[g] * node.u};
                ext.word.push_back(g);
                consider(ext.word, ext.u);
                next.push_back(std::move(ext));
            }
        frontier = std::move(next);
    }
    return found;
}

bool gauge_fix_admissible(const GaugeCode& c1, const GaugeCode& c2) {
    if (c1.n != c2.n)
        throw std::invalid_argument("gauge_fix_admissible: length mismatch");
    auto span_of = [&](const std::vector<PauliString>& gens) {
        Gf2Span s(c1.n);
        for (const PauliString& g : gens) s.add(g.x_bits(), g.z_bits());
        return s;
    };
    auto subset = [&](const std::vector<PauliString>& small, const Gf2Span& big) {
        for (const PauliString& g : small)
            if (!big.contains(g.x_bits(), g.z_bits())) return false;
        return true;
    };
    Gf2Span s2 = span_of(c2.stabilizer_generators);
    Gf2Span g2 = span_of(c2.gauge_generators);
    Gf2Span g1 = span_of(c1.gauge_generators);
    return subset(c1.stabilizer_generators, s2) &&
           subset(c2.stabilizer_generators, g2) &&
           subset(c2.gauge_generators, g1);
}

Matrix concatenate(const Matrix& outer_encode, const Matrix& inner_encode,
                   std::size_t m) {
    if (outer_encode.rows() != (std::size_t(1) << m))
        throw std::invalid_argument(
            "concatenate: m must match the outer code's physical qubit count");
    if (inner_encode.cols() != 2)
        throw std::invalid_argument("concatenate: inner code must encode one qubit");
    Matrix v2m = inner_encode;
    for (std::size_t i = 1; i < m; ++i) v2m = linalg::kron(v2m, inner_encode);
    Matrix out = v2m * outer_encode;
    Matrix gram = out.adjoint() * out;
    if (!linalg::approx_equal(gram, Matrix::identity(out.cols()), 1e-10))
        throw std::invalid_argument("concatenate: composition is not an isometry");
    return out;
}

bool is_edge_encoding(const Matrix& encode, std::size_t n_wires) {
    const std::size_t dlog = encode.cols();
    std::size_t k = 0;
    while ((std::size_t(1) << k) < dlog) ++k;
    if ((std::size_t(1) << k) != dlog || encode.rows() != (std::size_t(1) << n_wires))
        throw std::invalid_argument("is_edge_encoding: dimensions must be qubit powers");
    if (k > n_wires) return false;

    std::vector<std::size_t> subset(k);
    // enumerate k-subsets of wires, then orderings within the subset
    std::vector<std::size_t> idx(n_wires);
    for (std::size_t i = 0; i < n_wires; ++i) idx[i] = i;
    std::vector<bool> pick(n_wires, false);
    std::fill(pick.begin(), pick.begin() + std::ptrdiff_t(k), true);
    std::sort(pick.begin(), pick.end());  // start from the lexicographically first mask
    const std::vector<std::size_t> dims(n_wires, 2);

    do {
        subset.clear();
        for (std::size_t i = 0; i < n_wires; ++i)
            if (pick[i]) subset.push_back(i);
        if (subset.size() != k) continue;
        std::vector<std::size_t> perm = subset;
        std::sort(perm.begin(), perm.end());
        do {
            // N[(a, l)][b] = V[idx(a on perm wires, b on the rest)][l]
            std::vector<std::size_t> rest;
            for (std::size_t i = 0; i < n_wires; ++i)
                if (std::find(perm.begin(), perm.end(), i) == perm.end())
                    rest.push_back(i);
            const std::size_t da = std::size_t(1) << k;
            const std::size_t db = encode.rows() / da;
            Matrix nmat(da * da, db);
            std::vector<std::size_t> stride(n_wires, 1);
            for (std::size_t i = n_wires; i-- > 1;) stride[i - 1] = stride[i] * 2;
            for (std::size_t a = 0; a < da; ++a)
                for (std::size_t b = 0; b < db; ++b) {
                    std::size_t full = 0;
                    for (std::size_t i = 0; i < k; ++i)
                        full += ((a >> (k - 1 - i)) & 1) * stride[perm[i]];
                    for (std::size_t i = 0; i < rest.size(); ++i)
                        full += ((b >> (rest.size() - 1 - i)) & 1) * stride[rest[i]];
                    for (std::size_t l = 0; l < da; ++l)
                        nmat(a * da + l, b) = encode(full, l);
                }
            auto s = linalg::svd(nmat);
            if (s.sigma.size() > 1 && s.sigma[1] > 1e-9 * s.sigma[0]) continue;
            // left vector must align with vec(identity)
            cxd ov{};
            for (std::size_t a = 0; a < da; ++a) ov += std::conj(s.u(a * da + a, 0));
            if (std::abs(ov) / std::sqrt(double(da)) >= 1.0 - 1e-9) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return false;
}

std::vector<PauliString> pauli_errors_up_to_weight(std::size_t n, std::size_t t) {
    std::vector<PauliString> out{PauliString::identity(n)};
    std::vector<std::size_t> sites;
    const char letters[3] = {'X', 'Y', 'Z'};

    std::function<void(std::size_t, std::size_t, PauliString)> rec =
        [&](std::size_t start, std::size_t left, PauliString cur) {
            if (left == 0) return;
            for (std::size_t q = start; q < n; ++q)
                for (char c : letters) {
                    PauliString ext = cur * PauliString::single(n, c, q);
                    out.push_back(ext);
                    rec(q + 1, left - 1, ext);
                }
        };
    rec(0, t, PauliString::identity(n));
    return out;
}

std::optional<std::size_t> code_distance_report(const StabilizerCode& code,
                                                std::size_t max_weight) {
    Gf2Span span(code.n());
    for (const PauliString& g : code.generators())
        span.add(g.x_bits(), g.z_bits());
    for (std::size_t w = 1; w <= max_weight; ++w) {
        for (const PauliString& p : pauli_errors_up_to_weight(code.n(), w)) {
            if (p.weight() != w) continue;
            bool comm = true;
            for (const PauliString& g : code.generators())
                if (!p.commutes_with(g)) { comm = false; break; }
            if (!comm) continue;
            if (!span.contains(p.x_bits(), p.z_bits())) return w;
        }
    }
    return std::nullopt;
}

}  // namespace uqcm::codes
