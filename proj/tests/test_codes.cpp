#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_common.hpp"
#include "uqcm/codes.hpp"

using namespace uqcm;
using namespace testutil;
using codes::CodeProjector;
using codes::GaugeCode;
using codes::PauliString;
using codes::StabilizerCode;
using core::KrausChannel;
using core::UnitaryOp;
using linalg::Matrix;
using linalg::Vec;

namespace {

StabilizerCode rep3() {
    return StabilizerCode(3, {PauliString::parse("ZZI"), PauliString::parse("IZZ")},
                          PauliString::parse("XXX"), PauliString::parse("ZII"),
                          std::string("[[3,1,1]]"));
}

std::vector<Matrix> rep3_bitflip_errors() {
    std::vector<Matrix> e{Matrix::identity(8)};
    for (std::size_t w = 0; w < 3; ++w)
        e.push_back(PauliString::single(3, 'X', w).to_matrix());
    return e;
}

KrausChannel iid_bitflip(std::size_t n, double p) {
    Matrix k0 = Matrix::identity(2) * cxd{std::sqrt(1 - p), 0.0};
    Matrix k1 = pauli_x() * cxd{std::sqrt(p), 0.0};
    std::vector<Matrix> ops{Matrix::identity(1)};
    ops[0](0, 0) = 1.0;
    std::vector<Matrix> acc{ops[0]};
    for (std::size_t q = 0; q < n; ++q) {
        std::vector<Matrix> next;
        for (const Matrix& m : acc) {
            next.push_back(linalg::kron(m, k0));
            next.push_back(linalg::kron(m, k1));
        }
        acc = std::move(next);
    }
    return KrausChannel(std::move(acc));
}

}  // namespace

TEST_CASE("PauliString algebra") {
    PauliString x = PauliString::parse("X");
    PauliString z = PauliString::parse("Z");
    PauliString y = PauliString::parse("Y");

    CHECK(linalg::approx_equal(x.to_matrix(), pauli_x(), 1e-15));
    CHECK(linalg::approx_equal(z.to_matrix(), pauli_z(), 1e-15));
    CHECK(linalg::approx_equal(y.to_matrix(), pauli_y(), 1e-15));

    // X Z = -i Y
    PauliString xz = x * z;
    CHECK(linalg::approx_equal(xz.to_matrix(), pauli_x() * pauli_z(), 1e-15));
    CHECK(xz.str() == "-iY");

    CHECK_FALSE(x.commutes_with(z));
    CHECK(x.commutes_with(x));
    CHECK(PauliString::parse("XXI").commutes_with(PauliString::parse("ZZI")));

    // multiplication matches dense matrices on random pairs
    rng::Rng r(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + r.integer(3);
        auto rand_p = [&] {
            return PauliString(n, r.integer(1ull << n), r.integer(1ull << n),
                               int(r.integer(4)));
        };
        PauliString a = rand_p(), b = rand_p();
        CHECK(linalg::approx_equal((a * b).to_matrix(), a.to_matrix() * b.to_matrix(),
                                   1e-13));
        CHECK(a.commutes_with(b) ==
              ((a.to_matrix() * b.to_matrix() - b.to_matrix() * a.to_matrix())
                   .max_abs() < 1e-12));
    }

    // serialization round trip
    for (const char* s : {"+XXI", "-ZZI", "+iYIX", "-iYY"}) {
        PauliString p = PauliString::parse(s);
        CHECK(PauliString::parse(p.str()).str() == p.str());
        CHECK(linalg::approx_equal(PauliString::parse(p.str()).to_matrix(),
                                   p.to_matrix(), 1e-15));
    }
    CHECK(PauliString::parse("XXI").str() == "+XXI");
}

TEST_CASE("StabilizerCode validation") {
    CHECK_THROWS_AS(StabilizerCode(2, {PauliString::parse("XI"),
                                       PauliString::parse("ZI")}),
                    std::invalid_argument);  // anticommuting
    CHECK_THROWS_AS(StabilizerCode(2, {PauliString::parse("ZZ"),
                                       PauliString::parse("ZZ")}),
                    std::invalid_argument);  // dependent
    StabilizerCode c = rep3();
    CHECK(c.k() == 1);
}

TEST_CASE("projector_from_stabilizers: reference projectors") {
    // no generators: the full space
    StabilizerCode trivial(2, {});
    CodeProjector p0 = codes::projector_from_stabilizers(trivial);
    CHECK(p0.rank() == 4);
    CHECK(linalg::approx_equal(p0.matrix(), Matrix::identity(4), 1e-12));

    // {ZZ}: span of |00>, |11>
    StabilizerCode zz(2, {PauliString::parse("ZZ")});
    CodeProjector p1 = codes::projector_from_stabilizers(zz);
    CHECK(p1.rank() == 2);
    Matrix expect(4, 4);
    expect(0, 0) = 1.0;
    expect(3, 3) = 1.0;
    CHECK(linalg::approx_equal(p1.matrix(), expect, 1e-12));

    // repetition code projector
    CodeProjector p2 = codes::projector_from_stabilizers(rep3());
    CHECK(p2.rank() == 2);
    Matrix e8(8, 8);
    e8(0, 0) = 1.0;
    e8(7, 7) = 1.0;
    CHECK(linalg::approx_equal(p2.matrix(), e8, 1e-12));
}

TEST_CASE("kl_check: trivial, repetition bit flips, logical-Z witness") {
    CodeProjector p = codes::projector_from_stabilizers(rep3());

    auto trivial = codes::kl_check(p, {Matrix::identity(8)});
    CHECK(trivial.correctable);
    CHECK(std::abs(trivial.a(0, 0) - 1.0) < 1e-12);

    auto rep = codes::kl_check(p, rep3_bitflip_errors());
    CHECK(rep.correctable);
    CHECK(linalg::approx_equal(rep.a, Matrix::identity(4), 1e-10));

    std::vector<Matrix> zerr{Matrix::identity(8),
                             PauliString::single(3, 'Z', 0).to_matrix()};
    auto bad = codes::kl_check(p, zerr);
    CHECK_FALSE(bad.correctable);
    REQUIRE(bad.witness.has_value());
    // first failing pair is (0,1): P * I * Z1 * P is not proportional to P
    CHECK(bad.witness->first == 0);
    CHECK(bad.witness->second == 1);
}

TEST_CASE("recovery_from_errors: identity set, deterministic flip, iid bit flip") {
    CodeProjector p = codes::projector_from_stabilizers(rep3());

    // identity error set: recovery acts as identity on codewords
    KrausChannel rec0 = codes::recovery_from_errors(p, {Matrix::identity(8)});
    Vec zero_l(8, cxd{});
    zero_l[0] = 1.0;
    Matrix rho = linalg::outer(zero_l, zero_l);
    CHECK(linalg::approx_equal(core::channel_apply(rho, rec0), rho, 1e-10));

    // deterministic X on qubit 1 is corrected exactly
    KrausChannel rec = codes::recovery_from_errors(p, rep3_bitflip_errors());
    Matrix x1 = PauliString::single(3, 'X', 1).to_matrix();
    Matrix flipped = x1 * rho * x1.adjoint();
    Matrix recovered = core::channel_apply(flipped, rec);
    CHECK(std::abs((rho * recovered).trace().real() - 1.0) < 1e-10);

    // iid bit flip at p = 0.1: logical error rate 3p^2(1-p) + p^3
    KrausChannel noise = iid_bitflip(3, 0.1);
    Matrix out = core::channel_apply(core::channel_apply(rho, noise), rec);
    const double keep = (rho * out).trace().real();
    const double expected = 3 * 0.01 * 0.9 + 0.001;
    CHECK(std::abs((1.0 - keep) - expected) < 1e-6);

    // KLViolation for uncorrectable sets
    std::vector<Matrix> zerr{Matrix::identity(8),
                             PauliString::single(3, 'Z', 0).to_matrix()};
    CHECK_THROWS_AS(codes::recovery_from_errors(p, zerr), KLViolation);
}

TEST_CASE("qec_accuracy: correctable, logical flip, identity") {
    CodeProjector p = codes::projector_from_stabilizers(rep3());
    KrausChannel rec = codes::recovery_from_errors(p, rep3_bitflip_errors());

    // correctable noise: mixture supported on the corrected span
    Matrix k0 = Matrix::identity(8) * cxd{std::sqrt(0.7), 0.0};
    Matrix k1 = PauliString::single(3, 'X', 1).to_matrix() * cxd{std::sqrt(0.3), 0.0};
    CHECK(codes::qec_accuracy(rec, KrausChannel({k0, k1}), p) <= 1e-9);

    // logical X-bar is invisible to the recovery: distance is large
    Matrix xbar = PauliString::parse("XXX").to_matrix();
    CHECK(codes::qec_accuracy(rec, KrausChannel::from_unitary(xbar), p) >= 0.9);

    // identity noise with the identity-set recovery has zero distance
    KrausChannel rec0 = codes::recovery_from_errors(p, {Matrix::identity(8)});
    CHECK(codes::qec_accuracy(rec0, KrausChannel::identity(8), p) <= 1e-10);
}

TEST_CASE("KL soundness matches recovery existence on random small codes") {
    // whenever kl_check accepts, the synthesized recovery reaches <= 1e-9
    CodeProjector p = codes::projector_from_stabilizers(rep3());
    std::vector<std::vector<Matrix>> candidate_sets{
        {Matrix::identity(8)},
        rep3_bitflip_errors(),
        {Matrix::identity(8), PauliString::single(3, 'X', 0).to_matrix()},
        {Matrix::identity(8), PauliString::single(3, 'Z', 0).to_matrix()},
    };
    for (const auto& errs : candidate_sets) {
        auto rep = codes::kl_check(p, errs);
        if (!rep.correctable) {
            CHECK_THROWS_AS(codes::recovery_from_errors(p, errs), KLViolation);
            continue;
        }
        KrausChannel rec = codes::recovery_from_errors(p, errs);
        // uniform mixture over the error set as the noise process
        std::vector<Matrix> kraus;
        for (const Matrix& e : errs)
            kraus.push_back(e * cxd{1.0 / std::sqrt(double(errs.size())), 0.0});
        // normalize to a channel via the Choi route if the raw set is not TP
        Matrix sum(8, 8);
        for (const Matrix& k : kraus) sum += k.adjoint() * k;
        if (!linalg::approx_equal(sum, Matrix::identity(8), 1e-10)) continue;
        CHECK(codes::qec_accuracy(rec, KrausChannel(kraus), p) <= 1e-9);
    }
}

TEST_CASE("is_logical: unitary and channel cases") {
    CodeProjector p = codes::projector_from_stabilizers(rep3());
    CHECK(codes::is_logical(Matrix::identity(8), p));
    CHECK(codes::is_logical(PauliString::parse("XXX").to_matrix(), p));
    CHECK_FALSE(codes::is_logical(PauliString::single(3, 'X', 0).to_matrix(), p));

    CHECK(codes::is_logical(
        KrausChannel::from_unitary(PauliString::parse("XXX").to_matrix()), p));
    CHECK_FALSE(codes::is_logical(
        KrausChannel::from_unitary(PauliString::single(3, 'X', 0).to_matrix()), p));
    // dephasing in the logical basis is a logical CP map
    Matrix pz = PauliString::parse("ZII").to_matrix();
    Matrix k0 = Matrix::identity(8) * cxd{std::sqrt(0.5), 0.0};
    Matrix k1 = PauliString::parse("ZZZ").to_matrix() * cxd{std::sqrt(0.5), 0.0};
    CHECK(codes::is_logical(KrausChannel({k0, k1}), p));
    (void)pz;
}

TEST_CASE("is_transversal: products, entanglers, factor reconstruction") {
    const Matrix h = hadamard();
    Matrix hhh = linalg::kron(linalg::kron(h, h), h);
    UnitaryOp u(hhh, {2, 2, 2});
    auto rep = codes::is_transversal(u, {{0}, {1}, {2}});
    CHECK(rep.transversal);
    REQUIRE(rep.factors.size() == 3);
    Matrix recon = Matrix::identity(8);
    const std::vector<std::size_t> dims{2, 2, 2};
    std::vector<std::vector<std::size_t>> blocks{{0}, {1}, {2}};
    for (std::size_t j = 0; j < 3; ++j)
        recon = linalg::embed(rep.factors[j], blocks[j], dims) * recon;
    CHECK(core::phase_aligned_fro_distance(hhh, recon) < 1e-9);

    // CZ across blocks is not transversal
    Matrix cz01 = linalg::embed(cz_gate(), {0, 1}, dims);
    auto bad = codes::is_transversal(UnitaryOp(cz01, dims), {{0}, {1}, {2}});
    CHECK_FALSE(bad.transversal);

    // the same CZ inside one block is fine
    auto good = codes::is_transversal(UnitaryOp(cz01, dims), {{0, 1}, {2}});
    CHECK(good.transversal);

    // non-contiguous blocks
    rng::Rng r(17);
    Matrix a = rng::random_unitary(4, r), b = rng::random_unitary(2, r);
    Matrix prod = linalg::embed(a, {0, 2}, dims) * linalg::embed(b, {1}, dims);
    auto nc = codes::is_transversal(UnitaryOp(prod, dims), {{0, 2}, {1}});
    CHECK(nc.transversal);
    CHECK(core::phase_aligned_fro_distance(nc.factors[0], a) < 1e-9);
}

TEST_CASE("transversal_logical_survey on the repetition code") {
    StabilizerCode code = rep3();

    // X per block: the word {X} implements logical X-bar
    auto with_x = codes::transversal_logical_survey(code, {pauli_x()}, 2);
    bool found_xbar = false;
    for (const auto& e : with_x)
        if (e.word == std::vector<std::size_t>{0} &&
            core::phase_aligned_fro_distance(e.logical, pauli_x()) < 1e-8)
            found_xbar = true;
    CHECK(found_xbar);

    // H per block never commutes with the projector (beyond the empty word)
    auto with_h = codes::transversal_logical_survey(code, {hadamard()}, 2);
    for (const auto& e : with_h)
        if (!e.word.empty())
            CHECK(core::phase_aligned_fro_distance(e.logical, Matrix::identity(2)) <
                  1e-8);  // only even-length identities may survive
    // H itself must not appear as a logical action
    for (const auto& e : with_h)
        CHECK(core::phase_aligned_fro_distance(e.logical, hadamard()) > 1e-3);

    // empty alphabet: only the identity is reported
    auto none = codes::transversal_logical_survey(code, {}, 3);
    REQUIRE(none.size() == 1);
    CHECK(none[0].word.empty());
    CHECK(core::phase_aligned_fro_distance(none[0].logical, Matrix::identity(2)) <
          1e-10);

    // duplicate-free up to global phase
    for (std::size_t i = 0; i < with_x.size(); ++i)
        for (std::size_t j = i + 1; j < with_x.size(); ++j)
            CHECK(core::phase_aligned_fro_distance(with_x[i].logical,
                                                   with_x[j].logical) > 1e-8);
}

TEST_CASE("gauge_fix_admissible: reflexive, one-qubit chain, failing inclusion") {
    GaugeCode c(1, {PauliString::parse("X"), PauliString::parse("Z")}, {});
    CHECK(codes::gauge_fix_admissible(c, c));

    // S1 = {}, G1 = <X, Z>; S2 = G2 = <Z>
    GaugeCode c2(1, {PauliString::parse("Z")}, {PauliString::parse("Z")});
    CHECK(codes::gauge_fix_admissible(c, c2));

    // S1 = <Z> cannot gauge-fix to S2 = {}
    GaugeCode c3(1, {PauliString::parse("Z")}, {PauliString::parse("Z")});
    GaugeCode c4(1, {PauliString::parse("X"), PauliString::parse("Z")}, {});
    CHECK_FALSE(codes::gauge_fix_admissible(c3, c4));
}

TEST_CASE("gauge chain transitivity on sample triples") {
    GaugeCode a(2, {PauliString::parse("XI"), PauliString::parse("ZI"),
                    PauliString::parse("IX"), PauliString::parse("IZ")},
                {});
    GaugeCode b(2, {PauliString::parse("ZI"), PauliString::parse("IX"),
                    PauliString::parse("IZ")},
                {PauliString::parse("ZI")});
    GaugeCode c(2, {PauliString::parse("ZI"), PauliString::parse("IZ")},
                {PauliString::parse("ZI"), PauliString::parse("IZ")});
    CHECK(codes::gauge_fix_admissible(b, c));
    CHECK(codes::gauge_fix_admissible(a, b));
    CHECK(codes::gauge_fix_admissible(a, c));
}

TEST_CASE("concatenate: identity inner, repetition-of-repetition") {
    // rep3 encoding isometry
    Matrix v1(8, 2);
    v1(0, 0) = 1.0;
    v1(7, 1) = 1.0;

    Matrix same = codes::concatenate(v1, Matrix::identity(2), 3);
    CHECK(linalg::approx_equal(same, v1, 1e-12));

    Matrix v9 = codes::concatenate(v1, v1, 3);
    CHECK(v9.rows() == 512);
    CHECK(v9.cols() == 2);
    CHECK(std::abs(v9(0, 0) - 1.0) < 1e-12);    // |0-bar> = |000000000>
    CHECK(std::abs(v9(511, 1) - 1.0) < 1e-12);  // |1-bar> = |111111111>

    // the concatenated code corrects any single X error among 9 qubits
    CodeProjector p9(v9 * v9.adjoint());
    std::vector<Matrix> errs{Matrix::identity(512)};
    for (std::size_t w = 0; w < 9; ++w)
        errs.push_back(PauliString::single(9, 'X', w).to_matrix());
    auto rep = codes::kl_check(p9, errs);
    CHECK(rep.correctable);
}

TEST_CASE("edge and bulk encodings") {
    // identity on wire 0 with |0>|+> ancillas on wires 1, 2 is an edge code
    Matrix edge(8, 2);
    edge(0, 0) = isq2;   // |0>|0>|0>
    edge(1, 0) = isq2;   // |0>|0>|1>
    edge(4, 1) = isq2;
    edge(5, 1) = isq2;
    CHECK(codes::is_edge_encoding(edge, 3));

    // repetition encoding is a bulk code
    Matrix v1(8, 2);
    v1(0, 0) = 1.0;
    v1(7, 1) = 1.0;
    CHECK_FALSE(codes::is_edge_encoding(v1, 3));

    // edge structure on a permuted wire is still found
    Matrix edge2(8, 2);
    edge2(0, 1) = 1.0;  // logical |1> -> wire-2 = 0? build |anc anc psi> layout
    // V|l> = |0>|1>|l>: indices: l=0 -> 010 = 2, l=1 -> 011 = 3
    Matrix edge3(8, 2);
    edge3(2, 0) = 1.0;
    edge3(3, 1) = 1.0;
    CHECK(codes::is_edge_encoding(edge3, 3));
    (void)edge2;
}

TEST_CASE("pauli error helpers and distance report") {
    auto errs = codes::pauli_errors_up_to_weight(3, 1);
    CHECK(errs.size() == 1 + 9);  // identity + 3 paulis * 3 qubits

    // rep3 distance report: Z on any single qubit is already logical
    CHECK(codes::code_distance_report(rep3(), 3) == 1);

    // the two-qubit ZZ code: X1 X2 commutes and is outside, weight 2;
    // single Z1 is in... Z1 anticommutes; Z1 Z2 is the stabilizer itself
    StabilizerCode zz(2, {PauliString::parse("ZZ")});
    CHECK(codes::code_distance_report(zz, 2) == 1);  // single Z? no: ZI commutes
}
