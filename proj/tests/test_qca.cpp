#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_common.hpp"
#include "uqcm/qca.hpp"

using namespace uqcm;
using namespace testutil;
using core::PureState;
using linalg::Matrix;
using linalg::Vec;
using qca::LocalHamiltonian;
using qca::Term;

namespace {

LocalHamiltonian tfi_chain(std::size_t n, double j, double h) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i + 1 < n; ++i)
        terms.push_back({linalg::kron(pauli_z(), pauli_z()) * cxd{-j, 0.0}, {i, i + 1}});
    for (std::size_t i = 0; i < n; ++i)
        terms.push_back({pauli_x() * cxd{-h, 0.0}, {i}});
    return LocalHamiltonian(std::move(terms), n);
}

double trotter_error(const LocalHamiltonian& h, double t, std::size_t r, int order) {
    Matrix approx = circuit::circuit_unitary(qca::trotterize(h, t, r, order)).matrix();
    Matrix exact = linalg::expm_hermitian(h.dense(), t);
    return linalg::spectral_norm(approx - exact);
}

}  // namespace

TEST_CASE("LocalHamiltonian validation") {
    CHECK_THROWS_AS(LocalHamiltonian({Term{Matrix(2, 2, {0, 1, 0, 0}), {0}}}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(LocalHamiltonian({Term{pauli_z(), {3}}}, 2), std::invalid_argument);
    LocalHamiltonian ok = tfi_chain(3, 1.0, 1.0);
    CHECK(ok.locality() == 2);
    CHECK(ok.terms().size() == 5);
}

TEST_CASE("exact_evolve: t = 0, phases, group inverse") {
    rng::Rng r(101);
    LocalHamiltonian h = tfi_chain(3, 1.0, 0.7);
    PureState s(rng::random_state_vector(8, r), {2, 2, 2});

    PureState same = qca::exact_evolve(h, 0.0, s);
    CHECK(core::fidelity(same, s) >= 1.0 - 1e-12);

    // Z on |+> for t = pi/2: amplitudes pick up -/+ i phases
    LocalHamiltonian hz({Term{pauli_z(), {0}}}, 1);
    PureState plus = PureState::normalized(Vec{1.0, 1.0}, {2});
    PureState evolved = qca::exact_evolve(hz, M_PI / 2, plus);
    Vec expect{isq2 * std::exp(cxd{0, -M_PI / 2}), isq2 * std::exp(cxd{0, M_PI / 2})};
    CHECK(core::fidelity(evolved.amplitudes(), expect) >= 1.0 - 1e-12);

    // H and -H evolve to mutually inverse maps
    PureState fwd = qca::exact_evolve(h, 0.9, s);
    PureState back = qca::exact_evolve(h.scaled(-1.0), 0.9, fwd);
    CHECK(core::fidelity(back, s) >= 1.0 - 1e-11);
}

TEST_CASE("trotterize: commuting Hamiltonian is exact at r = 1") {
    std::vector<Term> terms{{pauli_z(), {0}}, {pauli_z(), {1}}};
    LocalHamiltonian h(terms, 2);
    auto plan = qca::make_trotter_plan(h, 1.3, 1, 1);
    CHECK(plan.layers.size() == 1);
    CHECK(trotter_error(h, 1.3, 1, 1) < 1e-10);
}

TEST_CASE("trotter plan layers are internally commuting") {
    LocalHamiltonian h = tfi_chain(3, 1.0, 1.0);
    auto plan = qca::make_trotter_plan(h, 1.0, 10, 1);
    const std::vector<std::size_t> dims(3, 2);
    for (const auto& layer : plan.layers)
        for (std::size_t a : layer)
            for (std::size_t b : layer) {
                if (a == b) continue;
                Matrix ea = linalg::embed(h.terms()[a].op, h.terms()[a].support, dims);
                Matrix eb = linalg::embed(h.terms()[b].op, h.terms()[b].support, dims);
                CHECK((ea * eb - eb * ea).max_abs() <= 1e-10);
            }
    // layers cover every term exactly once
    std::vector<int> seen(h.terms().size(), 0);
    for (const auto& layer : plan.layers)
        for (std::size_t idx : layer) seen[idx]++;
    for (int c : seen) CHECK(c == 1);
}

TEST_CASE("trotter error scaling: first order halves with doubled r") {
    LocalHamiltonian h = tfi_chain(3, 1.0, 1.0);
    for (std::size_t r : {25u, 50u, 100u}) {
        const double e1 = trotter_error(h, 1.0, r, 1);
        const double e2 = trotter_error(h, 1.0, 2 * r, 1);
        const double ratio = e2 / e1;
        CHECK(ratio > 0.4);
        CHECK(ratio < 0.6);
    }
}

TEST_CASE("trotter error scaling: second order quarters with doubled r") {
    LocalHamiltonian h = tfi_chain(3, 1.0, 1.0);
    for (std::size_t r : {25u, 50u}) {
        const double e1 = trotter_error(h, 1.0, r, 2);
        const double e2 = trotter_error(h, 1.0, 2 * r, 2);
        const double ratio = e2 / e1;
        CHECK(ratio > 0.2);
        CHECK(ratio < 0.3);
    }
}

TEST_CASE("trotter convergence: log-log slope near -1 on random 3-site models") {
    rng::Rng r(103);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Term> terms;
        for (std::size_t i = 0; i + 1 < 3; ++i)
            terms.push_back({rng::random_hermitian(4, r), {i, i + 1}});
        LocalHamiltonian h(terms, 3);
        const double e1 = trotter_error(h, 1.0, 64, 1);
        const double e2 = trotter_error(h, 1.0, 256, 1);
        if (e1 < 1e-12) continue;  // accidentally commuting draw
        const double slope = std::log(e2 / e1) / std::log(256.0 / 64.0);
        CHECK(slope == doctest::Approx(-1.0).epsilon(0.2));
        CHECK(e2 < e1);
    }
}

TEST_CASE("layer_to_mpu: single-site layer has bond dimension 1") {
    std::vector<Term> terms{{pauli_x(), {0}}, {pauli_x(), {1}}, {pauli_x(), {2}}};
    LocalHamiltonian h(terms, 3);
    auto plan = qca::make_trotter_plan(h, 0.8, 4, 1);
    REQUIRE(plan.layers.size() == 1);
    auto mpu = qca::layer_to_mpu(plan, 0);
    for (std::size_t bd : mpu.bond_dims()) CHECK(bd == 1);

    const std::vector<std::size_t> dims(3, 2);
    Matrix dense = Matrix::identity(8);
    for (const Term& t : h.terms())
        dense = linalg::embed(linalg::expm_hermitian(t.op, 0.2), t.support, dims) * dense;
    CHECK(linalg::approx_equal(tensor::mpu_contract(mpu), dense, 1e-9));
}

TEST_CASE("layer_to_mpu: brickwork layer matches the dense layer, bond <= 4") {
    std::vector<Term> terms{{linalg::kron(pauli_z(), pauli_z()), {0, 1}},
                            {linalg::kron(pauli_x(), pauli_x()), {2, 3}}};
    LocalHamiltonian h(terms, 4);
    auto plan = qca::make_trotter_plan(h, 1.0, 2, 1);
    REQUIRE(plan.layers.size() == 1);
    auto mpu = qca::layer_to_mpu(plan, 0);
    for (std::size_t bd : mpu.bond_dims()) CHECK(bd <= 4);

    const std::vector<std::size_t> dims(4, 2);
    Matrix dense = Matrix::identity(16);
    for (const Term& t : h.terms())
        dense = linalg::embed(linalg::expm_hermitian(t.op, 0.5), t.support, dims) * dense;
    CHECK(linalg::approx_equal(tensor::mpu_contract(mpu), dense, 1e-9));
}

TEST_CASE("layer_to_mpu: identity layer at t = 0, non-1D rejected") {
    std::vector<Term> terms{{linalg::kron(pauli_z(), pauli_z()), {0, 1}}};
    LocalHamiltonian h(terms, 3);
    auto plan = qca::make_trotter_plan(h, 0.0, 1, 1);
    auto mpu = qca::layer_to_mpu(plan, 0);
    CHECK(linalg::approx_equal(tensor::mpu_contract(mpu), Matrix::identity(8), 1e-10));

    std::vector<Term> far{{linalg::kron(pauli_z(), pauli_z()), {0, 2}}};
    LocalHamiltonian hf(far, 3);
    auto plan2 = qca::make_trotter_plan(hf, 1.0, 1, 1);
    CHECK_THROWS_AS(qca::layer_to_mpu(plan2, 0), std::invalid_argument);
}

TEST_CASE("quantum_walk_evolve: start vertex, 2-path sine, cycle symmetry") {
    // t = 0: unit amplitude at the start
    Matrix a2(2, 2, {0, 1, 1, 0});
    Vec v0 = qca::quantum_walk_evolve(a2, 0, 0.0);
    CHECK(std::abs(v0[0] - 1.0) < 1e-13);

    // 2-vertex path: amplitude at the other vertex is -i sin t
    for (double t : {0.3, 1.0, 2.5}) {
        Vec v = qca::quantum_walk_evolve(a2, 0, t);
        CHECK(std::abs(v[1] - cxd{0.0, -std::sin(t)}) < 1e-12);
        CHECK(std::abs(v[0] - cxd{std::cos(t), 0.0}) < 1e-12);
    }

    // probability conservation across a time sweep
    Matrix cyc(5, 5);
    for (std::size_t i = 0; i < 5; ++i) {
        cyc(i, (i + 1) % 5) = 1.0;
        cyc((i + 1) % 5, i) = 1.0;
    }
    for (double t = 0.1; t <= 10.0; t += 0.9) {
        Vec v = qca::quantum_walk_evolve(cyc, 2, t);
        double p = 0.0;
        for (const cxd& z : v) p += std::norm(z);
        CHECK(p == doctest::Approx(1.0).epsilon(1e-10));
    }

    // walk on a cycle is translation symmetric
    Vec from0 = qca::quantum_walk_evolve(cyc, 0, 1.7);
    Vec from2 = qca::quantum_walk_evolve(cyc, 2, 1.7);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::abs(std::abs(from0[i]) - std::abs(from2[(i + 2) % 5])) < 1e-11);

    Matrix asym(2, 2, {0, 1, 0, 0});
    CHECK_THROWS_AS(qca::quantum_walk_evolve(asym, 0, 1.0), std::invalid_argument);
}

TEST_CASE("controlled_evolve: static schedules reduce to trotterize") {
    LocalHamiltonian h = tfi_chain(3, 1.0, 0.5);
    std::vector<qca::ScheduledTerm> sched;
    for (const Term& t : h.terms())
        sched.push_back({[op = t.op](double) { return op; },
                         t.support,
                         [](double s) { return s; }});
    // constant Hamiltonian: any monotone schedule leaves op_of constant
    const double t_total = 0.9;
    const std::size_t steps = 7;
    auto u = qca::controlled_evolve(sched, 3, t_total, steps);
    Matrix trot = circuit::circuit_unitary(qca::trotterize(h, t_total, steps, 1)).matrix();
    CHECK(linalg::approx_equal(u.matrix(), trot, 1e-11));
}

TEST_CASE("controlled_evolve: zero total time is the identity") {
    std::vector<qca::ScheduledTerm> sched{
        {[](double s) { return pauli_z() * cxd{s, 0.0}; },
         {0},
         [](double s) { return s; }}};
    auto u = qca::controlled_evolve(sched, 1, 0.0, 3);
    CHECK(linalg::approx_equal(u.matrix(), Matrix::identity(2), 1e-13));
}

TEST_CASE("controlled_evolve: step doubling converges") {
    // two-term time-dependent Hamiltonian with different local schedules
    std::vector<qca::ScheduledTerm> sched{
        {[](double s) { return pauli_x() * cxd{1.0 - s, 0.0}; },
         {0},
         [](double s) { return s; }},
        {[](double s) { return linalg::kron(pauli_z(), pauli_z()) * cxd{s, 0.0}; },
         {0, 1},
         [](double s) { return s * s; }}};
    double prev = -1.0;
    Matrix last(4, 4);
    bool have_last = false;
    for (std::size_t steps : {8u, 16u, 32u, 64u}) {
        Matrix u = qca::controlled_evolve(sched, 2, 2.0, steps).matrix();
        if (have_last) {
            const double d = linalg::spectral_norm(u - last);
            if (prev >= 0.0) CHECK(d < prev);
            prev = d;
        }
        last = u;
        have_last = true;
    }
}

TEST_CASE("controlled_evolve: non-monotone schedule rejected") {
    std::vector<qca::ScheduledTerm> sched{
        {[](double) { return pauli_z(); },
         {0},
         [](double s) { return s < 0.5 ? 2 * s : 2 - 2 * s + 1e-3; }}};
    CHECK_THROWS_AS(qca::controlled_evolve(sched, 1, 1.0, 4), std::invalid_argument);
}
