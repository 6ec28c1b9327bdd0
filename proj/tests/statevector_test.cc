#include "teleqec/statevector.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "test_util.h"

using namespace teleqec;
using teleqec_test::random_bits;
using teleqec_test::random_pauli_string;

namespace {

std::vector<size_t> range(size_t begin, size_t end) {
    std::vector<size_t> out(end - begin);
    std::iota(out.begin(), out.end(), begin);
    return out;
}

Syndrome syndrome_from_index(uint64_t index, size_t l) {
    Syndrome e(l);
    for (size_t i = 0; i < l; i++) {
        e.set(i, (index >> i) & 1);
    }
    return e;
}

bool states_close(const DenseState &a, const DenseState &b, double tol) {
    for (size_t i = 0; i < a.amplitudes().size(); i++) {
        if (std::abs(a[i] - b[i]) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(dense_state, construction) {
    DenseState z(3);
    ASSERT_EQ(z.amplitudes().size(), 8u);
    ASSERT_EQ(z[0], Amplitude(1, 0));
    auto b = DenseState::basis({1, 0});
    ASSERT_EQ(b[2], Amplitude(1, 0));
    ASSERT_THROW(DenseState::from_amplitudes({1, 0, 0}), std::invalid_argument);
    Rng rng(81);
    auto r = DenseState::random(4, rng);
    ASSERT_NEAR(r.norm_squared(), 1.0, 1e-12);
    ASSERT_THROW(DenseState(kMaxStateQubits + 1), SizeGuardError);
    auto zero = DenseState::from_amplitudes({0, 0});
    ASSERT_THROW(zero.normalize(), DegenerateProjection);
}

TEST(apply_pauli, examples) {
    DenseState zero(1);
    ASSERT_TRUE(states_close(apply_pauli(zero, {parse_pauli("I"), 0}), zero, 0));
    ASSERT_TRUE(states_close(apply_pauli(zero, {parse_pauli("X"), 0}), DenseState::basis({1}), 0));
    // Y is sigma_x sigma_z, so Y|0> = |1> with phase +1.
    ASSERT_TRUE(states_close(apply_pauli(zero, {parse_pauli("Y"), 0}), DenseState::basis({1}), 0));
    auto one = DenseState::basis({1});
    ASSERT_EQ(apply_pauli(one, {parse_pauli("Y"), 0})[0], Amplitude(-1, 0));
    ASSERT_EQ(apply_pauli(zero, {parse_pauli("X"), 1})[1], Amplitude(0, 1));
    // Qubit 0 is the leftmost label.
    auto s = apply_pauli(DenseState(3), {parse_pauli("X"), 0}, std::vector<size_t>{2});
    ASSERT_EQ(s[1], Amplitude(1, 0));
    ASSERT_THROW(apply_pauli(zero, {parse_pauli("XX"), 0}), std::invalid_argument);
}

TEST(apply_pauli, composes_like_multiply) {
    Rng rng(82);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + rng() % 4;
        auto psi = DenseState::random(n, rng);
        PhasedPauli a{parse_pauli(random_pauli_string(n, rng)), static_cast<int>(rng() % 4)};
        PhasedPauli b{parse_pauli(random_pauli_string(n, rng)), static_cast<int>(rng() % 4)};
        auto lhs = apply_pauli(apply_pauli(psi, b), a);
        auto rhs = apply_pauli(psi, multiply(a, b));
        ASSERT_TRUE(states_close(lhs, rhs, 1e-12));
    }
}

TEST(project_syndrome, eigenstate_is_unchanged) {
    Rng rng(83);
    auto code = library_code("five_qubit");
    auto q = range(0, 5);
    for (uint64_t i = 0; i < 16; i++) {
        Syndrome e = syndrome_from_index(i, 4);
        auto psi = random_code_state(code, e, rng);
        auto r = project_syndrome(psi, {code, e}, q);
        ASSERT_NEAR(r.probability, 1.0, 1e-9);
        ASSERT_TRUE(states_close(r.state, psi, 1e-9));
    }
}

TEST(project_syndrome, zero_zero_onto_bell_state) {
    auto code = library_code("bell_pair");
    auto r = project_syndrome(DenseState(2), {code, Syndrome(2)}, range(0, 2));
    ASSERT_NEAR(r.probability, 0.5, 1e-12);
    double h = 1 / std::sqrt(2.0);
    ASSERT_NEAR(r.state[0].real(), h, 1e-12);
    ASSERT_NEAR(r.state[3].real(), h, 1e-12);
    ASSERT_NEAR(std::abs(r.state[1]) + std::abs(r.state[2]), 0, 1e-12);
    ASSERT_THROW(project_syndrome(DenseState(2), {code, BitVec::from_string("01")}, range(0, 2)),
                 DegenerateProjection);
}

TEST(project_syndrome, completeness_idempotence_orthogonality) {
    Rng rng(84);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 1 + rng() % 3;
        auto code = random_code(n, rng() % (n + 1), rng);
        size_t m = n + 1;
        auto psi = DenseState::random(m, rng);
        std::vector<size_t> qubits = range(0, m);
        std::swap(qubits[0], qubits[rng() % m]);
        qubits.resize(n);
        double total = 0;
        for (uint64_t i = 0; i < (uint64_t{1} << code.l()); i++) {
            Syndrome e = syndrome_from_index(i, code.l());
            auto once = apply_projector(psi, {code, e}, qubits);
            auto twice = apply_projector(once, {code, e}, qubits);
            ASSERT_TRUE(states_close(once, twice, 1e-12));
            total += once.norm_squared();
            for (uint64_t j = 0; j < (uint64_t{1} << code.l()); j++) {
                if (j != i) {
                    auto other = apply_projector(once, {code, syndrome_from_index(j, code.l())}, qubits);
                    ASSERT_NEAR(other.norm_squared(), 0, 1e-12);
                }
            }
        }
        ASSERT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(measure_syndrome, eigenstates_and_repeatability) {
    Rng rng(85);
    auto code = library_code("five_qubit");
    auto q = range(0, 5);
    for (int trial = 0; trial < 20; trial++) {
        Syndrome e = random_bits(4, rng);
        auto psi = random_code_state(code, e, rng);
        auto r = measure_syndrome(psi, code, q, rng);
        ASSERT_EQ(r.syndrome, e);
        auto noisy = apply_pauli(DenseState::random(5, rng), {PauliVec(5), 0});
        auto first = measure_syndrome(noisy, code, q, rng);
        auto again = measure_syndrome(first.state, code, q, rng);
        ASSERT_EQ(again.syndrome, first.syndrome);
    }
}

TEST(measure_syndrome, shift_after_pauli) {
    Rng rng(86);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 1 + rng() % 4;
        auto code = random_code(n, rng() % n, rng);
        Syndrome e = random_bits(code.l(), rng);
        auto psi = random_code_state(code, e, rng);
        PauliVec s = parse_pauli(random_pauli_string(n, rng));
        auto r = measure_syndrome(apply_pauli(psi, {s, 0}), code, range(0, n), rng);
        ASSERT_EQ(r.syndrome, e ^ syndrome_shift(s, code));
    }
}

TEST(measure_syndrome, frequencies_match_born_rule) {
    Rng rng(87);
    auto code = code_from_strings({"ZZI", "XXX"});
    auto psi = DenseState::random(3, rng);
    auto q = range(0, 3);
    const int shots = 4000;
    std::vector<int> counts(4, 0);
    for (int s = 0; s < shots; s++) {
        auto r = measure_syndrome(psi, code, q, rng);
        counts[r.syndrome[0] + 2 * r.syndrome[1]]++;
    }
    for (uint64_t i = 0; i < 4; i++) {
        double p = apply_projector(psi, {code, syndrome_from_index(i, 2)}, q).norm_squared();
        double sigma = std::sqrt(shots * p * (1 - p));
        ASSERT_NEAR(counts[i], shots * p, 3 * sigma + 1);
    }
}

TEST(bell_measure, examples) {
    Rng rng(88);
    auto bell = project_syndrome(DenseState(2), {library_code("bell_pair"), Syndrome(2)}, range(0, 2)).state;
    for (int s = 0; s < 20; s++) {
        ASSERT_EQ(bell_measure(bell, 0, 1, rng).outcome, (BellOutcome{false, false}));
        ASSERT_TRUE(bell_measure(DenseState::basis({0, 1}), 0, 1, rng).outcome.zz);
    }
    double h = 0.5;
    auto plus_plus = DenseState::from_amplitudes({h, h, h, h});
    int counts[2] = {0, 0};
    for (int s = 0; s < 2000; s++) {
        auto f = bell_measure(plus_plus, 0, 1, rng).outcome;
        ASSERT_FALSE(f.xx);
        counts[f.zz]++;
    }
    ASSERT_NEAR(counts[1], 1000, 3 * std::sqrt(500.0));
    ASSERT_THROW(bell_measure(bell, 1, 1, rng), std::invalid_argument);
}

TEST(eigenvalue_exponent, matches_expectation_on_projected_states) {
    Rng rng(89);
    for (int trial = 0; trial < 40; trial++) {
        size_t n = 1 + rng() % 3;
        auto code = random_code(n, rng() % (n + 1), rng);
        auto q = range(0, n);
        for (uint64_t ei = 0; ei < (uint64_t{1} << code.l()); ei++) {
            Syndrome e = syndrome_from_index(ei, code.l());
            auto psi = random_code_state(code, e, rng);
            for (uint64_t xi = 0; xi < (uint64_t{1} << code.l()); xi++) {
                BitVec x = syndrome_from_index(xi, code.l());
                PauliVec p(code.generators().combine_rows(x));
                auto ev = eigenvalue_exponent(code, e, x);
                Amplitude expected = std::pow(Amplitude(0, 1), ev.total());
                ASSERT_NEAR(std::abs(expectation(psi, {p, 0}, q) - expected), 0, 1e-9);
            }
        }
    }
}

TEST(dense_teleport_ec, plain_teleportation) {
    Rng rng(90);
    auto code = validate_code(BitMatrix(2));
    for (int trial = 0; trial < 20; trial++) {
        auto psi = DenseState::random(1, rng);
        auto r = dense_teleport_ec(code, psi, PauliVec(1), rng);
        ASSERT_NEAR(fidelity(r.output, psi), 1, 1e-9);
        r = dense_teleport_ec(code, psi, parse_pauli("Y"), rng);
        ASSERT_NEAR(fidelity(r.output, apply_pauli(psi, {parse_pauli("Y"), 0})), 1, 1e-9);
    }
}

TEST(dense_teleport_ec, bell_code_x_error) {
    Rng rng(91);
    auto code = library_code("bell_pair");
    auto psi = random_code_state(code, Syndrome(2), rng);
    PauliVec err = parse_pauli("XI");
    auto r = dense_teleport_ec(code, psi, err, rng);
    ASSERT_EQ(syndrome_shift(r.g, code) ^ r.prep_offset, BitVec::from_string("01"));
    ASSERT_EQ(r.inferred_syndrome, syndrome_shift(err, code));
    ASSERT_NEAR(r.direct_probability, 1, 1e-9);
    ASSERT_NEAR(fidelity(r.output, r.direct_state), 1, 1e-9);
}

TEST(dense_teleport_ec, equivalent_to_syndrome_measurement) {
    Rng rng(92);
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 1 + rng() % 4;
        auto code = random_code(n, rng() % (n + 1), rng);
        auto psi = DenseState::random(n, rng);
        PauliVec err = parse_pauli(random_pauli_string(n, rng));
        auto r = dense_teleport_ec(code, psi, err, rng);
        ASSERT_TRUE(r.prep_offset.none());
        ASSERT_GT(r.direct_probability, kDegenerateThreshold);
        ASSERT_NEAR(fidelity(r.output, r.direct_state), 1, 1e-9);
    }
}

TEST(dense_teleport_ec, code_state_input_gives_its_syndrome) {
    Rng rng(95);
    for (int trial = 0; trial < 40; trial++) {
        size_t n = 1 + rng() % 4;
        auto code = random_code(n, rng() % (n + 1), rng);
        Syndrome e = random_bits(code.l(), rng);
        auto psi = random_code_state(code, e, rng);
        PauliVec err = parse_pauli(random_pauli_string(n, rng));
        auto r = dense_teleport_ec(code, psi, err, rng);
        ASSERT_EQ(r.inferred_syndrome, e ^ syndrome_shift(err, code));
        ASSERT_NEAR(r.direct_probability, 1, 1e-9);
        ASSERT_NEAR(fidelity(r.output, r.direct_state), 1, 1e-9);
    }
}

TEST(dense_teleport_ec, syndrome_frequencies_match_direct_measurement) {
    Rng rng(96);
    auto code = code_from_strings({"ZZ"});
    auto psi = DenseState::random(2, rng);
    PauliVec err = parse_pauli("XI");
    const int shots = 2000;
    int ones = 0;
    double p_one = 0;
    for (int s = 0; s < shots; s++) {
        auto r = dense_teleport_ec(code, psi, err, rng);
        ones += r.inferred_syndrome[0];
        if (r.inferred_syndrome[0]) {
            p_one = r.direct_probability;
        }
    }
    ASSERT_GT(p_one, 0.05);
    ASSERT_LT(p_one, 0.95);
    ASSERT_NEAR(ones, shots * p_one, 3 * std::sqrt(shots * p_one * (1 - p_one)) + 1);
}

TEST(dense_teleport_ec, recorded_offset) {
    Rng rng(93);
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 1 + rng() % 4;
        auto code = random_code(n, rng() % (n + 1), rng);
        auto psi = DenseState::random(n, rng);
        PauliVec err = parse_pauli(random_pauli_string(n, rng));
        auto r = dense_teleport_ec(code, psi, err, rng, {.reset_offset = false});
        auto corrupted = apply_pauli(psi, {err, 0});
        auto expected = apply_projector(corrupted, {code, r.inferred_syndrome}, range(0, n));
        expected.normalize();
        ASSERT_NEAR(fidelity(r.output, expected), 1, 1e-9);
    }
}

TEST(dense_teleport_ec, size_guard) {
    Rng rng(94);
    auto code = library_code("five_qubit");
    ASSERT_THROW(dense_teleport_ec(code, DenseState(5), PauliVec(5), rng), SizeGuardError);
}
