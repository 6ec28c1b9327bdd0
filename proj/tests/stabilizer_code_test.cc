#include "teleqec/stabilizer_code.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "dense_matrix.h"
#include "test_util.h"

using namespace teleqec;
using namespace teleqec_test;

namespace {

bool supported_in(const PauliVec &p, const ErasurePattern &s) {
    for (size_t q : p.support()) {
        if (!s.contains(q)) {
            return false;
        }
    }
    return true;
}

// Definition-level correctability: no element of C^perp \ C lives inside s.
bool correctable_by_enumeration(const StabilizerCode &code, const ErasurePattern &s) {
    const auto &dual = code.dual();
    for (uint64_t m = 1; m < (uint64_t{1} << dual.num_rows()); m++) {
        PauliVec x(code.n());
        for (size_t i = 0; i < dual.num_rows(); i++) {
            if ((m >> i) & 1) {
                x += PauliVec(dual.row(i));
            }
        }
        if (supported_in(x, s) && !code.in_stabilizer(x)) {
            return false;
        }
    }
    return true;
}

std::vector<PauliVec> all_paulis(size_t n) {
    std::vector<PauliVec> out;
    for (const auto &s : all_pauli_strings(n)) {
        out.push_back(parse_pauli(s));
    }
    return out;
}

double depolarizing_probability(const PauliVec &p, double rate) {
    size_t w = p.weight();
    return std::pow(rate / 3, static_cast<double>(w)) * std::pow(1 - rate, static_cast<double>(p.num_qubits() - w));
}

Matrix projector_matrix(const StabilizerCode &code, const Syndrome &e) {
    Matrix pi = identity_matrix(size_t{1} << code.n());
    for (size_t i = 0; i < code.l(); i++) {
        PauliVec s = code.generator(i);
        Matrix term = i_power(-nu(s) + (e[i] ? 2 : 0)) * pauli_matrix(format_pauli(s));
        pi = Complex(0.5, 0) * (identity_matrix(pi.dim) + term) * pi;
    }
    return pi;
}

}  // namespace

TEST(validate_code, bell_pair_is_valid) {
    auto code = code_from_strings({"XX", "ZZ"});
    ASSERT_EQ(code.n(), 2u);
    ASSERT_EQ(code.l(), 2u);
    ASSERT_EQ(code.k(), 0u);
}

TEST(validate_code, anticommuting_rows) {
    try {
        code_from_strings({"X", "Z"});
        FAIL() << "expected a validation error";
    } catch (const CodeValidationError &e) {
        ASSERT_EQ(e.kind(), CodeValidationError::Kind::non_commuting_pair);
        ASSERT_EQ(e.row_a(), 0u);
        ASSERT_EQ(e.row_b(), 1u);
    }
}

TEST(validate_code, dependent_rows) {
    try {
        code_from_strings({"XX", "XX"});
        FAIL() << "expected a validation error";
    } catch (const CodeValidationError &e) {
        ASSERT_EQ(e.kind(), CodeValidationError::Kind::dependent_rows);
        ASSERT_EQ(e.row_a(), 1u);
    }
}

TEST(validate_code, odd_columns) {
    try {
        validate_code(BitMatrix(3));
        FAIL() << "expected a validation error";
    } catch (const CodeValidationError &e) {
        ASSERT_EQ(e.kind(), CodeValidationError::Kind::odd_column_count);
    }
}

TEST(validate_code, bad_logicals) {
    auto code = library_code("five_qubit");
    ASSERT_THROW(code.with_logicals({parse_pauli("XIIII"), parse_pauli("ZZZZZ")}), CodeValidationError);
    ASSERT_THROW(code.with_logicals({parse_pauli("XXXXX"), parse_pauli("XXXXX")}), CodeValidationError);
    ASSERT_THROW(code.with_logicals({parse_pauli("XXXX"), parse_pauli("ZZZZ")}), CodeValidationError);
}

TEST(syndrome_shift, stabilizer_elements_have_zero_syndrome) {
    Rng rng(31);
    auto code = library_code("five_qubit");
    for (int trial = 0; trial < 50; trial++) {
        PauliVec s(5);
        for (size_t i = 0; i < code.l(); i++) {
            if (rng() >> 63) {
                s += code.generator(i);
            }
        }
        ASSERT_TRUE(syndrome_shift(s, code).none());
    }
}

TEST(syndrome_shift, bell_pair_x_on_first_qubit) {
    ASSERT_EQ(syndrome_shift(parse_pauli("XI"), library_code("bell_pair")), BitVec::from_string("01"));
}

TEST(syndrome_shift, five_qubit_single_z_matches_dense_projection) {
    auto code = library_code("five_qubit");
    PauliVec z = parse_pauli("ZIIII");
    Syndrome e = syndrome_shift(z, code);
    ASSERT_TRUE(e.any());
    Matrix pz = pauli_matrix("ZIIII");
    // Z maps the syndrome-0 space onto the syndrome-e space.
    Matrix moved = pz * projector_matrix(code, Syndrome(4)) * pz;
    ASSERT_TRUE(approx_equal(moved, projector_matrix(code, e), 1e-12));
}

TEST(syndrome_shift, constant_on_dual_cosets) {
    Rng rng(32);
    for (int trial = 0; trial < 100; trial++) {
        auto code = random_code(6, 1 + rng() % 3, rng);
        PauliVec s = parse_pauli(random_pauli_string(6, rng));
        PauliVec c(6);
        for (const auto &row : code.dual().rows()) {
            if (rng() >> 63) {
                c += PauliVec(row);
            }
        }
        ASSERT_EQ(syndrome_shift(s + c, code), syndrome_shift(s, code));
    }
}

TEST(eigenvalue_exponent, examples) {
    auto bell = library_code("bell_pair");
    ASSERT_EQ(eigenvalue_exponent(bell, Syndrome(2), BitVec(2)).total(), 0);
    auto y = code_from_strings({"Y"});
    ASSERT_EQ(eigenvalue_exponent(y, Syndrome(1), BitVec::from_string("1")).total(), 1);
    ASSERT_EQ(eigenvalue_exponent(bell, Syndrome(2), BitVec::from_string("11")).total(), 0);
}

TEST(eigenvalue_exponent, matches_dense_projectors) {
    Rng rng(33);
    for (int trial = 0; trial < 40; trial++) {
        size_t n = 1 + rng() % 3;
        auto code = random_code(n, rng() % (n + 1), rng);
        for (uint64_t em = 0; em < (uint64_t{1} << code.l()); em++) {
            Syndrome e(code.l());
            for (size_t i = 0; i < code.l(); i++) {
                e.set(i, (em >> i) & 1);
            }
            Matrix pi = projector_matrix(code, e);
            for (uint64_t xm = 0; xm < (uint64_t{1} << code.l()); xm++) {
                BitVec x(code.l());
                for (size_t i = 0; i < code.l(); i++) {
                    x.set(i, (xm >> i) & 1);
                }
                PauliVec prod(code.generators().combine_rows(x));
                auto ev = eigenvalue_exponent(code, e, x);
                Matrix lhs = pauli_matrix(format_pauli(prod)) * pi;
                ASSERT_TRUE(approx_equal(lhs, i_power(ev.total()) * pi, 1e-12));
            }
        }
    }
}

TEST(dual_basis, bell_pair_dual_equals_code) {
    auto code = library_code("bell_pair");
    auto d = dual_basis(code);
    ASSERT_EQ(d.num_rows(), 2u);
    for (const auto &row : d.rows()) {
        ASSERT_TRUE(code.in_stabilizer(PauliVec(row)));
    }
}

TEST(dual_basis, five_qubit_contains_logicals) {
    auto code = library_code("five_qubit");
    auto d = dual_basis(code);
    ASSERT_EQ(d.num_rows(), 6u);
    SpanReducer span(10);
    for (const auto &row : d.rows()) {
        span.insert(row);
    }
    ASSERT_TRUE(span.contains(code.logical()->x.bits()));
    ASSERT_TRUE(span.contains(code.logical()->z.bits()));
}

TEST(dual_basis, empty_code_has_full_dual) {
    auto code = validate_code(BitMatrix(6));
    ASSERT_EQ(dual_basis(code).num_rows(), 6u);
    ASSERT_EQ(rank(dual_basis(code)), 6u);
}

TEST(logical_pair, satisfies_definition) {
    for (const char *name : {"four_one_two", "five_qubit"}) {
        auto code = library_code(name);
        auto pair = logical_pair(code);
        ASSERT_TRUE(code.in_dual(pair.x));
        ASSERT_TRUE(code.in_dual(pair.z));
        ASSERT_FALSE(code.in_stabilizer(pair.x));
        ASSERT_FALSE(code.in_stabilizer(pair.z));
        ASSERT_FALSE(commutes(pair.x, pair.z));
    }
    Rng rng(34);
    for (int trial = 0; trial < 50; trial++) {
        auto code = random_code(2 + rng() % 6, 1, rng);
        auto pair = logical_pair(code);
        ASSERT_TRUE(code.in_dual(pair.x) && code.in_dual(pair.z));
        ASSERT_FALSE(commutes(pair.x, pair.z));
    }
}

TEST(logical_pair, needs_one_logical_qubit) {
    ASSERT_THROW(logical_pair(library_code("bell_pair")), CodeDimensionError);
}

TEST(min_distance, library_codes) {
    ASSERT_EQ(min_distance(library_code("bell_pair")), kInfiniteDistance);
    ASSERT_EQ(min_distance(library_code("five_qubit")), 3u);
    ASSERT_EQ(min_distance(library_code("four_one_two")), 2u);
}

TEST(min_distance, matches_brute_force_on_small_codes) {
    Rng rng(35);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 1 + rng() % 4;
        auto code = random_code(n, rng() % (n + 1), rng);
        size_t best = kInfiniteDistance;
        for (const auto &p : all_paulis(n)) {
            if (code.in_dual(p) && !code.in_stabilizer(p)) {
                best = std::min(best, p.weight());
            }
        }
        ASSERT_EQ(min_distance(code), best);
    }
}

TEST(min_distance, size_guard) {
    Rng rng(36);
    auto code = random_code(14, 1, rng);
    ASSERT_THROW(min_distance(code), SizeGuardError);
}

TEST(is_erasure_correctable, empty_set) {
    ASSERT_TRUE(is_erasure_correctable(library_code("five_qubit"), ErasurePattern(5)));
}

TEST(is_erasure_correctable, five_qubit_small_and_large_sets) {
    auto code = library_code("five_qubit");
    size_t small_sets = 0;
    size_t bad_triples = 0;
    for (uint64_t m = 0; m < 32; m++) {
        auto s = ErasurePattern::from_mask(m, 5);
        if (s.size() <= 2) {
            small_sets++;
            ASSERT_TRUE(is_erasure_correctable(code, s));
        }
        if (s.size() == 3 && !is_erasure_correctable(code, s)) {
            bad_triples++;
        }
    }
    ASSERT_EQ(small_sets, 16u);
    ASSERT_GT(bad_triples, 0u);
}

TEST(is_erasure_correctable, four_one_two_single_erasures) {
    auto code = library_code("four_one_two");
    for (size_t q = 0; q < 4; q++) {
        ASSERT_TRUE(is_erasure_correctable(code, ErasurePattern(4, {q})));
    }
}

TEST(is_erasure_correctable, rank_test_matches_definition) {
    Rng rng(37);
    for (int trial = 0; trial < 40; trial++) {
        size_t n = 2 + rng() % 5;
        auto code = random_code(n, rng() % 3 % (n + 1), rng);
        for (uint64_t m = 0; m < (uint64_t{1} << n); m++) {
            auto s = ErasurePattern::from_mask(m, n);
            ASSERT_EQ(is_erasure_correctable(code, s), correctable_by_enumeration(code, s));
        }
    }
}

TEST(is_erasure_correctable, distance_bound_on_library_codes) {
    for (const auto &name : library_code_names()) {
        auto code = library_code(name);
        size_t d = min_distance(code);
        for (uint64_t m = 0; m < (uint64_t{1} << code.n()); m++) {
            auto s = ErasurePattern::from_mask(m, code.n());
            if (d == kInfiniteDistance || s.size() + 1 <= d) {
                ASSERT_TRUE(is_erasure_correctable(code, s)) << name;
            }
        }
    }
}

TEST(erasure_decode, zero_syndrome) {
    auto code = library_code("five_qubit");
    auto h = erasure_decode(code, Syndrome(4), ErasurePattern(5, {1, 3}));
    ASSERT_TRUE(h.has_value());
    ASSERT_TRUE(syndrome_shift(*h, code).none());
    ASSERT_TRUE(supported_in(*h, ErasurePattern(5, {1, 3})));
}

TEST(erasure_decode, recovers_error_up_to_stabilizer) {
    auto code = library_code("five_qubit");
    PauliVec actual = parse_pauli("IIXII");
    ErasurePattern s(5, {2});
    auto h = erasure_decode(code, syndrome_shift(actual, code), s);
    ASSERT_TRUE(h.has_value());
    ASSERT_TRUE(code.in_stabilizer(*h + actual));
}

TEST(erasure_decode, uncorrectable_set_is_detected) {
    auto code = library_code("five_qubit");
    for (uint64_t m = 0; m < 32; m++) {
        auto s = ErasurePattern::from_mask(m, 5);
        if (!is_erasure_correctable(code, s)) {
            ASSERT_FALSE(erasure_decode(code, Syndrome(4), s).has_value());
        }
    }
}

TEST(erasure_decode, inconsistent_syndrome) {
    auto code = library_code("five_qubit");
    ASSERT_THROW(erasure_decode(code, syndrome_shift(parse_pauli("XIIII"), code), ErasurePattern(5, {3})),
                 InconsistentSyndrome);
}

TEST(erasure_decode, every_supported_error_is_corrected) {
    Rng rng(38);
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 3 + rng() % 6;
        auto code = random_code(n, 1, rng);
        auto s = ErasurePattern::from_mask(rng() & ((uint64_t{1} << n) - 1), n);
        PauliVec actual(n);
        for (size_t q : s.qubits()) {
            actual.set_qubit(q, rng() >> 63, rng() >> 63);
        }
        auto h = erasure_decode(code, syndrome_shift(actual, code), s);
        ASSERT_EQ(h.has_value(), is_erasure_correctable(code, s));
        if (h) {
            ASSERT_EQ(syndrome_shift(*h, code), syndrome_shift(actual, code));
            ASSERT_TRUE(supported_in(*h, s));
            ASSERT_TRUE(code.in_stabilizer(*h + actual));
        }
    }
}

TEST(ml_decode, zero_syndrome_gives_identity_coset) {
    auto code = library_code("five_qubit");
    ASSERT_TRUE(code.in_stabilizer(ml_decode_depolarizing(code, Syndrome(4), 0.05)));
}

TEST(ml_decode, single_qubit_errors_on_five_qubit_code) {
    auto code = library_code("five_qubit");
    for (size_t q = 0; q < 5; q++) {
        for (char op : {'X', 'Y', 'Z'}) {
            PauliVec err = PauliVec::single(5, q, op);
            auto h = ml_decode_depolarizing(code, syndrome_shift(err, code), 0.05);
            ASSERT_TRUE(code.in_stabilizer(h + err));
            ASSERT_EQ(h, err);
        }
    }
}

TEST(ml_decode, tie_between_cosets_picks_smallest_representative) {
    // Syndrome 1 of {ZZ}: XI and IX are equally likely and differ by the logical XX.
    auto code = code_from_strings({"ZZ"});
    auto h = ml_decode_depolarizing(code, BitVec::from_string("1"), 0.1);
    ASSERT_EQ(h, parse_pauli("IX"));
}

TEST(ml_decode, matches_brute_force_over_all_paulis) {
    Rng rng(39);
    std::vector<StabilizerCode> codes = {library_code("five_qubit"), library_code("four_one_two")};
    for (int i = 0; i < 12; i++) {
        size_t n = 2 + rng() % 3;
        codes.push_back(random_code(n, 1 + rng() % 2 % n, rng));
    }
    for (const auto &code : codes) {
        const double rate = 0.07;
        std::map<std::string, std::map<std::string, double>> mass;
        for (const auto &p : all_paulis(code.n())) {
            std::string syn = syndrome_shift(p, code).str();
            std::string coset = code.reduce_mod_stabilizer(p).bits().str();
            mass[syn][coset] += depolarizing_probability(p, rate);
        }
        for (const auto &[syn, cosets] : mass) {
            double best = 0;
            for (const auto &[c, m] : cosets) {
                best = std::max(best, m);
            }
            auto h = ml_decode_depolarizing(code, BitVec::from_string(syn), rate);
            ASSERT_EQ(syndrome_shift(h, code).str(), syn);
            double chosen = cosets.at(code.reduce_mod_stabilizer(h).bits().str());
            ASSERT_NEAR(chosen, best, 1e-12 * best);
        }
    }
}

TEST(ml_decode, size_guard) {
    Rng rng(40);
    auto code = random_code(11, 1, rng);
    ASSERT_THROW(ml_decode_depolarizing(code, Syndrome(10), 0.1), SizeGuardError);
}

TEST(random_code, all_logical_and_deterministic) {
    Rng a(41);
    ASSERT_EQ(random_code(4, 4, a).l(), 0u);
    Rng r1(42);
    Rng r2(42);
    ASSERT_EQ(random_code(5, 1, r1).generators(), random_code(5, 1, r2).generators());
}

TEST(random_code, many_codes_validate) {
    Rng rng(43);
    for (int i = 0; i < 100; i++) {
        auto code = random_code(8, 1, rng);
        ASSERT_EQ(code.l(), 7u);
        ASSERT_NO_THROW(validate_code(code.generators()));
    }
}

TEST(library_code, contents) {
    auto bell = library_code("bell_pair");
    ASSERT_EQ(format_pauli(bell.generator(0)), "XX");
    ASSERT_EQ(format_pauli(bell.generator(1)), "ZZ");
    auto five = library_code("five_qubit");
    for (size_t i = 0; i < 4; i++) {
        std::string row = format_pauli(five.generator(i));
        std::string expected = "XZZXI";
        std::rotate(expected.rbegin(), expected.rbegin() + static_cast<long>(i), expected.rend());
        ASSERT_EQ(row, expected);
    }
    auto four = library_code("four_one_two");
    ASSERT_EQ(format_pauli(four.logical()->x), "XIXI");
    ASSERT_EQ(format_pauli(four.logical()->z), "ZZII");
    ASSERT_THROW(library_code("steane"), std::invalid_argument);
}

TEST(classify_residual, three_classes) {
    auto code = library_code("five_qubit");
    ASSERT_EQ(classify_residual(code, code.generator(0)), ResidualClass::stabilizer);
    ASSERT_EQ(classify_residual(code, parse_pauli("XXXXX")), ResidualClass::logical);
    ASSERT_EQ(classify_residual(code, parse_pauli("XIIII")), ResidualClass::not_in_dual);
}
