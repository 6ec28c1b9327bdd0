#include "teleqec/stabilizer_code.h"

#include <bit>
#include <cmath>

namespace teleqec {

namespace {

constexpr uint64_t kEvenBits = 0x5555555555555555ULL;

// Packs a vector of at most 64 bits into one word, bit i at position i.
uint64_t to_word(const BitVec &v) {
    return v.words().empty() ? 0 : v.words()[0];
}

BitVec from_word(uint64_t w, size_t num_bits) {
    BitVec v(num_bits);
    if (num_bits > 0) {
        v.mutable_words()[0] = w;
    }
    return v;
}

size_t pauli_weight(uint64_t v) {
    return std::popcount((v | (v >> 1)) & kEvenBits);
}

// True when a precedes b in bit-0-first lexicographic order.
bool lex_less(uint64_t a, uint64_t b) {
    uint64_t diff = a ^ b;
    if (!diff) {
        return false;
    }
    uint64_t lowest = diff & (~diff + 1);
    return (a & lowest) == 0;
}

BitVec all_columns(size_t n) {
    BitVec v(2 * n);
    for (auto &w : v.mutable_words()) {
        w = ~uint64_t{0};
    }
    if ((2 * n) % 64) {
        v.mutable_words().back() &= (uint64_t{1} << ((2 * n) % 64)) - 1;
    }
    return v;
}

}  // namespace

StabilizerCode validate_code(const BitMatrix &q) {
    using Kind = CodeValidationError::Kind;
    if (q.num_cols() % 2 != 0) {
        throw CodeValidationError(Kind::odd_column_count, "generator matrix needs an even number of columns");
    }
    StabilizerCode code;
    code.n_ = q.num_cols() / 2;
    code.stabilizer_span_ = SpanReducer(q.num_cols());
    for (size_t i = 0; i < q.num_rows(); i++) {
        if (!code.stabilizer_span_.insert(q.row(i))) {
            throw CodeValidationError(
                Kind::dependent_rows, "generator row " + std::to_string(i) + " depends on earlier rows", i);
        }
    }
    for (size_t i = 0; i < q.num_rows(); i++) {
        for (size_t j = i + 1; j < q.num_rows(); j++) {
            if (symplectic_parity(q.row(i), q.row(j))) {
                throw CodeValidationError(Kind::non_commuting_pair,
                                          "generator rows " + std::to_string(i) + " and " + std::to_string(j) +
                                              " anticommute",
                                          i, j);
            }
        }
    }
    code.generators_ = q;
    code.check_ = BitMatrix(q.num_cols());
    for (const auto &row : q.rows()) {
        code.check_.push_back(swap_pairs(row));
    }
    code.dual_ = kernel(code.check_);
    SpanReducer extended = code.stabilizer_span_;
    for (const auto &d : code.dual_.rows()) {
        if (extended.insert(d)) {
            code.logical_basis_.push_back(d);
        }
    }
    return code;
}

StabilizerCode code_from_strings(const std::vector<std::string> &rows) {
    if (rows.empty()) {
        throw std::invalid_argument("need at least one row to infer the qubit count");
    }
    BitMatrix q(2 * rows.front().size());
    for (const auto &r : rows) {
        q.push_back(parse_pauli(r).bits());
    }
    return validate_code(q);
}

StabilizerCode StabilizerCode::with_logicals(LogicalPair pair) const {
    using Kind = CodeValidationError::Kind;
    if (pair.x.num_qubits() != n_ || pair.z.num_qubits() != n_) {
        throw CodeValidationError(Kind::bad_logical, "logical operators must act on the code's qubits");
    }
    if (!in_dual(pair.x) || !in_dual(pair.z)) {
        throw CodeValidationError(Kind::bad_logical, "logical operators must commute with every generator");
    }
    if (commutes(pair.x, pair.z)) {
        throw CodeValidationError(Kind::bad_logical, "logical X and Z must anticommute");
    }
    StabilizerCode out = *this;
    out.logical_ = std::move(pair);
    return out;
}

bool StabilizerCode::in_stabilizer(const PauliVec &p) const {
    return stabilizer_span_.contains(p.bits());
}

bool StabilizerCode::in_dual(const PauliVec &p) const {
    for (const auto &row : generators_.rows()) {
        if (symplectic_parity(p.bits(), row)) {
            return false;
        }
    }
    return true;
}

PauliVec StabilizerCode::reduce_mod_stabilizer(const PauliVec &p) const {
    return PauliVec(stabilizer_span_.reduce(p.bits()));
}

ErasurePattern::ErasurePattern(size_t num_qubits, std::initializer_list<size_t> qubits) : mask_(num_qubits) {
    for (size_t q : qubits) {
        mask_.set(q, true);
    }
}

ErasurePattern ErasurePattern::from_mask(uint64_t mask, size_t num_qubits) {
    ErasurePattern out(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        if ((mask >> q) & 1) {
            out.insert(q);
        }
    }
    return out;
}

std::vector<size_t> ErasurePattern::qubits() const {
    std::vector<size_t> out;
    for (size_t q = 0; q < mask_.size(); q++) {
        if (mask_[q]) {
            out.push_back(q);
        }
    }
    return out;
}

BitVec ErasurePattern::column_mask() const {
    BitVec cols(2 * mask_.size());
    for (size_t q = 0; q < mask_.size(); q++) {
        if (mask_[q]) {
            cols.set(2 * q, true);
            cols.set(2 * q + 1, true);
        }
    }
    return cols;
}

ErasurePattern &ErasurePattern::operator|=(const ErasurePattern &other) {
    if (other.num_qubits() != num_qubits()) {
        throw std::invalid_argument("erasure patterns cover different qubit counts");
    }
    for (size_t q = 0; q < mask_.size(); q++) {
        if (other.mask_[q]) {
            mask_.set(q, true);
        }
    }
    return *this;
}

Syndrome syndrome_shift(const PauliVec &s, const StabilizerCode &code) {
    if (s.num_qubits() != code.n()) {
        throw std::invalid_argument("Pauli product size does not match the code");
    }
    Syndrome out(code.l());
    for (size_t i = 0; i < code.l(); i++) {
        if (symplectic_parity(s.bits(), code.generators().row(i))) {
            out.set(i, true);
        }
    }
    return out;
}

PauliVec syndrome_representative(const StabilizerCode &code, const Syndrome &e) {
    if (e.size() != code.l()) {
        throw std::invalid_argument("syndrome length does not match the code");
    }
    auto s = solve_supported(code.check_matrix(), e, all_columns(code.n()));
    if (!s) {
        throw std::logic_error("independent generators admit every syndrome");
    }
    return PauliVec(std::move(*s));
}

EigenvalueExponent eigenvalue_exponent(const StabilizerCode &code, const Syndrome &e, const BitVec &x) {
    if (e.size() != code.l() || x.size() != code.l()) {
        throw std::invalid_argument("syndrome and coefficient vectors need one bit per generator");
    }
    PhasedPauli product{PauliVec(code.n()), 0};
    int nu_sum = 0;
    for (size_t i = 0; i < code.l(); i++) {
        if (x[i]) {
            PauliVec g = code.generator(i);
            product = multiply(product, {g, 0});
            nu_sum += nu(g);
        }
    }
    EigenvalueExponent out;
    out.sign_bit = x.dot(e) ? 1 : 0;
    out.i_exponent = (nu_sum - product.phase_exp) & 3;
    return out;
}

BitMatrix dual_basis(const StabilizerCode &code) {
    return code.dual();
}

LogicalPair logical_pair(const StabilizerCode &code) {
    if (code.k() != 1) {
        throw CodeDimensionError("logical pair needs k = 1, code has k = " + std::to_string(code.k()));
    }
    const auto &d = code.dual();
    for (size_t i = 0; i < d.num_rows(); i++) {
        for (size_t j = i + 1; j < d.num_rows(); j++) {
            if (symplectic_parity(d.row(i), d.row(j))) {
                return LogicalPair{PauliVec(d.row(i)), PauliVec(d.row(j))};
            }
        }
    }
    throw std::logic_error("dual of a k = 1 code has no hyperbolic pair");
}

size_t min_distance(const StabilizerCode &code) {
    if (2 * code.n() > kMaxDistanceColumns) {
        throw SizeGuardError("exhaustive distance search limited to 2n <= " + std::to_string(kMaxDistanceColumns));
    }
    if (code.k() == 0) {
        return kInfiniteDistance;
    }
    // Gray-code walk over C^perp with the logical coefficients in the low bits,
    // so an element lies outside C exactly when those bits are not all zero.
    std::vector<uint64_t> basis;
    for (const auto &v : code.logical_basis()) {
        basis.push_back(to_word(v));
    }
    for (const auto &v : code.generators().rows()) {
        basis.push_back(to_word(v));
    }
    const size_t logical_bits = code.logical_basis().size();
    const uint64_t logical_mask = (uint64_t{1} << logical_bits) - 1;
    const uint64_t count = uint64_t{1} << basis.size();
    uint64_t v = 0;
    uint64_t coeffs = 0;
    size_t best = kInfiniteDistance;
    for (uint64_t i = 1; i < count; i++) {
        size_t flip = std::countr_zero(i);
        v ^= basis[flip];
        coeffs ^= uint64_t{1} << flip;
        if (coeffs & logical_mask) {
            size_t w = pauli_weight(v);
            if (w < best) {
                best = w;
            }
        }
    }
    return best;
}

bool is_erasure_correctable(const StabilizerCode &code, const ErasurePattern &s) {
    if (s.num_qubits() != code.n()) {
        throw std::invalid_argument("erasure pattern size does not match the code");
    }
    if (s.empty()) {
        return true;
    }
    // The subspace of span(rows) supported in s is the kernel of the map onto
    // the columns outside s, so its dimension is rows - rank(restricted rows).
    BitVec keep = s.column_mask() ^ all_columns(code.n());
    size_t in_c = code.l() - rank(code.generators().masked_columns(keep));
    size_t in_dual = code.dual().num_rows() - rank(code.dual().masked_columns(keep));
    return in_c == in_dual;
}

std::optional<PauliVec> erasure_decode(const StabilizerCode &code, const Syndrome &e, const ErasurePattern &s) {
    if (e.size() != code.l()) {
        throw std::invalid_argument("syndrome length does not match the code");
    }
    if (!is_erasure_correctable(code, s)) {
        return std::nullopt;
    }
    auto solution = solve_supported(code.check_matrix(), e, s.column_mask());
    if (!solution) {
        throw InconsistentSyndrome("no error supported on the erased qubits produces syndrome " + e.str());
    }
    return PauliVec(std::move(*solution));
}

PauliVec ml_decode_depolarizing(const StabilizerCode &code, const Syndrome &e, double per_qubit_rate) {
    const size_t n = code.n();
    if (n > kMaxMlDecodeQubits) {
        throw SizeGuardError("exhaustive coset decoding limited to n <= " + std::to_string(kMaxMlDecodeQubits));
    }
    if (e.size() != code.l()) {
        throw std::invalid_argument("syndrome length does not match the code");
    }
    if (per_qubit_rate < 0 || per_qubit_rate > 1) {
        throw std::invalid_argument("depolarizing rate must lie in [0, 1]");
    }
    const PauliVec particular = syndrome_representative(code, e);

    std::vector<double> weight_prob(n + 1);
    for (size_t w = 0; w <= n; w++) {
        weight_prob[w] = std::pow(per_qubit_rate / 3, static_cast<double>(w)) *
                         std::pow(1 - per_qubit_rate, static_cast<double>(n - w));
    }
    std::vector<uint64_t> logical;
    for (const auto &v : code.logical_basis()) {
        logical.push_back(to_word(v));
    }
    std::vector<uint64_t> stabilizers;
    for (const auto &v : code.generators().rows()) {
        stabilizers.push_back(to_word(v));
    }

    const uint64_t base = to_word(particular.bits());
    const uint64_t num_cosets = uint64_t{1} << logical.size();
    const uint64_t coset_size = uint64_t{1} << stabilizers.size();
    bool have_best = false;
    double best_total = 0;
    uint64_t best_rep = 0;
    uint64_t coset_start = base;
    for (uint64_t ci = 0; ci < num_cosets; ci++) {
        if (ci > 0) {
            coset_start ^= logical[std::countr_zero(ci)];
        }
        uint64_t v = coset_start;
        double total = 0;
        uint64_t rep = v;
        double rep_prob = -1;
        for (uint64_t si = 0; si < coset_size; si++) {
            if (si > 0) {
                v ^= stabilizers[std::countr_zero(si)];
            }
            double prob = weight_prob[pauli_weight(v)];
            total += prob;
            if (prob > rep_prob || (prob == rep_prob && lex_less(v, rep))) {
                rep_prob = prob;
                rep = v;
            }
        }
        double scale = std::max(total, best_total);
        bool tied = have_best && std::abs(total - best_total) <= 1e-12 * scale;
        if (!have_best || (!tied && total > best_total) || (tied && lex_less(rep, best_rep))) {
            have_best = true;
            best_total = total;
            best_rep = rep;
        }
    }
    return PauliVec(from_word(best_rep, 2 * n));
}

DepolarizingDecoder::DepolarizingDecoder(const StabilizerCode &code, double per_qubit_rate)
    : code_(&code), rate_(per_qubit_rate) {
    if (code.n() > kMaxMlDecodeQubits) {
        throw SizeGuardError("exhaustive coset decoding limited to n <= " + std::to_string(kMaxMlDecodeQubits));
    }
}

const PauliVec &DepolarizingDecoder::decode(const Syndrome &e) {
    auto key = e.str();
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        it = cache_.emplace(std::move(key), ml_decode_depolarizing(*code_, e, rate_)).first;
    }
    return it->second;
}

StabilizerCode random_code(size_t n, size_t k, Rng &rng) {
    if (k > n) {
        throw std::invalid_argument("random code needs k <= n");
    }
    const size_t l = n - k;
    BitMatrix rows(2 * n);
    SpanReducer span(2 * n);
    while (rows.num_rows() < l) {
        BitMatrix swapped(2 * n);
        for (const auto &r : rows.rows()) {
            swapped.push_back(swap_pairs(r));
        }
        BitMatrix dual = kernel(swapped);
        BitVec candidate(2 * n);
        for (const auto &d : dual.rows()) {
            if (rng() >> 63) {
                candidate ^= d;
            }
        }
        if (span.insert(candidate)) {
            rows.push_back(std::move(candidate));
        }
    }
    return validate_code(rows);
}

std::vector<std::string> library_code_names() {
    return {"bell_pair", "four_one_two", "five_qubit"};
}

StabilizerCode library_code(std::string_view name) {
    if (name == "bell_pair") {
        return code_from_strings({"XX", "ZZ"});
    }
    if (name == "four_one_two") {
        return code_from_strings({"XXXX", "ZZZZ", "IIXX"})
            .with_logicals(LogicalPair{parse_pauli("XIXI"), parse_pauli("ZZII")});
    }
    if (name == "five_qubit") {
        return code_from_strings({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"})
            .with_logicals(LogicalPair{parse_pauli("XXXXX"), parse_pauli("ZZZZZ")});
    }
    throw std::invalid_argument("unknown library code '" + std::string(name) + "'");
}

ResidualClass classify_residual(const StabilizerCode &code, const PauliVec &r) {
    if (!code.in_dual(r)) {
        return ResidualClass::not_in_dual;
    }
    return code.in_stabilizer(r) ? ResidualClass::stabilizer : ResidualClass::logical;
}

}  // namespace teleqec
