#include "teleqec/gf2.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace teleqec {

namespace {

constexpr uint64_t kEvenBits = 0x5555555555555555ULL;

size_t word_count(size_t bits) {
    return (bits + 63) >> 6;
}

void check_same_size(const BitVec &a, const BitVec &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(
            "bit vector length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
}

}  // namespace

BitVec::BitVec(size_t num_bits) : num_bits_(num_bits), words_(word_count(num_bits), 0) {
}

BitVec BitVec::from_bits(std::initializer_list<int> bits) {
    BitVec v(bits.size());
    size_t i = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("bit values must be 0 or 1");
        }
        v.set(i++, b == 1);
    }
    return v;
}

BitVec BitVec::from_string(std::string_view text) {
    BitVec v(text.size());
    for (size_t i = 0; i < text.size(); i++) {
        if (text[i] == '1') {
            v.set(i, true);
        } else if (text[i] != '0') {
            throw std::invalid_argument("bit string has a non-binary character at position " + std::to_string(i));
        }
    }
    return v;
}

bool BitVec::get(size_t i) const {
    if (i >= num_bits_) {
        throw std::out_of_range("bit index " + std::to_string(i) + " out of range");
    }
    return (*this)[i];
}

void BitVec::set(size_t i, bool value) {
    if (i >= num_bits_) {
        throw std::out_of_range("bit index " + std::to_string(i) + " out of range");
    }
    uint64_t mask = uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void BitVec::flip(size_t i) {
    if (i >= num_bits_) {
        throw std::out_of_range("bit index " + std::to_string(i) + " out of range");
    }
    words_[i >> 6] ^= uint64_t{1} << (i & 63);
}

BitVec &BitVec::operator^=(const BitVec &other) {
    check_same_size(*this, other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    check_same_size(*this, other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

size_t BitVec::popcount() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVec::any() const {
    return std::any_of(words_.begin(), words_.end(), [](uint64_t w) { return w != 0; });
}

bool BitVec::dot(const BitVec &other) const {
    check_same_size(*this, other);
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

size_t BitVec::first_set() const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w]) {
            return (w << 6) + std::countr_zero(words_[w]);
        }
    }
    return num_bits_;
}

std::strong_ordering BitVec::operator<=>(const BitVec &other) const {
    size_t common = std::min(words_.size(), other.words_.size());
    for (size_t w = 0; w < common; w++) {
        uint64_t diff = words_[w] ^ other.words_[w];
        if (diff) {
            uint64_t lowest = diff & (~diff + 1);
            return (words_[w] & lowest) ? std::strong_ordering::greater : std::strong_ordering::less;
        }
    }
    return num_bits_ <=> other.num_bits_;
}

std::string BitVec::str() const {
    std::string out(num_bits_, '0');
    for (size_t i = 0; i < num_bits_; i++) {
        if ((*this)[i]) {
            out[i] = '1';
        }
    }
    return out;
}

BitMatrix::BitMatrix(size_t num_rows, size_t num_cols) : num_cols_(num_cols), rows_(num_rows, BitVec(num_cols)) {
}

BitMatrix::BitMatrix(size_t num_cols, std::vector<BitVec> rows) : num_cols_(num_cols), rows_(std::move(rows)) {
    for (const auto &r : rows_) {
        if (r.size() != num_cols_) {
            throw std::invalid_argument("matrix rows must all have length " + std::to_string(num_cols_));
        }
    }
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<BitVec> parsed;
    for (auto r : rows) {
        parsed.push_back(BitVec::from_string(r));
    }
    size_t cols = parsed.empty() ? 0 : parsed.front().size();
    return BitMatrix(cols, std::move(parsed));
}

void BitMatrix::push_back(BitVec row) {
    if (row.size() != num_cols_) {
        throw std::invalid_argument("row length " + std::to_string(row.size()) + " does not match " +
                                    std::to_string(num_cols_) + " columns");
    }
    rows_.push_back(std::move(row));
}

BitVec BitMatrix::times_transpose(const BitVec &x) const {
    if (x.size() != num_cols_) {
        throw std::invalid_argument("vector length does not match matrix columns");
    }
    BitVec out(rows_.size());
    for (size_t i = 0; i < rows_.size(); i++) {
        if (x.dot(rows_[i])) {
            out.set(i, true);
        }
    }
    return out;
}

BitVec BitMatrix::combine_rows(const BitVec &x) const {
    if (x.size() != rows_.size()) {
        throw std::invalid_argument("coefficient vector length does not match matrix rows");
    }
    BitVec out(num_cols_);
    for (size_t i = 0; i < rows_.size(); i++) {
        if (x[i]) {
            out ^= rows_[i];
        }
    }
    return out;
}

BitMatrix BitMatrix::masked_columns(const BitVec &keep) const {
    BitMatrix out = *this;
    for (auto &r : out.rows_) {
        r &= keep;
    }
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(num_cols_, rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        for (size_t c = 0; c < num_cols_; c++) {
            if (rows_[r][c]) {
                out.set(c, r, true);
            }
        }
    }
    return out;
}

std::string BitMatrix::str() const {
    std::string out;
    for (const auto &r : rows_) {
        out += r.str();
        out += '\n';
    }
    return out;
}

RrefResult rref(const BitMatrix &m) {
    RrefResult result{m, 0, {}};
    auto &rows = result.reduced;
    size_t next = 0;
    for (size_t col = 0; col < m.num_cols() && next < m.num_rows(); col++) {
        size_t pivot = next;
        while (pivot < m.num_rows() && !rows.get(pivot, col)) {
            pivot++;
        }
        if (pivot == m.num_rows()) {
            continue;
        }
        std::swap(rows.row(pivot), rows.row(next));
        for (size_t r = 0; r < m.num_rows(); r++) {
            if (r != next && rows.get(r, col)) {
                rows.row(r) ^= rows.row(next);
            }
        }
        result.pivots.push_back(col);
        next++;
    }
    result.rank = next;
    return result;
}

size_t rank(std::span<const BitVec> rows, size_t num_cols) {
    SpanReducer reducer(num_cols);
    for (const auto &r : rows) {
        reducer.insert(r);
    }
    return reducer.dimension();
}

size_t rank(const BitMatrix &m) {
    return rank(m.rows(), m.num_cols());
}

BitMatrix kernel(const BitMatrix &m) {
    auto r = rref(m);
    std::vector<bool> is_pivot(m.num_cols(), false);
    for (size_t p : r.pivots) {
        is_pivot[p] = true;
    }
    BitMatrix basis(m.num_cols());
    for (size_t free = 0; free < m.num_cols(); free++) {
        if (is_pivot[free]) {
            continue;
        }
        BitVec v(m.num_cols());
        v.set(free, true);
        for (size_t i = 0; i < r.rank; i++) {
            if (r.reduced.get(i, free)) {
                v.set(r.pivots[i], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitVec> solve_supported(const BitMatrix &a, const BitVec &y, const BitVec &allowed) {
    if (y.size() != a.num_rows()) {
        throw std::invalid_argument("right-hand side length must equal the number of equations");
    }
    if (allowed.size() != a.num_cols()) {
        throw std::invalid_argument("allowed mask length must equal the number of unknowns");
    }
    // Augmented system: one row per equation, one column per allowed unknown, plus the rhs.
    std::vector<size_t> vars;
    for (size_t c = 0; c < a.num_cols(); c++) {
        if (allowed[c]) {
            vars.push_back(c);
        }
    }
    size_t rhs = vars.size();
    BitMatrix aug(a.num_rows(), vars.size() + 1);
    for (size_t r = 0; r < a.num_rows(); r++) {
        for (size_t j = 0; j < vars.size(); j++) {
            if (a.get(r, vars[j])) {
                aug.set(r, j, true);
            }
        }
        if (y[r]) {
            aug.set(r, rhs, true);
        }
    }
    auto reduced = rref(aug);
    BitVec x(a.num_cols());
    for (size_t i = 0; i < reduced.rank; i++) {
        size_t p = reduced.pivots[i];
        if (p == rhs) {
            return std::nullopt;
        }
        if (reduced.reduced.get(i, rhs)) {
            x.set(vars[p], true);
        }
    }
    return x;
}

bool SpanReducer::insert(const BitVec &v) {
    BitVec r = reduce(v);
    size_t p = r.first_set();
    if (p == r.size()) {
        return false;
    }
    for (auto &b : basis_) {
        if (b[p]) {
            b ^= r;
        }
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    basis_.insert(basis_.begin() + pos, std::move(r));
    return true;
}

BitVec SpanReducer::reduce(BitVec v) const {
    if (v.size() != num_cols_) {
        throw std::invalid_argument("vector length does not match span width");
    }
    for (size_t i = 0; i < basis_.size(); i++) {
        if (v[pivots_[i]]) {
            v ^= basis_[i];
        }
    }
    return v;
}

int SymplecticForm::entry(size_t r, size_t c) const {
    if (r >= 2 * n || c >= 2 * n) {
        throw std::out_of_range("symplectic form index out of range");
    }
    if ((r >> 1) != (c >> 1)) {
        return 0;
    }
    bool r_is_b = r & 1;
    bool c_is_b = c & 1;
    if (r_is_b && !c_is_b) {
        return 1;
    }
    if (!r_is_b && c_is_b && kind == FormKind::full) {
        return -1;
    }
    return 0;
}

int64_t symplectic_product_signed(const BitVec &s, const BitVec &t, FormKind kind) {
    check_same_size(s, t);
    if (s.size() % 2 != 0) {
        throw std::invalid_argument("symplectic vectors must have even length");
    }
    auto sw = s.words();
    auto tw = t.words();
    int64_t bc = 0;
    int64_t ad = 0;
    for (size_t w = 0; w < sw.size(); w++) {
        uint64_t sa = sw[w] & kEvenBits;
        uint64_t sb = (sw[w] >> 1) & kEvenBits;
        uint64_t ta = tw[w] & kEvenBits;
        uint64_t tb = (tw[w] >> 1) & kEvenBits;
        bc += std::popcount(sb & ta);
        ad += std::popcount(sa & tb);
    }
    return kind == FormKind::full ? bc - ad : bc;
}

int symplectic_product(const BitVec &s, const BitVec &t, const SymplecticForm &form, Arithmetic arithmetic) {
    if (s.size() != 2 * form.n || t.size() != 2 * form.n) {
        throw std::invalid_argument("vector length must be twice the form's qubit count");
    }
    int64_t v = symplectic_product_signed(s, t, form.kind);
    if (arithmetic == Arithmetic::mod2) {
        return static_cast<int>(v & 1);
    }
    return static_cast<int>(((v % 4) + 4) % 4);
}

bool symplectic_parity(const BitVec &s, const BitVec &t) {
    check_same_size(s, t);
    auto sw = s.words();
    auto tw = t.words();
    uint64_t acc = 0;
    for (size_t w = 0; w < sw.size(); w++) {
        uint64_t swapped = ((tw[w] & kEvenBits) << 1) | ((tw[w] >> 1) & kEvenBits);
        acc ^= sw[w] & swapped;
    }
    return std::popcount(acc) & 1;
}

BitVec swap_pairs(const BitVec &v) {
    if (v.size() % 2 != 0) {
        throw std::invalid_argument("pair swap needs an even-length vector");
    }
    BitVec out = v;
    auto words = out.mutable_words();
    for (auto &w : words) {
        w = ((w & kEvenBits) << 1) | ((w >> 1) & kEvenBits);
    }
    return out;
}

}  // namespace teleqec
