#ifndef TELEQEC_GF2_H
#define TELEQEC_GF2_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace teleqec {

/// Fixed-length row vector over GF(2), packed 64 bits per word.
///
/// Bit i lives in word i/64 at position i%64. Unused high bits of the last
/// word are always zero, so word-level equality and popcounts are exact.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits);

    static BitVec from_bits(std::initializer_list<int> bits);
    /// Parses a string of '0'/'1' characters.
    static BitVec from_string(std::string_view text);

    size_t size() const {
        return num_bits_;
    }
    bool operator[](size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    bool get(size_t i) const;
    void set(size_t i, bool value);
    void flip(size_t i);

    BitVec &operator^=(const BitVec &other);
    BitVec &operator&=(const BitVec &other);
    friend BitVec operator^(BitVec a, const BitVec &b) {
        a ^= b;
        return a;
    }
    friend BitVec operator&(BitVec a, const BitVec &b) {
        a &= b;
        return a;
    }

    size_t popcount() const;
    bool any() const;
    bool none() const {
        return !any();
    }
    /// Parity of the dot product, i.e. a*b^T mod 2.
    bool dot(const BitVec &other) const;

    /// Index of the lowest set bit, or size() if the vector is zero.
    size_t first_set() const;

    bool operator==(const BitVec &other) const = default;
    /// Lexicographic order on the bit sequence, bit 0 first, with 0 < 1.
    std::strong_ordering operator<=>(const BitVec &other) const;

    std::span<const uint64_t> words() const {
        return words_;
    }
    std::span<uint64_t> mutable_words() {
        return words_;
    }

    std::string str() const;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Rectangular matrix over GF(2), stored as a list of rows.
class BitMatrix {
   public:
    BitMatrix() = default;
    explicit BitMatrix(size_t num_cols) : num_cols_(num_cols) {
    }
    BitMatrix(size_t num_rows, size_t num_cols);
    /// All rows must have length num_cols.
    BitMatrix(size_t num_cols, std::vector<BitVec> rows);

    static BitMatrix identity(size_t n);
    static BitMatrix from_strings(std::initializer_list<std::string_view> rows);

    size_t num_rows() const {
        return rows_.size();
    }
    size_t num_cols() const {
        return num_cols_;
    }
    const BitVec &row(size_t i) const {
        return rows_[i];
    }
    BitVec &row(size_t i) {
        return rows_[i];
    }
    const std::vector<BitVec> &rows() const {
        return rows_;
    }
    bool get(size_t r, size_t c) const {
        return rows_[r][c];
    }
    void set(size_t r, size_t c, bool v) {
        rows_[r].set(c, v);
    }
    void push_back(BitVec row);

    /// Computes x M^T: entry i is the parity of x with row i.
    BitVec times_transpose(const BitVec &x) const;
    /// Computes x M for x of length num_rows().
    BitVec combine_rows(const BitVec &x) const;
    /// Zeroes every column whose bit in keep is clear.
    BitMatrix masked_columns(const BitVec &keep) const;
    BitMatrix transposed() const;

    bool operator==(const BitMatrix &other) const = default;

    std::string str() const;

   private:
    size_t num_cols_ = 0;
    std::vector<BitVec> rows_;
};

struct RrefResult {
    BitMatrix reduced;
    size_t rank = 0;
    std::vector<size_t> pivots;
};

/// Reduced row-echelon form with leftmost-pivot elimination. Zero rows are
/// moved to the bottom; the matrix keeps its shape.
RrefResult rref(const BitMatrix &m);

size_t rank(const BitMatrix &m);
size_t rank(std::span<const BitVec> rows, size_t num_cols);

/// Basis of {x : x M^T = 0}. Has num_cols - rank rows.
BitMatrix kernel(const BitMatrix &m);

/// Finds x with x A^T = y and x_i = 0 wherever allowed_i = 0. Free variables
/// are set to zero. Returns nullopt when the restricted system is inconsistent.
std::optional<BitVec> solve_supported(const BitMatrix &a, const BitVec &y, const BitVec &allowed);

/// Maintains a reduced basis for incremental span-membership tests.
class SpanReducer {
   public:
    explicit SpanReducer(size_t num_cols) : num_cols_(num_cols) {
    }
    /// Adds v to the span. Returns false if v was already in it.
    bool insert(const BitVec &v);
    /// Reduces v against the basis; zero iff v is in the span. The result is
    /// a canonical representative of the coset v + span.
    BitVec reduce(BitVec v) const;
    bool contains(const BitVec &v) const {
        return reduce(v).none();
    }
    size_t dimension() const {
        return basis_.size();
    }
    const std::vector<BitVec> &basis() const {
        return basis_;
    }

   private:
    size_t num_cols_;
    // Kept sorted by pivot; each pivot column is clear in every other row.
    std::vector<BitVec> basis_;
    std::vector<size_t> pivots_;
};

enum class FormKind { full, lower };
enum class Arithmetic { mod2, integer };

/// The 2n x 2n block-diagonal forms. Per qubit block, the lower form is
/// [[0,0],[1,0]] and the full form is lower - lower^T = [[0,-1],[1,0]].
struct SymplecticForm {
    size_t n = 0;
    FormKind kind = FormKind::full;

    /// Signed matrix entry.
    int entry(size_t r, size_t c) const;
};

/// s * form * t^T. Integer mode honors the signed entries and reports the
/// result mod 4 in [0, 4); mod2 mode returns 0 or 1.
int symplectic_product(const BitVec &s, const BitVec &t, const SymplecticForm &form, Arithmetic arithmetic);

/// Unreduced signed value of s * form * t^T.
int64_t symplectic_product_signed(const BitVec &s, const BitVec &t, FormKind kind);

/// s * S * t^T mod 2 on interleaved vectors.
bool symplectic_parity(const BitVec &s, const BitVec &t);

/// Swaps each adjacent (2q, 2q+1) bit pair, which is multiplication by S mod 2.
BitVec swap_pairs(const BitVec &v);

}  // namespace teleqec

#endif
