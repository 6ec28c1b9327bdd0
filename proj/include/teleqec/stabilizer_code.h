#ifndef TELEQEC_STABILIZER_CODE_H
#define TELEQEC_STABILIZER_CODE_H

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "teleqec/gf2.h"
#include "teleqec/pauli.h"
#include "teleqec/rng.h"

namespace teleqec {

/// Eigenvalue labels, one bit per generator.
using Syndrome = BitVec;

struct LogicalPair {
    PauliVec x;
    PauliVec z;
};

class CodeValidationError : public std::invalid_argument {
   public:
    enum class Kind { odd_column_count, dependent_rows, non_commuting_pair, bad_logical };

    CodeValidationError(Kind kind, const std::string &what, size_t row_a = 0, size_t row_b = 0)
        : std::invalid_argument(what), kind_(kind), row_a_(row_a), row_b_(row_b) {
    }
    Kind kind() const {
        return kind_;
    }
    size_t row_a() const {
        return row_a_;
    }
    size_t row_b() const {
        return row_b_;
    }

   private:
    Kind kind_;
    size_t row_a_;
    size_t row_b_;
};

/// Raised when an operation needs a specific number of logical qubits.
class CodeDimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive computation would exceed its size guard.
class SizeGuardError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// Raised when no erasure-supported error explains the syndrome even though the
/// erasure set is correctable; the inputs are inconsistent.
class InconsistentSyndrome : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A validated stabilizer code: l independent, mutually commuting rows of Q
/// over 2n interleaved columns, with an optional logical pair.
///
/// Immutable once built. Also caches a basis of the symplectic dual C^perp and
/// a basis for C^perp modulo C, which every decoder needs.
class StabilizerCode {
   public:
    size_t n() const {
        return n_;
    }
    size_t l() const {
        return generators_.num_rows();
    }
    size_t k() const {
        return n_ - l();
    }
    const BitMatrix &generators() const {
        return generators_;
    }
    PauliVec generator(size_t i) const {
        return PauliVec(generators_.row(i));
    }
    const BitMatrix &dual() const {
        return dual_;
    }
    /// Rows q_i with pairs swapped, so x M^T = x S Q^T mod 2.
    const BitMatrix &check_matrix() const {
        return check_;
    }
    /// 2k vectors completing a basis of C to a basis of C^perp.
    const std::vector<BitVec> &logical_basis() const {
        return logical_basis_;
    }
    const std::optional<LogicalPair> &logical() const {
        return logical_;
    }

    /// Attaches a logical pair after checking t_x, t_z in C^perp and t_x S t_z^T = 1.
    StabilizerCode with_logicals(LogicalPair pair) const;

    bool in_stabilizer(const PauliVec &p) const;
    bool in_dual(const PauliVec &p) const;
    /// Canonical representative of p + C.
    PauliVec reduce_mod_stabilizer(const PauliVec &p) const;

   private:
    friend StabilizerCode validate_code(const BitMatrix &q);
    StabilizerCode() = default;

    size_t n_ = 0;
    BitMatrix generators_;
    BitMatrix check_;
    BitMatrix dual_;
    SpanReducer stabilizer_span_{0};
    std::vector<BitVec> logical_basis_;
    std::optional<LogicalPair> logical_;
};

/// Qubit subset marked as erased.
class ErasurePattern {
   public:
    explicit ErasurePattern(size_t num_qubits) : mask_(num_qubits) {
    }
    ErasurePattern(size_t num_qubits, std::initializer_list<size_t> qubits);
    static ErasurePattern from_mask(uint64_t mask, size_t num_qubits);

    size_t num_qubits() const {
        return mask_.size();
    }
    bool contains(size_t q) const {
        return mask_[q];
    }
    void insert(size_t q) {
        mask_.set(q, true);
    }
    size_t size() const {
        return mask_.popcount();
    }
    bool empty() const {
        return mask_.none();
    }
    std::vector<size_t> qubits() const;
    /// Interleaved 2n-column mask covering both bits of every erased qubit.
    BitVec column_mask() const;
    ErasurePattern &operator|=(const ErasurePattern &other);
    bool operator==(const ErasurePattern &other) const = default;

   private:
    BitVec mask_;
};

/// Checks independence (rank = l) then pairwise commutation.
StabilizerCode validate_code(const BitMatrix &q);
StabilizerCode code_from_strings(const std::vector<std::string> &rows);

/// s S Q^T mod 2: the syndrome change caused by applying P(s).
Syndrome syndrome_shift(const PauliVec &s, const StabilizerCode &code);

/// Some s with syndrome_shift(s) = e.
PauliVec syndrome_representative(const StabilizerCode &code, const Syndrome &e);

struct EigenvalueExponent {
    int sign_bit = 0;    // exponent of -1
    int i_exponent = 0;  // exponent of i, mod 4

    int total() const {
        return (2 * sign_bit + i_exponent) & 3;
    }
};

/// Eigenvalue of P(xQ) on the syndrome-e eigenspace as (-1)^{x e^T} i^{i_exponent}.
/// i_exponent is the sum of nu over the selected generators minus the phase
/// collected when multiplying them in row order.
EigenvalueExponent eigenvalue_exponent(const StabilizerCode &code, const Syndrome &e, const BitVec &x);

/// Basis of C^perp = {x : x S Q^T = 0}, dimension 2n - l.
BitMatrix dual_basis(const StabilizerCode &code);

/// First hyperbolic pair of the dual basis in index order. Requires k = 1.
LogicalPair logical_pair(const StabilizerCode &code);

inline constexpr size_t kInfiniteDistance = std::numeric_limits<size_t>::max();
inline constexpr size_t kMaxDistanceColumns = 26;

/// Minimum weight over C^perp \ C by exhaustive enumeration, or
/// kInfiniteDistance when C^perp = C. Throws SizeGuardError when 2n > 26.
size_t min_distance(const StabilizerCode &code);

/// True iff no element of C^perp \ C is supported inside s, tested as
/// dim{x in C^perp : supp x in s} == dim{x in C : supp x in s}.
bool is_erasure_correctable(const StabilizerCode &code, const ErasurePattern &s);

/// Returns a correction supported on s that reproduces syndrome e, or nullopt
/// when s is not correctable (a detected failure of the encoded qubit).
std::optional<PauliVec> erasure_decode(const StabilizerCode &code, const Syndrome &e, const ErasurePattern &s);

inline constexpr size_t kMaxMlDecodeQubits = 10;

/// Maximum-likelihood coset decoding for independent depolarizing noise with
/// probability p/3 per non-identity Pauli on each qubit.
///
/// Cosets of C consistent with e are ranked by total probability. The
/// representative of a coset is its most probable member, ties broken toward
/// the lexicographically smallest bit string; tied cosets are broken the same
/// way by comparing representatives.
PauliVec ml_decode_depolarizing(const StabilizerCode &code, const Syndrome &e, double per_qubit_rate);

/// Memoizes ml_decode_depolarizing per syndrome. Not safe for concurrent use.
class DepolarizingDecoder {
   public:
    DepolarizingDecoder(const StabilizerCode &code, double per_qubit_rate);
    const PauliVec &decode(const Syndrome &e);

   private:
    const StabilizerCode *code_;
    double rate_;
    std::unordered_map<std::string, PauliVec> cache_;
};

/// Random code grown one row at a time: each new row is uniform over the dual
/// of the rows so far, rejecting members of their span.
StabilizerCode random_code(size_t n, size_t k, Rng &rng);

/// "bell_pair", "four_one_two" or "five_qubit".
StabilizerCode library_code(std::string_view name);
std::vector<std::string> library_code_names();

enum class ResidualClass { stabilizer, logical, not_in_dual };
ResidualClass classify_residual(const StabilizerCode &code, const PauliVec &r);

}  // namespace teleqec

#endif
