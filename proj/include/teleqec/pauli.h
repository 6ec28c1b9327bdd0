#ifndef TELEQEC_PAULI_H
#define TELEQEC_PAULI_H

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "teleqec/gf2.h"

namespace teleqec {

/// A Pauli product P(s) named by the interleaved vector s = [a1 b1 a2 b2 ...].
///
/// Per qubit the pair (a, b) selects I=00, X=10, Z=01 and Y=11, where the
/// operator for Y is sigma_x sigma_z = -i sigma_y (not sigma_y itself).
class PauliVec {
   public:
    PauliVec() = default;
    explicit PauliVec(size_t num_qubits) : bits_(2 * num_qubits) {
    }
    /// Wraps an interleaved bit vector; its length must be even.
    explicit PauliVec(BitVec bits);

    /// Single-qubit operator ('I', 'X', 'Y' or 'Z') on qubit q of n.
    static PauliVec single(size_t num_qubits, size_t q, char op);

    size_t num_qubits() const {
        return bits_.size() / 2;
    }
    const BitVec &bits() const {
        return bits_;
    }

    bool x_bit(size_t q) const {
        return bits_[2 * q];
    }
    bool z_bit(size_t q) const {
        return bits_[2 * q + 1];
    }
    void set_qubit(size_t q, bool x, bool z);
    /// One of 'I', 'X', 'Y', 'Z'.
    char op(size_t q) const;

    /// Number of qubits acted on nontrivially.
    size_t weight() const;
    std::vector<size_t> support() const;
    bool is_identity() const {
        return bits_.none();
    }

    PauliVec &operator+=(const PauliVec &other);
    friend PauliVec operator+(PauliVec a, const PauliVec &b) {
        a += b;
        return a;
    }

    bool operator==(const PauliVec &other) const = default;
    std::strong_ordering operator<=>(const PauliVec &other) const = default;

   private:
    BitVec bits_;
};

/// i^phase_exp * P(v).
struct PhasedPauli {
    PauliVec v;
    int phase_exp = 0;

    bool operator==(const PhasedPauli &other) const {
        return v == other.v && ((phase_exp - other.phase_exp) & 3) == 0;
    }
};

class PauliParseError : public std::invalid_argument {
   public:
    PauliParseError(size_t position, char symbol);
    size_t position() const {
        return position_;
    }

   private:
    size_t position_;
};

/// Parses "XZY"-style text (uppercase I/X/Y/Z, one per qubit).
PauliVec parse_pauli(std::string_view text);
std::string format_pauli(const PauliVec &p);

/// P(s) P(t) = (-1)^{s S_l t^T} P(s + t), with the global phases carried along.
PhasedPauli multiply(const PhasedPauli &p, const PhasedPauli &q);

bool commutes(const PauliVec &s, const PauliVec &t);

/// Exponent of i in nu(s) = i^{s S_l s^T}: the number of Y positions mod 4.
int nu(const PauliVec &s);

}  // namespace teleqec

#endif
