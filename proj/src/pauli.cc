#include "teleqec/pauli.h"

#include <bit>

namespace teleqec {

PauliVec::PauliVec(BitVec bits) : bits_(std::move(bits)) {
    if (bits_.size() % 2 != 0) {
        throw std::invalid_argument("Pauli vectors need an even number of bits");
    }
}

PauliVec PauliVec::single(size_t num_qubits, size_t q, char op) {
    PauliVec p(num_qubits);
    if (q >= num_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
    }
    switch (op) {
        case 'I':
            break;
        case 'X':
            p.set_qubit(q, true, false);
            break;
        case 'Z':
            p.set_qubit(q, false, true);
            break;
        case 'Y':
            p.set_qubit(q, true, true);
            break;
        default:
            throw PauliParseError(0, op);
    }
    return p;
}

void PauliVec::set_qubit(size_t q, bool x, bool z) {
    bits_.set(2 * q, x);
    bits_.set(2 * q + 1, z);
}

char PauliVec::op(size_t q) const {
    return "IXZY"[x_bit(q) + 2 * z_bit(q)];
}

size_t PauliVec::weight() const {
    size_t total = 0;
    for (uint64_t w : bits_.words()) {
        total += std::popcount((w | (w >> 1)) & 0x5555555555555555ULL);
    }
    return total;
}

std::vector<size_t> PauliVec::support() const {
    std::vector<size_t> out;
    for (size_t q = 0; q < num_qubits(); q++) {
        if (x_bit(q) || z_bit(q)) {
            out.push_back(q);
        }
    }
    return out;
}

PauliVec &PauliVec::operator+=(const PauliVec &other) {
    bits_ ^= other.bits_;
    return *this;
}

PauliParseError::PauliParseError(size_t position, char symbol)
    : std::invalid_argument(
          "invalid Pauli symbol '" + std::string(1, symbol) + "' at position " + std::to_string(position)),
      position_(position) {
}

PauliVec parse_pauli(std::string_view text) {
    PauliVec p(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
                break;
            case 'X':
                p.set_qubit(q, true, false);
                break;
            case 'Z':
                p.set_qubit(q, false, true);
                break;
            case 'Y':
                p.set_qubit(q, true, true);
                break;
            default:
                throw PauliParseError(q, text[q]);
        }
    }
    return p;
}

std::string format_pauli(const PauliVec &p) {
    std::string out(p.num_qubits(), 'I');
    for (size_t q = 0; q < p.num_qubits(); q++) {
        out[q] = p.op(q);
    }
    return out;
}

PhasedPauli multiply(const PhasedPauli &p, const PhasedPauli &q) {
    if (p.v.num_qubits() != q.v.num_qubits()) {
        throw std::invalid_argument("cannot multiply Pauli products on different qubit counts");
    }
    int sign = static_cast<int>(symplectic_product_signed(p.v.bits(), q.v.bits(), FormKind::lower) & 1);
    return PhasedPauli{p.v + q.v, (p.phase_exp + q.phase_exp + 2 * sign) & 3};
}

bool commutes(const PauliVec &s, const PauliVec &t) {
    if (s.num_qubits() != t.num_qubits()) {
        throw std::invalid_argument("cannot compare Pauli products on different qubit counts");
    }
    return !symplectic_parity(s.bits(), t.bits());
}

int nu(const PauliVec &s) {
    return static_cast<int>(symplectic_product_signed(s.bits(), s.bits(), FormKind::lower) & 3);
}

}  // namespace teleqec
