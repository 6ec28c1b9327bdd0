#include "teleqec/teleport.h"

#include <stdexcept>

namespace teleqec {

namespace {

PauliVec random_span_element(const BitMatrix &basis, size_t num_qubits, Rng &rng) {
    PauliVec out(num_qubits);
    for (const auto &row : basis.rows()) {
        if (rng() >> 63) {
            out += PauliVec(row);
        }
    }
    return out;
}

BellRecord record_from_correction(const PauliVec &g) {
    BellRecord record;
    for (size_t q = 0; q < g.num_qubits(); q++) {
        auto f = outcome_for_correction(g, q);
        record.pairs.push_back(BellPair{f, f});
    }
    return record;
}

void check_sizes(const StabilizerCode &code, const PauliVec &incoming_error, const BellRecord &bell) {
    if (incoming_error.num_qubits() != code.n()) {
        throw std::invalid_argument("incoming error size does not match the code");
    }
    if (bell.size() != code.n()) {
        throw std::invalid_argument("Bell record needs one entry per code qubit");
    }
}

// Decoder correction for the inferred syndrome, or nullopt on a detected failure.
std::optional<PauliVec> decode(const StabilizerCode &code, const Syndrome &e, const ErasurePattern &erased,
                               const StepOptions &options) {
    if (options.decoder == DecoderKind::erasure) {
        return erasure_decode(code, e, erased);
    }
    if (options.ml_table) {
        return options.ml_table->decode(e);
    }
    return ml_decode_depolarizing(code, e, options.ml_rate);
}

ErasurePattern all_erasures(const StabilizerCode &code, const BellRecord &bell, const StepOptions &options) {
    ErasurePattern erased = bell.erased();
    if (options.extra_erasures) {
        erased |= *options.extra_erasures;
    }
    if (erased.num_qubits() != code.n()) {
        throw std::invalid_argument("erasure pattern size does not match the code");
    }
    return erased;
}

}  // namespace

PauliVec standard_teleport_correction(BellOutcome f) {
    PauliVec out(1);
    out.set_qubit(0, f.zz, f.xx);
    return out;
}

BellOutcome outcome_for_correction(const PauliVec &g, size_t q) {
    return BellOutcome{g.z_bit(q), g.x_bit(q)};
}

ErasurePattern BellRecord::erased() const {
    ErasurePattern out(pairs.size());
    for (size_t q = 0; q < pairs.size(); q++) {
        if (!pairs[q].learned) {
            out.insert(q);
        }
    }
    return out;
}

PauliVec BellRecord::ideal_correction() const {
    PauliVec g(pairs.size());
    for (size_t q = 0; q < pairs.size(); q++) {
        g.set_qubit(q, pairs[q].ideal.zz, pairs[q].ideal.xx);
    }
    return g;
}

PauliVec BellRecord::learned_correction(const std::optional<PauliVec> &fill_in) const {
    if (fill_in && fill_in->num_qubits() != pairs.size()) {
        throw std::invalid_argument("fill-in size does not match the Bell record");
    }
    PauliVec g(pairs.size());
    for (size_t q = 0; q < pairs.size(); q++) {
        if (pairs[q].learned) {
            g.set_qubit(q, pairs[q].learned->zz, pairs[q].learned->xx);
        } else if (fill_in) {
            g.set_qubit(q, fill_in->x_bit(q), fill_in->z_bit(q));
        }
    }
    return g;
}

void BellRecord::erase(const ErasurePattern &s) {
    if (s.num_qubits() != pairs.size()) {
        throw std::invalid_argument("erasure pattern size does not match the Bell record");
    }
    for (size_t q : s.qubits()) {
        pairs[q].learned.reset();
    }
}

void BellRecord::corrupt(size_t q, const PauliVec &d) {
    if (q >= pairs.size() || d.num_qubits() != pairs.size()) {
        throw std::out_of_range("Bell record corruption out of range");
    }
    BellOutcome shift = outcome_for_correction(d, q);
    pairs[q].learned = BellOutcome{pairs[q].ideal.xx != shift.xx, pairs[q].ideal.zz != shift.zz};
}

BellRecord sample_bell_record(const StabilizerCode &code, const PauliVec &incoming_error, const Syndrome &prep_offset,
                              Rng &rng) {
    if (incoming_error.num_qubits() != code.n() || prep_offset.size() != code.l()) {
        throw std::invalid_argument("incoming error or offset size does not match the code");
    }
    PauliVec g = incoming_error + syndrome_representative(code, prep_offset) +
                 random_span_element(code.dual(), code.n(), rng);
    return record_from_correction(g);
}

std::string to_string(StepStatus status) {
    switch (status) {
        case StepStatus::ok:
            return "ok";
        case StepStatus::detected_logical_erasure:
            return "detected_logical_erasure";
        case StepStatus::logical_error:
            return "logical_error";
    }
    return "unknown";
}

StepReport teleport_ec_step(const StabilizerCode &code, const PauliVec &incoming_error, const BellRecord &bell,
                            const Syndrome &prep_offset, const StepOptions &options) {
    check_sizes(code, incoming_error, bell);
    if (prep_offset.size() != code.l()) {
        throw std::invalid_argument("preparation offset length does not match the code");
    }
    StepReport report;
    report.erased = all_erasures(code, bell, options);
    report.teleport_correction = bell.learned_correction(options.fill_in);
    report.inferred_syndrome = syndrome_shift(report.teleport_correction, code) ^ prep_offset;

    PauliVec residual = incoming_error + report.teleport_correction + bell.ideal_correction();
    auto h = decode(code, report.inferred_syndrome, report.erased, options);
    if (!h) {
        report.correction = PauliVec(code.n());
        report.residual = residual;
        report.status = StepStatus::detected_logical_erasure;
        return report;
    }
    report.correction = *h;
    report.residual = residual + *h;
    switch (classify_residual(code, report.residual)) {
        case ResidualClass::stabilizer:
            report.status = StepStatus::ok;
            break;
        case ResidualClass::logical:
            report.status = StepStatus::logical_error;
            break;
        case ResidualClass::not_in_dual:
            throw std::logic_error("decoder correction does not reproduce the inferred syndrome");
    }
    return report;
}

PhasedPauli conjugate_frame(std::span<const CliffordGate> gates, const PhasedPauli &p) {
    const size_t n = p.v.num_qubits();
    PhasedPauli current = p;
    for (const auto &gate : gates) {
        if (gate.a >= n || (gate.kind == CliffordGate::Kind::cnot && gate.b >= n)) {
            throw std::out_of_range("Clifford gate acts outside the " + std::to_string(n) + "-qubit frame");
        }
        if (gate.kind == CliffordGate::Kind::cnot && gate.a == gate.b) {
            throw std::invalid_argument("CNOT control and target must differ");
        }
        // Images of X_q and Z_q under the gate, multiplied back in the
        // X-then-Z order that defines P(s).
        auto image = [&](size_t q, bool is_x) {
            PhasedPauli out{PauliVec(n), 0};
            switch (gate.kind) {
                case CliffordGate::Kind::h:
                    if (q == gate.a) {
                        out.v.set_qubit(q, !is_x, is_x);
                        return out;
                    }
                    break;
                case CliffordGate::Kind::s:
                    if (q == gate.a && is_x) {
                        out.v.set_qubit(q, true, true);
                        out.phase_exp = 1;
                        return out;
                    }
                    break;
                case CliffordGate::Kind::cnot:
                    if (is_x && q == gate.a) {
                        out.v.set_qubit(gate.a, true, false);
                        out.v.set_qubit(gate.b, true, false);
                        return out;
                    }
                    if (!is_x && q == gate.b) {
                        out.v.set_qubit(gate.a, false, true);
                        out.v.set_qubit(gate.b, false, true);
                        return out;
                    }
                    break;
            }
            out.v.set_qubit(q, is_x, !is_x);
            return out;
        };
        PhasedPauli next{PauliVec(n), current.phase_exp};
        for (size_t q = 0; q < n; q++) {
            if (current.v.x_bit(q)) {
                next = multiply(next, image(q, true));
            }
            if (current.v.z_bit(q)) {
                next = multiply(next, image(q, false));
            }
        }
        current = next;
    }
    return current;
}

BellRecord sample_measurement_record(const StabilizerCode &code, const PauliVec &incoming_error, int logical_value,
                                     Rng &rng) {
    if (!code.logical()) {
        throw CodeDimensionError("measurement by teleportation needs a code with logical operators");
    }
    if (incoming_error.num_qubits() != code.n()) {
        throw std::invalid_argument("incoming error size does not match the code");
    }
    if (logical_value != 0 && logical_value != 1) {
        throw std::invalid_argument("logical value must be 0 or 1");
    }
    PauliVec g = incoming_error + random_span_element(code.generators(), code.n(), rng);
    if (logical_value) {
        g += code.logical()->x;
    }
    return record_from_correction(g);
}

std::optional<int> logical_measure_step(const StabilizerCode &code, const PauliVec &incoming_error,
                                        const BellRecord &bell, const StepOptions &options) {
    if (!code.logical()) {
        throw CodeDimensionError("measurement by teleportation needs a code with logical operators");
    }
    check_sizes(code, incoming_error, bell);
    ErasurePattern erased = all_erasures(code, bell, options);
    PauliVec g = bell.learned_correction(options.fill_in);
    auto h = decode(code, syndrome_shift(g, code), erased, options);
    if (!h) {
        return std::nullopt;
    }
    const PauliVec &tz = code.logical()->z;
    int raw = symplectic_parity(g.bits(), tz.bits()) ? 1 : 0;
    return raw ^ (symplectic_parity(h->bits(), tz.bits()) ? 1 : 0);
}

}  // namespace teleqec
