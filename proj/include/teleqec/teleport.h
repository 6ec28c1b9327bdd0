#ifndef TELEQEC_TELEPORT_H
#define TELEQEC_TELEPORT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teleqec/pauli.h"
#include "teleqec/rng.h"
#include "teleqec/stabilizer_code.h"

namespace teleqec {

/// Result of a Bell measurement on a pair: the syndrome bits of XX and ZZ.
struct BellOutcome {
    bool xx = false;
    bool zz = false;

    bool operator==(const BellOutcome &other) const = default;
};

/// f S for f = [xx, zz]: Z when XX flipped, X when ZZ flipped.
PauliVec standard_teleport_correction(BellOutcome f);

/// The Bell outcome whose standard correction is the given qubit's Pauli.
BellOutcome outcome_for_correction(const PauliVec &g, size_t q);

/// Deferred Pauli correction tracked classically for a block of n qubits.
struct PauliFrame {
    PauliVec frame;

    explicit PauliFrame(size_t num_qubits) : frame(num_qubits) {
    }
    void compose(const PauliVec &p) {
        frame += p;
    }
};

/// Per-pair Bell outcomes of one teleportation step.
///
/// ideal is what a noiseless measurement would have produced; learned is what
/// the classical processor actually received (nullopt when erased). Keeping
/// both lets the frame-level simulation account for wrong answers exactly.
struct BellPair {
    BellOutcome ideal;
    std::optional<BellOutcome> learned;
};

struct BellRecord {
    std::vector<BellPair> pairs;

    size_t size() const {
        return pairs.size();
    }
    ErasurePattern erased() const;
    /// Correction assembled from the ideal outcomes.
    PauliVec ideal_correction() const;
    /// Correction assembled from the learned outcomes, with erased entries
    /// replaced by the matching qubit of fill_in (all zeros by default).
    PauliVec learned_correction(const std::optional<PauliVec> &fill_in = std::nullopt) const;

    void erase(const ErasurePattern &s);
    /// Learned outcome on qubit q becomes ideal + the Bell outcome of d's qubit q.
    void corrupt(size_t q, const PauliVec &d);
};

/// Samples noiseless outcomes for teleporting a block carrying incoming_error
/// through a resource whose destination was projected with offset t.
///
/// The outcomes satisfy g S Q^T = incoming S Q^T + t; the remaining freedom
/// (a uniform element of C^perp) models the random Bell results.
BellRecord sample_bell_record(const StabilizerCode &code, const PauliVec &incoming_error, const Syndrome &prep_offset,
                              Rng &rng);

enum class StepStatus { ok, detected_logical_erasure, logical_error };
std::string to_string(StepStatus status);

enum class DecoderKind { erasure, depolarizing_ml };

struct StepOptions {
    DecoderKind decoder = DecoderKind::erasure;
    /// Per-qubit rate handed to the ML decoder.
    double ml_rate = 0.0;
    /// Shared memo table for the ML decoder; built on the fly when null.
    DepolarizingDecoder *ml_table = nullptr;
    /// Erasures known from other sources (e.g. storage), merged with erased Bell outcomes.
    std::optional<ErasurePattern> extra_erasures;
    /// Values for erased outcomes; zeros when unset.
    std::optional<PauliVec> fill_in;
};

struct StepReport {
    Syndrome inferred_syndrome;
    /// Teleportation correction g assembled from the learned outcomes.
    PauliVec teleport_correction;
    /// Decoder correction h.
    PauliVec correction;
    StepStatus status = StepStatus::ok;
    ErasurePattern erased{0};
    /// incoming + (learned g - ideal g) + h.
    PauliVec residual;
};

/// One teleportation error-correction step at the Pauli-frame level.
///
/// The inferred syndrome is g S Q^T + t where g comes from the learned
/// outcomes. A detected failure of the erasure decoder leaves the residual
/// without a decoder correction.
StepReport teleport_ec_step(const StabilizerCode &code, const PauliVec &incoming_error, const BellRecord &bell,
                            const Syndrome &prep_offset, const StepOptions &options = {});

struct CliffordGate {
    enum class Kind { h, s, cnot };
    Kind kind;
    size_t a;
    size_t b = 0;

    static CliffordGate H(size_t q) {
        return {Kind::h, q, 0};
    }
    static CliffordGate S(size_t q) {
        return {Kind::s, q, 0};
    }
    static CliffordGate CNOT(size_t control, size_t target) {
        return {Kind::cnot, control, target};
    }
};

/// U p U^dagger for U = gates applied in order (first gate acts first).
PhasedPauli conjugate_frame(std::span<const CliffordGate> gates, const PhasedPauli &p);

/// Noiseless outcomes for measuring a block encoding logical value m (0 or 1)
/// by teleportation. The resource freedom lies in C so the logical Z value is
/// recoverable from g alone.
BellRecord sample_measurement_record(const StabilizerCode &code, const PauliVec &incoming_error, int logical_value,
                                     Rng &rng);

/// Logical Z readout from a teleportation measurement step: the raw value
/// g S t_z^T corrected by the decoder's h S t_z^T. Returns nullopt when the
/// erasures defeat correction.
std::optional<int> logical_measure_step(const StabilizerCode &code, const PauliVec &incoming_error,
                                        const BellRecord &bell, const StepOptions &options = {});

}  // namespace teleqec

#endif
