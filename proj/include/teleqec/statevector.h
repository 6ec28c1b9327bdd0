#ifndef TELEQEC_STATEVECTOR_H
#define TELEQEC_STATEVECTOR_H

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "teleqec/pauli.h"
#include "teleqec/rng.h"
#include "teleqec/stabilizer_code.h"
#include "teleqec/teleport.h"

namespace teleqec {

using Amplitude = std::complex<double>;

/// Largest register dense_teleport_ec will build (3n qubits).
inline constexpr size_t kMaxDenseQubits = 12;
/// Largest register DenseState will allocate.
inline constexpr size_t kMaxStateQubits = 24;

/// A pure state on m qubits.
///
/// Qubit 0 is the most significant bit of the amplitude index, so the string
/// "XZ" acting on |q0 q1> reads left to right like the basis label.
class DenseState {
   public:
    /// |0...0> on m qubits.
    explicit DenseState(size_t num_qubits);
    /// Takes 2^m amplitudes as given (no normalization).
    static DenseState from_amplitudes(std::vector<Amplitude> amplitudes);
    /// Computational basis state |bits> with bits[0] on qubit 0.
    static DenseState basis(const std::vector<int> &bits);
    /// Haar-like random state from Gaussian amplitudes.
    static DenseState random(size_t num_qubits, Rng &rng);

    size_t num_qubits() const {
        return m_;
    }
    const std::vector<Amplitude> &amplitudes() const {
        return amps_;
    }
    std::vector<Amplitude> &mutable_amplitudes() {
        return amps_;
    }
    Amplitude operator[](size_t index) const {
        return amps_[index];
    }

    double norm_squared() const;
    /// Scales to unit norm; returns the squared norm it had.
    double normalize();

    /// |this> (x) |other>, with this state's qubits first.
    DenseState tensor(const DenseState &other) const;

   private:
    size_t m_ = 0;
    std::vector<Amplitude> amps_;
};

/// A projection or measurement found no weight in the requested eigenspace.
class DegenerateProjection : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Squared norms below this count as zero.
inline constexpr double kDegenerateThreshold = 1e-12;

/// Pi(Q, e) to be applied to chosen qubits of a larger register.
struct ProjectionSpec {
    StabilizerCode code;
    Syndrome e;
};

/// i^phase P(v) applied with Pauli qubit j acting on state qubit qubits[j].
DenseState apply_pauli(const DenseState &state, const PhasedPauli &p, std::span<const size_t> qubits);
/// Same with the Pauli covering the whole register.
DenseState apply_pauli(const DenseState &state, const PhasedPauli &p);

/// <state| i^phase P(v) |state>.
Amplitude expectation(const DenseState &state, const PhasedPauli &p, std::span<const size_t> qubits);

struct ProjectionResult {
    DenseState state;
    /// Squared norm before normalization (the Born probability).
    double probability;
};

/// Applies Pi(Q, e) = prod_i (1 + (-1)^{e_i} conj(nu(q_i)) P(q_i)) / 2 and
/// normalizes. Throws DegenerateProjection when nothing survives.
ProjectionResult project_syndrome(const DenseState &state, const ProjectionSpec &spec,
                                  std::span<const size_t> qubits);
/// Same without normalization; never throws on zero weight.
DenseState apply_projector(const DenseState &state, const ProjectionSpec &spec, std::span<const size_t> qubits);

struct MeasurementResult {
    Syndrome syndrome;
    DenseState state;
};

/// Measures the generators one at a time with Born-rule sampling.
MeasurementResult measure_syndrome(const DenseState &state, const StabilizerCode &code,
                                   std::span<const size_t> qubits, Rng &rng);

struct BellMeasurementResult {
    BellOutcome outcome;
    DenseState state;
};

/// Measures XX and ZZ on qubits (i, j).
BellMeasurementResult bell_measure(const DenseState &state, size_t i, size_t j, Rng &rng);

/// |<a|b>|^2 for normalized inputs.
double fidelity(const DenseState &a, const DenseState &b);

/// A random state of code.n() qubits projected into Pi(Q, e).
DenseState random_code_state(const StabilizerCode &code, const Syndrome &e, Rng &rng);

struct DenseTeleportResult {
    /// Teleportation correction assembled from the n Bell outcomes.
    PauliVec g;
    std::vector<BellOutcome> outcomes;
    /// Syndrome of the resource's destination block after any reset.
    Syndrome prep_offset;
    /// g S Q^T + prep_offset.
    Syndrome inferred_syndrome;
    /// Destination block after applying P(g).
    DenseState output;
    /// Born probability that measuring the corrupted input directly gives
    /// inferred_syndrome, and the post-measurement state for that outcome.
    double direct_probability = 0;
    DenseState direct_state;
};

struct DenseTeleportOptions {
    /// Bring the destination block back to syndrome 0 after preparation.
    bool reset_offset = true;
};

/// Runs teleportation error correction on a 3n-qubit register: input block,
/// resource block B and destination block C. Also projects the corrupted
/// input directly onto the inferred syndrome so the two paths can be compared.
///
/// Throws SizeGuardError when 3n exceeds kMaxDenseQubits.
DenseTeleportResult dense_teleport_ec(const StabilizerCode &code, const DenseState &input, const PauliVec &injected,
                                      Rng &rng, const DenseTeleportOptions &options = {});

}  // namespace teleqec

#endif
