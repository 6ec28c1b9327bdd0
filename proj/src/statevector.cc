#include "teleqec/statevector.h"

#include <bit>
#include <cmath>
#include <numeric>

namespace teleqec {

namespace {

constexpr Amplitude kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

size_t index_bit(size_t m, size_t q) {
    return size_t{1} << (m - 1 - q);
}

void check_qubits(size_t m, std::span<const size_t> qubits) {
    for (size_t j = 0; j < qubits.size(); j++) {
        if (qubits[j] >= m) {
            throw std::out_of_range("qubit " + std::to_string(qubits[j]) + " outside a " + std::to_string(m) +
                                    "-qubit state");
        }
        for (size_t k = 0; k < j; k++) {
            if (qubits[k] == qubits[j]) {
                throw std::invalid_argument("qubit " + std::to_string(qubits[j]) + " listed twice");
            }
        }
    }
}

std::vector<size_t> iota_qubits(size_t begin, size_t count) {
    std::vector<size_t> out(count);
    std::iota(out.begin(), out.end(), begin);
    return out;
}

// (1 + (-1)^e conj(nu(s)) P(s)) / 2 applied to psi.
DenseState half_projector(const DenseState &psi, const PauliVec &s, bool e, std::span<const size_t> qubits) {
    PhasedPauli op{s, ((-nu(s)) & 3) + (e ? 2 : 0)};
    DenseState out = apply_pauli(psi, op, qubits);
    auto &a = out.mutable_amplitudes();
    const auto &b = psi.amplitudes();
    for (size_t k = 0; k < a.size(); k++) {
        a[k] = 0.5 * (a[k] + b[k]);
    }
    return out;
}

}  // namespace

DenseState::DenseState(size_t num_qubits) : m_(num_qubits) {
    if (num_qubits > kMaxStateQubits) {
        throw SizeGuardError("dense state of " + std::to_string(num_qubits) + " qubits exceeds the limit of " +
                             std::to_string(kMaxStateQubits));
    }
    amps_.assign(size_t{1} << num_qubits, Amplitude{0, 0});
    amps_[0] = 1;
}

DenseState DenseState::from_amplitudes(std::vector<Amplitude> amplitudes) {
    if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    DenseState out(std::countr_zero(amplitudes.size()));
    out.amps_ = std::move(amplitudes);
    return out;
}

DenseState DenseState::basis(const std::vector<int> &bits) {
    DenseState out(bits.size());
    size_t index = 0;
    for (size_t q = 0; q < bits.size(); q++) {
        if (bits[q]) {
            index |= index_bit(bits.size(), q);
        }
    }
    out.amps_[0] = 0;
    out.amps_[index] = 1;
    return out;
}

DenseState DenseState::random(size_t num_qubits, Rng &rng) {
    DenseState out(num_qubits);
    auto gaussian = [&rng]() {
        double u1 = 1.0 - uniform01(rng);
        double u2 = uniform01(rng);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    for (auto &a : out.amps_) {
        double re = gaussian();
        double im = gaussian();
        a = Amplitude{re, im};
    }
    out.normalize();
    return out;
}

double DenseState::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

double DenseState::normalize() {
    double n2 = norm_squared();
    if (n2 < kDegenerateThreshold) {
        throw DegenerateProjection("state has no weight left to normalize");
    }
    double scale = 1.0 / std::sqrt(n2);
    for (auto &a : amps_) {
        a *= scale;
    }
    return n2;
}

DenseState DenseState::tensor(const DenseState &other) const {
    DenseState out(m_ + other.m_);
    const size_t low = other.amps_.size();
    for (size_t i = 0; i < amps_.size(); i++) {
        for (size_t j = 0; j < low; j++) {
            out.amps_[i * low + j] = amps_[i] * other.amps_[j];
        }
    }
    return out;
}

DenseState apply_pauli(const DenseState &state, const PhasedPauli &p, std::span<const size_t> qubits) {
    const size_t m = state.num_qubits();
    if (qubits.size() != p.v.num_qubits()) {
        throw std::invalid_argument("Pauli acts on " + std::to_string(p.v.num_qubits()) + " qubits but " +
                                    std::to_string(qubits.size()) + " targets were given");
    }
    check_qubits(m, qubits);
    size_t xmask = 0;
    size_t zmask = 0;
    for (size_t j = 0; j < qubits.size(); j++) {
        if (p.v.x_bit(j)) {
            xmask |= index_bit(m, qubits[j]);
        }
        if (p.v.z_bit(j)) {
            zmask |= index_bit(m, qubits[j]);
        }
    }
    const Amplitude phase = kIPowers[p.phase_exp & 3];
    DenseState out = state;
    auto &dst = out.mutable_amplitudes();
    const auto &src = state.amplitudes();
    for (size_t k = 0; k < src.size(); k++) {
        Amplitude a = phase * src[k];
        dst[k ^ xmask] = (std::popcount(k & zmask) & 1) ? -a : a;
    }
    return out;
}

DenseState apply_pauli(const DenseState &state, const PhasedPauli &p) {
    auto all = iota_qubits(0, state.num_qubits());
    return apply_pauli(state, p, all);
}

Amplitude expectation(const DenseState &state, const PhasedPauli &p, std::span<const size_t> qubits) {
    DenseState moved = apply_pauli(state, p, qubits);
    Amplitude total = 0;
    for (size_t k = 0; k < moved.amplitudes().size(); k++) {
        total += std::conj(state[k]) * moved[k];
    }
    return total;
}

DenseState apply_projector(const DenseState &state, const ProjectionSpec &spec, std::span<const size_t> qubits) {
    if (spec.e.size() != spec.code.l()) {
        throw std::invalid_argument("syndrome length does not match the code");
    }
    if (qubits.size() != spec.code.n()) {
        throw std::invalid_argument("code needs one target qubit per code qubit");
    }
    DenseState psi = state;
    for (size_t i = 0; i < spec.code.l(); i++) {
        psi = half_projector(psi, spec.code.generator(i), spec.e[i], qubits);
    }
    return psi;
}

ProjectionResult project_syndrome(const DenseState &state, const ProjectionSpec &spec,
                                  std::span<const size_t> qubits) {
    DenseState psi = apply_projector(state, spec, qubits);
    double p = psi.norm_squared();
    if (p < kDegenerateThreshold) {
        throw DegenerateProjection("state has no component with syndrome " + spec.e.str());
    }
    psi.normalize();
    return {std::move(psi), p};
}

MeasurementResult measure_syndrome(const DenseState &state, const StabilizerCode &code,
                                   std::span<const size_t> qubits, Rng &rng) {
    if (qubits.size() != code.n()) {
        throw std::invalid_argument("code needs one target qubit per code qubit");
    }
    check_qubits(state.num_qubits(), qubits);
    MeasurementResult result{Syndrome(code.l()), state};
    for (size_t i = 0; i < code.l(); i++) {
        DenseState &psi = result.state;
        double total = psi.norm_squared();
        DenseState plus = half_projector(psi, code.generator(i), false, qubits);
        double p0 = plus.norm_squared() / total;
        if (uniform01(rng) < p0) {
            psi = std::move(plus);
        } else {
            auto &a = psi.mutable_amplitudes();
            for (size_t k = 0; k < a.size(); k++) {
                a[k] -= plus[k];
            }
            result.syndrome.set(i, true);
        }
        psi.normalize();
    }
    return result;
}

BellMeasurementResult bell_measure(const DenseState &state, size_t i, size_t j, Rng &rng) {
    if (i == j) {
        throw std::invalid_argument("Bell measurement needs two distinct qubits");
    }
    static const StabilizerCode bell = library_code("bell_pair");
    const size_t qubits[2] = {i, j};
    auto measured = measure_syndrome(state, bell, qubits, rng);
    return {BellOutcome{measured.syndrome[0], measured.syndrome[1]}, std::move(measured.state)};
}

double fidelity(const DenseState &a, const DenseState &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("states have different qubit counts");
    }
    Amplitude overlap = 0;
    for (size_t k = 0; k < a.amplitudes().size(); k++) {
        overlap += std::conj(a[k]) * b[k];
    }
    return std::norm(overlap);
}

DenseState random_code_state(const StabilizerCode &code, const Syndrome &e, Rng &rng) {
    auto all = iota_qubits(0, code.n());
    ProjectionSpec spec{code, e};
    // A Gaussian state has almost surely nonzero weight in every eigenspace.
    for (int attempt = 0; attempt < 8; attempt++) {
        DenseState psi = apply_projector(DenseState::random(code.n(), rng), spec, all);
        if (psi.norm_squared() >= kDegenerateThreshold) {
            psi.normalize();
            return psi;
        }
    }
    throw DegenerateProjection("could not sample a state with syndrome " + e.str());
}

DenseTeleportResult dense_teleport_ec(const StabilizerCode &code, const DenseState &input, const PauliVec &injected,
                                      Rng &rng, const DenseTeleportOptions &options) {
    const size_t n = code.n();
    if (3 * n > kMaxDenseQubits) {
        throw SizeGuardError("dense teleportation needs " + std::to_string(3 * n) + " qubits, limit is " +
                             std::to_string(kMaxDenseQubits));
    }
    if (input.num_qubits() != n || injected.num_qubits() != n) {
        throw std::invalid_argument("input state and injected Pauli must cover the code's qubits");
    }
    const auto block_a = iota_qubits(0, n);
    const auto block_b = iota_qubits(n, n);
    const auto block_c = iota_qubits(2 * n, n);

    // Bell pairs between B_q and C_q.
    std::vector<Amplitude> resource(size_t{1} << (2 * n), Amplitude{0, 0});
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
    for (size_t b = 0; b < (size_t{1} << n); b++) {
        resource[(b << n) | b] = amp;
    }
    DenseState state = input.tensor(DenseState::from_amplitudes(std::move(resource)));

    auto prepared = measure_syndrome(state, code, block_c, rng);
    state = std::move(prepared.state);
    DenseTeleportResult result{PauliVec(n), {}, prepared.syndrome, Syndrome(code.l()), DenseState(n), 0,
                               DenseState(n)};
    if (options.reset_offset) {
        PhasedPauli r{syndrome_representative(code, prepared.syndrome), 0};
        state = apply_pauli(apply_pauli(state, r, block_b), r, block_c);
        result.prep_offset = Syndrome(code.l());
    }

    state = apply_pauli(state, PhasedPauli{injected, 0}, block_a);
    for (size_t q = 0; q < n; q++) {
        auto measured = bell_measure(state, q, n + q, rng);
        state = std::move(measured.state);
        result.outcomes.push_back(measured.outcome);
        result.g.set_qubit(q, measured.outcome.zz, measured.outcome.xx);
    }
    state = apply_pauli(state, PhasedPauli{result.g, 0}, block_c);
    result.inferred_syndrome = syndrome_shift(result.g, code) ^ result.prep_offset;

    // The register is now (Bell states on A, B) (x) (output on C).
    const size_t low = size_t{1} << n;
    const size_t high = size_t{1} << (2 * n);
    size_t best = 0;
    double best_weight = -1;
    for (size_t ab = 0; ab < high; ab++) {
        double w = 0;
        for (size_t c = 0; c < low; c++) {
            w += std::norm(state[ab * low + c]);
        }
        if (w > best_weight) {
            best_weight = w;
            best = ab;
        }
    }
    std::vector<Amplitude> column(state.amplitudes().begin() + best * low,
                                  state.amplitudes().begin() + (best + 1) * low);
    result.output = DenseState::from_amplitudes(std::move(column));
    result.output.normalize();
    double captured = 0;
    for (size_t ab = 0; ab < high; ab++) {
        Amplitude overlap = 0;
        for (size_t c = 0; c < low; c++) {
            overlap += std::conj(result.output[c]) * state[ab * low + c];
        }
        captured += std::norm(overlap);
    }
    if (captured < 1 - 1e-9) {
        throw std::logic_error("destination block is entangled with the measured qubits");
    }

    result.direct_state = apply_projector(apply_pauli(input, PhasedPauli{injected, 0}),
                                          ProjectionSpec{code, result.inferred_syndrome}, block_a);
    result.direct_probability = result.direct_state.norm_squared();
    if (result.direct_probability >= kDegenerateThreshold) {
        result.direct_state.normalize();
    }
    return result;
}

}  // namespace teleqec
