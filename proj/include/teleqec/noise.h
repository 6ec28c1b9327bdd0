#ifndef TELEQEC_NOISE_H
#define TELEQEC_NOISE_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "teleqec/rng.h"
#include "teleqec/stabilizer_code.h"

namespace teleqec {

enum class NoiseModel { erasure, depolarizing };
std::string to_string(NoiseModel model);

/// Per-step noise rates. Erasure uses e_m (storage) and e_b (Bell
/// measurement); depolarizing uses d_m, d_b and d_p (state preparation).
struct NoiseParams {
    NoiseModel model = NoiseModel::erasure;
    double e_m = 0;
    double e_b = 0;
    double d_m = 0;
    double d_b = 0;
    double d_p = 0;

    /// Throws std::invalid_argument unless every rate lies in [0, 1] and the
    /// erasure rates are below 1.
    void validate() const;
};

/// e_m + (1 - e_m) e_b: storage erasure, then Bell erasure on survivors.
double erasure_effective_rate(double e_m, double e_b);

/// The e_b with erasure_effective_rate(e_m, e_b) = 1/2, or 0 once e_m >= 1/2.
double threshold_curve_point(double e_m);

/// One minus the four canceling-or-clean terms for a step with depolarizing
/// preparation (d_p, twice), storage (d_m) and Bell (d_b) errors.
double depolarizing_effective_rate(double d_m, double d_b, double d_p);

/// 2 d_p + d_m + d_b.
double depolarizing_rate_bound(double d_m, double d_b, double d_p);

/// Probability that the product of four independent single-qubit errors
/// (old preparation d_p, storage d_m, new preparation d_p, Bell answer d_b;
/// each X, Y or Z with probability rate/3) is not the identity. Exact sum
/// over all 4^4 combinations.
double depolarizing_oracle_rate(double d_m, double d_b, double d_p);

/// Each of n qubits erased independently with probability p.
ErasurePattern sample_erasures(size_t n, double p, Rng &rng);

/// X, Y or Z uniformly with probability p on qubit q, identity otherwise.
void sample_depolarizing(PauliVec &target, size_t q, double p, Rng &rng);

/// Monte Carlo (or exact) estimate of a logical failure rate at one noise point.
struct SweepRow {
    uint64_t seed = 0;
    std::string model;
    std::string code;
    size_t n = 0;
    double param1 = 0;
    double param2 = 0;
    double param3 = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double rate = 0;
    double ci95 = 0;
};

/// max(1.96 sqrt(r (1 - r) / trials), 1 / trials) with r = failures / trials.
double ci95_halfwidth(uint64_t failures, uint64_t trials);

/// Fills rate and ci95 from failures and trials.
void finish_row(SweepRow &row);

/// Failure means the sampled erasure set is not correctable. Trial i uses the
/// stream derive_seed(seed, i).
SweepRow logical_erasure_rate(const StabilizerCode &code, double p, uint64_t trials, uint64_t seed);

inline constexpr size_t kMaxExactErasureQubits = 12;

/// Exact probability that an erasure set drawn at rate p is uncorrectable,
/// summed over all 2^n subsets. Throws SizeGuardError above
/// kMaxExactErasureQubits.
double logical_erasure_rate_exact(const StabilizerCode &code, double p);

/// Depolarizing teleportation steps decoded by the ML decoder. Failure means
/// the residual is a nontrivial logical operator.
SweepRow logical_depolarizing_rate(const StabilizerCode &code, const NoiseParams &params, uint64_t trials,
                                   uint64_t seed);

enum class ThresholdClass { below, above, indeterminate };
std::string to_string(ThresholdClass c);

struct LabeledCode {
    std::string label;
    StabilizerCode code;
};

/// (param1, param2, param3) = (e_m, e_b, 0) or (d_m, d_b, d_p).
struct GridPoint {
    double param1 = 0;
    double param2 = 0;
    double param3 = 0;
};

NoiseParams params_at(NoiseModel model, const GridPoint &point);
/// Per-qubit rate the code faces at a grid point.
double effective_rate(const NoiseParams &params);

struct PointClassification {
    GridPoint point;
    double effective_rate = 0;
    ThresholdClass verdict = ThresholdClass::indeterminate;
};

struct ThresholdSweep {
    /// Sorted by (param1, param2, param3, n).
    std::vector<SweepRow> rows;
    /// One per grid point, in grid order.
    std::vector<PointClassification> points;
    /// Midpoint effective rate between the largest "below" point and the
    /// smallest "above" point above it, when both exist.
    std::optional<double> empirical_boundary;
};

/// Runs every code at every grid point and compares the smallest and largest
/// code: "below" when the larger code's rate is lower with disjoint 95%
/// intervals, "above" when it is higher with disjoint intervals.
///
/// Each row's stream depends only on (seed, point values, code index).
ThresholdSweep threshold_region_sweep(NoiseModel model, const std::vector<LabeledCode> &codes,
                                      const std::vector<GridPoint> &grid, uint64_t trials, uint64_t seed);

/// Probability that more than t of l2 independent blocks fail at rate f1.
double concatenated_rate(double f1, size_t l2, size_t t);

/// C(l2, floor(l2/6)) exp(-c l1 floor(l2/6)).
double concatenation_bound(size_t l1, size_t l2, double c);

double binomial_coefficient(size_t n, size_t k);

struct OverheadParams {
    /// Computation length and target failure probability.
    double N = 0;
    double epsilon = 0;
    /// First- and second-level code sizes.
    double l1 = 0;
    double l2 = 0;
    /// Rate constants c, c', c'', c''' and d.
    double c = 0;
    double c1 = 0;
    double c2 = 0;
    double c3 = 0;
    double d = 0;

    void validate() const;
};

struct OverheadEntry {
    std::string label;
    std::string formula;
    double value = 0;
};

/// Closed-form requirements and bounds for one- and two-level schemes.
std::vector<OverheadEntry> overhead_calculator(const OverheadParams &params);
/// Looks up an entry by label; throws std::out_of_range when missing.
double overhead_value(const std::vector<OverheadEntry> &entries, const std::string &label);

/// Points (e_m, threshold_curve_point(e_m)) for e_m evenly spaced on [0, 1/2].
std::vector<std::pair<double, double>> erasure_threshold_curve(size_t resolution);

/// Default tolerable per-qubit rate for the depolarizing boundary.
inline constexpr double kDepolarizingTarget = 0.19;

/// The d_p with depolarizing_effective_rate(d, d, d_p) = target, found by
/// bisection to double precision; nullopt when no d_p in [0, 1/2] works.
std::optional<double> depolarizing_curve_point(double d, double target = kDepolarizingTarget);

/// Largest balanced d for which the boundary exists (d_p = 0 there).
double depolarizing_curve_end(double target = kDepolarizingTarget);

/// Points (d, d_p) on the balanced-rate boundary, d evenly spaced on [0, end].
std::vector<std::pair<double, double>> depolarizing_threshold_curve(size_t resolution,
                                                                     double target = kDepolarizingTarget);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double x);

inline constexpr const char *kCsvHeader = "seed,model,code,n,param1,param2,param3,trials,failures,rate,ci95";

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void write_json(std::ostream &out, const ThresholdSweep &sweep);

}  // namespace teleqec

#endif
