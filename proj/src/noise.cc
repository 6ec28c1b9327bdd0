#include "teleqec/noise.h"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <tuple>

#include "teleqec/teleport.h"

namespace teleqec {

namespace {

void check_rate(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

// Single-qubit error distribution: index 0 = I, 1..3 = X, Z, Y.
std::array<double, 4> depolarizing_distribution(double p) {
    return {1 - p, p / 3, p / 3, p / 3};
}

uint64_t point_key(const GridPoint &point, size_t code_index) {
    uint64_t h = derive_seed(std::bit_cast<uint64_t>(point.param1), std::bit_cast<uint64_t>(point.param2));
    h = derive_seed(h, std::bit_cast<uint64_t>(point.param3));
    return derive_seed(h, code_index);
}

}  // namespace

std::string to_string(NoiseModel model) {
    return model == NoiseModel::erasure ? "erasure" : "depolarizing";
}

void NoiseParams::validate() const {
    check_rate(e_m, "e_m");
    check_rate(e_b, "e_b");
    check_rate(d_m, "d_m");
    check_rate(d_b, "d_b");
    check_rate(d_p, "d_p");
    if (e_m >= 1.0 || e_b >= 1.0) {
        throw std::invalid_argument("erasure rates must be strictly less than 1");
    }
}

double erasure_effective_rate(double e_m, double e_b) {
    check_rate(e_m, "e_m");
    check_rate(e_b, "e_b");
    return e_m + (1 - e_m) * e_b;
}

double threshold_curve_point(double e_m) {
    check_rate(e_m, "e_m");
    if (e_m >= 0.5) {
        return 0.0;
    }
    return (0.5 - e_m) / (1 - e_m);
}

double depolarizing_effective_rate(double d_m, double d_b, double d_p) {
    check_rate(d_m, "d_m");
    check_rate(d_b, "d_b");
    check_rate(d_p, "d_p");
    double clean = (1 - d_p) * (1 - d_m) * (1 - d_p) * (1 - d_b);
    double storage_cancels = d_p * (d_m / 3) * (1 - d_p) * (1 - d_b);
    double bell_cancels_new = (1 - d_p) * (1 - d_m) * d_p * (d_b / 3);
    double bell_cancels_old = (d_p * (1 - d_m / 3) + (1 - d_p) * d_m) * (1 - d_p) * (d_b / 3);
    return 1 - (clean + storage_cancels + bell_cancels_new + bell_cancels_old);
}

double depolarizing_rate_bound(double d_m, double d_b, double d_p) {
    return 2 * d_p + d_m + d_b;
}

double depolarizing_oracle_rate(double d_m, double d_b, double d_p) {
    check_rate(d_m, "d_m");
    check_rate(d_b, "d_b");
    check_rate(d_p, "d_p");
    const std::array<std::array<double, 4>, 4> sources = {
        depolarizing_distribution(d_p), depolarizing_distribution(d_m), depolarizing_distribution(d_p),
        depolarizing_distribution(d_b)};
    // With index bits (x, z), composing Paulis mod phase is XOR of indices.
    double identity = 0;
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            for (int c = 0; c < 4; c++) {
                int d = a ^ b ^ c;
                identity += sources[0][a] * sources[1][b] * sources[2][c] * sources[3][d];
            }
        }
    }
    return 1 - identity;
}

ErasurePattern sample_erasures(size_t n, double p, Rng &rng) {
    check_rate(p, "erasure rate");
    ErasurePattern out(n);
    for (size_t q = 0; q < n; q++) {
        if (bernoulli(rng, p)) {
            out.insert(q);
        }
    }
    return out;
}

void sample_depolarizing(PauliVec &target, size_t q, double p, Rng &rng) {
    if (!bernoulli(rng, p)) {
        return;
    }
    static constexpr bool kX[3] = {true, false, true};
    static constexpr bool kZ[3] = {false, true, true};
    size_t which = rng() % 3;
    target.set_qubit(q, target.x_bit(q) != kX[which], target.z_bit(q) != kZ[which]);
}

double ci95_halfwidth(uint64_t failures, uint64_t trials) {
    if (trials == 0) {
        throw std::invalid_argument("need at least one trial");
    }
    double n = static_cast<double>(trials);
    double r = static_cast<double>(failures) / n;
    return std::max(1.96 * std::sqrt(r * (1 - r) / n), 1.0 / n);
}

void finish_row(SweepRow &row) {
    if (row.failures > row.trials) {
        throw std::logic_error("more failures than trials");
    }
    row.rate = static_cast<double>(row.failures) / static_cast<double>(row.trials);
    row.ci95 = ci95_halfwidth(row.failures, row.trials);
}

SweepRow logical_erasure_rate(const StabilizerCode &code, double p, uint64_t trials, uint64_t seed) {
    check_rate(p, "erasure rate");
    SweepRow row;
    row.seed = seed;
    row.model = to_string(NoiseModel::erasure);
    row.n = code.n();
    row.param1 = p;
    row.trials = trials;
    for (uint64_t i = 0; i < trials; i++) {
        Rng rng(derive_seed(seed, i));
        if (!is_erasure_correctable(code, sample_erasures(code.n(), p, rng))) {
            row.failures++;
        }
    }
    finish_row(row);
    return row;
}

double logical_erasure_rate_exact(const StabilizerCode &code, double p) {
    check_rate(p, "erasure rate");
    const size_t n = code.n();
    if (n > kMaxExactErasureQubits) {
        throw SizeGuardError("exact erasure sum over 2^" + std::to_string(n) + " subsets exceeds the limit of 2^" +
                             std::to_string(kMaxExactErasureQubits));
    }
    double total = 0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
        auto s = ErasurePattern::from_mask(mask, n);
        if (!is_erasure_correctable(code, s)) {
            int k = std::popcount(mask);
            total += std::pow(p, k) * std::pow(1 - p, static_cast<double>(n - k));
        }
    }
    return total;
}

SweepRow logical_depolarizing_rate(const StabilizerCode &code, const NoiseParams &params, uint64_t trials,
                                   uint64_t seed) {
    params.validate();
    if (code.n() > kMaxMlDecodeQubits) {
        throw SizeGuardError("ML decoding is limited to " + std::to_string(kMaxMlDecodeQubits) + " qubits");
    }
    SweepRow row;
    row.seed = seed;
    row.model = to_string(NoiseModel::depolarizing);
    row.n = code.n();
    row.param1 = params.d_m;
    row.param2 = params.d_b;
    row.param3 = params.d_p;
    row.trials = trials;

    const size_t n = code.n();
    DepolarizingDecoder decoder(code, depolarizing_oracle_rate(params.d_m, params.d_b, params.d_p));
    StepOptions options;
    options.decoder = DecoderKind::depolarizing_ml;
    options.ml_table = &decoder;
    const Syndrome no_offset(code.l());
    for (uint64_t i = 0; i < trials; i++) {
        Rng rng(derive_seed(seed, i));
        PauliVec incoming(n);
        PauliVec bell_noise(n);
        for (size_t q = 0; q < n; q++) {
            sample_depolarizing(incoming, q, params.d_p, rng);
            sample_depolarizing(incoming, q, params.d_m, rng);
            sample_depolarizing(bell_noise, q, params.d_p, rng);
            sample_depolarizing(bell_noise, q, params.d_b, rng);
        }
        BellRecord record = sample_bell_record(code, incoming, no_offset, rng);
        for (size_t q = 0; q < n; q++) {
            record.corrupt(q, bell_noise);
        }
        if (teleport_ec_step(code, incoming, record, no_offset, options).status == StepStatus::logical_error) {
            row.failures++;
        }
    }
    finish_row(row);
    return row;
}

std::string to_string(ThresholdClass c) {
    switch (c) {
        case ThresholdClass::below:
            return "below";
        case ThresholdClass::above:
            return "above";
        case ThresholdClass::indeterminate:
            return "indeterminate";
    }
    return "unknown";
}

NoiseParams params_at(NoiseModel model, const GridPoint &point) {
    NoiseParams params;
    params.model = model;
    if (model == NoiseModel::erasure) {
        params.e_m = point.param1;
        params.e_b = point.param2;
    } else {
        params.d_m = point.param1;
        params.d_b = point.param2;
        params.d_p = point.param3;
    }
    return params;
}

double effective_rate(const NoiseParams &params) {
    if (params.model == NoiseModel::erasure) {
        return erasure_effective_rate(params.e_m, params.e_b);
    }
    return depolarizing_oracle_rate(params.d_m, params.d_b, params.d_p);
}

ThresholdSweep threshold_region_sweep(NoiseModel model, const std::vector<LabeledCode> &codes,
                                      const std::vector<GridPoint> &grid, uint64_t trials, uint64_t seed) {
    if (codes.empty()) {
        throw std::invalid_argument("need at least one code");
    }
    if (trials == 0) {
        throw std::invalid_argument("need at least one trial");
    }
    size_t smallest = 0;
    size_t largest = 0;
    for (size_t i = 0; i < codes.size(); i++) {
        if (codes[i].code.n() < codes[smallest].code.n()) {
            smallest = i;
        }
        if (codes[i].code.n() > codes[largest].code.n()) {
            largest = i;
        }
    }

    ThresholdSweep sweep;
    for (const auto &point : grid) {
        NoiseParams params = params_at(model, point);
        params.validate();
        std::vector<SweepRow> point_rows;
        for (size_t i = 0; i < codes.size(); i++) {
            uint64_t row_seed = derive_seed(seed, point_key(point, i));
            SweepRow row = model == NoiseModel::erasure
                               ? logical_erasure_rate(codes[i].code, effective_rate(params), trials, row_seed)
                               : logical_depolarizing_rate(codes[i].code, params, trials, row_seed);
            row.seed = seed;
            row.code = codes[i].label;
            row.param1 = point.param1;
            row.param2 = point.param2;
            row.param3 = point.param3;
            point_rows.push_back(row);
        }
        PointClassification verdict{point, effective_rate(params), ThresholdClass::indeterminate};
        if (smallest != largest && codes[smallest].code.n() != codes[largest].code.n()) {
            const SweepRow &small = point_rows[smallest];
            const SweepRow &large = point_rows[largest];
            if (large.rate + large.ci95 < small.rate - small.ci95) {
                verdict.verdict = ThresholdClass::below;
            } else if (large.rate - large.ci95 > small.rate + small.ci95) {
                verdict.verdict = ThresholdClass::above;
            }
        }
        sweep.points.push_back(verdict);
        sweep.rows.insert(sweep.rows.end(), point_rows.begin(), point_rows.end());
    }
    std::stable_sort(sweep.rows.begin(), sweep.rows.end(), [](const SweepRow &a, const SweepRow &b) {
        return std::tie(a.param1, a.param2, a.param3, a.n) < std::tie(b.param1, b.param2, b.param3, b.n);
    });

    std::optional<double> last_below;
    for (const auto &p : sweep.points) {
        if (p.verdict == ThresholdClass::below && (!last_below || p.effective_rate > *last_below)) {
            last_below = p.effective_rate;
        }
    }
    if (last_below) {
        std::optional<double> first_above;
        for (const auto &p : sweep.points) {
            if (p.verdict == ThresholdClass::above && p.effective_rate > *last_below &&
                (!first_above || p.effective_rate < *first_above)) {
                first_above = p.effective_rate;
            }
        }
        if (first_above) {
            sweep.empirical_boundary = 0.5 * (*last_below + *first_above);
        }
    }
    return sweep;
}

double binomial_coefficient(size_t n, size_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    double out = 1;
    for (size_t i = 1; i <= k; i++) {
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return out;
}

double concatenated_rate(double f1, size_t l2, size_t t) {
    check_rate(f1, "inner failure rate");
    if (t > l2) {
        throw std::invalid_argument("correctable count exceeds the block count");
    }
    double tail = 0;
    for (size_t j = t + 1; j <= l2; j++) {
        tail += binomial_coefficient(l2, j) * std::pow(f1, static_cast<double>(j)) *
                std::pow(1 - f1, static_cast<double>(l2 - j));
    }
    return std::min(tail, 1.0);
}

double concatenation_bound(size_t l1, size_t l2, double c) {
    size_t t = l2 / 6;
    return binomial_coefficient(l2, t) * std::exp(-c * static_cast<double>(l1) * static_cast<double>(t));
}

void OverheadParams::validate() const {
    for (double v : {N, epsilon, l1, l2, c, c1, c2, c3, d}) {
        if (!(v > 0) || !std::isfinite(v)) {
            throw std::invalid_argument("overhead parameters must be positive");
        }
    }
}

std::vector<OverheadEntry> overhead_calculator(const OverheadParams &p) {
    p.validate();
    const double log_ratio = std::log(p.N / p.epsilon);
    const double n_single = log_ratio / p.c;
    const double n_two = log_ratio / p.c1;
    std::vector<OverheadEntry> out;
    out.push_back({"log_N_over_epsilon", "ln(N/eps)", log_ratio});
    out.push_back({"single_level_n", "ln(N/eps)/c", n_single});
    out.push_back({"single_level_log_overhead", "c''*n^2 with n = ln(N/eps)/c", p.c2 * n_single * n_single});
    out.push_back({"first_level_log_overhead", "c''*l1^2", p.c2 * p.l1 * p.l1});
    out.push_back({"concatenated_error_bound", "C(l2, floor(l2/6))*exp(-c*l1*floor(l2/6))",
                   concatenation_bound(static_cast<size_t>(p.l1), static_cast<size_t>(p.l2), p.c)});
    out.push_back({"two_level_n", "ln(N/eps)/c'", n_two});
    out.push_back({"step_success", "1 - exp(-c'''*l1)", 1 - std::exp(-p.c3 * p.l1)});
    out.push_back({"second_level_prep_success", "1 - c'*l2^2*exp(-c'''*l1)",
                   1 - p.c1 * p.l2 * p.l2 * std::exp(-p.c3 * p.l1)});
    out.push_back({"two_level_overhead_bound", "2*c'*l2^2*exp(d*n) with n = ln(N/eps)/c'",
                   2 * p.c1 * p.l2 * p.l2 * std::exp(p.d * n_two)});
    out.push_back({"polynomial_degree", "d/c' (slope of ln(bound) in ln(N/eps))", p.d / p.c1});
    return out;
}

double overhead_value(const std::vector<OverheadEntry> &entries, const std::string &label) {
    for (const auto &e : entries) {
        if (e.label == label) {
            return e.value;
        }
    }
    throw std::out_of_range("no overhead entry named " + label);
}

std::vector<std::pair<double, double>> erasure_threshold_curve(size_t resolution) {
    if (resolution < 2) {
        throw std::invalid_argument("curve resolution must be at least 2");
    }
    std::vector<std::pair<double, double>> out;
    for (size_t i = 0; i < resolution; i++) {
        double e_m = 0.5 * static_cast<double>(i) / static_cast<double>(resolution - 1);
        out.emplace_back(e_m, threshold_curve_point(e_m));
    }
    return out;
}

std::optional<double> depolarizing_curve_point(double d, double target) {
    auto f = [&](double d_p) { return depolarizing_effective_rate(d, d, d_p) - target; };
    double lo = 0;
    double hi = 0.5;
    if (f(lo) > 0 || f(hi) < 0) {
        return std::nullopt;
    }
    for (int iteration = 0; iteration < 100; iteration++) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double depolarizing_curve_end(double target) {
    auto f = [&](double d) { return depolarizing_effective_rate(d, d, 0) - target; };
    double lo = 0;
    double hi = 0.5;
    for (int iteration = 0; iteration < 100; iteration++) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return lo;
}

std::vector<std::pair<double, double>> depolarizing_threshold_curve(size_t resolution, double target) {
    if (resolution < 2) {
        throw std::invalid_argument("curve resolution must be at least 2");
    }
    const double end = depolarizing_curve_end(target);
    std::vector<std::pair<double, double>> out;
    for (size_t i = 0; i < resolution; i++) {
        double d = end * static_cast<double>(i) / static_cast<double>(resolution - 1);
        auto d_p = depolarizing_curve_point(d, target);
        out.emplace_back(d, d_p.value_or(0.0));
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw std::runtime_error("cannot format double");
    }
    return std::string(buf, end);
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << kCsvHeader << '\n';
    for (const auto &r : rows) {
        out << r.seed << ',' << r.model << ',' << r.code << ',' << r.n << ',' << format_double(r.param1) << ','
            << format_double(r.param2) << ',' << format_double(r.param3) << ',' << r.trials << ',' << r.failures
            << ',' << format_double(r.rate) << ',' << format_double(r.ci95) << '\n';
    }
}

void write_json(std::ostream &out, const ThresholdSweep &sweep) {
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto &r : sweep.rows) {
        nlohmann::ordered_json row;
        row["seed"] = r.seed;
        row["model"] = r.model;
        row["code"] = r.code;
        row["n"] = r.n;
        row["param1"] = r.param1;
        row["param2"] = r.param2;
        row["param3"] = r.param3;
        row["trials"] = r.trials;
        row["failures"] = r.failures;
        row["rate"] = r.rate;
        row["ci95"] = r.ci95;
        doc["rows"].push_back(std::move(row));
    }
    doc["points"] = nlohmann::ordered_json::array();
    for (const auto &p : sweep.points) {
        nlohmann::ordered_json point;
        point["param1"] = p.point.param1;
        point["param2"] = p.point.param2;
        point["param3"] = p.point.param3;
        point["effective_rate"] = p.effective_rate;
        point["verdict"] = to_string(p.verdict);
        doc["points"].push_back(std::move(point));
    }
    if (sweep.empirical_boundary) {
        doc["empirical_boundary"] = *sweep.empirical_boundary;
    } else {
        doc["empirical_boundary"] = nullptr;
    }
    out << doc.dump(2) << '\n';
}

}  // namespace teleqec
