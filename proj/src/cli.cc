#include "teleqec/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "teleqec/code_io.h"
#include "teleqec/statevector.h"
#include "teleqec/teleport.h"

namespace teleqec {

namespace {

double round12(double x) {
    double r = std::round(x * 1e12) / 1e12;
    return r == 0 ? 0.0 : r;
}

double parse_number(const std::string &text) {
    size_t used = 0;
    double v;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw ConfigError("'" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw ConfigError("'" + text + "' is not a number");
    }
    return v;
}

std::string bracketed(const BitVec &v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); i++) {
        if (i) {
            out += ',';
        }
        out += v[i] ? '1' : '0';
    }
    return out + "]";
}

std::string qubit_list(const ErasurePattern &s) {
    std::string out = "{";
    bool first = true;
    for (size_t q : s.qubits()) {
        if (!first) {
            out += ',';
        }
        out += std::to_string(q);
        first = false;
    }
    return out + "}";
}

StabilizerCode ensure_logicals(const StabilizerCode &code) {
    if (code.k() == 1 && !code.logical()) {
        return code.with_logicals(logical_pair(code));
    }
    return code;
}

struct Outputs {
    std::ostream &out;
    std::ostream &err;
};

// Runs f, translating library exceptions into exit codes.
template <typename F>
int guarded(Outputs io, F &&f) {
    try {
        return f();
    } catch (const CodeFileError &e) {
        io.err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const CodeIoError &e) {
        io.err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const SizeGuardError &e) {
        io.err << "error: " << e.what() << '\n';
        return kExitGuard;
    } catch (const CodeValidationError &e) {
        io.err << "error: invalid code: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        io.err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

std::ostream &open_output(const std::string &path, std::ofstream &file, std::ostream &fallback) {
    if (path.empty() || path == "-") {
        return fallback;
    }
    file.open(path, std::ios::binary);
    if (!file) {
        throw CodeIoError("cannot open output file '" + path + "'");
    }
    return file;
}

NoiseModel parse_model(const std::string &text) {
    if (text == "erasure") {
        return NoiseModel::erasure;
    }
    if (text == "depolarizing") {
        return NoiseModel::depolarizing;
    }
    throw ConfigError("unknown model '" + text + "' (expected erasure or depolarizing)");
}

// check-code

struct CheckCodeArgs {
    std::string code;
};

int cmd_check_code(const CheckCodeArgs &args, Outputs io) {
    LabeledCode labeled = resolve_code(args.code, 0, 0);
    const StabilizerCode &code = labeled.code;
    auto &out = io.out;
    out << "code: " << labeled.label << '\n';
    out << "n: " << code.n() << '\n';
    out << "l: " << code.l() << '\n';
    out << "k: " << code.k() << '\n';
    for (size_t i = 0; i < code.l(); i++) {
        out << "  generator " << i << ": " << format_pauli(code.generator(i)) << '\n';
    }
    if (2 * code.n() <= kMaxDistanceColumns) {
        size_t d = min_distance(code);
        out << "distance: " << (d == kInfiniteDistance ? std::string("Infinite") : std::to_string(d)) << '\n';
    } else {
        out << "distance: skipped (more than " << kMaxDistanceColumns / 2 << " qubits)\n";
    }
    if (code.k() == 1) {
        LogicalPair pair = code.logical() ? *code.logical() : logical_pair(code);
        out << "logical X: " << format_pauli(pair.x) << '\n';
        out << "logical Z: " << format_pauli(pair.z) << '\n';
    }
    if (code.n() <= kMaxExactErasureQubits) {
        std::vector<size_t> total(code.n() + 1);
        std::vector<size_t> good(code.n() + 1);
        for (uint64_t mask = 0; mask < (uint64_t{1} << code.n()); mask++) {
            size_t s = std::popcount(mask);
            total[s]++;
            if (is_erasure_correctable(code, ErasurePattern::from_mask(mask, code.n()))) {
                good[s]++;
            }
        }
        out << "erasure correctability by |S|:\n";
        size_t all_up_to = 0;
        bool still_all = true;
        for (size_t s = 0; s <= code.n(); s++) {
            out << "  |S|=" << s << ": " << good[s] << " of " << total[s] << " correctable\n";
            if (still_all && good[s] == total[s]) {
                all_up_to = s;
            } else {
                still_all = false;
            }
        }
        out << "all erasure sets with |S| <= " << all_up_to << " correctable\n";
    } else {
        out << "erasure correctability: skipped (more than " << kMaxExactErasureQubits << " qubits)\n";
    }
    return kExitOk;
}

// sweep

struct SweepArgs {
    std::string model = "erasure";
    std::vector<std::string> codes;
    std::string em = "0";
    std::string eb = "0";
    std::string dm = "0";
    std::string db = "0";
    std::string dp = "0";
    bool diagonal = false;
    int64_t trials = 10000;
    uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

std::vector<GridPoint> build_grid(NoiseModel model, const SweepArgs &args) {
    std::vector<GridPoint> grid;
    if (model == NoiseModel::erasure) {
        auto em = parse_range(args.em);
        auto eb = parse_range(args.eb);
        for (double a : em) {
            if (args.diagonal) {
                grid.push_back({a, a, 0});
                continue;
            }
            for (double b : eb) {
                grid.push_back({a, b, 0});
            }
        }
    } else {
        auto dm = parse_range(args.dm);
        auto db = parse_range(args.db);
        auto dp = parse_range(args.dp);
        for (double a : dm) {
            for (double c : dp) {
                if (args.diagonal) {
                    grid.push_back({a, a, c});
                    continue;
                }
                for (double b : db) {
                    grid.push_back({a, b, c});
                }
            }
        }
    }
    return grid;
}

int cmd_sweep(const SweepArgs &args, Outputs io) {
    NoiseModel model = parse_model(args.model);
    if (args.trials < 1) {
        throw ConfigError("--trials must be at least 1");
    }
    if (args.format != "csv" && args.format != "json") {
        throw ConfigError("--format must be csv or json");
    }
    if (args.codes.empty()) {
        throw ConfigError("at least one --code is required");
    }
    std::vector<LabeledCode> codes;
    for (size_t i = 0; i < args.codes.size(); i++) {
        codes.push_back(resolve_code(args.codes[i], args.seed, i));
    }
    auto grid = build_grid(model, args);
    for (const auto &p : grid) {
        params_at(model, p).validate();
    }
    auto sweep = threshold_region_sweep(model, codes, grid, static_cast<uint64_t>(args.trials), args.seed);

    std::ofstream file;
    std::ostream &dest = open_output(args.out, file, io.out);
    if (args.format == "csv") {
        write_csv(dest, sweep.rows);
    } else {
        write_json(dest, sweep);
    }
    if (!dest) {
        throw CodeIoError("write failure");
    }
    for (const auto &p : sweep.points) {
        io.err << "point (" << format_double(p.point.param1) << ", " << format_double(p.point.param2) << ", "
               << format_double(p.point.param3) << ") effective rate " << format_double(p.effective_rate) << ": "
               << to_string(p.verdict) << '\n';
    }
    if (sweep.empirical_boundary) {
        io.err << "empirical boundary (effective rate): " << format_double(*sweep.empirical_boundary) << '\n';
    }
    return kExitOk;
}

// teleport-demo

// Decoder rate used when the demo has no depolarizing noise of its own.
constexpr double kDemoMlRate = 0.01;

struct DemoArgs {
    std::string code = "five_qubit";
    uint64_t seed = 0;
    double em = 0;
    double eb = 0;
    double dm = 0;
    double db = 0;
    double dp = 0;
    std::string inject;
    std::string erase;
    bool dense = false;
};

ErasurePattern parse_erase_list(const std::string &text, size_t n) {
    ErasurePattern out(n);
    if (text.empty()) {
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = parse_number(item);
        if (v < 0 || v != std::floor(v) || v >= static_cast<double>(n)) {
            throw ConfigError("erased qubit '" + item + "' is not in 0.." + std::to_string(n - 1));
        }
        out.insert(static_cast<size_t>(v));
    }
    return out;
}

int cmd_teleport_demo(const DemoArgs &args, Outputs io) {
    LabeledCode labeled = resolve_code(args.code, args.seed, 0);
    const StabilizerCode &code = labeled.code;
    const size_t n = code.n();
    NoiseParams noise;
    noise.e_m = args.em;
    noise.e_b = args.eb;
    noise.d_m = args.dm;
    noise.d_b = args.db;
    noise.d_p = args.dp;
    noise.validate();
    if (args.dense && 3 * n > kMaxDenseQubits) {
        throw SizeGuardError("--dense needs 3n <= " + std::to_string(kMaxDenseQubits) + ", code has n = " +
                             std::to_string(n));
    }
    PauliVec injected(n);
    if (!args.inject.empty()) {
        injected = parse_pauli(args.inject);
        if (injected.num_qubits() != n) {
            throw ConfigError("--inject needs " + std::to_string(n) + " qubits");
        }
    }

    Rng rng(derive_seed(args.seed, 0));
    auto &out = io.out;
    out << "code: " << labeled.label << " [[" << n << "," << code.k() << "]]\n";

    // Storage: forced and sampled erasures become fully random errors.
    ErasurePattern stored = parse_erase_list(args.erase, n);
    stored |= sample_erasures(n, noise.e_m, rng);
    PauliVec incoming = injected;
    for (size_t q = 0; q < n; q++) {
        sample_depolarizing(incoming, q, noise.d_p, rng);
        sample_depolarizing(incoming, q, noise.d_m, rng);
        if (stored.contains(q)) {
            incoming.set_qubit(q, incoming.x_bit(q) != static_cast<bool>(rng() >> 63),
                               incoming.z_bit(q) != static_cast<bool>(rng() >> 63));
        }
    }
    out << "incoming error: " << format_pauli(incoming) << '\n';
    out << "storage erasures: " << qubit_list(stored) << '\n';

    const Syndrome no_offset(code.l());
    BellRecord record = sample_bell_record(code, incoming, no_offset, rng);
    PauliVec bell_noise(n);
    for (size_t q = 0; q < n; q++) {
        sample_depolarizing(bell_noise, q, noise.d_p, rng);
        sample_depolarizing(bell_noise, q, noise.d_b, rng);
        record.corrupt(q, bell_noise);
    }
    ErasurePattern bell_erased(n);
    for (size_t q = 0; q < n; q++) {
        if (!stored.contains(q) && bernoulli(rng, noise.e_b)) {
            bell_erased.insert(q);
        }
    }
    record.erase(bell_erased);

    out << "bell outcomes (xx zz):";
    for (size_t q = 0; q < n; q++) {
        const auto &pair = record.pairs[q];
        out << " q" << q << "=";
        if (pair.learned) {
            out << pair.learned->xx << pair.learned->zz;
        } else {
            out << "erased";
        }
    }
    out << '\n';

    StepOptions options;
    options.extra_erasures = stored;
    bool erasing = !stored.empty() || !bell_erased.empty();
    if (!erasing) {
        if (n > kMaxMlDecodeQubits) {
            throw SizeGuardError("maximum-likelihood decoding needs n <= " + std::to_string(kMaxMlDecodeQubits));
        }
        options.decoder = DecoderKind::depolarizing_ml;
        options.ml_rate = std::max(depolarizing_oracle_rate(noise.d_m, noise.d_b, noise.d_p), kDemoMlRate);
    }
    StepReport report;
    try {
        report = teleport_ec_step(code, incoming, record, no_offset, options);
    } catch (const InconsistentSyndrome &) {
        out << "g S Q^T: " << bracketed(syndrome_shift(record.learned_correction(), code)) << '\n';
        out << "decoder: erasure, syndrome not explained by the erased qubits\n";
        out << "uncorrected: error outside the erased qubits\n";
        return kExitOk;
    }
    out << "g: " << format_pauli(report.teleport_correction) << '\n';
    out << "g S Q^T: " << bracketed(report.inferred_syndrome) << '\n';
    out << "erased: " << qubit_list(report.erased) << '\n';
    out << "decoder: "
        << (options.decoder == DecoderKind::erasure ? "erasure" : "depolarizing maximum likelihood");
    if (report.status == StepStatus::detected_logical_erasure) {
        out << ", no correction\n";
    } else {
        out << ", h = " << format_pauli(report.correction) << '\n';
    }
    out << "residual: " << format_pauli(report.residual) << '\n';
    switch (report.status) {
        case StepStatus::ok:
            out << "residual in C; syndrome " << bracketed(report.inferred_syndrome) << '\n';
            break;
        case StepStatus::logical_error:
            out << "residual is a logical operator (in C^perp but not C)\n";
            break;
        case StepStatus::detected_logical_erasure:
            out << "detected logical erasure\n";
            break;
    }

    if (args.dense) {
        Rng dense_rng(derive_seed(args.seed, 1));
        DenseState input = random_code_state(code, Syndrome(code.l()), dense_rng);
        auto result = dense_teleport_ec(code, input, injected, dense_rng);
        double f = fidelity(result.output, result.direct_state);
        bool same = result.direct_probability >= kDegenerateThreshold && f >= 1 - 1e-9;
        out << "dense g: " << format_pauli(result.g) << '\n';
        out << "dense g S Q^T: " << bracketed(result.inferred_syndrome) << '\n';
        out << "direct probability: " << format_double(result.direct_probability) << '\n';
        out << "fidelity: " << format_double(f) << '\n';
        out << "verdict: " << (same ? "equivalent" : "NOT equivalent") << ", syndrome "
            << bracketed(result.inferred_syndrome) << '\n';
    }
    return kExitOk;
}

// curve

struct CurveArgs {
    std::string model = "erasure";
    int64_t resolution = 11;
    double target = kDepolarizingTarget;
    std::string out;
};

int cmd_curve(const CurveArgs &args, Outputs io) {
    NoiseModel model = parse_model(args.model);
    if (args.resolution < 2) {
        throw ConfigError("--resolution must be at least 2");
    }
    if (!(args.target > 0 && args.target < 1)) {
        throw ConfigError("--target must lie in (0, 1)");
    }
    std::ofstream file;
    std::ostream &dest = open_output(args.out, file, io.out);
    if (model == NoiseModel::erasure) {
        dest << "e_m,e_b\n";
        for (auto [a, b] : erasure_threshold_curve(static_cast<size_t>(args.resolution))) {
            dest << format_double(a) << ',' << format_double(b) << '\n';
        }
    } else {
        dest << "d,d_p\n";
        for (auto [a, b] : depolarizing_threshold_curve(static_cast<size_t>(args.resolution), args.target)) {
            dest << format_double(a) << ',' << format_double(b) << '\n';
        }
    }
    if (!dest) {
        throw CodeIoError("write failure");
    }
    return kExitOk;
}

}  // namespace

std::vector<double> parse_range(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() == 1 && !text.empty() && text.back() != ':') {
        return {round12(parse_number(parts[0]))};
    }
    if (parts.size() != 3 || text.back() == ':') {
        throw ConfigError("range '" + text + "' must be start:end:step or a single value");
    }
    double start = parse_number(parts[0]);
    double end = parse_number(parts[1]);
    double step = parse_number(parts[2]);
    if (!(step > 0)) {
        throw ConfigError("range step must be positive in '" + text + "'");
    }
    if (end < start) {
        throw ConfigError("range end is below its start in '" + text + "'");
    }
    auto count = static_cast<size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    if (count > 100000) {
        throw ConfigError("range '" + text + "' has too many points");
    }
    std::vector<double> out;
    for (size_t i = 0; i < count; i++) {
        out.push_back(round12(start + static_cast<double>(i) * step));
    }
    return out;
}

LabeledCode resolve_code(const std::string &source, uint64_t seed, uint64_t index) {
    auto names = library_code_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) {
        return {source, library_code(source)};
    }
    if (source.rfind("random:", 0) == 0) {
        std::string spec = source.substr(7);
        auto comma = spec.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("random code needs the form random:<n>,<k>");
        }
        double n = parse_number(spec.substr(0, comma));
        double k = parse_number(spec.substr(comma + 1));
        if (n < 1 || k < 0 || k > n || n != std::floor(n) || k != std::floor(k) || n > 64) {
            throw ConfigError("random code needs integers 0 <= k <= n <= 64");
        }
        Rng rng(derive_seed(seed, index));
        auto code = random_code(static_cast<size_t>(n), static_cast<size_t>(k), rng);
        return {source, ensure_logicals(code)};
    }
    std::string path = source.rfind("file:", 0) == 0 ? source.substr(5) : source;
    return {source, ensure_logicals(load_code_file(path))};
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Teleportation-based quantum error correction simulator", "teleqec"};
    app.require_subcommand(1);
    Outputs io{out, err};

    CheckCodeArgs check_args;
    auto *check = app.add_subcommand("check-code", "Validate a code and report its parameters");
    check->add_option("--code,code", check_args.code,
                      "bell_pair | five_qubit | four_one_two | random:<n>,<k> | file:<path>")
        ->required();

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo logical failure rates over a noise grid");
    // Config files are read by the root app; the [sweep] section holds these flags.
    app.set_config("--config", "", "TOML file with a [sweep] section; command-line flags take precedence");
    sweep->fallthrough();
    sweep->add_option("--model", sweep_args.model, "erasure or depolarizing")->capture_default_str();
    sweep->add_option("--code", sweep_args.codes, "Code source; repeat for several sizes")->required();
    sweep->add_option("--em", sweep_args.em, "Storage erasure rate range start:end:step")->capture_default_str();
    sweep->add_option("--eb", sweep_args.eb, "Bell erasure rate range")->capture_default_str();
    sweep->add_option("--dm", sweep_args.dm, "Storage depolarizing rate range")->capture_default_str();
    sweep->add_option("--db", sweep_args.db, "Bell error rate range")->capture_default_str();
    sweep->add_option("--dp", sweep_args.dp, "Preparation error rate range")->capture_default_str();
    sweep->add_flag("--diagonal", sweep_args.diagonal, "Tie the Bell rate to the storage rate");
    sweep->add_option("--trials", sweep_args.trials, "Trials per grid point and code")->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "Base seed")->required();
    sweep->add_option("--out", sweep_args.out, "Output path (stdout when omitted)");
    sweep->add_option("--format", sweep_args.format, "csv or json")->capture_default_str();

    DemoArgs demo_args;
    auto *demo = app.add_subcommand("teleport-demo", "Trace one teleportation error-correction step");
    demo->add_option("--code", demo_args.code, "Code source")->capture_default_str();
    demo->add_option("--seed", demo_args.seed, "Seed")->capture_default_str();
    demo->add_option("--em", demo_args.em, "Storage erasure rate");
    demo->add_option("--eb", demo_args.eb, "Bell erasure rate");
    demo->add_option("--dm", demo_args.dm, "Storage depolarizing rate");
    demo->add_option("--db", demo_args.db, "Bell error rate");
    demo->add_option("--dp", demo_args.dp, "Preparation error rate");
    demo->add_option("--inject", demo_args.inject, "Pauli error added to the incoming block, e.g. XIIII");
    demo->add_option("--erase", demo_args.erase, "Comma-separated qubits erased during storage");
    demo->add_flag("--dense", demo_args.dense, "Also run the dense state-vector check");

    CurveArgs curve_args;
    auto *curve = app.add_subcommand("curve", "Analytic threshold boundary");
    curve->add_option("--model", curve_args.model, "erasure or depolarizing")->capture_default_str();
    curve->add_option("--resolution", curve_args.resolution, "Number of points")->capture_default_str();
    curve->add_option("--target", curve_args.target, "Tolerable per-qubit rate (depolarizing)")
        ->capture_default_str();
    curve->add_option("--out", curve_args.out, "Output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (check->parsed()) {
        return guarded(io, [&] { return cmd_check_code(check_args, io); });
    }
    if (sweep->parsed()) {
        return guarded(io, [&] { return cmd_sweep(sweep_args, io); });
    }
    if (demo->parsed()) {
        return guarded(io, [&] { return cmd_teleport_demo(demo_args, io); });
    }
    return guarded(io, [&] { return cmd_curve(curve_args, io); });
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv;
    argv.push_back("teleqec");
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace teleqec
