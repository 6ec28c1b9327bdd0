#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "teleqec/cli.h"
#include "teleqec/noise.h"
#include "teleqec/stabilizer_code.h"
#include "teleqec/statevector.h"

namespace py = pybind11;
using namespace teleqec;

namespace {

std::vector<int> to_list(const BitVec &v) {
    std::vector<int> out(v.size());
    for (size_t i = 0; i < v.size(); i++) {
        out[i] = v[i];
    }
    return out;
}

BitVec from_list(const std::vector<int> &bits) {
    BitVec out(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        out.set(i, bits[i] != 0);
    }
    return out;
}

ErasurePattern pattern_of(const StabilizerCode &code, const std::vector<size_t> &qubits) {
    ErasurePattern s(code.n());
    for (size_t q : qubits) {
        if (q >= code.n()) {
            throw py::index_error("erased qubit out of range");
        }
        s.insert(q);
    }
    return s;
}

py::dict row_dict(const SweepRow &row) {
    py::dict d;
    d["trials"] = row.trials;
    d["failures"] = row.failures;
    d["rate"] = row.rate;
    d["ci95"] = row.ci95;
    return d;
}

}  // namespace

PYBIND11_MODULE(_teleqec, m) {
    m.doc() = "Pauli algebra, stabilizer codes and teleportation error correction.";

    m.def(
        "multiply",
        [](const std::string &a, int pa, const std::string &b, int pb) {
            auto r = multiply({parse_pauli(a), pa}, {parse_pauli(b), pb});
            return py::make_tuple(format_pauli(r.v), r.phase_exp & 3);
        },
        py::arg("a"), py::arg("phase_a"), py::arg("b"), py::arg("phase_b"),
        "Product i^pa P(a) i^pb P(b) as (pauli, phase exponent mod 4).");
    m.def(
        "commutes", [](const std::string &a, const std::string &b) { return commutes(parse_pauli(a), parse_pauli(b)); },
        py::arg("a"), py::arg("b"));
    m.def(
        "nu", [](const std::string &s) { return nu(parse_pauli(s)); }, py::arg("pauli"),
        "Number of Y factors mod 4.");

    py::class_<StabilizerCode>(m, "Code")
        .def_static(
            "from_rows", [](const std::vector<std::string> &rows) { return code_from_strings(rows); }, py::arg("rows"))
        .def_static(
            "library", [](const std::string &name) { return library_code(name); }, py::arg("name"))
        .def_static(
            "random",
            [](size_t n, size_t k, uint64_t seed) {
                Rng rng(seed);
                return random_code(n, k, rng);
            },
            py::arg("n"), py::arg("k"), py::arg("seed"))
        .def_property_readonly("n", &StabilizerCode::n)
        .def_property_readonly("k", &StabilizerCode::k)
        .def_property_readonly("generators",
                               [](const StabilizerCode &c) {
                                   std::vector<std::string> out;
                                   for (size_t i = 0; i < c.l(); i++) {
                                       out.push_back(format_pauli(c.generator(i)));
                                   }
                                   return out;
                               })
        .def(
            "syndrome",
            [](const StabilizerCode &c, const std::string &p) { return to_list(syndrome_shift(parse_pauli(p), c)); },
            py::arg("pauli"))
        .def(
            "min_distance",
            [](const StabilizerCode &c) -> py::object {
                size_t d = min_distance(c);
                if (d == kInfiniteDistance) {
                    return py::float_(std::numeric_limits<double>::infinity());
                }
                return py::int_(d);
            })
        .def(
            "is_erasure_correctable",
            [](const StabilizerCode &c, const std::vector<size_t> &qubits) {
                return is_erasure_correctable(c, pattern_of(c, qubits));
            },
            py::arg("qubits"))
        .def(
            "logical_erasure_rate_exact", [](const StabilizerCode &c, double p) { return logical_erasure_rate_exact(c, p); },
            py::arg("p"))
        .def(
            "logical_erasure_rate",
            [](const StabilizerCode &c, double p, uint64_t trials, uint64_t seed) {
                return row_dict(logical_erasure_rate(c, p, trials, seed));
            },
            py::arg("p"), py::arg("trials"), py::arg("seed"))
        .def(
            "logical_depolarizing_rate",
            [](const StabilizerCode &c, double d_m, double d_b, double d_p, uint64_t trials, uint64_t seed) {
                NoiseParams params;
                params.model = NoiseModel::depolarizing;
                params.d_m = d_m;
                params.d_b = d_b;
                params.d_p = d_p;
                return row_dict(logical_depolarizing_rate(c, params, trials, seed));
            },
            py::arg("d_m"), py::arg("d_b"), py::arg("d_p"), py::arg("trials"), py::arg("seed"));

    m.def(
        "dense_teleport",
        [](const StabilizerCode &code, const std::vector<std::complex<double>> &amplitudes, const std::string &injected,
           uint64_t seed) {
            Rng rng(seed);
            auto r = dense_teleport_ec(code, DenseState::from_amplitudes(amplitudes), parse_pauli(injected), rng);
            py::dict d;
            d["correction"] = format_pauli(r.g);
            d["syndrome"] = to_list(r.inferred_syndrome);
            d["output"] = r.output.amplitudes();
            d["direct_probability"] = r.direct_probability;
            d["fidelity"] = fidelity(r.output, r.direct_state);
            return d;
        },
        py::arg("code"), py::arg("amplitudes"), py::arg("injected"), py::arg("seed"),
        "Teleports a state through a code block after injecting a Pauli error.");
    m.def(
        "eigenvalue_exponent",
        [](const StabilizerCode &code, const std::vector<int> &e, const std::vector<int> &x) {
            return eigenvalue_exponent(code, from_list(e), from_list(x)).total();
        },
        py::arg("code"), py::arg("syndrome"), py::arg("selection"));

    m.def("erasure_effective_rate", &erasure_effective_rate, py::arg("e_m"), py::arg("e_b"));
    m.def("threshold_curve_point", &threshold_curve_point, py::arg("e_m"));
    m.def("depolarizing_effective_rate", &depolarizing_effective_rate, py::arg("d_m"), py::arg("d_b"), py::arg("d_p"));
    m.def("depolarizing_oracle_rate", &depolarizing_oracle_rate, py::arg("d_m"), py::arg("d_b"), py::arg("d_p"));
    m.def("concatenated_rate", &concatenated_rate, py::arg("f1"), py::arg("l2"), py::arg("t"));
    m.def("concatenation_bound", &concatenation_bound, py::arg("l1"), py::arg("l2"), py::arg("c"));

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout, stderr).");

    py::register_exception<CodeValidationError>(m, "CodeValidationError", PyExc_ValueError);
    py::register_exception<PauliParseError>(m, "PauliParseError", PyExc_ValueError);
    py::register_exception<SizeGuardError>(m, "SizeGuardError", PyExc_ValueError);
}
