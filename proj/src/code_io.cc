#include "teleqec/code_io.h"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace teleqec {

namespace {

std::string trim(const std::string &s) {
    size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

PauliVec parse_at(const std::string &text, size_t line) {
    try {
        return parse_pauli(text);
    } catch (const PauliParseError &e) {
        throw CodeFileError(line, e.what());
    }
}

}  // namespace

StabilizerCode read_code(std::istream &in) {
    std::vector<PauliVec> rows;
    std::optional<PauliVec> lx;
    std::optional<PauliVec> lz;
    std::optional<size_t> width;
    std::string raw;
    size_t line = 0;

    auto check_width = [&](const PauliVec &p) {
        if (!width) {
            width = p.num_qubits();
        } else if (*width != p.num_qubits()) {
            throw CodeFileError(line, "expected " + std::to_string(*width) + " qubits, got " +
                                          std::to_string(p.num_qubits()));
        }
    };

    while (std::getline(in, raw)) {
        line++;
        auto hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.resize(hash);
        }
        std::string text = trim(raw);
        if (text.empty()) {
            continue;
        }
        if (text.rfind("LX", 0) == 0 || text.rfind("LZ", 0) == 0) {
            bool is_x = text[1] == 'X';
            std::string arg = trim(text.substr(2));
            if (arg.empty() || arg.size() == text.size() - 2) {
                throw CodeFileError(line, "logical line needs the form 'LX <pauli>' or 'LZ <pauli>'");
            }
            auto &slot = is_x ? lx : lz;
            if (slot) {
                throw CodeFileError(line, std::string("duplicate ") + (is_x ? "LX" : "LZ") + " line");
            }
            slot = parse_at(arg, line);
            check_width(*slot);
            continue;
        }
        if (lx || lz) {
            throw CodeFileError(line, "generator rows must precede logical lines");
        }
        rows.push_back(parse_at(text, line));
        check_width(rows.back());
    }
    if (in.bad()) {
        throw CodeIoError("read failure");
    }
    if (!width) {
        throw CodeFileError(line, "file declares no generators");
    }
    if (lx.has_value() != lz.has_value()) {
        throw CodeFileError(line, "LX and LZ must be given together");
    }
    BitMatrix q(2 * *width);
    for (const auto &r : rows) {
        q.push_back(r.bits());
    }
    auto code = validate_code(q);
    if (lx) {
        code = code.with_logicals(LogicalPair{*lx, *lz});
    }
    return code;
}

StabilizerCode load_code_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw CodeIoError("cannot open code file '" + path + "'");
    }
    return read_code(in);
}

void write_code(std::ostream &out, const StabilizerCode &code) {
    for (size_t i = 0; i < code.l(); i++) {
        out << format_pauli(code.generator(i)) << '\n';
    }
    if (code.logical()) {
        out << "LX " << format_pauli(code.logical()->x) << '\n';
        out << "LZ " << format_pauli(code.logical()->z) << '\n';
    }
}

}  // namespace teleqec
