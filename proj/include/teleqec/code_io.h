#ifndef TELEQEC_CODE_IO_H
#define TELEQEC_CODE_IO_H

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "teleqec/stabilizer_code.h"

namespace teleqec {

/// Malformed code file content. line() is 1-based.
class CodeFileError : public std::runtime_error {
   public:
    CodeFileError(size_t line, const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {
    }
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

/// The file could not be opened or read.
class CodeIoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Format: one Pauli string per generator row, then optional "LX <pauli>" and
// "LZ <pauli>" lines. '#' starts a comment; blank lines are ignored.
//
// Parse errors throw CodeFileError. A well-formed file whose rows do not form a
// valid code throws CodeValidationError.
StabilizerCode read_code(std::istream &in);
StabilizerCode load_code_file(const std::string &path);
void write_code(std::ostream &out, const StabilizerCode &code);

}  // namespace teleqec

#endif
