#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mglc {

// Malformed input text (SMILES, CSV cells, dictionary files).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (byte " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Structurally invalid data: bad graph, infeasible episode, missing file.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric failure: non-finite value, shape mismatch, singular operator.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mglc
