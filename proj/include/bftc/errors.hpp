#ifndef BFTC_ERRORS_HPP
#define BFTC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bftc {

// Error categories map 1:1 onto CLI exit codes (see tools/bftc.cpp).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File system / read-write failures.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Malformed input data or violated preconditions (bad CSV cell, k >= n, ...).
struct DataError : Error {
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Structurally valid input on which the pipeline is undefined
// (all points coincident: sigma = 0, D = 0).
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

// Numerical solver did not converge.
struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

} // namespace bftc

#endif
