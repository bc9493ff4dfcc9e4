#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace idealtri {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A shape parameter sits on (or within the guard band around) 0 or 1.
class DegenerateShape : public Error {
public:
    DegenerateShape(int tet, std::complex<double> z)
        : Error("degenerate shape " + describe(z) + (tet >= 0 ? " on tetrahedron " + std::to_string(tet) : std::string{})),
          tet_{tet}, z_{z} {}

    int tetrahedron() const noexcept { return tet_; }
    std::complex<double> value() const noexcept { return z_; }

private:
    static std::string describe(std::complex<double> z) {
        return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
    }
    int tet_;
    std::complex<double> z_;
};

class BranchCut : public Error {
public:
    using Error::Error;
};

class NotUnitModulus : public Error {
public:
    using Error::Error;
};

class UnknownCorpusEntry : public Error {
public:
    explicit UnknownCorpusEntry(const std::string& name) : Error("unknown corpus entry '" + name + "'") {}
};

class NotConverged : public Error {
public:
    using Error::Error;
};

/// Raised when composing face pairings around an edge fails to return to the
/// starting edge. Indicates a bug, never bad input.
class EdgeCycleNotClosed : public Error {
public:
    using Error::Error;
};

/// Triangulation text could not be read. Carries the 1-based line number.
class SyntaxError : public Error {
public:
    SyntaxError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_{line} {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace idealtri
