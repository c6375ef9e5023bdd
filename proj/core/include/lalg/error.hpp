#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lalg {

enum class Errc {
    SyntaxError,
    UndeclaredVariable,
    NegativeExponent,
    MissingVariable,
    NotAntisymmetric,
    NameClash,
    InvalidInverse,
    AlgebroidMismatch,
    DegreeZero,
    WrongSourceAlgebroid,
    MissingSlot,
    NonFinite,
    BadInput,
};

/// Error with a machine-readable code; `offset` is a byte offset into the
/// input for parser errors, npos otherwise.
class Error : public std::runtime_error {
  public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(Errc code, std::string msg, std::size_t offset = npos)
        : std::runtime_error(std::move(msg)), code(code), offset(offset)
    {}

    Errc code;
    std::size_t offset;
};

[[noreturn]] inline void fail(Errc code, std::string msg, std::size_t offset = Error::npos)
{
    throw Error(code, std::move(msg), offset);
}

} // namespace lalg
