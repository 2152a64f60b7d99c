#ifndef ASNUM_ERROR_HPP
#define ASNUM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace asnum {

// Base of everything thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A precondition on the inputs was violated (mixed fields, division by zero,
// wrong arity, non-prime characteristic, ...). The CLI maps these to exit 2.
class DomainError : public Error {
  public:
    using Error::Error;
};

// An enumeration or counting request exceeds a configured cap.
class BudgetExceeded : public Error {
  public:
    using Error::Error;
};

// An internal consistency check failed. These indicate a bug or a convention
// mismatch, never bad user input.
class HardFault : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
        : Error(what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

  private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

inline void ensure(bool ok, const std::string& msg) {
    if (!ok) throw HardFault(msg);
}

}  // namespace asnum

#endif
