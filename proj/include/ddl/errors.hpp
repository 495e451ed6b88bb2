#ifndef DDL_ERRORS_HPP
#define DDL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddl
{

/// Base for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition (length mismatch, negative entry, ...).
class InvalidInput : public Error
{
  public:
    using Error::Error;
};

/// Well-formed input describing an instance that cannot be served.
class Infeasible : public Error
{
  public:
    using Error::Error;
};

/// Supply that is not adequate for the demand. Carries the first 0-based tail
/// index t where sum_{s>=t} d_s exceeds sum_{s>=t} p_s (both sorted non-increasing).
class InadequateSupply : public Infeasible
{
  public:
    InadequateSupply(std::size_t tail_index, const std::string& what)
        : Infeasible(what), tail_index_(tail_index)
    {
    }

    [[nodiscard]] std::size_t tail_index() const noexcept { return tail_index_; }

  private:
    std::size_t tail_index_;
};

} // namespace ddl

#endif // DDL_ERRORS_HPP
