#pragma once

#include <stdexcept>
#include <string>

namespace magskin
{

// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A named input parameter is out of its admissible range.
class InvalidParameter : public Error
{
public:
  InvalidParameter(const std::string &name, const std::string &what)
    : Error(name + ": " + what), name_(name)
  {
  }

  const std::string &name() const { return name_; }

private:
  std::string name_;
};

// Argument outside the domain of a mathematical function or operator.
class DomainError : public Error
{
public:
  using Error::Error;
};

// Root search found no crossing inside the sampling horizon.
class NoRootError : public Error
{
public:
  using Error::Error;
};

// A post-solve consistency check (interface residual, quadrature stability) failed.
class CheckFailed : public Error
{
public:
  using Error::Error;
};

class UnsupportedError : public Error
{
public:
  using Error::Error;
};

}  // namespace magskin
