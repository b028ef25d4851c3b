#ifndef DPRLNS_ERROR_HPP_
#define DPRLNS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dprlns {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A complete solution was required but the pool still holds customers.
class IncompleteSolution : public Error {
public:
  using Error::Error;
};

/// Even a dedicated depot->c->depot route cannot serve the customer.
class InfeasibleCustomer : public Error {
public:
  InfeasibleCustomer(int customer, const std::string& why)
    : Error("customer " + std::to_string(customer) + " cannot be served: " + why),
      customer_(customer) {}

  int customer() const noexcept { return customer_; }

private:
  int customer_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace dprlns

#endif  // DPRLNS_ERROR_HPP_
