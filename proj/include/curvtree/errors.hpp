#pragma once

#include <stdexcept>
#include <string>

namespace curvtree {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Gram matrix of a subspace is singular under the requested form.
class DegenerateRestriction : public Error {
  public:
    using Error::Error;
};

class DegenerateForm : public Error {
  public:
    using Error::Error;
};

class NotClosed : public Error {
  public:
    using Error::Error;
};

class NotSimultaneouslyDiagonalizable : public Error {
  public:
    using Error::Error;
};

class IsotropicRoot : public Error {
  public:
    using Error::Error;
};

class NotSimple : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string &what, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

class JacobiViolation : public Error {
  public:
    JacobiViolation(const std::string &what, int i, int j, int k)
        : Error(what), i_(i), j_(j), k_(k) {}
    int i() const { return i_; }
    int j() const { return j_; }
    int k() const { return k_; }

  private:
    int i_, j_, k_;
};

class HypothesisNotMet : public Error {
  public:
    using Error::Error;
};

class AuditFailure : public Error {
  public:
    using Error::Error;
};

} // namespace curvtree
