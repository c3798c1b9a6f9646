#pragma once

#include <stdexcept>

namespace slepian {

// Thrown for arguments outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when vector or matrix sizes do not agree.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class degenerate_input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace slepian

namespace slepian {

// File could not be read or written; the message names the path and the cause.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slepian
