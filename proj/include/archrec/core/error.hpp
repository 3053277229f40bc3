#pragma once

#include <stdexcept>
#include <string>

namespace archrec {

// Invalid run configuration (bad factor sums, unknown strategy names, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Corpus acquisition or scoping failed; carries file/line context in the message.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace archrec
