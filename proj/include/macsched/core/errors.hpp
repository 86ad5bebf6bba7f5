// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace macsched {

// Invalid user-supplied configuration (maps to CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A machine or adversary broke the protocol contract.
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class RoundLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncompleteTrace : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace macsched
