#pragma once

#include <stdexcept>

namespace qcrypt {

/// Malformed or inconsistent input data (files, key material, containers).
/// Precondition violations on API arguments use std::invalid_argument /
/// std::out_of_range instead.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcrypt
