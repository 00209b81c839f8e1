// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace uvbeam {

/// Inputs that are well-formed but violate a design constraint (frequency
/// outside the representable band, malformed config field, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File system failures: unreadable inputs, unwritable outputs.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace uvbeam
