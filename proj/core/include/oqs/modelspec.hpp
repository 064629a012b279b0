#pragma once

// Text grammar for model strings, shared by the CLI and dataset manifests.
//
//   model     := term (',' term)*
//   term      := rate '*' kind '[' operator ']'
//   kind      := 'C' | 'D'
//   operator  := label | weighted ('+' weighted)*
//   weighted  := number '*' label | label
//
// Examples: "0.5*C[XI],1.3*C[ZZ],0.2*D[-+]" and "0.6*D[0.3*YX+0.7*ZI]".
// A '+' or '-' inside an operator starts a new weighted component only when
// followed by a digit or '.'; otherwise it is a ladder factor of the label.

#include <string>
#include <utility>
#include <vector>

#include "oqs/dataset.hpp"

namespace oqs {

/// Parses "0.3*YX+0.7*ZI" (or a bare label) into weighted components.
/// Throws std::invalid_argument naming the offending text.
std::vector<std::pair<double, std::string>> parse_operator_expression(
    const std::string& text);

/// Inverse of parse_operator_expression; weights use shortest exact decimals.
std::string format_operator_expression(
    const std::vector<std::pair<double, std::string>>& ops);

/// Parses a full comma-separated model string, validating labels, qubit-count
/// consistency, and non-negative dissipative rates.
TrueModel parse_model_string(const std::string& text);

std::string format_model_string(const TrueModel& model);

}  // namespace oqs
