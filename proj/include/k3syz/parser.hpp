#pragma once

#include <string>

#include "k3syz/form.hpp"

namespace k3syz {

// Parses a signed sum of terms, each an optional rational coefficient
// ("p" or "p/q") joined by "*" with factors "var" or "var^exp". Whitespace
// is insignificant. Throws SyntaxError (with position), UnknownVariable,
// InhomogeneousError, or ZeroFormError if everything cancels.
Form parse_form(const std::string& text, const VariableNames& variables = kDefaultVariables);

}  // namespace k3syz
