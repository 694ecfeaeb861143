#pragma once

#include <gmpxx.h>

#include <array>
#include <functional>
#include <map>
#include <string>

#include "k3syz/monomial.hpp"

namespace k3syz {

using VariableNames = std::array<std::string, 4>;

inline const VariableNames kDefaultVariables = {"x", "y", "z", "t"};

// Homogeneous polynomial in 4 variables with exact rational coefficients.
// Terms are kept in descending graded-lex order with no zero coefficients.
// The zero polynomial is representable (empty term map) so that arithmetic
// can produce it; input boundaries reject it with ZeroFormError.
class Form {
public:
    using TermMap = std::map<Monomial, mpq_class, std::greater<Monomial>>;

    Form() = default;
    explicit Form(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    // Accumulates c * m; throws InhomogeneousError on a degree mismatch.
    void add_term(Monomial m, const mpq_class& c);

    Form operator*(const Form& rhs) const;
    Form operator+(const Form& rhs) const;
    Form operator-() const;
    Form scaled(const mpq_class& c) const;
    bool operator==(const Form& rhs) const { return degree_ == rhs.degree_ && terms_ == rhs.terms_; }

    // Canonical text: terms in descending graded-lex order, "*"-joined
    // factors, exponents as "^e". Parsing the result reproduces the form.
    std::string to_string(const VariableNames& vars = kDefaultVariables) const;

private:
    int degree_ = 0;
    TermMap terms_;
};

std::string monomial_to_string(Monomial m, const VariableNames& vars);

}  // namespace k3syz
