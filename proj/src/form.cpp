#include "k3syz/form.hpp"

#include <sstream>

#include "k3syz/errors.hpp"

namespace k3syz {

void Form::add_term(Monomial m, const mpq_class& coeff) {
    mpq_class c = coeff;
    c.canonicalize();  // gmp rational arithmetic requires canonical operands
    if (c == 0) return;
    if (total_degree(m) != degree_)
        throw InhomogeneousError("term of degree " + std::to_string(total_degree(m)) +
                                 " in a form of degree " + std::to_string(degree_));
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Form Form::operator*(const Form& rhs) const {
    Form out(degree_ + rhs.degree_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : rhs.terms_)
            out.add_term(monomial_product(ma, mb), ca * cb);
    return out;
}

Form Form::operator+(const Form& rhs) const {
    if (!is_zero() && !rhs.is_zero() && degree_ != rhs.degree_)
        throw InhomogeneousError("adding forms of degrees " + std::to_string(degree_) + " and " +
                                 std::to_string(rhs.degree_));
    Form out(is_zero() ? rhs.degree_ : degree_);
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
    return out;
}

Form Form::operator-() const { return scaled(mpq_class(-1)); }

Form Form::scaled(const mpq_class& c) const {
    Form out(degree_);
    if (c == 0) return out;
    for (const auto& [m, coef] : terms_) out.add_term(m, coef * c);
    return out;
}

std::string monomial_to_string(Monomial m, const VariableNames& vars) {
    std::string out;
    for (int v = 0; v < kNumVars; ++v) {
        int e = exponent(m, v);
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += vars[v];
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
}

std::string Form::to_string(const VariableNames& vars) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpq_class a = c;
        if (first) {
            if (a < 0) {
                os << '-';
                a = -a;
            }
        } else {
            os << (a < 0 ? '-' : '+');
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono = monomial_to_string(m, vars);
        if (mono.empty()) {
            os << a;
        } else {
            if (a != 1) os << a << '*';
            os << mono;
        }
    }
    return os.str();
}

}  // namespace k3syz
