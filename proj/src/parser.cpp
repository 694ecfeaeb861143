#include "k3syz/parser.hpp"

#include <cctype>
#include <vector>

#include "k3syz/errors.hpp"

namespace k3syz {

namespace {

// Exponents must fit the 16-bit packed fields with headroom for products.
constexpr long kMaxExponent = 16000;

class FormParser {
public:
    FormParser(const std::string& text, const VariableNames& vars) : s_(text), vars_(vars) {}

    Form parse() {
        skip_ws();
        if (at_end()) throw SyntaxError("empty input", pos_);

        struct Term {
            Monomial mono;
            mpq_class coeff;
            int degree;
        };
        std::vector<Term> terms;

        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++pos_;
            } else if (!first) {
                throw SyntaxError("expected '+' or '-' between terms", pos_);
            }
            first = false;
            auto [mono, coeff] = parse_term();
            if (sign < 0) coeff = -coeff;
            terms.push_back({mono, coeff, total_degree(mono)});
            skip_ws();
            if (at_end()) break;
            if (peek() != '+' && peek() != '-')
                throw SyntaxError(std::string("unexpected character '") + peek() + "'", pos_);
        }

        int degree = terms.front().degree;
        for (const auto& t : terms)
            if (t.degree != degree)
                throw InhomogeneousError("mixed term degrees " + std::to_string(degree) + " and " +
                                         std::to_string(t.degree));

        Form out(degree);
        for (const auto& t : terms) out.add_term(t.mono, t.coeff);
        if (out.is_zero()) throw ZeroFormError("form is identically zero");
        return out;
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    mpz_class parse_natural() {
        skip_ws();
        size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw SyntaxError("expected a number", pos_);
        return mpz_class(s_.substr(start, pos_ - start), 10);
    }

    // rational factor: p or p/q with q != 0
    mpq_class parse_rational() {
        mpz_class num = parse_natural();
        skip_ws();
        if (peek() == '/') {
            size_t slash = pos_;
            ++pos_;
            mpz_class den = parse_natural();
            if (den == 0) throw SyntaxError("zero denominator", slash);
            mpq_class q(num, den);
            q.canonicalize();
            return q;
        }
        return mpq_class(num);
    }

    // variable factor: name or name^exp
    std::pair<int, int> parse_var_power() {
        skip_ws();
        size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        int var = -1;
        for (int v = 0; v < kNumVars; ++v)
            if (vars_[v] == name) var = v;
        if (var < 0)
            throw UnknownVariable("unknown variable '" + name + "' at position " +
                                  std::to_string(start));
        long exp = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            mpz_class e = parse_natural();
            if (e > kMaxExponent) throw SyntaxError("exponent too large", pos_);
            exp = e.get_si();
        }
        return {var, static_cast<int>(exp)};
    }

    std::pair<Monomial, mpq_class> parse_term() {
        mpq_class coeff(1);
        int exps[kNumVars] = {0, 0, 0, 0};
        bool saw_factor = false;
        while (true) {
            skip_ws();
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_rational();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                auto [var, exp] = parse_var_power();
                exps[var] += exp;
                if (exps[var] > kMaxExponent) throw SyntaxError("exponent too large", pos_);
            } else {
                throw SyntaxError("expected a coefficient or a variable", pos_);
            }
            saw_factor = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!saw_factor) throw SyntaxError("empty term", pos_);
        return {pack_monomial(exps[0], exps[1], exps[2], exps[3]), coeff};
    }

    const std::string& s_;
    const VariableNames& vars_;
    size_t pos_ = 0;
};

}  // namespace

Form parse_form(const std::string& text, const VariableNames& variables) {
    return FormParser(text, variables).parse();
}

}  // namespace k3syz
