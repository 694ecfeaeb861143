#pragma once

#include <gmpxx.h>

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "k3syz/form.hpp"

namespace k3syz {

// Sparse matrix over Q stored by columns; each column holds (row, coeff)
// pairs sorted by row index.
struct SparseMatQ {
    long rows = 0;
    long cols = 0;
    std::vector<std::vector<std::pair<long, mpq_class>>> col;

    SparseMatQ() = default;
    SparseMatQ(long r, long c) : rows(r), cols(c), col(static_cast<size_t>(c)) {}
    long nonzeros() const {
        long n = 0;
        for (const auto& c : col) n += static_cast<long>(c.size());
        return n;
    }
};

// Degree-t slice of R = k[x0..x3]/(f): the ambient monomial basis of S_t,
// the image of f·S_{t-d} in fully reduced row-echelon form (pivots chosen
// at graded-lex-latest positions), and the complement monomial basis of R_t
// that this pivot choice leaves free. The complement consists of the
// graded-lex-first monomials independent modulo the row space.
struct GradedPiece {
    int t = 0;
    std::vector<Monomial> ambient;                 // S_t, descending graded-lex
    std::unordered_map<Monomial, long> ambient_index;
    std::vector<long> complement;                  // ambient positions spanning R_t
    std::vector<long> complement_index;            // ambient pos -> complement idx or -1
    std::vector<long> pivot_row;                   // ambient pos -> reduction row or -1
    std::vector<std::vector<std::pair<long, mpq_class>>> reduction;  // pivot coeff 1

    long dim() const { return static_cast<long>(complement.size()); }

    // Coordinates of g modulo f·S_{t-d} in the complement basis; g must be
    // homogeneous of degree t (or zero).
    std::vector<std::pair<long, mpq_class>> normal_form(const Form& g) const;

    // Same, for a raw (ambient position, coeff) list; duplicates allowed.
    std::vector<std::pair<long, mpq_class>> reduce_positions(
        const std::vector<std::pair<long, mpq_class>>& raw) const;

    Form to_form(const std::vector<std::pair<long, mpq_class>>& coords) const;
};

// Graded coordinate ring of the hypersurface f = 0 in P^3. The per-degree
// pieces are deterministic, cached, and constructed at most once even under
// concurrent access.
class GradedRing {
public:
    GradedRing(Form hypersurface, VariableNames variable_names = kDefaultVariables);

    int degree() const { return f_.degree(); }
    const Form& hypersurface() const { return f_; }
    const VariableNames& variables() const { return vars_; }

    // dim R_t = C(t+3,3) - C(t-d+3,3), and 0 for t < 0.
    long graded_dim(int t) const;

    std::shared_ptr<const GradedPiece> piece(int t) const;

    // Matrix of R_t -> R_{t+deg g}, m -> normal_form(g*m), in the complement
    // bases; graded_dim(t+deg g) x graded_dim(t).
    SparseMatQ multiplication_matrix(const Form& g, int t) const;

private:
    std::shared_ptr<const GradedPiece> build_piece(int t) const;

    Form f_;
    VariableNames vars_;
    mutable std::mutex mu_;
    mutable std::map<int, std::shared_future<std::shared_ptr<const GradedPiece>>> cache_;
};

}  // namespace k3syz
