#include "k3syz/graded_ring.hpp"

#include <algorithm>

#include "k3syz/errors.hpp"

namespace k3syz {

namespace {

using SparseRow = std::vector<std::pair<long, mpq_class>>;

// dst -= c * src, both sorted by position; result sorted, zero-free
SparseRow axpy(const SparseRow& dst, const mpq_class& c, const SparseRow& src) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -c * src[j].second);
            ++j;
        } else {
            mpq_class v = dst[i].second - c * src[j].second;
            if (v != 0) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<long, mpq_class>> GradedPiece::normal_form(const Form& g) const {
    std::vector<std::pair<long, mpq_class>> raw;
    raw.reserve(g.term_count());
    for (const auto& [m, c] : g.terms()) {
        auto it = ambient_index.find(m);
        if (it == ambient_index.end())
            throw InternalInconsistency("normal_form input has degree != " + std::to_string(t));
        raw.emplace_back(it->second, c);
    }
    return reduce_positions(raw);
}

std::vector<std::pair<long, mpq_class>> GradedPiece::reduce_positions(
    const std::vector<std::pair<long, mpq_class>>& raw) const {
    std::vector<mpq_class> out(complement.size());
    for (const auto& [pos, c] : raw) {
        long ci = complement_index[pos];
        if (ci >= 0) {
            out[ci] += c;
            continue;
        }
        // reduced rows touch only their pivot and complement positions,
        // so a single substitution pass is enough
        const auto& row = reduction[pivot_row[pos]];
        for (const auto& [pos2, v] : row) {
            if (pos2 == pos) continue;
            out[complement_index[pos2]] -= c * v;
        }
    }
    std::vector<std::pair<long, mpq_class>> res;
    for (size_t i = 0; i < out.size(); ++i)
        if (out[i] != 0) res.emplace_back(static_cast<long>(i), out[i]);
    return res;
}

Form GradedPiece::to_form(const std::vector<std::pair<long, mpq_class>>& coords) const {
    Form g(t);
    for (const auto& [ci, c] : coords) g.add_term(ambient[complement[ci]], c);
    return g;
}

GradedRing::GradedRing(Form hypersurface, VariableNames variable_names)
    : f_(std::move(hypersurface)), vars_(std::move(variable_names)) {
    if (f_.is_zero()) throw ZeroFormError("hypersurface form is zero");
    if (f_.degree() < 1) throw BadInput("hypersurface degree must be >= 1");
    for (int i = 0; i < kNumVars; ++i) {
        if (vars_[i].empty()) throw BadInput("empty variable name");
        for (int j = i + 1; j < kNumVars; ++j)
            if (vars_[i] == vars_[j]) throw BadInput("duplicate variable name '" + vars_[i] + "'");
    }
}

long GradedRing::graded_dim(int t) const {
    if (t < 0) return 0;
    return monomial_count(t) - monomial_count(t - f_.degree());
}

std::shared_ptr<const GradedPiece> GradedRing::piece(int t) const {
    std::shared_future<std::shared_ptr<const GradedPiece>> fut;
    std::promise<std::shared_ptr<const GradedPiece>> prom;
    bool builder = false;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(t);
        if (it == cache_.end()) {
            fut = prom.get_future().share();
            cache_.emplace(t, fut);
            builder = true;
        } else {
            fut = it->second;
        }
    }
    if (builder) {
        try {
            prom.set_value(build_piece(t));
        } catch (...) {
            prom.set_exception(std::current_exception());
        }
    }
    return fut.get();
}

std::shared_ptr<const GradedPiece> GradedRing::build_piece(int t) const {
    auto piece = std::make_shared<GradedPiece>();
    piece->t = t;
    piece->ambient = monomials_of_degree(t);
    const long n = static_cast<long>(piece->ambient.size());
    piece->ambient_index.reserve(piece->ambient.size());
    for (long i = 0; i < n; ++i) piece->ambient_index.emplace(piece->ambient[i], i);
    piece->complement_index.assign(n, -1);
    piece->pivot_row.assign(n, -1);

    const int d = f_.degree();
    std::vector<long> row_pivot;

    // forward pass: insert f*m with the graded-lex-last surviving position
    // as pivot, reducing the trailing entry until it is fresh
    for (Monomial m : monomials_of_degree(t - d)) {
        SparseRow row;
        for (const auto& [mf, cf] : f_.terms())
            row.emplace_back(piece->ambient_index.at(monomial_product(mf, m)), cf);
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        while (!row.empty()) {
            long pos = row.back().first;
            long r = piece->pivot_row[pos];
            if (r < 0) break;
            row = axpy(row, row.back().second, piece->reduction[r]);
        }
        if (row.empty())
            throw InternalInconsistency("multiplication by the hypersurface form is not injective");
        mpq_class lead = row.back().second;
        if (lead != 1)
            for (auto& [pos, c] : row) c /= lead;
        long pos = row.back().first;
        piece->pivot_row[pos] = static_cast<long>(piece->reduction.size());
        row_pivot.push_back(pos);
        piece->reduction.push_back(std::move(row));
    }

    // back substitution in ascending pivot order: rows with smaller pivots
    // are already fully reduced, so one batch per row suffices
    std::vector<long> order(piece->reduction.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<long>(i);
    std::sort(order.begin(), order.end(),
              [&](long a, long b) { return row_pivot[a] < row_pivot[b]; });
    for (long ri : order) {
        SparseRow& row = piece->reduction[ri];
        SparseRow updated = row;
        for (const auto& [pos, c] : row) {
            if (pos == row_pivot[ri]) continue;
            long r2 = piece->pivot_row[pos];
            if (r2 >= 0) updated = axpy(updated, c, piece->reduction[r2]);
        }
        row = std::move(updated);
    }

    for (long i = 0; i < n; ++i) {
        if (piece->pivot_row[i] < 0) {
            piece->complement_index[i] = static_cast<long>(piece->complement.size());
            piece->complement.push_back(i);
        }
    }
    if (piece->dim() != graded_dim(t))
        throw InternalInconsistency("graded piece dimension mismatch at degree " +
                                    std::to_string(t));
    return piece;
}

SparseMatQ GradedRing::multiplication_matrix(const Form& g, int t) const {
    const int e = g.degree();
    auto src = piece(t);
    auto dst = piece(t + e);
    SparseMatQ out(dst->dim(), src->dim());
    std::vector<std::pair<long, mpq_class>> raw;
    for (long j = 0; j < src->dim(); ++j) {
        Monomial m = src->ambient[src->complement[j]];
        raw.clear();
        for (const auto& [mg, cg] : g.terms())
            raw.emplace_back(dst->ambient_index.at(monomial_product(mg, m)), cg);
        out.col[j] = dst->reduce_positions(raw);
    }
    return out;
}

}  // namespace k3syz
