#include "k3syz/koszul.hpp"

#include <algorithm>

#include "k3syz/errors.hpp"

namespace k3syz {

FormSpaceContext::FormSpaceContext(std::shared_ptr<const GradedRing> ring, FormSpace space)
    : ring_(std::move(ring)), space_(std::move(space)) {
    const int a = space_.degree;
    const int w = space_.w();
    if (a < 1) throw BadInput("form space degree must be >= 1");
    if (w < 3) throw BadInput("form space needs at least 3 forms, got " + std::to_string(w));
    for (const Form& g : space_.forms) {
        if (g.is_zero()) throw ZeroFormError("form space contains the zero form");
        if (g.degree() != a)
            throw BadInput("form of degree " + std::to_string(g.degree()) +
                           " in a form space of degree " + std::to_string(a));
    }
    // independence inside R_a = H^0(O_X(a)), i.e. modulo f
    auto piece = ring_->piece(a);
    MatQ coords(piece->dim(), w);
    for (int j = 0; j < w; ++j)
        for (const auto& [i, c] : piece->normal_form(space_.forms[j])) coords.at(i, j) = c;
    if (exact_rank(coords) != w)
        throw DependentForms("forms are linearly dependent in H^0(O_X(" + std::to_string(a) +
                             "))");
}

std::shared_ptr<const SparseMatQ> FormSpaceContext::mult(int form_index, int t) const {
    std::pair<int, int> key{form_index, t};
    std::shared_future<std::shared_ptr<const SparseMatQ>> fut;
    std::promise<std::shared_ptr<const SparseMatQ>> prom;
    bool builder = false;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            fut = prom.get_future().share();
            cache_.emplace(key, fut);
            builder = true;
        } else {
            fut = it->second;
        }
    }
    if (builder) {
        try {
            prom.set_value(std::make_shared<SparseMatQ>(
                ring_->multiplication_matrix(space_.forms[form_index], t)));
        } catch (...) {
            prom.set_exception(std::current_exception());
        }
    }
    return fut.get();
}

KoszulMap koszul_matrix(const FormSpaceContext& ctx, int q, int t) {
    const int w = ctx.w();
    if (q < 1 || q > w) throw BadInput("q must satisfy 1 <= q <= w");
    if (t < 0) throw BadInput("twist t must be >= 0");
    KoszulMap map;
    map.q = q;
    map.t = t;
    map.w = w;
    map.a = ctx.degree();
    map.block_cols = ctx.ring().graded_dim(t);
    map.block_rows = ctx.ring().graded_dim(t + map.a);
    map.source_dim = binomial(w, q) * map.block_cols;
    map.target_dim = binomial(w, q - 1) * map.block_rows;
    map.mult.reserve(w);
    for (int i = 0; i < w; ++i) map.mult.push_back(ctx.mult(i, t));
    return map;
}

namespace {

// Visits every nonzero block: source subset I (colex index si), target
// subset I \ {I[j]} (colex index ti), sign (-1)^j for the j-th smallest
// removed index, multiplication matrix of form I[j].
template <typename Fn>
void for_each_block(const KoszulMap& map, Fn&& fn) {
    auto sources = subsets_colex(map.w, map.q);
    for (size_t si = 0; si < sources.size(); ++si) {
        std::vector<int> target(map.q - 1);
        for (int j = 0; j < map.q; ++j) {
            for (int k = 0, m = 0; k < map.q; ++k)
                if (k != j) target[m++] = sources[si][k];
            long ti = colex_rank(target);
            fn(static_cast<long>(si), ti, sources[si][j], j % 2 == 1);
        }
    }
}

}  // namespace

MatFp KoszulMap::assemble_mod(fp::Elt p, bool transposed) const {
    MatFp out(transposed ? source_dim : target_dim, transposed ? target_dim : source_dim, p);
    for_each_block(*this, [&](long si, long ti, int form, bool negate) {
        const SparseMatQ& m = *mult[form];
        const long row0 = ti * block_rows;
        const long col0 = si * block_cols;
        for (long c = 0; c < m.cols; ++c)
            for (const auto& [r, v] : m.col[c]) {
                fp::Elt e = fp::from_mpq(v, p);
                if (negate && e != 0) e = p - e;
                if (transposed)
                    out.at(col0 + c, row0 + r) = e;
                else
                    out.at(row0 + r, col0 + c) = e;
            }
    });
    return out;
}

MatQ KoszulMap::assemble_exact(bool transposed) const {
    MatQ out(transposed ? source_dim : target_dim, transposed ? target_dim : source_dim);
    for_each_block(*this, [&](long si, long ti, int form, bool negate) {
        const SparseMatQ& m = *mult[form];
        const long row0 = ti * block_rows;
        const long col0 = si * block_cols;
        for (long c = 0; c < m.cols; ++c)
            for (const auto& [r, v] : m.col[c]) {
                if (transposed)
                    out.at(col0 + c, row0 + r) = negate ? mpq_class(-v) : v;
                else
                    out.at(row0 + r, col0 + c) = negate ? mpq_class(-v) : v;
            }
    });
    return out;
}

std::vector<std::vector<std::pair<long, fp::Elt>>> KoszulMap::sparse_columns_mod(
    fp::Elt p) const {
    std::vector<std::vector<std::pair<long, fp::Elt>>> cols(source_dim);
    for_each_block(*this, [&](long si, long ti, int form, bool negate) {
        const SparseMatQ& m = *mult[form];
        const long row0 = ti * block_rows;
        const long col0 = si * block_cols;
        for (long c = 0; c < m.cols; ++c)
            for (const auto& [r, v] : m.col[c]) {
                fp::Elt e = fp::from_mpq(v, p);
                if (negate && e != 0) e = p - e;
                cols[col0 + c].emplace_back(row0 + r, e);
            }
    });
    return cols;
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::PrimeCertified: return "prime-certified";
        case Provenance::RationalCertified: return "rational-certified";
    }
    return "?";
}

KernelResult kernel_dimension(const KoszulMap& map, const RankBackend& backend) {
    KernelResult res;
    res.source_dim = map.source_dim;
    res.target_dim = map.target_dim;
    if (map.source_dim == 0) {
        res.rank = 0;
        res.kernel_dim = 0;
        res.provenance =
            backend.mode == RankMode::ExactOnly ? Provenance::RationalCertified : Provenance::PrimeCertified;
        res.prime = backend.mode == RankMode::ExactOnly ? 0 : backend.prime;
        return res;
    }
    if (backend.mode == RankMode::ModularFirst) {
        fp::Elt p = backend.prime;
        for (int attempt = 0; attempt < 8; ++attempt) {
            try {
                // orient so the elimination runs over the smaller dimension
                bool transposed = map.source_dim < map.target_dim;
                long rank = fp_rank(map.assemble_mod(p, transposed));
                res.rank = rank;
                res.kernel_dim = map.source_dim - rank;
                res.provenance = Provenance::PrimeCertified;
                res.prime = p;
                if (res.kernel_dim == 0) return res;  // exact: modular rank <= rational rank
                break;
            } catch (const fp::BadPrime&) {
                p = fp::next_prime(p);
            }
        }
    }
    bool transposed = map.source_dim < map.target_dim;
    long rank = exact_rank(map.assemble_exact(transposed));
    res.rank = rank;
    res.kernel_dim = map.source_dim - rank;
    res.provenance = Provenance::RationalCertified;
    res.prime = 0;
    return res;
}

KernelResult h0_wedge_syzygy(const FormSpaceContext& ctx, int q, int t,
                             const RankBackend& backend) {
    return kernel_dimension(koszul_matrix(ctx, q, t), backend);
}

long h0_s_dual_linebundle(const GradedRing& ring, int a, int w, int t) {
    if (t < 0 || a < 1 || w < 3) throw BadInput("h0_s_dual_linebundle needs t >= 0, a >= 1, w >= 3");
    return w * ring.graded_dim(t) - ring.graded_dim(t - a);
}

namespace {

// residues of a form's coefficients; throws fp::BadPrime on a bad prime
std::vector<std::pair<Monomial, fp::Elt>> form_residues(const Form& g, fp::Elt p) {
    std::vector<std::pair<Monomial, fp::Elt>> out;
    out.reserve(g.term_count());
    for (const auto& [m, c] : g.terms()) out.emplace_back(m, fp::from_mpq(c, p));
    return out;
}

}  // namespace

BasepointCheck basepoint_check(const FormSpaceContext& ctx, int max_degree, fp::Elt prime) {
    const int a = ctx.degree();
    const int w = ctx.w();
    const int d = ctx.ring().degree();
    BasepointCheck out;
    // w*a alone misses honest cases: a complete intersection of three
    // degree-a forms and f has socle degree 3a+d-4, so certification can
    // start only at 3a+d-3 (e.g. x^2,y^2,z^2 on a quartic needs D = 7 > 6)
    out.max_degree = max_degree < 0 ? std::max(w * a, 3 * a + d - 3) : max_degree;

    std::vector<std::vector<std::pair<Monomial, fp::Elt>>> residues;
    for (int attempt = 0;; ++attempt) {
        try {
            residues.clear();
            for (int i = 0; i < w; ++i) residues.push_back(form_residues(ctx.space().forms[i], prime));
            residues.push_back(form_residues(ctx.ring().hypersurface(), prime));
            break;
        } catch (const fp::BadPrime&) {
            if (attempt >= 8) throw;
            prime = fp::next_prime(prime);
        }
    }

    // Surjectivity of ⊕_i R_{D-a} -> R_D is checked at the ambient level:
    // the g_i-multiples of S_{D-a} together with f·S_{D-d} must span S_D.
    // Full modular rank certifies full rational rank, hence surjectivity.
    for (int D = a; D <= out.max_degree; ++D) {
        const long dim = monomial_count(D);
        if (static_cast<long>(w) * monomial_count(D - a) + monomial_count(D - d) < dim) continue;
        auto monos = monomials_of_degree(D);
        std::unordered_map<Monomial, long> index;
        index.reserve(monos.size());
        for (long i = 0; i < dim; ++i) index.emplace(monos[i], i);

        FpSpanBuilder span(dim, prime);
        std::vector<std::pair<long, fp::Elt>> column;
        auto insert_multiples = [&](const std::vector<std::pair<Monomial, fp::Elt>>& g, int s) {
            for (Monomial m : monomials_of_degree(s)) {
                column.clear();
                for (const auto& [mg, cg] : g)
                    column.emplace_back(index.at(monomial_product(mg, m)), cg);
                span.insert(column);
                if (span.full()) return true;
            }
            return false;
        };
        bool full = false;
        for (int i = 0; i < w && !full; ++i) full = insert_multiples(residues[i], D - a);
        if (!full) full = insert_multiples(residues[w], D - d);
        if (full) {
            out.certified = true;
            out.degree = D;
            return out;
        }
    }
    return out;
}

}  // namespace k3syz
