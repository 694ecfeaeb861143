#include "k3syz/linalg.hpp"

#include <cassert>

namespace k3syz {

namespace {

MatFp transpose(const MatFp& m) {
    MatFp t(m.cols, m.rows, m.p);
    for (long r = 0; r < m.rows; ++r)
        for (long c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

}  // namespace

long fp_rank(MatFp m) {
    if (m.rows > m.cols) m = transpose(m);
    const fp::Elt p = m.p;
    long rank = 0;
    for (long col = 0; col < m.cols && rank < m.rows; ++col) {
        long piv = -1;
        for (long r = rank; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (long c = col; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(rank, c));
        fp::Elt pivinv = fp::inv(m.at(rank, col), p);
        for (long r = rank + 1; r < m.rows; ++r) {
            fp::Elt f = m.at(r, col);
            if (f == 0) continue;
            f = fp::mul(f, pivinv, p);
            fp::Elt* dst = &m.at(r, col);
            const fp::Elt* src = &m.at(rank, col);
            for (long c = 0; c < m.cols - col; ++c) dst[c] = fp::sub(dst[c], fp::mul(f, src[c], p), p);
        }
        ++rank;
    }
    return rank;
}

bool FpSpanBuilder::insert(const std::vector<std::pair<long, fp::Elt>>& column) {
    if (full()) return false;
    work_.assign(dim_, 0);
    for (auto [i, v] : column) work_[i] = fp::add(work_[i], v % p_, p_);
    long lead = -1;
    for (long i = 0; i < dim_; ++i) {
        if (work_[i] == 0) continue;
        long r = pivot_row_[i];
        if (r < 0) {
            lead = i;
            break;
        }
        const fp::Elt f = work_[i];
        const std::vector<fp::Elt>& row = rows_[r];
        for (long j = i; j < dim_; ++j)
            if (row[j] != 0) work_[j] = fp::sub(work_[j], fp::mul(f, row[j], p_), p_);
    }
    if (lead < 0) return false;
    fp::Elt leadinv = fp::inv(work_[lead], p_);
    for (long j = lead; j < dim_; ++j)
        if (work_[j] != 0) work_[j] = fp::mul(work_[j], leadinv, p_);
    pivot_row_[lead] = static_cast<long>(rows_.size());
    rows_.push_back(work_);
    return true;
}

MatFp reduce_mod(const MatQ& m, fp::Elt p) {
    MatFp out(m.rows, m.cols, p);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = fp::from_mpq(m.a[i], p);
    return out;
}

namespace {

// rows as mpz vectors after clearing denominators (row scaling preserves rank)
std::vector<std::vector<mpz_class>> to_integer_rows(const MatQ& m, bool transposed) {
    long R = transposed ? m.cols : m.rows;
    long C = transposed ? m.rows : m.cols;
    std::vector<std::vector<mpz_class>> rows(R, std::vector<mpz_class>(C));
    for (long r = 0; r < R; ++r) {
        mpz_class lcm = 1;
        for (long c = 0; c < C; ++c) {
            const mpq_class& q = transposed ? m.at(c, r) : m.at(r, c);
            if (q != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        }
        for (long c = 0; c < C; ++c) {
            const mpq_class& q = transposed ? m.at(c, r) : m.at(r, c);
            rows[r][c] = q.get_num() * (lcm / q.get_den());
        }
    }
    return rows;
}

}  // namespace

long exact_rank(const MatQ& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    auto rows = to_integer_rows(m, m.rows > m.cols);
    const long R = static_cast<long>(rows.size());
    const long C = static_cast<long>(rows[0].size());

    // Bareiss fraction-free elimination with column skipping; after k pivot
    // steps every entry is a (k+1)x(k+1) minor, so divisions stay exact.
    mpz_class prev = 1;
    long rank = 0;
    mpz_class tmp;
    for (long col = 0; col < C && rank < R; ++col) {
        long piv = -1;
        for (long r = rank; r < R; ++r)
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank) rows[piv].swap(rows[rank]);
        const mpz_class& pivot = rows[rank][col];
        for (long r = rank + 1; r < R; ++r) {
            for (long c = col + 1; c < C; ++c) {
                tmp = pivot * rows[r][c] - rows[r][col] * rows[rank][c];
                mpz_divexact(rows[r][c].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            rows[r][col] = 0;
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

}  // namespace k3syz
