#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "k3syz/modular.hpp"

namespace k3syz {

// Dense row-major matrix over F_p.
struct MatFp {
    long rows = 0;
    long cols = 0;
    fp::Elt p = fp::kDefaultPrime;
    std::vector<fp::Elt> a;

    MatFp() = default;
    MatFp(long r, long c, fp::Elt prime) : rows(r), cols(c), p(prime), a(size_t(r) * c, 0) {}
    fp::Elt& at(long r, long c) { return a[size_t(r) * cols + c]; }
    fp::Elt at(long r, long c) const { return a[size_t(r) * cols + c]; }
};

// Rank by in-place row echelon reduction (destroys m). Transposes internally
// when that makes the row dimension smaller.
long fp_rank(MatFp m);

// Incremental column-span builder over F_p: feed sparse columns one at a
// time and stop as soon as the span is full. Used by the base-point check,
// where columns are very sparse and full rank is usually reached early.
class FpSpanBuilder {
public:
    FpSpanBuilder(long dim, fp::Elt p) : dim_(dim), p_(p), pivot_row_(dim, -1) {}

    // Returns true if the column enlarged the span.
    bool insert(const std::vector<std::pair<long, fp::Elt>>& column);
    long rank() const { return static_cast<long>(rows_.size()); }
    bool full() const { return rank() == dim_; }

private:
    long dim_;
    fp::Elt p_;
    std::vector<std::vector<fp::Elt>> rows_;  // echelon basis, dense
    std::vector<long> pivot_row_;             // index -> basis row or -1
    std::vector<fp::Elt> work_;
};

// Dense row-major matrix over Q.
struct MatQ {
    long rows = 0;
    long cols = 0;
    std::vector<mpq_class> a;

    MatQ() = default;
    MatQ(long r, long c) : rows(r), cols(c), a(size_t(r) * c) {}
    mpq_class& at(long r, long c) { return a[size_t(r) * cols + c]; }
    const mpq_class& at(long r, long c) const { return a[size_t(r) * cols + c]; }
};

// Maps entries through num * den^{-1} mod p; throws fp::BadPrime when a
// denominator vanishes mod p.
MatFp reduce_mod(const MatQ& m, fp::Elt p);

// Exact rank over Q by fraction-free (Bareiss) elimination on the
// denominator-cleared integer matrix. Transposes internally when helpful.
long exact_rank(const MatQ& m);

}  // namespace k3syz
