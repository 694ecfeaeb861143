#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k3syz/linalg.hpp"

using namespace k3syz;

namespace {

MatQ random_matq(std::mt19937_64& rng, long rows, long cols, long rank_target) {
    // product of random rows x rank and rank x cols factors has rank <= target
    MatQ a(rows, rank_target), b(rank_target, cols);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (auto& v : a.a) v = entry(rng);
    for (auto& v : b.a) {
        v = mpq_class(entry(rng), 1 + (rng() % 3));
        v.canonicalize();
    }
    MatQ m(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c) {
            mpq_class s = 0;
            for (long k = 0; k < rank_target; ++k) s += a.at(r, k) * b.at(k, c);
            m.at(r, c) = s;
        }
    return m;
}

}  // namespace

TEST_CASE("fp arithmetic basics") {
    const fp::Elt p = fp::kDefaultPrime;
    CHECK(fp::mul(p - 1, p - 1, p) == 1);
    CHECK(fp::inv(2, p) == (p + 1) / 2);
    for (fp::Elt a : {fp::Elt(3), fp::Elt(12345678901234ull), fp::Elt(p - 2)})
        CHECK(fp::mul(a, fp::inv(a, p), p) == 1);
    CHECK(fp::is_prime(p));
    CHECK(fp::is_prime(2));
    CHECK(!fp::is_prime(1));
    CHECK(!fp::is_prime((1ull << 61) + 1));
    CHECK(fp::next_prime(100) == 101);
    CHECK(fp::is_prime(fp::seeded_prime(42)));
    CHECK(fp::seeded_prime(42) == fp::seeded_prime(42));
    CHECK(fp::seeded_prime(42) != fp::seeded_prime(43));
}

TEST_CASE("known ranks, exact and modular") {
    MatQ m(3, 4);
    // rows: [1 2 3 4], [2 4 6 8], [0 1 1 0] -> rank 2
    long vals0[] = {1, 2, 3, 4}, vals1[] = {2, 4, 6, 8}, vals2[] = {0, 1, 1, 0};
    for (long c = 0; c < 4; ++c) {
        m.at(0, c) = vals0[c];
        m.at(1, c) = vals1[c];
        m.at(2, c) = vals2[c];
    }
    CHECK(exact_rank(m) == 2);
    CHECK(fp_rank(reduce_mod(m, fp::kDefaultPrime)) == 2);

    MatQ zero(5, 7);
    CHECK(exact_rank(zero) == 0);
    CHECK(fp_rank(reduce_mod(zero, fp::kDefaultPrime)) == 0);
}

TEST_CASE("rank where a naive float elimination would be doomed") {
    // Hilbert-like matrix: exact arithmetic must see full rank
    const long n = 12;
    MatQ m(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) m.at(r, c) = mpq_class(1, r + c + 1);
    CHECK(exact_rank(m) == n);
}

TEST_CASE("modular rank never exceeds exact rank and usually matches") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 40; ++iter) {
        long rows = 2 + rng() % 12, cols = 2 + rng() % 12;
        long target = 1 + rng() % std::min(rows, cols);
        MatQ m = random_matq(rng, rows, cols, target);
        long exact = exact_rank(m);
        long modular = fp_rank(reduce_mod(m, fp::kDefaultPrime));
        CHECK(modular <= exact);
        CHECK(modular == exact);  // failure probability ~ dim/2^61
        CHECK(exact <= target);
    }
}

TEST_CASE("span builder agrees with batch rank") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 30; ++iter) {
        long dim = 3 + rng() % 20;
        long ncols = 1 + rng() % 30;
        MatFp m(dim, ncols, fp::kDefaultPrime);
        FpSpanBuilder span(dim, fp::kDefaultPrime);
        for (long c = 0; c < ncols; ++c) {
            std::vector<std::pair<long, fp::Elt>> col;
            for (long r = 0; r < dim; ++r) {
                if (rng() % 3 == 0) {
                    fp::Elt v = rng() % 97;
                    m.at(r, c) = v % fp::kDefaultPrime;
                    if (v) col.emplace_back(r, v);
                }
            }
            span.insert(col);
        }
        CHECK(span.rank() == fp_rank(m));
    }
}

namespace {

// textbook rational row reduction, kept independent of exact_rank's
// fraction-free route
long naive_rank(MatQ m) {
    long rank = 0;
    for (long col = 0; col < m.cols && rank < m.rows; ++col) {
        long piv = -1;
        for (long r = rank; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        for (long c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(rank, c));
        mpq_class inv = 1 / m.at(rank, col);
        for (long c = col; c < m.cols; ++c) m.at(rank, c) *= inv;
        for (long r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            mpq_class f = m.at(r, col);
            for (long c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("fraction-free rank agrees with naive rational elimination") {
    std::mt19937_64 rng(13579);
    for (int iter = 0; iter < 60; ++iter) {
        long rows = 1 + rng() % 10, cols = 1 + rng() % 10;
        MatQ m(rows, cols);
        std::uniform_int_distribution<int> entry(-6, 6);
        for (auto& v : m.a) {
            if (rng() % 4 == 0)
                v = 0;
            else {
                v = mpq_class(entry(rng), 1 + (rng() % 4));
                v.canonicalize();
            }
        }
        CHECK(exact_rank(m) == naive_rank(m));
    }
}

TEST_CASE("bad prime detection when mapping rationals") {
    MatQ m(1, 1);
    m.at(0, 0) = mpq_class(1, 101);
    CHECK_THROWS_AS(reduce_mod(m, 101), fp::BadPrime);
    CHECK(fp_rank(reduce_mod(m, 103)) == 1);
}
