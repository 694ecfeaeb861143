#pragma once

#include <cstdint>
#include <vector>

namespace k3syz {

inline constexpr int kNumVars = 4;

// Exponent vector of a monomial in 4 variables packed into one word, 16 bits
// per variable, variable 0 in the most significant field. For monomials of
// equal total degree, numeric comparison of the packed word is graded-lex
// comparison with variable 0 largest; multiplication is word addition.
using Monomial = std::uint64_t;

constexpr Monomial pack_monomial(int e0, int e1, int e2, int e3) {
    return (Monomial(e0) << 48) | (Monomial(e1) << 32) | (Monomial(e2) << 16) | Monomial(e3);
}

constexpr int exponent(Monomial m, int var) {
    return int((m >> (48 - 16 * var)) & 0xffff);
}

constexpr int total_degree(Monomial m) {
    return exponent(m, 0) + exponent(m, 1) + exponent(m, 2) + exponent(m, 3);
}

constexpr Monomial monomial_product(Monomial a, Monomial b) { return a + b; }

// Binomial coefficient as a machine integer; 0 when k < 0 or k > n.
// Sizes in this project stay far below overflow (dims <= C(n,3) for n < 100).
long long binomial(long long n, long long k);

// dim of the degree-t part of k[x0..x3]: C(t+3,3), and 0 for t < 0.
long long monomial_count(int t);

// All degree-t monomials in descending graded-lex order (x0^t first).
std::vector<Monomial> monomials_of_degree(int t);

// k-subsets of {0..n-1} in colex order, each subset sorted ascending.
std::vector<std::vector<int>> subsets_colex(int n, int k);

// Position of a sorted subset in the colex enumeration (combinadic rank).
long long colex_rank(const std::vector<int>& subset);

}  // namespace k3syz
