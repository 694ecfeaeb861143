#include "k3syz/monomial.hpp"

namespace k3syz {

long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (2 * k > n) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

long long monomial_count(int t) {
    if (t < 0) return 0;
    return binomial(t + 3, 3);
}

std::vector<Monomial> monomials_of_degree(int t) {
    std::vector<Monomial> out;
    if (t < 0) return out;
    out.reserve(static_cast<size_t>(monomial_count(t)));
    for (int a = t; a >= 0; --a)
        for (int b = t - a; b >= 0; --b)
            for (int c = t - a - b; c >= 0; --c)
                out.push_back(pack_monomial(a, b, c, t - a - b - c));
    return out;
}

std::vector<std::vector<int>> subsets_colex(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    out.reserve(static_cast<size_t>(binomial(n, k)));
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        // colex successor: bump the lowest element that can move without
        // colliding with the next one, reset everything below it
        int i = 0;
        while (i + 1 < k && cur[i] + 1 == cur[i + 1]) ++i;
        if (k == 0 || (i + 1 == k && cur[i] + 1 == n)) break;
        ++cur[i];
        for (int j = 0; j < i; ++j) cur[j] = j;
    }
    return out;
}

long long colex_rank(const std::vector<int>& subset) {
    long long r = 0;
    for (size_t j = 0; j < subset.size(); ++j)
        r += binomial(subset[j], static_cast<long long>(j) + 1);
    return r;
}

}  // namespace k3syz
