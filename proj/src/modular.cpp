#include "k3syz/modular.hpp"

#include <random>

namespace k3syz::fp {

Elt pow(Elt a, std::uint64_t e, Elt p) {
    Elt r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

Elt inv(Elt a, Elt p) { return pow(a, p - 2, p); }

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this witness set decides primality for all n < 2^64
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        Elt x = pow(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Elt next_prime(Elt n) {
    if (n < 2) return 2;
    Elt c = n + 1;
    if (c % 2 == 0) ++c;
    while (!is_prime(c)) c += 2;
    return c;
}

Elt seeded_prime(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    while (true) {
        Elt c = (Elt(1) << 60) | (rng() & ((Elt(1) << 60) - 1)) | 1;
        if (is_prime(c)) return c;
    }
}

Elt from_mpz(const mpz_class& z, Elt p) {
    Elt r = mpz_fdiv_ui(z.get_mpz_t(), p);
    return r;
}

Elt from_mpq(const mpq_class& q, Elt p) {
    if (q.get_den() == 1) return from_mpz(q.get_num(), p);
    Elt den = from_mpz(q.get_den(), p);
    if (den == 0) throw BadPrime("denominator divisible by prime " + std::to_string(p));
    return mul(from_mpz(q.get_num(), p), inv(den, p), p);
}

}  // namespace k3syz::fp
