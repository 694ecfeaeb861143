#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>

namespace k3syz::fp {

using Elt = std::uint64_t;

// 2^61 - 1, the default word-sized prime for modular ranks.
inline constexpr Elt kDefaultPrime = (std::uint64_t(1) << 61) - 1;

// Raised when a rational entry has a denominator divisible by the working
// prime; callers retry with the next prime.
struct BadPrime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Elt add(Elt a, Elt b, Elt p) {
    Elt s = a + b;
    return s >= p ? s - p : s;
}

inline Elt sub(Elt a, Elt b, Elt p) { return a >= b ? a - b : a + p - b; }

inline Elt mul(Elt a, Elt b, Elt p) {
    return static_cast<Elt>(static_cast<unsigned __int128>(a) * b % p);
}

Elt pow(Elt a, std::uint64_t e, Elt p);
Elt inv(Elt a, Elt p);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Smallest prime > n (by trial of successive candidates).
Elt next_prime(Elt n);

// Seed-determined prime in [2^60, 2^61).
Elt seeded_prime(std::uint64_t seed);

Elt from_mpz(const mpz_class& z, Elt p);

// num * den^{-1} mod p; throws BadPrime when p | den.
Elt from_mpq(const mpq_class& q, Elt p);

}  // namespace k3syz::fp
