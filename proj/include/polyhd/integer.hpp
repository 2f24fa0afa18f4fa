#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "polyhd/errors.hpp"

namespace polyhd {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(std::uint64_t n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial_int(std::uint64_t n, std::uint64_t k) {
    if (k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Multinomial coefficient (sum parts)! / prod parts_i!, as a product of
/// binomials of partial sums. Division-free, so integrality is structural.
inline Int multinomial(const std::vector<std::uint64_t>& parts) {
    Int r(1);
    std::uint64_t total = 0;
    for (std::uint64_t p : parts) {
        total += p;
        r *= binomial_int(total, p);
    }
    return r;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// If m = p^e with p prime and e >= 1, returns (p, e).
inline std::optional<std::pair<std::uint64_t, std::uint32_t>> prime_power_split(std::uint64_t m) {
    if (m < 2) return std::nullopt;
    Int zm(static_cast<unsigned long>(m));
    for (std::uint32_t e = 63; e >= 1; --e) {
        Int root;
        int exactflag = mpz_root(root.get_mpz_t(), zm.get_mpz_t(), e);
        if (exactflag == 0) continue;
        if (!root.fits_ulong_p()) continue;
        auto p = static_cast<std::uint64_t>(root.get_ui());
        if (is_prime_u64(p)) return std::make_pair(p, e);
        if (e == 1) break;
    }
    return std::nullopt;
}

/// v mod m, canonical in [0, m).
inline std::uint64_t mod_of_int(const Int& v, std::uint64_t m) {
    return mpz_fdiv_ui(v.get_mpz_t(), m);
}

}  // namespace polyhd
