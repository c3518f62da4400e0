#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hkw {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline bool is_prime(i64 n)
{
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// p-adic valuation; nu_p(0) is the caller's business.
inline int nu_p(i64 p, i64 x)
{
    if (x == 0) throw std::domain_error("nu_p(0) requires an explicit convention");
    if (x < 0) x = -x;
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

inline i64 ipow(i64 b, int e)
{
    i64 r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && (r > INT64_MAX / (b < 0 ? -b : b)))
            throw std::overflow_error("ipow overflow");
        r *= b;
    }
    return r;
}

inline i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m)
{
    return static_cast<i64>((static_cast<i128>(mod(a, m)) * mod(b, m)) % m);
}

inline i64 powmod(i64 a, u64 e, i64 m)
{
    i64 r = 1 % m, b = mod(a, m);
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a unit modulo m (extended Euclid).
inline i64 invmod(i64 a, i64 m)
{
    i64 g = m, x = 0, y = 1, r = mod(a, m);
    while (r) {
        i64 q = g / r;
        i64 t = g - q * r; g = r; r = t;
        t = x - q * y; x = y; y = t;
    }
    if (g != 1) throw std::domain_error("invmod: not a unit");
    return mod(x, m);
}

struct PrimePower {
    int p = 2;
    int s = 1;

    PrimePower() = default;
    PrimePower(int p_, int s_) : p(p_), s(s_)
    {
        if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
        if (s < 1) throw std::invalid_argument("s must be >= 1");
    }
    i64 q() const { return ipow(p, s); }
    bool operator==(const PrimePower&) const = default;
};

// Largest M with p^M < 2^62, the working precision of Z/p^M arithmetic.
inline int max_precision(i64 p)
{
    int M = 0;
    i128 v = 1;
    while (v * p < (static_cast<i128>(1) << 62)) { v *= p; ++M; }
    return M;
}

} // namespace hkw
