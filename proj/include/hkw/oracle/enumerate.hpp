#pragma once

// Exhaustive enumerations, independent of the closed forms they are compared with.

#include <set>

#include "hkw/arith/galois_ring.hpp"
#include "hkw/arith/groups.hpp"

namespace hkw::enumerate {

// p-Sylow subgroup 1 + p GR(p^n, s) of the unit group of W_n(F_{p^s}), by enumeration
inline FinAbPGroup unit_sylow(int p, int s, int n)
{
    GaloisRing G(make_field(p, s), n);
    const i64 side = ipow(p, n - 1);
    const i64 count = ipow(side, s);
    std::map<int, i64> by_order;  // k -> #{u : ord(u) = p^k}
    for (i64 code = 0; code < count; ++code) {
        GaloisRing::Elem u = G.zero();
        i64 c = code;
        for (int i = 0; i < s; ++i) {
            u[static_cast<size_t>(i)] = (c % side) * p;
            c /= side;
        }
        u = G.add(u, G.from_int(1));
        int k = 0;
        while (u != G.from_int(1)) {
            u = G.pow(u, static_cast<u64>(p));
            ++k;
        }
        ++by_order[k];
    }
    // N_k = #{u : u^(p^k) = 1}; the number of cyclic factors of exponent >= k is log_p(N_k / N_(k-1))
    std::vector<i64> N{1};
    i64 acc = by_order[0];
    for (int k = 1; k <= n; ++k) {
        acc += by_order[k];
        N.push_back(acc);
    }
    FinAbPGroup g(p);
    auto lg = [&](i64 v) {
        int e = 0;
        while (v > 1) { v /= p; ++e; }
        return e;
    };
    for (int k = 1; k <= n; ++k) {
        int ge_k = lg(N[static_cast<size_t>(k)] / N[static_cast<size_t>(k - 1)]);
        int ge_k1 = k < n ? lg(N[static_cast<size_t>(k + 1)] / N[static_cast<size_t>(k)]) : 0;
        for (int r = 0; r < ge_k - ge_k1; ++r) g.factors.push_back(k);
    }
    g.canonicalize();
    return g;
}

// log_p of the index of the image of x -> x^p - x in F_{p^s}
inline int coker_frobenius_minus_one(int p, int s)
{
    auto F = make_field(p, s);
    std::set<i64> image;
    for (i64 c = 0; c < F->q(); ++c) {
        auto x = FqElement::from_index(F, c);
        image.insert((x.pow(static_cast<u64>(p)) + (-x)).index());
    }
    i64 idx = F->q() / static_cast<i64>(image.size());
    int e = 0;
    while (idx > 1) { idx /= p; ++e; }
    return e;
}

inline i64 unit_count(int p, int s)
{
    auto F = make_field(p, s);
    i64 n = 0;
    for (i64 c = 0; c < F->q(); ++c) {
        auto x = FqElement::from_index(F, c);
        if (!x.is_zero() && (x * x.inverse()).index() == 1) ++n;
    }
    return n;
}

} // namespace hkw::enumerate
