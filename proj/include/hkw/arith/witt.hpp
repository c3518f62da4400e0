#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <mutex>
#include <vector>

#include "hkw/arith/galois_ring.hpp"

namespace hkw {

using BigInt = boost::multiprecision::cpp_int;

// w_i = sum_{j<=i} p^j a_j^(p^(i-j)) over Z.
inline std::vector<BigInt> ghost_components(int p, const std::vector<BigInt>& a)
{
    std::vector<BigInt> w(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        BigInt acc = 0, pj = 1;
        for (size_t j = 0; j <= i; ++j) {
            BigInt e = 1;
            for (size_t k = 0; k < i - j; ++k) e *= p;
            acc += pj * boost::multiprecision::pow(a[j], static_cast<unsigned>(e));
            pj *= p;
        }
        w[i] = acc;
    }
    return w;
}

inline std::vector<BigInt> ghost_components(int p, const std::vector<i64>& a)
{
    std::vector<BigInt> b(a.begin(), a.end());
    return ghost_components(p, b);
}

enum class WittPath { automatic, galois, symbolic };

namespace detail {

// Integer polynomial in 2m variables X_0..X_{m-1}, Y_0..Y_{m-1}.
using WMono = std::vector<std::uint16_t>;
using WPoly = std::map<WMono, BigInt>;

inline WPoly wpoly_add(const WPoly& a, const WPoly& b, const BigInt& cb = 1)
{
    WPoly r = a;
    for (const auto& [m, c] : b) {
        auto& t = r[m];
        t += cb * c;
        if (t == 0) r.erase(m);
    }
    return r;
}

inline WPoly wpoly_mul(const WPoly& a, const WPoly& b)
{
    WPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            WMono m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
            auto& t = r[m];
            t += ca * cb;
            if (t == 0) r.erase(m);
        }
    return r;
}

inline WPoly wpoly_pow(WPoly b, u64 e, size_t nv)
{
    WPoly r;
    r[WMono(nv, 0)] = 1;
    while (e) {
        if (e & 1) r = wpoly_mul(r, b);
        e >>= 1;
        if (e) b = wpoly_mul(b, b);
    }
    return r;
}

inline WPoly wpoly_var(size_t nv, size_t i, std::uint16_t e = 1)
{
    WMono m(nv, 0);
    m[i] = e;
    return WPoly{{m, 1}};
}

struct WittPolys {
    std::vector<WPoly> sum, prod;
};

inline WittPolys build_witt_polys(int p, int m)
{
    size_t nv = 2 * static_cast<size_t>(m);
    auto ghost = [&](int n, size_t off) {
        WPoly w;
        for (int j = 0; j <= n; ++j) {
            auto t = wpoly_var(nv, off + j, static_cast<std::uint16_t>(ipow(p, n - j)));
            w = wpoly_add(w, t, BigInt(ipow(p, j)));
        }
        return w;
    };
    WittPolys out;
    for (int n = 0; n < m; ++n) {
        WPoly wx = ghost(n, 0), wy = ghost(n, static_cast<size_t>(m));
        WPoly s = wpoly_add(wx, wy), pr = wpoly_mul(wx, wy);
        for (int i = 0; i < n; ++i) {
            u64 e = static_cast<u64>(ipow(p, n - i));
            s = wpoly_add(s, wpoly_pow(out.sum[i], e, nv), -BigInt(ipow(p, i)));
            pr = wpoly_add(pr, wpoly_pow(out.prod[i], e, nv), -BigInt(ipow(p, i)));
        }
        BigInt pn = ipow(p, n);
        for (auto& [mm, c] : s) {
            if (c % pn != 0) throw std::logic_error("Witt sum polynomial not integral");
            c /= pn;
        }
        for (auto& [mm, c] : pr) {
            if (c % pn != 0) throw std::logic_error("Witt product polynomial not integral");
            c /= pn;
        }
        out.sum.push_back(std::move(s));
        out.prod.push_back(std::move(pr));
    }
    return out;
}

inline bool symbolic_feasible(int p, int m) { return ipow(p, m - 1) <= 32 && m <= 6; }

inline const WittPolys& witt_polys(int p, int m)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, WittPolys> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_witt_polys(p, m)).first;
    return it->second;
}

} // namespace detail

class WittVector {
public:
    WittVector() = default;
    WittVector(FqFieldPtr F, std::vector<FqElement> comps) : F_(std::move(F)), a_(std::move(comps))
    {
        for (const auto& c : a_)
            if (c.field()->p != F_->p || c.field()->s != F_->s) throw std::invalid_argument("WittVector: component field mismatch");
    }
    static WittVector zero(FqFieldPtr F, int m)
    {
        return WittVector(F, std::vector<FqElement>(static_cast<size_t>(m), FqElement::zero(F)));
    }
    static WittVector from_ints(FqFieldPtr F, const std::vector<i64>& comps)
    {
        std::vector<FqElement> c;
        for (auto v : comps) c.push_back(FqElement::from_int(F, v));
        return WittVector(F, c);
    }

    int length() const { return static_cast<int>(a_.size()); }
    const FqFieldPtr& field() const { return F_; }
    const std::vector<FqElement>& components() const { return a_; }
    const FqElement& operator[](int i) const { return a_[static_cast<size_t>(i)]; }

    bool operator==(const WittVector& o) const { return a_ == o.a_; }
    bool operator!=(const WittVector& o) const { return !(*this == o); }

    std::string str() const
    {
        std::string s = "(";
        for (int i = 0; i < length(); ++i) {
            if (i) s += ",";
            s += F_->s == 1 ? std::to_string(a_[static_cast<size_t>(i)].coeffs()[0]) : a_[static_cast<size_t>(i)].str();
        }
        return s + ")";
    }

private:
    FqFieldPtr F_;
    std::vector<FqElement> a_;
};

// sum_i p^i tau(a_i^(p^-i)) in GR(p^m, s)
inline GaloisRing::Elem witt_to_galois(const WittVector& a)
{
    GaloisRing G(a.field(), a.length());
    auto r = G.zero();
    i64 pi = 1;
    for (int i = 0; i < a.length(); ++i) {
        FqElement b = a[i];
        for (int k = 0; k < i; ++k) b = b.frobenius_inverse();
        r = G.add(r, G.scale(G.teichmuller(b), pi));
        pi *= a.field()->p;
    }
    return r;
}

inline WittVector galois_to_witt(const GaloisRing& G, GaloisRing::Elem r)
{
    std::vector<FqElement> comps;
    const auto& F = G.field();
    for (int i = 0; i < G.length(); ++i) {
        FqElement b = G.reduce(r);
        r = G.sub(r, G.teichmuller(b));
        if (!G.divisible_by_p(r)) throw std::logic_error("galois_to_witt: digit extraction failed");
        r = G.div_p(r);
        for (int k = 0; k < i; ++k) b = b.frobenius();
        comps.push_back(b);
    }
    return WittVector(F, comps);
}

// W_m(F_p) -> Z/p^m
inline i64 witt_int_iso(const WittVector& a)
{
    if (a.field()->s != 1) throw std::invalid_argument("witt_int_iso requires s = 1");
    return witt_to_galois(a)[0];
}

inline WittVector witt_from_int(FqFieldPtr F, int m, i64 v)
{
    if (F->s != 1) throw std::invalid_argument("witt_from_int requires s = 1");
    GaloisRing G(F, m);
    return galois_to_witt(G, G.from_int(v));
}

enum class WittOp { add, mul, neg };

namespace detail {

inline WittVector witt_symbolic(const WittVector& a, const WittVector& b, bool product)
{
    int m = a.length();
    const auto& F = a.field();
    const auto& polys = witt_polys(F->p, m);
    std::vector<FqElement> vals;
    for (int i = 0; i < m; ++i) vals.push_back(a[i]);
    for (int i = 0; i < m; ++i) vals.push_back(b[i]);
    std::vector<FqElement> out;
    for (int n = 0; n < m; ++n) {
        const auto& P = product ? polys.prod[n] : polys.sum[n];
        FqElement acc = FqElement::zero(F);
        for (const auto& [mono, c] : P) {
            BigInt cm = c % F->p;
            if (cm < 0) cm += F->p;
            if (cm == 0) continue;
            FqElement t = FqElement::from_int(F, static_cast<i64>(cm));
            for (size_t v = 0; v < mono.size(); ++v)
                if (mono[v]) t = t * vals[v].pow(mono[v]);
            acc = acc + t;
        }
        out.push_back(acc);
    }
    return WittVector(F, out);
}

} // namespace detail

inline WittVector witt_ring_ops(const WittVector& a, const WittVector& b, WittOp op, WittPath path = WittPath::automatic)
{
    if (op != WittOp::neg) {
        if (a.length() != b.length()) throw std::invalid_argument("witt_ring_ops: length mismatch");
        if (a.field()->p != b.field()->p || a.field()->modulus != b.field()->modulus)
            throw std::invalid_argument("witt_ring_ops: base field mismatch");
    }
    if (a.length() < 1) throw std::invalid_argument("witt_ring_ops: empty Witt vector");
    const auto& F = a.field();
    int m = a.length();
    if (path == WittPath::automatic) path = WittPath::galois;
    if (path == WittPath::symbolic && op != WittOp::neg) {
        if (!detail::symbolic_feasible(F->p, m)) throw std::invalid_argument("symbolic Witt polynomials not precomputed for this (p, m)");
        return detail::witt_symbolic(a, b, op == WittOp::mul);
    }
    GaloisRing G(F, m);
    auto x = witt_to_galois(a);
    if (op == WittOp::neg) return galois_to_witt(G, G.neg(x));
    auto y = witt_to_galois(b);
    return galois_to_witt(G, op == WittOp::add ? G.add(x, y) : G.mul(x, y));
}

inline WittVector operator+(const WittVector& a, const WittVector& b) { return witt_ring_ops(a, b, WittOp::add); }
inline WittVector operator*(const WittVector& a, const WittVector& b) { return witt_ring_ops(a, b, WittOp::mul); }
inline WittVector operator-(const WittVector& a) { return witt_ring_ops(a, a, WittOp::neg); }

enum class WittMap { F, V, R, teichmuller, phi, phi_inverse };

// F: W_{m+1} -> W_m, V: W_m -> W_{m+1}, R: W_{m+1} -> W_m, phi: W_m -> W_m.
inline WittVector witt_structure_map(const WittVector& a, WittMap map)
{
    const auto& F = a.field();
    std::vector<FqElement> c = a.components();
    switch (map) {
    case WittMap::F:
        if (c.size() < 2) throw std::invalid_argument("F would produce a length-0 Witt vector");
        c.pop_back();
        for (auto& x : c) x = x.frobenius();
        break;
    case WittMap::V:
        c.insert(c.begin(), FqElement::zero(F));
        break;
    case WittMap::R:
        if (c.size() < 2) throw std::invalid_argument("R would produce a length-0 Witt vector");
        c.pop_back();
        break;
    case WittMap::phi:
        for (auto& x : c) x = x.frobenius();
        break;
    case WittMap::phi_inverse:
        for (auto& x : c) x = x.frobenius_inverse();
        break;
    case WittMap::teichmuller:
        for (size_t i = 1; i < c.size(); ++i) c[i] = FqElement::zero(F);
        break;
    }
    return WittVector(F, c);
}

inline WittVector teichmuller(const FqElement& a, int m)
{
    if (m < 1) throw std::invalid_argument("teichmuller: length must be >= 1");
    std::vector<FqElement> c(static_cast<size_t>(m), FqElement::zero(a.field()));
    c[0] = a;
    return WittVector(a.field(), c);
}

} // namespace hkw
