#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hkw/arith/snf.hpp"

namespace hkw {

using json = nlohmann::json;

// Finitely generated p-local abelian group: (+) Z/p^e_i (+) Z_p^free_rank.
struct FinAbPGroup {
    int p = 2;
    std::vector<int> factors;  // exponents >= 1, ascending
    int free_rank = 0;

    FinAbPGroup() = default;
    explicit FinAbPGroup(int p_, std::vector<int> f = {}, int free = 0) : p(p_), factors(std::move(f)), free_rank(free)
    {
        canonicalize();
    }
    void canonicalize()
    {
        for (int e : factors)
            if (e < 1) throw std::invalid_argument("FinAbPGroup: exponents must be >= 1");
        std::sort(factors.begin(), factors.end());
    }
    bool trivial() const { return factors.empty() && free_rank == 0; }
    bool finite() const { return free_rank == 0; }
    // log_p of the order (finite part)
    int length() const
    {
        int t = 0;
        for (int e : factors) t += e;
        return t;
    }
    FinAbPGroup operator+(const FinAbPGroup& o) const
    {
        FinAbPGroup r(p, factors, free_rank + o.free_rank);
        r.factors.insert(r.factors.end(), o.factors.begin(), o.factors.end());
        r.canonicalize();
        return r;
    }
    bool operator==(const FinAbPGroup& o) const { return factors == o.factors && free_rank == o.free_rank && (trivial() || p == o.p); }
    bool operator!=(const FinAbPGroup& o) const { return !(*this == o); }

    std::string str() const
    {
        if (trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        std::map<int, int> mult;
        for (int e : factors) ++mult[e];
        for (auto& [e, r] : mult) {
            if (!first) os << " + ";
            first = false;
            os << "Z/" << p;
            if (e > 1) os << "^" << e;
            if (r > 1) os << "^(" << r << ")";
        }
        if (free_rank) {
            if (!first) os << " + ";
            os << "Z_" << p;
            if (free_rank > 1) os << "^(" << free_rank << ")";
        }
        return os.str();
    }
};

inline void to_json(json& j, const FinAbPGroup& g)
{
    std::map<int, int> mult;
    for (int e : g.factors) ++mult[e];
    json f = json::array();
    for (auto& [e, r] : mult) f.push_back({{"exponent", e}, {"multiplicity", r}});
    j = json{{"p", g.p}, {"cyclic_factors", f}, {"free_rank", g.free_rank}, {"text", g.str()}};
}

inline void from_json(const json& j, FinAbPGroup& g)
{
    g.p = j.at("p").get<int>();
    g.factors.clear();
    for (const auto& f : j.at("cyclic_factors"))
        for (int r = 0; r < f.at("multiplicity").get<int>(); ++r) g.factors.push_back(f.at("exponent").get<int>());
    g.free_rank = j.value("free_rank", 0);
    g.canonicalize();
}

// (+) W_m(F_{p^s})^r, optionally with copies of W(k) (free_rank).
struct WittModuleDescriptor {
    PrimePower base;
    std::map<int, int> summands;  // witt_length -> multiplicity
    int free_rank = 0;

    WittModuleDescriptor() = default;
    explicit WittModuleDescriptor(PrimePower b) : base(b) {}
    WittModuleDescriptor(PrimePower b, std::vector<std::pair<int, int>> s, int free = 0) : base(b), free_rank(free)
    {
        for (auto [m, r] : s) add(m, r);
    }
    // zero-length summands are dropped
    void add(int m, int r = 1)
    {
        if (m < 0 || r < 0) throw std::invalid_argument("WittModuleDescriptor: negative length or multiplicity");
        if (m == 0 || r == 0) return;
        summands[m] += r;
    }
    bool trivial() const { return summands.empty() && free_rank == 0; }
    WittModuleDescriptor operator+(const WittModuleDescriptor& o) const
    {
        WittModuleDescriptor r = *this;
        for (auto [m, k] : o.summands) r.add(m, k);
        r.free_rank += o.free_rank;
        return r;
    }
    bool operator==(const WittModuleDescriptor& o) const
    {
        return summands == o.summands && free_rank == o.free_rank && base.p == o.base.p && base.s == o.base.s;
    }
    bool operator!=(const WittModuleDescriptor& o) const { return !(*this == o); }

    FinAbPGroup group() const
    {
        FinAbPGroup g(base.p);
        for (auto [m, r] : summands)
            for (int i = 0; i < r * base.s; ++i) g.factors.push_back(m);
        g.free_rank = free_rank * base.s;
        g.canonicalize();
        return g;
    }
    std::string str() const
    {
        if (trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto [m, r] : summands) {
            if (!first) os << " + ";
            first = false;
            os << "W_" << m << "(F_" << base.q() << ")";
            if (r > 1) os << "^" << r;
        }
        if (free_rank) {
            if (!first) os << " + ";
            os << "W(F_" << base.q() << ")";
            if (free_rank > 1) os << "^" << free_rank;
        }
        return os.str();
    }
};

// log_p of the order: s * sum m_i r_i
inline int witt_module_order(const WittModuleDescriptor& d)
{
    if (d.free_rank) throw std::domain_error("witt_module_order: infinite module");
    int t = 0;
    for (auto [m, r] : d.summands) t += m * r;
    return d.base.s * t;
}

inline void to_json(json& j, const WittModuleDescriptor& d)
{
    json f = json::array();
    for (auto [m, r] : d.summands) f.push_back({{"witt_length", m}, {"multiplicity", r}});
    j = json{{"factors", f}, {"p", d.base.p}, {"s", d.base.s}};
    if (d.free_rank) j["free_rank"] = d.free_rank;
    j["text"] = d.str();
}

inline void from_json(const json& j, WittModuleDescriptor& d)
{
    d = WittModuleDescriptor(PrimePower(j.at("p").get<int>(), j.at("s").get<int>()));
    for (const auto& f : j.at("factors")) d.add(f.at("witt_length").get<int>(), f.at("multiplicity").get<int>());
    d.free_rank = j.value("free_rank", 0);
}

// p-part of a nonzero integer, as an exponent
inline int p_exponent(const BigInt& v, int p)
{
    BigInt x = v < 0 ? BigInt(-v) : v;
    if (x == 0) throw std::domain_error("p_exponent(0)");
    int e = 0;
    while (x % p == 0) { x /= p; ++e; }
    return e;
}

// Homology ker(out)/im(in) over Z, p-primary torsion plus free rank.
inline FinAbPGroup group_from_matrices(int p, const SparseIntMatrix& in, const SparseIntMatrix& out)
{
    if (in.rows() != out.cols()) throw std::invalid_argument("group_from_matrices: non-composable shapes");
    if (in.cols() > 0 && out.rows() > 0 && !(out * in).is_zero())
        throw std::invalid_argument("group_from_matrices: d o d != 0");
    int n = in.rows();
    auto si = smith_normal_form(in);
    auto so = smith_normal_form(out);
    FinAbPGroup g(p);
    for (const auto& f : si.factors) {
        int e = p_exponent(f, p);
        if (e > 0) g.factors.push_back(e);
    }
    g.free_rank = n - si.rank - so.rank;
    g.canonicalize();
    return g;
}

} // namespace hkw
