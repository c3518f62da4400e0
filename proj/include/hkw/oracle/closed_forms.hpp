#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "hkw/arith/groups.hpp"
#include "hkw/arith/prime.hpp"
#include "hkw/specseq/presented.hpp"

namespace hkw {

// |G| = p^p_exp * cofactor with p not dividing cofactor
struct FactoredOrder {
    int p = 2;
    int p_exp = 0;
    BigInt cofactor = 1;

    BigInt value() const
    {
        BigInt v = cofactor;
        for (int i = 0; i < p_exp; ++i) v *= p;
        return v;
    }
    std::string str() const
    {
        std::ostringstream os;
        os << p << "^" << p_exp;
        if (cofactor != 1) os << " * " << cofactor;
        return os.str();
    }
    bool operator==(const FactoredOrder& o) const { return p == o.p && p_exp == o.p_exp && cofactor == o.cofactor; }
};

inline void to_json(json& j, const FactoredOrder& f)
{
    j = json{{"p", f.p}, {"p_exponent", f.p_exp}, {"cofactor", f.cofactor.str()}, {"value", f.value().str()}};
}

inline FactoredOrder factor_order(int p, BigInt v)
{
    if (v <= 0) throw std::invalid_argument("factor_order: nonpositive value");
    FactoredOrder f;
    f.p = p;
    while (v % p == 0) { v /= p; ++f.p_exp; }
    f.cofactor = v;
    return f;
}

inline PrimePower prime_power_of(i64 q)
{
    if (q < 2) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    i64 p = 2;
    while (p * p <= q && q % p) ++p;
    if (p * p > q) p = q;
    i64 v = q;
    int s = 0;
    while (v % p == 0) { v /= p; ++s; }
    if (v != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    return PrimePower(static_cast<int>(p), s);
}

enum class Nu0 { zero, infinity };

inline std::string nu0_name(Nu0 c) { return c == Nu0::zero ? "zero" : "infinity"; }

inline Nu0 parse_nu0(const std::string& s)
{
    if (s == "zero" || s == "0") return Nu0::zero;
    if (s == "infinity" || s == "inf") return Nu0::infinity;
    throw std::invalid_argument("nu0 convention must be 'zero' or 'infinity'");
}

constexpr int kInfiniteLength = INT_MAX / 4;

inline int nu_conv(int p, i64 j, Nu0 c) { return j == 0 ? (c == Nu0::zero ? 0 : kInfiniteLength) : nu_p(p, j); }

// W_m(k) summand; infinite length means W(k)
inline void add_witt(WittModuleDescriptor& d, int m)
{
    if (m >= kInfiniteLength) ++d.free_rank;
    else d.add(m);
}

// ---- Hochschild homology (over Z) ----

enum class HHFamily { k, k_x, truncpoly, Wk, Wnk };

inline HHFamily parse_hh_family(const std::string& s)
{
    if (s == "k") return HHFamily::k;
    if (s == "k_x" || s == "k[x]") return HHFamily::k_x;
    if (s == "truncpoly") return HHFamily::truncpoly;
    if (s == "W(k)" || s == "Wk") return HHFamily::Wk;
    if (s == "W_n(k)" || s == "Wnk") return HHFamily::Wnk;
    throw std::invalid_argument("unknown HH family '" + s + "'");
}

// k = F_{p^s}; n is the truncation height or Witt length.
inline WittModuleDescriptor hh_closed_form(HHFamily f, int p, int s, int n, int q, std::optional<int> internal = std::nullopt)
{
    WittModuleDescriptor d(PrimePower(p, s));
    if (q < 0) return d;
    switch (f) {
    case HHFamily::k:
        if (q % 2 == 0 && (!internal || *internal == 0)) d.add(1);
        return d;
    case HHFamily::k_x: {
        // Gamma(mu0) (x) P(x) (x) E(sigma x), x of internal degree 1
        if (!internal) throw std::invalid_argument("HH(k[x]) is infinite in each degree; give an internal degree");
        int t = *internal;
        if (t < 0) return d;
        if (q % 2 == 0) d.add(1);
        else if (t >= 1) d.add(1);
        return d;
    }
    case HHFamily::truncpoly: {
        // H(Gamma(mu0) (x) P_n(x) (x) E(sigma x) (x) Gamma(x_n), d_0), d_0 gamma_c(x_n) = n x^(n-1) gamma_(c-1)(x_n) sigma x
        if (n < 1) throw std::invalid_argument("truncpoly needs n >= 1");
        int dim = 0;
        for (int c = 0; 2 * c <= q; ++c)
            for (int e = 0; e <= 1; ++e) {
                int rest = q - 2 * c - e;
                if (rest < 0 || rest % 2) continue;
                for (int b = 0; b < n; ++b) {
                    int t = b + e + n * c;
                    if (internal && t != *internal) continue;
                    bool killed = n % p != 0 && ((e == 0 && b == 0 && c >= 1) || (e == 1 && b == n - 1));
                    if (!killed) ++dim;
                }
            }
        d.add(1, dim);
        return d;
    }
    case HHFamily::Wk:
        if (q == 0) d.free_rank = 1;
        return d;
    case HHFamily::Wnk:
        if (n < 1) throw std::invalid_argument("W_n(k) needs n >= 1");
        if (q % 2 == 0) d.add(n);
        return d;
    }
    return d;
}

// ---- THH ----

enum class THHTarget { Wk, Wnk };
enum class THHMode { as_printed, recomputed };

inline std::string mode_name(THHMode m) { return m == THHMode::as_printed ? "as-printed" : "recomputed"; }

inline THHMode parse_thh_mode(const std::string& s)
{
    if (s == "as-printed") return THHMode::as_printed;
    if (s == "recomputed") return THHMode::recomputed;
    throw std::invalid_argument("mode must be 'as-printed' or 'recomputed'");
}

inline WittModuleDescriptor thh_wk(int p, int s, int q, bool relative)
{
    WittModuleDescriptor d(PrimePower(p, s));
    if (q < 0) throw std::invalid_argument("THH degree must be >= 0");
    if (q == 0) d.free_rank = 1;  // W(k), or pW(k) relative
    else if (q % 2) add_witt(d, nu_p(p, (q + 1) / 2) + (relative ? 1 : 0));
    return d;
}

// Summands W_{op(nu_p(j), n)}; op = max as printed, min as recomputed.
inline WittModuleDescriptor thh_wnk_formula(int p, int s, int n, int q, bool relative, Nu0 nu0, bool use_max)
{
    if (q < 0) throw std::invalid_argument("THH degree must be >= 0");
    auto op = [&](int a, int b) { return use_max ? std::max(a, b) : std::min(a, b); };
    WittModuleDescriptor d(PrimePower(p, s));
    const int i = q % 2 ? (q + 1) / 2 : q / 2;
    const int jlo = q % 2 ? 1 : 0;
    const int jhi = relative ? i - 1 : i;
    for (int j = jlo; j <= jhi; ++j) add_witt(d, op(nu_conv(p, j, nu0), n));
    if (relative) {
        if (q % 2) add_witt(d, op(nu_p(p, i) + 1, n));
        else add_witt(d, op(nu_conv(p, i, nu0), n - 1));
    }
    return d;
}

inline PresentedWindow thh_wn_window(int n, int qhi)
{
    // large enough that nothing in degrees <= qhi + 1 is truncated
    return PresentedWindow{0, qhi, n * ((qhi + 1) / 2 + 1) + 2};
}

// Groups of THH_q(W_n(k)), 0 <= q <= qhi, read off the presented spectral sequence.
inline std::map<int, WittModuleDescriptor> thh_wnk_recomputed(int p, int s, int n, int qhi, std::optional<PresentedWindow> window = std::nullopt)
{
    PresentedWindow w = window ? *window : thh_wn_window(n, qhi);
    return tower_groups(presented_thh_wn(p, n, w, true, s), w);
}

struct THHQuery {
    THHTarget target = THHTarget::Wk;
    int p = 2, s = 1, n = 1;
    int degree = 0;
    bool relative = false;
    Nu0 nu0 = Nu0::zero;
    THHMode mode = THHMode::as_printed;
};

struct THHAnswer {
    WittModuleDescriptor group;
    std::string provenance;  // closed-form | presented-SS
    std::string note;
};

inline THHAnswer thh_closed_form(const THHQuery& Q)
{
    if (Q.degree < 0) throw std::invalid_argument("THH degree must be >= 0");
    THHAnswer a;
    if (Q.target == THHTarget::Wk) {
        a.group = thh_wk(Q.p, Q.s, Q.degree, Q.relative);
        a.provenance = "closed-form";
        return a;
    }
    if (Q.n < 1) throw std::invalid_argument("W_n(k) needs n >= 1");
    if (Q.mode == THHMode::as_printed) {
        a.group = thh_wnk_formula(Q.p, Q.s, Q.n, Q.degree, Q.relative, Q.nu0, true);
        a.provenance = "closed-form";
        a.note = "summands W_max(nu_p(j), n) with nu_p(0) = " + nu0_name(Q.nu0);
        return a;
    }
    if (Q.relative) {
        a.group = thh_wnk_formula(Q.p, Q.s, Q.n, Q.degree, true, Nu0::infinity, false);
        a.provenance = "closed-form";
        a.note = "relative groups from the min formula with nu_p(0) = infinity";
        return a;
    }
    a.group = thh_wnk_recomputed(Q.p, Q.s, Q.n, Q.degree).at(Q.degree);
    a.provenance = "presented-SS";
    a.note = "x-towers on E_inf of P(mu0) (x) P_n(x) (x) E(sigma x) (x) Gamma(x_n) with the power-rule schedule";
    return a;
}

struct ModeDiffRow {
    int degree = 0;
    WittModuleDescriptor as_printed, recomputed, min_formula;
    bool agree = false;
};

inline std::vector<ModeDiffRow> thh_mode_diff(int p, int s, int n, int qhi, Nu0 nu0 = Nu0::zero)
{
    auto rec = thh_wnk_recomputed(p, s, n, qhi);
    std::vector<ModeDiffRow> out;
    for (int q = 0; q <= qhi; ++q) {
        ModeDiffRow r;
        r.degree = q;
        r.as_printed = thh_wnk_formula(p, s, n, q, false, nu0, true);
        r.recomputed = rec.at(q);
        r.min_formula = thh_wnk_formula(p, s, n, q, false, Nu0::infinity, false);
        r.agree = r.as_printed == r.recomputed;
        out.push_back(r);
    }
    return out;
}

inline json mode_diff_json(int p, int s, int n, const std::vector<ModeDiffRow>& rows, Nu0 nu0)
{
    json d = json::array();
    int mismatches = 0;
    for (const auto& r : rows) {
        d.push_back({{"degree", r.degree}, {"as_printed", r.as_printed}, {"recomputed", r.recomputed}, {"agree", r.agree},
                     {"recomputed_matches_min_formula", r.recomputed == r.min_formula}});
        if (!r.agree) ++mismatches;
    }
    return json{{"target", "W_" + std::to_string(n) + "(F_" + std::to_string(ipow(p, s)) + ")"},
                {"p", p}, {"s", s}, {"n", n}, {"nu0", nu0_name(nu0)}, {"rows", d}, {"mismatches", mismatches}};
}

// ---- TR, TF ----

// lambda_d = C(1) + ... + C(d); dim lambda^(j) = floor(d / p^j)
struct RepShift {
    int p = 2;
    int d = 0;
    std::vector<int> fixed_dims;
};

inline RepShift rep_shift(int p, int d)
{
    if (d < 0) throw std::invalid_argument("lambda_d needs d >= 0");
    RepShift r{p, d, {}};
    for (i64 v = d; v > 0; v /= p) r.fixed_dims.push_back(static_cast<int>(v));
    r.fixed_dims.push_back(0);
    return r;
}

// Witt length of TR^m_{2i - lambda_d}(k)
inline int tr_witt_length(int m, const RepShift& rep, int i)
{
    if (m < 1 || i < 0) throw std::invalid_argument("tr_witt_length needs m >= 1 and i >= 0");
    if (i >= rep.d) return m;
    int j = 1;
    while (j < static_cast<int>(rep.fixed_dims.size()) && rep.fixed_dims[static_cast<size_t>(j)] > i) ++j;
    return std::max(m - j, 0);
}

// TF_{2i-1}(k[x]/x^n; s) for k = F_{p^sf}
inline WittModuleDescriptor tf_column(int p, int sf, int n, int s, int degree)
{
    if (s < 1 || n < 1) throw std::invalid_argument("tf_column needs s >= 1 and n >= 1");
    if (degree % 2 == 0) throw std::invalid_argument("tf_column: the E_1-term is concentrated in odd degree");
    WittModuleDescriptor w(PrimePower(p, sf));
    const int i = (degree + 1) / 2;
    if (i < 1) return w;
    const RepShift rep = rep_shift(p, s / n);
    const int top = tr_witt_length(nu_p(p, s) + 1, rep, i - 1);
    if (s % n) {
        w.add(top);
        return w;
    }
    if (n % p) return w;
    const int bottom = tr_witt_length(nu_p(p, s / n) + 1, rep, i - 1);
    w.add(std::max(top - bottom, 0));
    return w;
}

struct OrderCrosscheck {
    int p = 2, sf = 1;
    int N = 0;
    int lhs_exp = 0, rhs_exp = 0;  // log_p of the orders
    bool vanishing = true;         // R iso on columns s >= N
    bool pass = false;
    std::vector<std::pair<int, int>> columns;  // (s, log_p |TF_{2i-1}(s)|)
};

inline OrderCrosscheck order_theorem_crosscheck(i64 q, int n, int i)
{
    if (i < 1) throw std::invalid_argument("order crosscheck needs i >= 1");
    if (n < 1) throw std::invalid_argument("order crosscheck needs n >= 1");
    PrimePower k = prime_power_of(q);
    OrderCrosscheck c;
    c.p = k.p;
    c.sf = k.s;
    c.N = n * i + 1;
    auto len = [&](int s) { return witt_module_order(tf_column(k.p, k.s, n, s, 2 * i - 1)); };
    for (int s = (c.N + k.p - 1) / k.p; s < c.N; ++s) {
        int l = len(s);
        c.columns.push_back({s, l});
        c.lhs_exp += l;
    }
    c.rhs_exp = k.s * (n - 1) * i;
    for (int s = c.N; s <= k.p * c.N; ++s) {
        int below = s % k.p ? 0 : len(s / k.p);
        if (len(s) != below) c.vanishing = false;
    }
    c.pass = c.lhs_exp == c.rhs_exp && c.vanishing;
    return c;
}

// ---- K and TC ----

inline FactoredOrder k_order_ratio(i64 q, int n, int i, bool relative)
{
    if (n < 1) throw std::invalid_argument("k_order_ratio needs n >= 1");
    if (relative ? i < 1 : i < 2) throw std::invalid_argument(relative ? "relative order ratio needs i >= 1" : "non-relative order ratio needs i >= 2");
    PrimePower k = prime_power_of(q);
    FactoredOrder f;
    f.p = k.p;
    f.p_exp = k.s * (n - 1) * i;
    if (!relative) f.cofactor = BigInt(q) == 1 ? BigInt(1) : boost::multiprecision::pow(BigInt(q), i) - 1;
    return f;
}

// K_*(W_n(F_{p^s}), (p)) for 1 <= degree <= 2p - 2
inline FinAbPGroup k_lowdeg(int p, int s, int n, int degree)
{
    if (n < 2) throw std::invalid_argument("k_lowdeg needs n >= 2");
    if (s < 1) throw std::invalid_argument("k_lowdeg needs s >= 1");
    if (degree < 1 || degree > 2 * p - 2)
        throw std::out_of_range("degree " + std::to_string(degree) + " is beyond the low-degree range [1, " + std::to_string(2 * p - 2) + "]");
    FinAbPGroup g(p);
    if (degree % 2) {
        const int i = (degree + 1) / 2;
        if (degree <= 2 * p - 5) {
            for (int r = 0; r < s; ++r) g.factors.push_back((n - 1) * i);
        } else {
            g.factors.push_back(1);
            if ((n - 1) * (p - 1) - 1 > 0) g.factors.push_back((n - 1) * (p - 1) - 1);
            for (int r = 1; r < s; ++r) g.factors.push_back((n - 1) * (p - 1));
        }
    } else if (degree == 2 * p - 2) {
        g.factors.push_back(1);
    }
    g.canonicalize();
    return g;
}

// TC_*(F_{p^s}): Z_p in degree 0, coker(phi - 1) = Z/p in degree -1
inline FinAbPGroup tc_of_k(int p, int s, int degree)
{
    (void)PrimePower(p, s);
    if (degree == 0) return FinAbPGroup(p, {}, 1);
    if (degree == -1) return FinAbPGroup(p, {1});
    return FinAbPGroup(p);
}

// K_*(F_q): Z in degree 0, Z/(q^i - 1) in degree 2i - 1, 0 otherwise.
struct FiniteFieldK {
    int free_rank = 0;
    BigInt order = 1;
    std::string str() const
    {
        if (free_rank) return "Z";
        if (order == 1) return "0";
        return "Z/" + order.str();
    }
};

inline FiniteFieldK k_fq(i64 q, int degree)
{
    (void)prime_power_of(q);
    if (degree < 0) throw std::invalid_argument("K_*(F_q) needs degree >= 0");
    FiniteFieldK k;
    if (degree == 0) k.free_rank = 1;
    else if (degree % 2) k.order = boost::multiprecision::pow(BigInt(q), (degree + 1) / 2) - 1;
    return k;
}

// ---- V(0)-homotopy of TC(W(k)) and K(W(k)) ----

enum class V0Target { TC, K };

struct V0Generator {
    std::string name;
    int degree = 0;
    int dim = 1;  // over F_p
};

// P(v1){F_p{1, l1} + coker(phi-1){d or d v1, d l1} + k{t^e l1 | 0 < e < p}}, |v1| = 2p-2, |l1| = 2p-1, |t| = -2, |d| = -1
inline std::vector<V0Generator> v0_generators(V0Target t, int p, int s)
{
    std::vector<V0Generator> g{{"1", 0, 1}, {"l1", 2 * p - 1, 1}};
    if (t == V0Target::TC) g.push_back({"d", -1, 1});
    else g.push_back({"d v1", 2 * p - 3, 1});
    g.push_back({"d l1", 2 * p - 2, 1});
    for (int e = 1; e < p; ++e) g.push_back({"t^" + std::to_string(e) + " l1", 2 * p - 1 - 2 * e, s});
    return g;
}

inline int v0_dims(V0Target t, int p, int s, int j)
{
    (void)PrimePower(p, s);
    if (j < -1) throw std::invalid_argument("v0_dims needs degree >= -1");
    const int v1 = 2 * p - 2;
    int dim = 0;
    for (const auto& g : v0_generators(t, p, s))
        for (int k = 0; g.degree + k * v1 <= j; ++k)
            if (g.degree + k * v1 == j) dim += g.dim;
    return dim;
}

} // namespace hkw
