#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hkw/homology/hochschild.hpp"
#include "hkw/homology/reduce.hpp"

namespace hkw {

// Homology of a reduced complex in degree k over Z_(p), or over Z/p^coef_exp.
inline FinAbPGroup reduced_homology(const ReducedComplex& Rc, int k, PrecisionLog* log = nullptr)
{
    const PadicRing& R = Rc.R;
    const size_t n = Rc.rank(k);
    if (n == 0) return FinAbPGroup(R.p());
    const int c = Rc.coef_exp;
    Lattice full = Lattice::full(R, n);
    Lattice Z = full;
    if (k > Rc.lo && Rc.rank(k - 1) > 0) {
        Lattice tgt = c ? Lattice::scaled_full(R, Rc.rank(k - 1), c) : Lattice(&R, Rc.rank(k - 1));
        Z = preimage(R, Rc.diff(k), full, tgt, log);
    }
    Lattice B(&R, n);
    if (k < Rc.hi && Rc.rank(k + 1) > 0) B = image(R, Rc.diff(k + 1), Lattice::full(R, Rc.rank(k + 1)), log);
    if (c) B = B.sum(Lattice::scaled_full(R, n, c), log);
    int thr = reliable_precision(R);
    FinAbPGroup g = quotient_group(R, Z, B, log, thr);
    if (log && log->min_prec <= thr) throw std::runtime_error("homology: p-adic precision exhausted");
    return g;
}

// Homology in degrees lo..hi; the complex must extend to hi + 1.
inline std::map<int, FinAbPGroup> homology_of(const ChainComplex& C, int lo, int hi)
{
    if (lo < C.lo || hi + 1 > C.hi) throw std::invalid_argument("homology_of: window outside the guarded range of the complex");
    ReducedComplex Rc = reduce_complex(C);
    std::map<int, FinAbPGroup> out;
    PrecisionLog log;
    for (int k = lo; k <= hi; ++k) out[k] = reduced_homology(Rc, k, &log);
    return out;
}

// Exact homology by Smith normal form over Z (small complexes).
inline FinAbPGroup homology_snf(const ChainComplex& C, int k)
{
    if (C.coef_exp) throw std::invalid_argument("homology_snf: integral complexes only");
    return group_from_matrices(C.p, C.boundary_matrix(k + 1), C.boundary_matrix(k));
}

enum class RingTag { WmFinite, TruncPoly, Poly, Shukla };
enum class HHBase { Shukla, Field };

// Input rings for Hochschild homology over Z (Shukla) or over the prime field (Field).
struct RingSpec {
    RingTag tag = RingTag::Shukla;
    int p = 2;
    int s = 1;
    int n = 1;       // m for W_m, n for x^n, n for Z/p^n
    int s_max = -1;  // internal-degree bound for graded specs
    HHBase base = HHBase::Shukla;

    bool graded() const { return tag == RingTag::TruncPoly || tag == RingTag::Poly; }
    std::string str() const
    {
        std::ostringstream os;
        switch (tag) {
        case RingTag::WmFinite: os << "wm:" << p << "," << s << "," << n; break;
        case RingTag::TruncPoly: os << "truncpoly:" << p << "," << s << "," << n; break;
        case RingTag::Poly: os << "poly:" << p << "," << s; break;
        case RingTag::Shukla: os << "shukla:" << p << "," << n; break;
        }
        if (s_max >= 0 && graded()) os << ";smax=" << s_max;
        if (base == HHBase::Field) os << ";base=field";
        return os.str();
    }
    std::string describe() const
    {
        std::string k = s == 1 ? "F_" + std::to_string(p) : "F_" + std::to_string(ipow(p, s));
        switch (tag) {
        case RingTag::WmFinite: return "W_" + std::to_string(n) + "(" + k + ")";
        case RingTag::TruncPoly: return k + "[x]/x^" + std::to_string(n);
        case RingTag::Poly: return k + "[x]";
        case RingTag::Shukla: return "Z/" + std::to_string(p) + "^" + std::to_string(n);
        }
        return "";
    }
};

// "shukla:p,n", "wm:p,s,m", "truncpoly:p,s,n", "poly:p,s" with optional ";smax=K" and ";base=field"
inline RingSpec parse_ring_spec(const std::string& text)
{
    RingSpec r;
    std::vector<std::string> parts;
    {
        std::stringstream ss(text);
        std::string t;
        while (std::getline(ss, t, ';')) parts.push_back(t);
    }
    if (parts.empty()) throw std::invalid_argument("empty ring spec");
    auto colon = parts[0].find(':');
    if (colon == std::string::npos) throw std::invalid_argument("ring spec needs 'tag:args': " + text);
    std::string tag = parts[0].substr(0, colon);
    std::vector<int> args;
    {
        std::stringstream ss(parts[0].substr(colon + 1));
        std::string t;
        while (std::getline(ss, t, ',')) {
            try {
                size_t used = 0;
                args.push_back(std::stoi(t, &used));
                if (used != t.size()) throw std::invalid_argument(t);
            } catch (const std::exception&) {
                throw std::invalid_argument("ring spec: bad integer '" + t + "'");
            }
        }
    }
    auto need = [&](size_t k) {
        if (args.size() != k) throw std::invalid_argument("ring spec '" + tag + "' expects " + std::to_string(k) + " arguments");
    };
    if (tag == "shukla") { need(2); r.tag = RingTag::Shukla; r.p = args[0]; r.n = args[1]; }
    else if (tag == "wm") { need(3); r.tag = RingTag::WmFinite; r.p = args[0]; r.s = args[1]; r.n = args[2]; }
    else if (tag == "truncpoly") { need(3); r.tag = RingTag::TruncPoly; r.p = args[0]; r.s = args[1]; r.n = args[2]; }
    else if (tag == "poly") { need(2); r.tag = RingTag::Poly; r.p = args[0]; r.s = args[1]; }
    else throw std::invalid_argument("unknown ring tag '" + tag + "'");
    for (size_t i = 1; i < parts.size(); ++i) {
        const auto& o = parts[i];
        if (o.rfind("smax=", 0) == 0) r.s_max = std::stoi(o.substr(5));
        else if (o == "base=field") r.base = HHBase::Field;
        else if (o == "base=shukla") r.base = HHBase::Shukla;
        else throw std::invalid_argument("unknown ring spec option '" + o + "'");
    }
    if (!is_prime(r.p)) throw std::invalid_argument("ring spec: p must be prime");
    if (r.s < 1 || r.n < 1) throw std::invalid_argument("ring spec: parameters must be positive");
    if (r.base == HHBase::Field && !r.graded()) throw std::invalid_argument("ring spec: base=field applies to polynomial specs");
    return r;
}

// The DG model whose cyclic bar complex computes HH(r) (over the prime field when s > 1,
// to be tensored up afterwards).
inline DGRing model_for(const RingSpec& r, int weight_cap)
{
    switch (r.tag) {
    case RingTag::Shukla:
    case RingTag::WmFinite: return koszul_model(r.p, r.n);
    case RingTag::TruncPoly:
        return r.base == HHBase::Shukla ? graded_shukla_model(r.p, 1, r.n, weight_cap) : integral_truncpoly(r.p, r.n, weight_cap);
    case RingTag::Poly:
        return r.base == HHBase::Shukla ? graded_shukla_model(r.p, 1, -1, weight_cap) : integral_truncpoly(r.p, -1, weight_cap);
    }
    throw std::logic_error("model_for");
}

struct FeasibilityError : std::runtime_error {
    long long cost;
    FeasibilityError(const std::string& m, long long c) : std::runtime_error(m), cost(c) {}
};

struct HHCell {
    int degree;
    int internal;  // -1 when summed over internal degrees
    FinAbPGroup group;
};

struct HHTable {
    RingSpec spec;
    int D = 0;
    std::vector<HHCell> cells;
    std::string note;
};

inline int shukla_degree_bound() { return 8; }
inline int graded_degree_bound() { return 6; }
inline int graded_internal_bound() { return 8; }

// Tensor up along W_n(F_p) -> W_n(F_{p^s}): every cyclic summand appears s times.
inline FinAbPGroup base_change(const FinAbPGroup& g, int s)
{
    FinAbPGroup r(g.p);
    for (int i = 0; i < s; ++i) r = r + g;
    return r;
}

inline long long hh_cost_estimate(const RingSpec& r, int D, int s_max)
{
    BarOptions o;
    o.q_max = D + 1;
    long long t = 0;
    if (!r.graded()) {
        for (auto c : bar_word_counts(model_for(r, -1), o)) t += c;
        return t;
    }
    DGRing A = model_for(r, s_max + 1);
    o.weight_cap = s_max + 1;
    for (auto c : bar_word_counts(A, o)) t += c;
    return t;
}

// HH_q for q <= D; graded specs are split by internal degree when `split` is set, otherwise
// summed over internal degrees 0..s_max.
inline HHTable hh_compute(const RingSpec& r, int D, bool split = false, int only_internal = -1)
{
    if (D < 0) throw std::invalid_argument("hh_compute: negative degree bound");
    HHTable T;
    T.spec = r;
    T.D = D;
    const int p = r.p;
    if (!r.graded()) {
        if (D > shukla_degree_bound())
            throw FeasibilityError("degree bound " + std::to_string(D) + " exceeds the feasibility bound " + std::to_string(shukla_degree_bound()) + " for Shukla models", hh_cost_estimate(r, D, 0));
        BarOptions o;
        o.q_max = D + 1;
        auto C = cyclic_bar_complex(model_for(r, -1), o);
        auto H = homology_of(C, 0, D);
        for (auto& [q, g] : H) T.cells.push_back({q, -1, base_change(g, r.s)});
        if (r.s > 1) T.note = "base change from W_" + std::to_string(r.n) + "(F_" + std::to_string(p) + ")";
        return T;
    }
    int s_max = r.s_max;
    int natural = -1;
    if (r.tag == RingTag::TruncPoly) natural = (D + 1) * r.n + r.n;  // words of degree <= D+1 cannot exceed this
    if (s_max < 0) s_max = natural >= 0 ? std::min(natural, graded_internal_bound()) : graded_internal_bound();
    if (only_internal >= 0) s_max = std::max(s_max, only_internal);
    if (D > graded_degree_bound() || s_max > graded_internal_bound())
        throw FeasibilityError("request (D=" + std::to_string(D) + ", s<=" + std::to_string(s_max) + ") exceeds the feasibility bound D<=" + std::to_string(graded_degree_bound()) + ", s<=" + std::to_string(graded_internal_bound()),
                               hh_cost_estimate(r, D, s_max));
    DGRing A = model_for(r, s_max + 1);
    std::map<int, FinAbPGroup> total;
    for (int s = 0; s <= s_max; ++s) {
        if (only_internal >= 0 && s != only_internal) continue;
        BarOptions o;
        o.q_max = D + 1;
        o.only_weight = s;
        o.weight_cap = s_max + 1;
        o.coef_exp = r.base == HHBase::Field ? 1 : 0;
        auto C = cyclic_bar_complex(A, o);
        auto H = homology_of(C, 0, D);
        for (auto& [q, g0] : H) {
            FinAbPGroup g = g0;
            if (o.coef_exp && g.free_rank) {
                // free Z_(p)-summands of the mod-p complex are F_p summands
                for (int i = 0; i < g.free_rank; ++i) g.factors.push_back(1);
                g.free_rank = 0;
                g.canonicalize();
            }
            g = base_change(g, r.s);
            if (split) T.cells.push_back({q, s, g});
            else total[q] = total.count(q) ? total[q] + g : g;
        }
    }
    if (!split)
        for (auto& [q, g] : total) T.cells.push_back({q, -1, g});
    if (natural < 0 || s_max < natural) T.note = "internal degrees truncated at " + std::to_string(s_max);
    if (r.s > 1) T.note += std::string(T.note.empty() ? "" : "; ") + "base change from F_" + std::to_string(p);
    return T;
}

inline std::string hh_csv(const HHTable& T)
{
    std::ostringstream os;
    os << "degree,internal_degree,factors\n";
    for (const auto& c : T.cells) os << c.degree << "," << (c.internal < 0 ? std::string("") : std::to_string(c.internal)) << ",\"" << c.group.str() << "\"\n";
    return os.str();
}

} // namespace hkw
