#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hkw/specseq/pages.hpp"

namespace hkw {

// Degreewise map of chain complexes: cols[k - lo][j] is the image of basis element j of degree k.
// Filtration s is sent into filtration >= s + shift.
struct ChainMap {
    int lo = 0, hi = -1;
    int shift = 0;
    std::vector<std::vector<SparseVec>> cols;

    const std::vector<SparseVec>& at(int k) const { return cols.at(static_cast<size_t>(k - lo)); }
};

struct SSMorphism {
    FilteredComplex source, target;
    ChainMap map;
    std::string description;
};

inline SSMorphism identity_morphism(const FilteredComplex& F)
{
    SSMorphism m{F, F, {}, "identity"};
    m.map.lo = F.complex.lo;
    m.map.hi = F.complex.hi;
    for (int k = F.complex.lo; k <= F.complex.hi; ++k) {
        std::vector<SparseVec> c;
        for (size_t j = 0; j < F.complex.rank(k); ++j) c.push_back({{static_cast<int>(j), 1}});
        m.map.cols.push_back(std::move(c));
    }
    return m;
}

inline SSMorphism zero_morphism(const FilteredComplex& S, const FilteredComplex& T)
{
    SSMorphism m{S, T, {}, "zero"};
    m.map.lo = S.complex.lo;
    m.map.hi = S.complex.hi;
    for (int k = S.complex.lo; k <= S.complex.hi; ++k) m.map.cols.push_back(std::vector<SparseVec>(S.complex.rank(k)));
    return m;
}

// Filtration compatibility and f d = d f (modulo p^c of the target when it has torsion coefficients).
inline void validate_morphism(const SSMorphism& m)
{
    const auto& S = m.source.complex;
    const auto& T = m.target.complex;
    const auto& f = m.map;
    if (f.lo > S.lo || f.hi < S.hi) throw std::invalid_argument("morphism: map does not cover the source degrees");
    const i64 mod = T.coef_exp ? ipow(T.p, T.coef_exp) : 0;
    auto zero = [&](i128 v) { return mod ? v % mod == 0 : v == 0; };
    for (int k = S.lo; k <= S.hi; ++k) {
        const auto& cols = f.at(k);
        if (cols.size() != S.rank(k)) throw std::invalid_argument("morphism: wrong number of columns in degree " + std::to_string(k));
        for (size_t j = 0; j < cols.size(); ++j)
            for (auto [i, c] : cols[j]) {
                if (!T.has(k) || static_cast<size_t>(i) >= T.rank(k)) throw std::invalid_argument("morphism: image outside the target basis");
                if (!zero(c) && T.module(k).weight[static_cast<size_t>(i)] < S.module(k).weight[j] + f.shift)
                    throw std::invalid_argument("morphism: map lowers filtration in degree " + std::to_string(k));
            }
        if (k == S.lo || !T.has(k - 1)) continue;
        for (size_t j = 0; j < cols.size(); ++j) {
            std::map<int, i128> acc;
            for (auto [i, c] : cols[j])
                for (auto [l, e] : T.boundary(k)[static_cast<size_t>(i)]) acc[l] += static_cast<i128>(c) * e;
            for (auto [i, c] : S.boundary(k)[j])
                for (auto [l, e] : f.at(k - 1)[static_cast<size_t>(i)]) acc[l] -= static_cast<i128>(c) * e;
            for (auto& [l, v] : acc)
                if (!zero(v)) throw std::invalid_argument("morphism: not a chain map in degree " + std::to_string(k));
        }
    }
}

struct ParityReport {
    bool even_to_odd_only = true;
    std::vector<std::string> offending;
};

// Every nonzero d_r with r >= r0 and source total degree in [qlo, qhi] must start in even degree.
inline ParityReport parity_check(const std::vector<SSPage>& pages, int r0, int qlo = std::numeric_limits<int>::min(), int qhi = std::numeric_limits<int>::max())
{
    ParityReport rep;
    for (const auto& P : pages) {
        if (P.r < r0) continue;
        for (const auto& [st, g] : P.diff_image) {
            int q = st.first + st.second;
            if (q < qlo || q > qhi || g.trivial()) continue;
            if (q % 2 != 0) {
                rep.even_to_odd_only = false;
                rep.offending.push_back("d_" + std::to_string(P.r) + " from (s=" + std::to_string(st.first) + ", t=" + std::to_string(st.second) + "), total degree " + std::to_string(q) + ", image " + g.str());
            }
        }
    }
    return rep;
}

inline ParityReport parity_check(const SSResult& S, int r0) { return parity_check(S.pages, r0, S.qlo, S.qhi + 1); }

struct PageMapCell {
    int r = 1, s = 0, q = 0;
    FinAbPGroup kernel, image;
};

struct MorphismOptions {
    int r0 = 1;                 // first page of the lemma hypothesis; <= 0 tries every page
    bool check_lemma = true;
    bool throw_on_violation = false;
};

struct MorphismReport {
    SSResult source, target;
    int r_inf = 1;                          // page index standing for E_inf
    std::vector<PageMapCell> cells;         // nonzero kernel or image only
    std::map<int, bool> injective_even;     // per page r, over the window
    bool hypothesis = false;                // target even-to-odd from r0 and injective on E_r0 in even degrees
    bool conclusion = false;                // no violation wherever the hypothesis held
    std::vector<int> hypothesis_pages;      // the r0 for which the hypothesis held
    std::vector<std::string> violations;    // hypothesis held but the conclusion failed

    // rank (as F_p-length of the image) of the map on E_r in total degree q
    int image_length(int r, int q) const
    {
        int t = 0;
        for (const auto& c : cells)
            if (c.r == r && c.q == q) t += c.image.length();
        return t;
    }
};

struct LemmaCheck {
    bool hypothesis = false;
    std::vector<std::string> violations;
};

// If the target has only even-to-odd differentials from r0 on and E_r0 maps injectively in even
// total degree, then so do all later pages and the source is even-to-odd from r0 on.
inline LemmaCheck check_inclusion_lemma(const MorphismReport& rep, int r0, int qlo, int qhi)
{
    LemmaCheck c;
    auto tpar = parity_check(rep.target.pages, r0, qlo, qhi + 1);
    auto it = rep.injective_even.find(r0);
    c.hypothesis = tpar.even_to_odd_only && it != rep.injective_even.end() && it->second;
    if (!c.hypothesis) return c;
    for (auto [r, b] : rep.injective_even)
        if (r >= r0 && !b) c.violations.push_back("page map E_" + std::to_string(r) + " not injective in even total degree");
    // a source differential out of degree q lands in q - 1, which must lie in the window
    auto spar = parity_check(rep.source.pages, r0, qlo + 1, qhi + 1);
    for (const auto& x : spar.offending) c.violations.push_back("source differential " + x);
    return c;
}

// Induced maps E_r(source) -> E_r(target) for r = 1 .. max cap + 1 (the last is E_inf), total degrees qlo..qhi.
inline MorphismReport morphism_pages(const SSMorphism& m, int qlo, int qhi, const MorphismOptions& o = {})
{
    validate_morphism(m);
    PageOptions po;
    po.track_maps = true;
    MorphismReport rep;
    rep.source = compute_pages(m.source, qlo, qhi, po);
    rep.target = compute_pages(m.target, qlo, qhi, po);
    SSEngine& ES = *rep.source.engine;
    SSEngine& ET = *rep.target.engine;
    const ReducedComplex& RS = ES.reduced();
    const ReducedComplex& RT = ET.reduced();
    const PadicRing& R = ET.ring();
    if (ES.ring().p() != R.p() || ES.ring().precision() != R.precision()) throw std::invalid_argument("morphism_pages: source and target use different p-adic rings");
    // reduced map: project o f o include
    std::map<int, PMatrix> fred;
    for (int q = qlo; q <= qhi; ++q) {
        PMatrix M(RT.rank(q), RS.rank(q));
        const auto& fc = m.map.at(q);
        for (size_t j = 0; j < RS.rank(q); ++j) {
            std::map<int, u64> acc;
            for (auto [i, c] : RS.iota[static_cast<size_t>(q - RS.lo)][j])
                for (auto [l, e] : fc[static_cast<size_t>(i)]) {
                    u64& a = acc[l];
                    a = R.add(a, R.mul(c, R.from(e)));
                }
            PSparse v;
            for (auto [l, a] : acc)
                if (a) v.push_back({l, a});
            M.col[j] = RT.project(q, v);
        }
        fred[q] = std::move(M);
    }
    const int capS = m.source.cap, capT = m.target.cap;
    rep.r_inf = std::max(capS, capT) + 1;
    for (int r = 1; r <= rep.r_inf; ++r) {
        bool inj = true;
        for (int q = qlo; q <= qhi; ++q)
            for (int s = 0; s < capS; ++s) {
                const Lattice& Z = ES.Z(q, s, r);
                const Lattice& Den = ES.Den(q, s, r);
                PageMapCell c;
                c.r = r;
                c.s = s;
                c.q = q;
                c.kernel = ES.group(Z, Den);
                c.image = FinAbPGroup(R.p());
                if (c.kernel.trivial()) continue;
                const int st = s + m.map.shift;
                if (st < capT) {
                    const Lattice& DenT = ET.Den(q, st, r);
                    Lattice K = preimage(R, fred[q], Z, DenT, &ET.log()).sum(Den, &ET.log());
                    c.kernel = ES.group(K, Den);
                    Lattice im = image(R, fred[q], Z, &ET.log()).sum(DenT, &ET.log());
                    c.image = ET.group(im, DenT);
                }
                if (q % 2 == 0 && !c.kernel.trivial()) inj = false;
                rep.cells.push_back(c);
            }
        rep.injective_even[r] = inj;
    }
    ES.check_precision();
    ET.check_precision();
    if (o.check_lemma) {
        std::vector<int> r0s;
        if (o.r0 > 0) r0s.push_back(std::min(o.r0, rep.r_inf));
        else
            for (int r = 1; r <= rep.r_inf; ++r) r0s.push_back(r);
        for (int r0 : r0s) {
            auto v = check_inclusion_lemma(rep, r0, qlo, qhi);
            if (v.hypothesis) rep.hypothesis_pages.push_back(r0);
            rep.hypothesis = rep.hypothesis || v.hypothesis;
            for (auto& x : v.violations) rep.violations.push_back("r0=" + std::to_string(r0) + ": " + x);
        }
        rep.conclusion = rep.violations.empty();
        if (o.throw_on_violation && !rep.violations.empty()) throw std::logic_error("even-to-odd inclusion lemma violated: " + rep.violations.front());
    }
    return rep;
}

} // namespace hkw
