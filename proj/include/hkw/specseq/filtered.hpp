#pragma once

#include <string>

#include "hkw/homology/homology.hpp"
#include "hkw/specseq/pages.hpp"

namespace hkw {

// Smallest weight cap such that words of weight >= cap cannot affect homology in degrees < q_max,
// for the model with y of weight 1 and eps of weight k.
inline int padic_filtration_cap(int k, int q_max)
{
    if (k < 1 || q_max < 0) throw std::invalid_argument("padic_filtration_cap: bad arguments");
    int j = q_max / 2;
    return q_max % 2 == 0 ? j * k + k : j * k + k + 1;
}

// Cyclic bar complex of Z/p^n filtered by powers of p^step, in degrees 0..q_max.
inline FilteredComplex padic_filtration(const RingSpec& r, int q_max, int step, int cap = -1)
{
    if (r.tag != RingTag::Shukla && r.tag != RingTag::WmFinite)
        throw std::invalid_argument("padic_filtration: only Z/p^n and W_n(k) carry the p-adic filtration here");
    if (step < 1 || r.n % step != 0) throw std::invalid_argument("padic_filtration: step must divide n");
    const int k = r.n / step;
    if (cap < 0) cap = padic_filtration_cap(k, q_max);
    BarOptions o;
    o.q_max = q_max;
    FilteredComplex F;
    F.complex = cyclic_bar_complex(filtered_shukla_model(r.p, step, k, cap), o);
    F.cap = cap;
    F.description = r.describe() + " filtered by powers of p" + (step > 1 ? "^" + std::to_string(step) : "");
    validate_filtration(F);
    return F;
}

// W(F_p) = Z_p filtered by powers of p^step, truncated at weight cap.
inline FilteredComplex padic_filtration_witt(int p, int q_max, int step, int cap)
{
    BarOptions o;
    o.q_max = q_max;
    FilteredComplex F;
    F.complex = cyclic_bar_complex(filtered_witt_model(p, step, cap), o);
    F.cap = cap;
    F.description = "W(F_" + std::to_string(p) + ") filtered by powers of p" + (step > 1 ? "^" + std::to_string(step) : "");
    validate_filtration(F);
    return F;
}

inline FilteredComplex trivial_filtration(const ChainComplex& C)
{
    FilteredComplex F{C, 1, "trivial filtration"};
    for (auto& M : F.complex.mods) M.weight.assign(M.rank(), 0);
    return F;
}

// Every cyclic summand repeated s times (tensoring up to F_{p^s}).
inline void base_change_pages(SSResult& S, int s)
{
    if (s == 1) return;
    auto bc = [&](std::map<Bideg, FinAbPGroup>& m) {
        for (auto& [k, g] : m) g = base_change(g, s);
    };
    for (auto& P : S.pages) { bc(P.cells); bc(P.diff_image); }
    bc(S.einf.cells);
    bc(S.einf.diff_image);
    for (auto& [q, g] : S.homology) g = base_change(g, s);
    for (auto& [q, v] : S.graded)
        for (auto& g : v) g = base_change(g, s);
}

} // namespace hkw
