#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hkw/arith/prime.hpp"

namespace hkw {

using SparseVec = std::vector<std::pair<int, i64>>;  // (index, coefficient), sorted by index

struct BasisElem {
    int degree = 0;
    int weight = 0;  // internal degree or filtration weight
    std::string label;
};

// Differential graded ring, free over Z on a finite basis; basis[0] is the unit.
// Products whose weight reaches weight_cap are zero (quotient by a DG ideal).
struct DGRing {
    int p = 2;
    std::string name;
    std::vector<BasisElem> basis;
    std::vector<std::vector<std::pair<int, i64>>> mult;  // mult[i][j] = (k, c) with k = -1 for zero
    std::vector<SparseVec> diff;
    int weight_cap = -1;  // -1: none
    bool graded = false;  // weight is an internal grading preserved by d
    std::vector<std::pair<int, int>> monomial;  // (y exponent, exterior mask), filled by monomial_dga

    size_t size() const { return basis.size(); }
    std::pair<int, i64> product(int i, int j) const { return mult[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
};

inline SparseVec sv_normalize(SparseVec v)
{
    std::sort(v.begin(), v.end());
    SparseVec out;
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i) out.back().second += c;
        else out.push_back({i, c});
    }
    SparseVec r;
    for (auto& t : out)
        if (t.second != 0) r.push_back(t);
    return r;
}

// d^2 = 0, Leibniz, unit, degree bookkeeping. Returns an empty string when all hold.
inline std::string validate_dgring(const DGRing& A)
{
    const int n = static_cast<int>(A.size());
    if (n == 0 || A.basis[0].degree != 0) return "missing unit";
    for (int i = 0; i < n; ++i) {
        auto u = A.product(0, i), v = A.product(i, 0);
        if (u != std::make_pair(i, i64{1}) || v != std::make_pair(i, i64{1})) return "unit law fails at " + A.basis[static_cast<size_t>(i)].label;
    }
    auto apply_d = [&](const SparseVec& x) {
        SparseVec r;
        for (auto [i, c] : x)
            for (auto [j, e] : A.diff[static_cast<size_t>(i)]) r.push_back({j, c * e});
        return sv_normalize(r);
    };
    auto mul_vec = [&](const SparseVec& x, const SparseVec& y) {
        SparseVec r;
        for (auto [i, a] : x)
            for (auto [j, b] : y) {
                auto [k, c] = A.product(i, j);
                if (k >= 0) r.push_back({k, a * b * c});
            }
        return sv_normalize(r);
    };
    for (int i = 0; i < n; ++i) {
        for (auto [j, c] : A.diff[static_cast<size_t>(i)]) {
            (void)c;
            if (A.basis[static_cast<size_t>(j)].degree != A.basis[static_cast<size_t>(i)].degree - 1) return "d does not lower degree by one";
            if (A.graded && A.basis[static_cast<size_t>(j)].weight != A.basis[static_cast<size_t>(i)].weight) return "d does not preserve internal degree";
            if (!A.graded && A.basis[static_cast<size_t>(j)].weight < A.basis[static_cast<size_t>(i)].weight) return "d decreases weight";
        }
        if (!apply_d(A.diff[static_cast<size_t>(i)]).empty()) return "d^2 != 0 on " + A.basis[static_cast<size_t>(i)].label;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SparseVec ab;
            auto [k, c] = A.product(i, j);
            if (k >= 0) ab.push_back({k, c});
            SparseVec lhs = apply_d(ab);
            SparseVec a{{i, 1}}, b{{j, 1}};
            SparseVec t1 = mul_vec(A.diff[static_cast<size_t>(i)], b);
            SparseVec t2 = mul_vec(a, A.diff[static_cast<size_t>(j)]);
            int sign = (A.basis[static_cast<size_t>(i)].degree % 2) ? -1 : 1;
            for (auto& t : t2) t.second *= sign;
            t1.insert(t1.end(), t2.begin(), t2.end());
            if (lhs != sv_normalize(t1)) return "Leibniz fails on (" + A.basis[static_cast<size_t>(i)].label + ", " + A.basis[static_cast<size_t>(j)].label + ")";
            for (int l = 0; l < n; ++l) {
                // associativity
                SparseVec left, right;
                if (k >= 0) {
                    auto [k2, c2] = A.product(k, l);
                    if (k2 >= 0) left.push_back({k2, c * c2});
                }
                auto [k3, c3] = A.product(j, l);
                if (k3 >= 0) {
                    auto [k4, c4] = A.product(i, k3);
                    if (k4 >= 0) right.push_back({k4, c3 * c4});
                }
                if (sv_normalize(left) != sv_normalize(right)) return "associativity fails";
            }
        }
    return "";
}

// Monomial DG ring Z[y]/(y^height) (x) Lambda(e_1, ..., e_r), |y| = 0, |e_i| = 1,
// d e_i = sum_a c_{i,a} y^a, with weights w(y) = 1, w(e_i) given. Truncated at weight_cap.
struct MonomialDGASpec {
    int p = 2;
    std::string name;
    std::string y_name = "y";
    int height = -1;  // y^height = 0; -1 for polynomial
    std::vector<std::string> ext_names;
    std::vector<int> ext_weights;
    std::vector<std::vector<std::pair<int, i64>>> ext_diff;  // d e_i as (power of y, coefficient)
    int weight_cap = -1;
    bool graded = false;
    bool has_y = true;
};

inline DGRing monomial_dga(const MonomialDGASpec& S)
{
    const int r = static_cast<int>(S.ext_names.size());
    struct Mono { int a; int mask; };
    std::vector<Mono> monos;
    auto weight_of = [&](int a, int mask) {
        int w = a;
        for (int i = 0; i < r; ++i) if (mask >> i & 1) w += S.ext_weights[static_cast<size_t>(i)];
        return w;
    };
    int amax = S.has_y ? (S.height > 0 ? S.height - 1 : (S.weight_cap > 0 ? S.weight_cap - 1 : -1)) : 0;
    if (amax < 0) throw std::invalid_argument("monomial_dga: polynomial generator needs a weight cap");
    // order: by degree, then weight, then exponent/mask
    for (int mask = 0; mask < (1 << r); ++mask)
        for (int a = 0; a <= amax; ++a) {
            if (S.weight_cap > 0 && weight_of(a, mask) >= S.weight_cap) continue;
            monos.push_back({a, mask});
        }
    std::stable_sort(monos.begin(), monos.end(), [&](const Mono& x, const Mono& y) {
        int dx = __builtin_popcount(static_cast<unsigned>(x.mask)), dy = __builtin_popcount(static_cast<unsigned>(y.mask));
        if (dx != dy) return dx < dy;
        int wx = weight_of(x.a, x.mask), wy = weight_of(y.a, y.mask);
        if (wx != wy) return wx < wy;
        if (x.mask != y.mask) return x.mask < y.mask;
        return x.a < y.a;
    });
    DGRing A;
    A.p = S.p;
    A.name = S.name;
    A.weight_cap = S.weight_cap;
    A.graded = S.graded;
    std::map<std::pair<int, int>, int> index;
    for (const auto& m : monos) {
        BasisElem b;
        b.degree = __builtin_popcount(static_cast<unsigned>(m.mask));
        b.weight = weight_of(m.a, m.mask);
        std::string lab;
        if (m.a == 1) lab += S.y_name;
        else if (m.a > 1) lab += S.y_name + "^" + std::to_string(m.a);
        for (int i = 0; i < r; ++i)
            if (m.mask >> i & 1) lab += (lab.empty() ? "" : "*") + S.ext_names[static_cast<size_t>(i)];
        if (lab.empty()) lab = "1";
        b.label = lab;
        index[{m.a, m.mask}] = static_cast<int>(A.basis.size());
        A.basis.push_back(b);
        A.monomial.push_back({m.a, m.mask});
    }
    auto find = [&](int a, int mask) -> int {
        if (S.height > 0 && a >= S.height) return -1;
        auto it = index.find({a, mask});
        return it == index.end() ? -1 : it->second;
    };
    const size_t n = A.basis.size();
    A.mult.assign(n, std::vector<std::pair<int, i64>>(n, {-1, 0}));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const auto& x = monos[i];
            const auto& y = monos[j];
            if (x.mask & y.mask) continue;
            // sign of reordering e-factors of x followed by e-factors of y
            int sign = 1;
            for (int b = 0; b < r; ++b)
                if (y.mask >> b & 1)
                    for (int a = b + 1; a < r; ++a)
                        if (x.mask >> a & 1) sign = -sign;
            int k = find(x.a + y.a, x.mask | y.mask);
            if (k >= 0) A.mult[i][j] = {k, sign};
        }
    A.diff.assign(n, {});
    for (size_t i = 0; i < n; ++i) {
        const auto& x = monos[i];
        SparseVec d;
        int passed = 0;
        for (int b = 0; b < r; ++b) {
            if (!(x.mask >> b & 1)) continue;
            int sign = (passed % 2) ? -1 : 1;
            ++passed;
            int rest = x.mask & ~(1 << b);
            for (auto [pw, c] : S.ext_diff[static_cast<size_t>(b)]) {
                int k = find(x.a + pw, rest);
                if (k >= 0) d.push_back({k, sign * c});
            }
        }
        A.diff[i] = sv_normalize(d);
    }
    return A;
}

// Z[eps]/eps^2, |eps| = 1, d eps = p^n
inline DGRing koszul_model(int p, int n)
{
    if (!is_prime(p)) throw std::invalid_argument("koszul_model: p not prime");
    if (n < 1) throw std::invalid_argument("koszul_model: n must be >= 1");
    MonomialDGASpec S;
    S.p = p;
    S.name = "koszul(" + std::to_string(p) + "," + std::to_string(n) + ")";
    S.has_y = false;
    S.ext_names = {"e"};
    S.ext_weights = {0};
    S.ext_diff = {{{0, ipow(p, n)}}};
    S.graded = true;
    return monomial_dga(S);
}

// Koszul model plus the acyclic DG ideal spanned by u (deg 1), v (deg 2), dv = u.
inline DGRing padded_koszul_model(int p)
{
    DGRing A;
    A.p = p;
    A.name = "padded-koszul(" + std::to_string(p) + ")";
    A.graded = true;
    A.basis = {{0, 0, "1"}, {1, 0, "e"}, {1, 0, "u"}, {2, 0, "v"}};
    A.mult.assign(4, std::vector<std::pair<int, i64>>(4, {-1, 0}));
    for (int i = 0; i < 4; ++i) {
        A.mult[0][static_cast<size_t>(i)] = {i, 1};
        A.mult[static_cast<size_t>(i)][0] = {i, 1};
    }
    A.mult[1][2] = {3, p};
    A.mult[2][1] = {3, -p};
    A.diff = {{}, {{0, p}}, {}, {{2, 1}}};
    return A;
}

// Z[y] (x) Lambda(eta, eps), d eta = y - p^m, d eps = y^k, weights y = 1, eta = 0, eps = k.
// A filtered resolution of Z/p^(m k) whose weight filtration is the p^m-adic filtration.
inline DGRing filtered_shukla_model(int p, int m, int k, int weight_cap)
{
    MonomialDGASpec S;
    S.p = p;
    S.name = "filtered-shukla(p=" + std::to_string(p) + ",step=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
    S.ext_names = {"h", "e"};
    S.ext_weights = {0, k};
    S.ext_diff = {{{1, 1}, {0, -ipow(p, m)}}, {{k, 1}}};
    S.weight_cap = weight_cap;
    S.graded = false;
    return monomial_dga(S);
}

// Z[y] (x) Lambda(eta), d eta = y - p^m: filtered resolution of W(F_p) = Z_p truncated at weight_cap.
inline DGRing filtered_witt_model(int p, int m, int weight_cap)
{
    MonomialDGASpec S;
    S.p = p;
    S.name = "filtered-witt(p=" + std::to_string(p) + ",step=" + std::to_string(m) + ")";
    S.ext_names = {"h"};
    S.ext_weights = {0};
    S.ext_diff = {{{1, 1}, {0, -ipow(p, m)}}};
    S.weight_cap = weight_cap;
    return monomial_dga(S);
}

// Graded Shukla model of (Z/p^m)[x]/x^k: Z[x] (x) Lambda(eta, eps), d eta = p^m, d eps = x^k.
// k = -1 drops eps (model of (Z/p^m)[x]). Internal degree = x-weight.
inline DGRing graded_shukla_model(int p, int m, int k, int weight_cap)
{
    MonomialDGASpec S;
    S.p = p;
    S.y_name = "x";
    S.name = "graded-shukla(p=" + std::to_string(p) + ",m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
    S.graded = true;
    S.weight_cap = weight_cap;
    if (k > 0) {
        S.ext_names = {"h", "e"};
        S.ext_weights = {0, k};
        S.ext_diff = {{{0, ipow(p, m)}}, {{k, 1}}};
    } else {
        S.ext_names = {"h"};
        S.ext_weights = {0};
        S.ext_diff = {{{0, ipow(p, m)}}};
    }
    return monomial_dga(S);
}

// Z[x]/x^n (or Z[x] truncated by weight when n = -1), no differential: the integral form of k[x]/x^n.
inline DGRing integral_truncpoly(int p, int n, int weight_cap)
{
    MonomialDGASpec S;
    S.p = p;
    S.y_name = "x";
    S.name = "Z[x]/x^" + std::to_string(n);
    S.height = n;
    S.graded = true;
    S.weight_cap = weight_cap;
    return monomial_dga(S);
}

} // namespace hkw
