// One PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

#include "hkw/cli/commands.hpp"
#include "hkw/oracle/enumerate.hpp"

using namespace hkw;

namespace {

// Every comparison below is exact; the only tolerances are wall-clock budgets in seconds.
constexpr double kBudgetAC1 = 60;
constexpr double kBudgetAC2 = 300;
constexpr double kBudgetAC3 = 300;
constexpr double kBudgetAC5 = 60;
constexpr double kNoBudget = 0;
constexpr std::uint64_t kRandomSeed = 20240611;
constexpr int kRandomInstances = 100;

struct Outcome {
    bool pass = true;
    int checked = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what)
    {
        ++checked;
        if (!ok && pass) first_failure = what;
        pass = pass && ok;
    }
};

RingSpec shukla(int p, int n) { return parse_ring_spec("shukla:" + std::to_string(p) + "," + std::to_string(n)); }

FinAbPGroup cyclic(int p, int e) { return e == 0 ? FinAbPGroup(p) : FinAbPGroup(p, {e}); }

std::string at(int p, int n, int q) { return "p=" + std::to_string(p) + " n=" + std::to_string(n) + " q=" + std::to_string(q); }

Outcome ac1()
{
    Outcome o;
    for (int p : {2, 3, 5}) {
        auto T = hh_compute(shukla(p, 1), 6);
        for (const auto& c : T.cells) o.expect(c.group == cyclic(p, c.degree % 2 ? 0 : 1), at(p, 1, c.degree) + ": " + c.group.str());
        o.expect(T.cells.size() == 7, "degrees 0..6 present");
    }
    return o;
}

Outcome ac2()
{
    Outcome o;
    for (auto [p, n] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
        auto T = hh_compute(shukla(p, n), 4);
        for (const auto& c : T.cells) o.expect(c.group == cyclic(p, c.degree % 2 ? 0 : n), at(p, n, c.degree) + ": " + c.group.str());
        o.expect(T.cells.size() == 5, "degrees 0..4 present");
    }
    return o;
}

// E_inf of Z/p^n filtered by powers of p:
// p | n: P_n(x) (x) Gamma(x_n), with x^i gamma_j(x_n) in filtration i + nj, total degree 2j;
// p does not divide n: P_n(x){1} plus, for j >= 1, k{x^(n-1) mu0 gamma_(j-1)(x_n)} in filtration nj - 1
// and P_(n-1)(x){x gamma_j(x_n)} in filtrations i + nj, 1 <= i <= n-1.
std::map<std::pair<int, int>, int> expected_einf(int p, int n, int qmax)
{
    std::map<std::pair<int, int>, int> e;  // (s, q) -> F_p-length
    for (int j = 0; 2 * j <= qmax; ++j) {
        if (n % p == 0 || j == 0) {
            for (int i = 0; i < n; ++i) e[{i + n * j, 2 * j}] += 1;
        } else {
            e[{n * j - 1, 2 * j}] += 1;
            for (int i = 1; i < n; ++i) e[{i + n * j, 2 * j}] += 1;
        }
    }
    return e;
}

Outcome ac3()
{
    Outcome o;
    for (int p : {2, 3}) {
        const int n = 2;
        auto F = padic_filtration(shukla(p, n), 5, 1);
        auto S = compute_pages(F, 0, 4);
        o.expect(S.problems.empty(), "internal checks p=" + std::to_string(p));
        auto T = hh_compute(parse_ring_spec("truncpoly:" + std::to_string(p) + ",1,2;smax=6"), 4, true);
        for (const auto& c : T.cells) {
            if (c.internal < 0 || c.internal > 4) continue;
            o.expect(S.cell(1, c.internal, c.degree - c.internal).length() == c.group.length(),
                     "E_1 " + at(p, n, c.degree) + " s=" + std::to_string(c.internal));
        }
        auto want = expected_einf(p, n, 4);
        for (int q = 0; q <= 4; ++q) {
            int total = 0;
            for (int s = 0; s < F.cap; ++s) {
                const int got = S.cell(static_cast<int>(S.pages.size()) + 1, s, q - s).length();
                auto it = want.find({s, q});
                o.expect(got == (it == want.end() ? 0 : it->second), "E_inf " + at(p, n, q) + " s=" + std::to_string(s));
                total += got;
            }
            auto H = hh_compute(shukla(p, n), 4);
            o.expect(S.homology.at(q) == H.cells[static_cast<size_t>(q)].group, "abutment " + at(p, n, q));
            o.expect(total == H.cells[static_cast<size_t>(q)].group.length(), "associated graded " + at(p, n, q));
            std::vector<int> hidden;
            if (n % p && q > 0 && q % 2 == 0) hidden.push_back(n * (q / 2) - 1);
            o.expect(S.hidden.at(q).hidden_at == hidden, "hidden extension " + at(p, n, q));
        }
    }
    return o;
}

Outcome ac4()
{
    Outcome o;
    for (int p : {2, 3}) {
        const int qhi = 2 * p * p - 2;
        PresentedWindow w{0, qhi, qhi + 4};
        auto S = eval_presented(presented_thh_wk(p, w), w);
        o.expect(S.problems.empty(), "internal checks p=" + std::to_string(p));
        const int last = static_cast<int>(S.pages.size()) + 1;
        for (int r = 1; r < last; ++r)
            for (int q = 0; q <= qhi; ++q)
                for (int s = 0; s < w.cap - r; ++s)
                    o.expect(S.cell(r + 1, s, q - s).length() == thh_wk_survivor_length(p, r, s, q),
                             "E_" + std::to_string(r + 1) + " p=" + std::to_string(p) + " s=" + std::to_string(s) + " q=" + std::to_string(q));
    }
    return o;
}

Outcome ac5()
{
    Outcome o;
    for (int q : {2, 3, 4, 9})
        for (int n : {2, 3, 4})
            for (int i = 1; i <= 6; ++i) {
                auto c = order_theorem_crosscheck(q, n, i);
                auto k = prime_power_of(q);
                o.expect(c.pass && c.lhs_exp == k.s * (n - 1) * i && c.N == n * i + 1,
                         "q=" + std::to_string(q) + " n=" + std::to_string(n) + " i=" + std::to_string(i));
            }
    return o;
}

// The low-degree K table, written out case by case.
FinAbPGroup low_degree_table(int p, int s, int n, int degree)
{
    std::vector<int> f;
    if (degree % 2) {
        const int i = (degree + 1) / 2;
        if (degree <= 2 * p - 5) f.assign(static_cast<size_t>(s), (n - 1) * i);
        else {
            f.push_back(1);
            f.push_back((n - 1) * (p - 1) - 1);
            for (int r = 1; r < s; ++r) f.push_back((n - 1) * (p - 1));
        }
    } else if (degree == 2 * p - 2) {
        f.push_back(1);
    }
    return FinAbPGroup(p, f);
}

Outcome ac6()
{
    Outcome o;
    for (int p : {5, 7})
        for (int s : {1, 2})
            for (int n : {2, 3}) {
                const std::string cell = "p=" + std::to_string(p) + " s=" + std::to_string(s) + " n=" + std::to_string(n);
                for (int d = 1; d <= 2 * p - 2; ++d) o.expect(k_lowdeg(p, s, n, d) == low_degree_table(p, s, n, d), cell + " degree " + std::to_string(d));
                o.expect(k_lowdeg(p, s, n, 1) == enumerate::unit_sylow(p, s, n), cell + " degree 1 vs units");
            }
    return o;
}

Outcome ac7()
{
    Outcome o;
    for (int p : {5, 7})
        for (int s : {1, 2})
            for (int n : {2, 3})
                for (int i = 1; 2 * i - 1 <= 2 * p - 3; ++i) {
                    // relative K_0 of a nilpotent ideal vanishes
                    const int below = i == 1 ? 0 : k_lowdeg(p, s, n, 2 * i - 2).length();
                    const int ratio = k_lowdeg(p, s, n, 2 * i - 1).length() - below;
                    auto f = k_order_ratio(ipow(p, s), n, i, true);
                    o.expect(ratio == f.p_exp && f.p_exp == s * (n - 1) * i && f.cofactor == 1,
                             "p=" + std::to_string(p) + " s=" + std::to_string(s) + " n=" + std::to_string(n) + " i=" + std::to_string(i));
                }
    return o;
}

Outcome ac8()
{
    Outcome o;
    const int n = 2;
    for (int p : {2, 3})
        for (int step : {1, n}) {
            auto S = compute_pages(padic_filtration(shukla(p, 2 * n), 5, step), 0, 4);
            auto r = parity_check(S, 1);
            o.expect(S.problems.empty() && r.even_to_odd_only, "Z/" + std::to_string(p) + "^4 step p^" + std::to_string(step) + (r.offending.empty() ? "" : ": " + r.offending.front()));
        }
    auto fires = [](const MorphismReport& rep) { return !rep.violations.empty(); };
    for (int p : {2, 3}) {
        auto F = padic_filtration(shukla(p, 2), 5, 1);
        o.expect(!fires(morphism_pages(identity_morphism(F), 0, 4)), "identity p=" + std::to_string(p));
        o.expect(!fires(morphism_pages(zero_morphism(F, F), 0, 4)), "zero p=" + std::to_string(p));
        MorphismOptions mo;
        mo.r0 = 0;
        o.expect(!fires(morphism_pages(shukla_quotient_morphism(p, 4, 2, 1, 4), 0, 3, mo)), "quotient p=" + std::to_string(p));
    }
    o.expect(commuting_square_check(padic_bifiltration(2, 2, 2, 4), 0, 3).lemma_holds, "bifiltered square");
    std::mt19937_64 rng(kRandomSeed);
    for (int k = 0; k < kRandomInstances; ++k) {
        auto rep = morphism_pages(random_lemma_instance(rng, k % 2 ? 3 : 2, 4), 0, 4);
        o.expect(rep.hypothesis && !fires(rep), "random instance " + std::to_string(k));
    }
    return o;
}

// V(0)_* TC(W(k)) = P(v1){F_p{1, l1} + coker(phi-1){d, d l1} + k{t^e l1 : 0 < e < p}}, and the same for K
// with d replaced by d v1; |v1| = 2p-2, |l1| = 2p-1, |t| = -2, |d| = -1.
int display_dimension(bool tc, int p, int s, int j)
{
    std::vector<std::pair<int, int>> classes{{0, 1}, {2 * p - 1, 1}, {2 * p - 2, 1}, {tc ? -1 : 2 * p - 3, 1}};
    for (int e = 1; e < p; ++e) classes.push_back({2 * p - 1 - 2 * e, s});
    int dim = 0;
    for (auto [deg, d] : classes)
        for (int k = 0; deg + k * (2 * p - 2) <= j; ++k)
            if (deg + k * (2 * p - 2) == j) dim += d;
    return dim;
}

Outcome ac9()
{
    Outcome o;
    for (int p : {2, 3, 5, 7})
        for (int s : {1, 2})
            for (int j = -1; j <= 4 * p; ++j) {
                const std::string cell = "p=" + std::to_string(p) + " s=" + std::to_string(s) + " j=" + std::to_string(j);
                const int tc = v0_dims(V0Target::TC, p, s, j), k = v0_dims(V0Target::K, p, s, j);
                o.expect(tc == display_dimension(true, p, s, j), "TC " + cell);
                o.expect(k == display_dimension(false, p, s, j), "K " + cell);
                // d v1^m sits in degree -1 + m(2p-2) and d v1 in 2p-3, so only the bottom class at -1 differs
                o.expect(tc - k == (j == -1 ? 1 : 0), "shift " + cell);
            }
    return o;
}

Outcome ac10()
{
    Outcome o;
    for (int p : {2, 3})
        for (int n : {2, 3}) {
            const std::string cell = "p=" + std::to_string(p) + " n=" + std::to_string(n);
            auto rows = thh_mode_diff(p, 1, n, 2 * p + 1);
            json diff = mode_diff_json(p, 1, n, rows, Nu0::zero);
            json back = json::parse(diff.dump());
            o.expect(back == diff && back["rows"].size() == rows.size(), cell + " diff round-trips as JSON");
            o.expect(back["mismatches"].get<int>() > 0, cell + " modes disagree somewhere");
            for (int q = 1; q < 2 * p - 1; q += 2) o.expect(rows[static_cast<size_t>(q)].recomputed.trivial(), cell + " THH_" + std::to_string(q) + " = 0");
            o.expect(rows[static_cast<size_t>(2 * p - 1)].recomputed == WittModuleDescriptor(PrimePower(p, 1), {{1, 1}}), cell + " THH_(2p-1) = k");
        }
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        const char* id;
        const char* what;
        std::function<Outcome()> run;
        double budget;
    };
    const std::vector<Criterion> all{
        {"AC1", "HH of Z/p is Z/p in even degrees, p in {2,3,5}, degrees 0-6", ac1, kBudgetAC1},
        {"AC2", "HH of Z/p^n is Z/p^n in even degrees, (p,n) in {(2,2),(2,3),(3,2)}", ac2, kBudgetAC2},
        {"AC3", "p-adic spectral sequence of Z/p^2: E_1, E_inf and hidden extensions", ac3, kBudgetAC3},
        {"AC4", "THH(W(k)) pages from the power-rule schedule, degrees <= 2p^2-2", ac4, kNoBudget},
        {"AC5", "TF column orders multiply to q^((n-1)i)", ac5, kBudgetAC5},
        {"AC6", "K_*(W_n(F_q),(p)) in degrees 1..2p-2 and the unit group", ac6, kNoBudget},
        {"AC7", "K order ratios equal q^((n-1)i)", ac7, kNoBudget},
        {"AC8", "parity lemmas on Shukla filtrations and random morphisms", ac8, kNoBudget},
        {"AC9", "V(0) dimensions of TC(W(k)) and K(W(k))", ac9, kNoBudget},
        {"AC10", "as-printed vs recomputed THH(W_n(k)) diff", ac10, kNoBudget},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.first_failure = std::string("exception: ") + e.what();
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = o.pass && o.checked > 0;
        std::string note = std::to_string(o.checked) + " checks";
        char buf[32];
        std::snprintf(buf, sizeof buf, ", %.1f s", sec);
        note += buf;
        if (c.budget > 0 && sec > c.budget) {
            ok = false;
            note += " over the " + std::to_string(static_cast<int>(c.budget)) + " s budget";
        }
        if (!o.pass) note += "; first failure: " + o.first_failure;
        std::cout << c.id << " " << (ok ? "PASS" : "FAIL") << "  " << c.what << "  (" << note << ")" << std::endl;
        if (!ok) ++failed;
    }
    return failed ? 1 : 0;
}
