#include <gtest/gtest.h>

#include "hkw/oracle/enumerate.hpp"
#include "hkw/homology/homology.hpp"
#include "hkw/oracle/query.hpp"

using namespace hkw;

namespace {

WittModuleDescriptor W(int p, int s, std::vector<std::pair<int, int>> f, int free = 0) { return WittModuleDescriptor(PrimePower(p, s), std::move(f), free); }

} // namespace

TEST(OracleHH, Examples)
{
    EXPECT_EQ(hh_closed_form(HHFamily::k, 5, 1, 1, 4), W(5, 1, {{1, 1}}));
    EXPECT_TRUE(hh_closed_form(HHFamily::Wnk, 2, 1, 2, 3).trivial());
    EXPECT_EQ(hh_closed_form(HHFamily::Wnk, 3, 1, 3, 2), W(3, 1, {{3, 1}}));
    EXPECT_EQ(hh_closed_form(HHFamily::Wk, 3, 1, 1, 0), W(3, 1, {}, 1));
    EXPECT_TRUE(hh_closed_form(HHFamily::Wk, 3, 1, 1, 2).trivial());
    EXPECT_THROW(parse_hh_family("k[y]"), std::invalid_argument);
    EXPECT_THROW(hh_closed_form(HHFamily::k_x, 2, 1, 1, 2), std::invalid_argument);
}

TEST(OracleHH, AgreesWithShuklaComplex)
{
    for (int p : {2, 3})
        for (int n : {1, 2, 3}) {
            auto T = hh_compute(parse_ring_spec("shukla:" + std::to_string(p) + "," + std::to_string(n)), 4);
            for (const auto& c : T.cells) EXPECT_EQ(hh_closed_form(HHFamily::Wnk, p, 1, n, c.degree).group(), c.group) << p << "," << n << " q=" << c.degree;
        }
}

TEST(OracleHH, TruncatedAndPolynomialAgreeWithBarComplex)
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        auto T = hh_compute(parse_ring_spec("truncpoly:" + std::to_string(p) + ",1," + std::to_string(n) + ";smax=5"), 4, true);
        for (const auto& c : T.cells)
            EXPECT_EQ(hh_closed_form(HHFamily::truncpoly, p, 1, n, c.degree, c.internal).group(), c.group) << p << "," << n << " q=" << c.degree << " s=" << c.internal;
    }
    auto T = hh_compute(parse_ring_spec("poly:3,1;smax=4"), 4, true);
    for (const auto& c : T.cells) EXPECT_EQ(hh_closed_form(HHFamily::k_x, 3, 1, 1, c.degree, c.internal).group(), c.group);
}

TEST(OracleTHH, WittVectors)
{
    EXPECT_EQ(thh_wk(3, 1, 5, false), W(3, 1, {{1, 1}}));
    EXPECT_TRUE(thh_wk(3, 1, 3, false).trivial());
    EXPECT_EQ(thh_wk(3, 1, 5, true), W(3, 1, {{2, 1}}));
    EXPECT_EQ(thh_wk(2, 1, 7, false), W(2, 1, {{2, 1}}));
    EXPECT_TRUE(thh_wk(2, 1, 4, false).trivial());
}

TEST(OracleTHH, TruncatedWittModes)
{
    THHQuery Q;
    Q.target = THHTarget::Wnk;
    Q.p = 3;
    Q.n = 2;
    Q.degree = 5;
    Q.mode = THHMode::recomputed;
    auto a = thh_closed_form(Q);
    EXPECT_EQ(a.group, W(3, 1, {{1, 1}}));
    EXPECT_EQ(a.provenance, "presented-SS");
    Q.mode = THHMode::as_printed;
    EXPECT_EQ(thh_closed_form(Q).group, W(3, 1, {{2, 3}}));
    Q.degree = 0;
    EXPECT_EQ(thh_closed_form(Q).group, W(3, 1, {{2, 1}}));
    Q.nu0 = Nu0::infinity;
    EXPECT_EQ(thh_closed_form(Q).group, W(3, 1, {}, 1));
}

TEST(OracleTHH, RecomputedMatchesMinFormulaAndIsWindowStable)
{
    for (int p : {2, 3})
        for (int n : {2, 3}) {
            const int qhi = 2 * p + 1;
            auto a = thh_wnk_recomputed(p, 1, n, qhi);
            auto w = thh_wn_window(n, qhi);
            w.cap += 3;
            auto b = thh_wnk_recomputed(p, 1, n, qhi, w);
            for (int q = 0; q <= qhi; ++q) {
                EXPECT_EQ(a.at(q), b.at(q)) << q;
                EXPECT_EQ(a.at(q), thh_wnk_formula(p, 1, n, q, false, Nu0::infinity, false)) << p << "," << n << " q=" << q;
            }
            EXPECT_EQ(a.at(2 * p - 1), W(p, 1, {{1, 1}}));
        }
}

TEST(OracleTHH, ModeDiffIsReported)
{
    auto rows = thh_mode_diff(2, 1, 2, 5);
    json j = mode_diff_json(2, 1, 2, rows, Nu0::zero);
    EXPECT_GT(j["mismatches"].get<int>(), 0);
    EXPECT_TRUE(j["rows"][0]["agree"].get<bool>());
    EXPECT_FALSE(j["rows"][1]["agree"].get<bool>());
    for (const auto& r : j["rows"]) EXPECT_TRUE(r["recomputed_matches_min_formula"].get<bool>());
}

TEST(OracleTHH, RelativeTruncatedWitt)
{
    // THH_0(W_n(k), (p)) = pW_n(k), THH_1 = k
    EXPECT_EQ(thh_wnk_formula(3, 1, 2, 0, true, Nu0::infinity, false), W(3, 1, {{1, 1}}));
    EXPECT_EQ(thh_wnk_formula(3, 1, 2, 1, true, Nu0::infinity, false), W(3, 1, {{1, 1}}));
    EXPECT_EQ(thh_wnk_formula(3, 1, 2, 5, true, Nu0::infinity, false), W(3, 1, {{2, 1}}));
}

TEST(OracleTR, WittLength)
{
    EXPECT_EQ(tr_witt_length(3, rep_shift(2, 0), 0), 3);
    for (int p : {2, 3, 5}) {
        EXPECT_EQ(tr_witt_length(2, rep_shift(p, 1), 0), 1);
        EXPECT_EQ(tr_witt_length(1, rep_shift(p, p * p), p - 1), 0);
    }
    auto r = rep_shift(2, 5);
    EXPECT_EQ(r.fixed_dims, (std::vector<int>{5, 2, 1, 0}));
    EXPECT_EQ(tr_witt_length(4, r, 1), 2);
    EXPECT_EQ(tr_witt_length(4, r, 4), 3);
    EXPECT_THROW(tr_witt_length(0, r, 1), std::invalid_argument);
}

TEST(OracleTF, Columns)
{
    EXPECT_EQ(tf_column(2, 1, 3, 1, 5), W(2, 1, {{1, 1}}));
    EXPECT_EQ(witt_module_order(tf_column(2, 1, 2, 2, 1)), 1);
    for (int p : {2, 3})
        for (int s : {1, 2, 3, 5, 6, 9}) EXPECT_EQ(tf_column(p, 1, 4, s, 2 * (s / 4) + 3), W(p, 1, {{nu_p(p, s) + 1, 1}}));
    EXPECT_TRUE(tf_column(3, 1, 2, 4, 7).trivial());
    EXPECT_THROW(tf_column(2, 1, 2, 3, 4), std::invalid_argument);
}

TEST(OracleTF, StableUnderRestriction)
{
    for (int p : {2, 3})
        for (int n : {2, 3})
            for (int i = 1; i <= 5; ++i)
                for (int s = p; s <= 60; s += p) {
                    if (i - 1 >= s / n) continue;
                    EXPECT_EQ(witt_module_order(tf_column(p, 1, n, s, 2 * i - 1)), witt_module_order(tf_column(p, 1, n, s / p, 2 * i - 1)))
                        << p << "," << n << " s=" << s << " i=" << i;
                }
}

TEST(OracleOrder, Crosscheck)
{
    auto a = order_theorem_crosscheck(2, 2, 1);
    EXPECT_TRUE(a.pass);
    EXPECT_EQ(a.lhs_exp, 1);
    EXPECT_EQ(a.rhs_exp, 1);
    auto b = order_theorem_crosscheck(3, 3, 2);
    EXPECT_TRUE(b.pass);
    EXPECT_EQ(b.lhs_exp, 4);
    EXPECT_THROW(order_theorem_crosscheck(2, 2, 0), std::invalid_argument);
    EXPECT_THROW(order_theorem_crosscheck(6, 2, 1), std::invalid_argument);
}

TEST(OracleK, OrderRatio)
{
    EXPECT_EQ(k_order_ratio(3, 2, 1, true).value(), 3);
    EXPECT_EQ(k_order_ratio(9, 3, 2, true).value(), 6561);
    EXPECT_EQ(k_order_ratio(2, 2, 2, false).value(), 12);
    EXPECT_EQ(k_order_ratio(2, 2, 2, false).cofactor, 3);
    EXPECT_THROW(k_order_ratio(2, 2, 1, false), std::invalid_argument);
    EXPECT_THROW(k_order_ratio(2, 2, 0, true), std::invalid_argument);
}

TEST(OracleK, LowDegrees)
{
    EXPECT_EQ(k_lowdeg(5, 1, 2, 3), FinAbPGroup(5, {2}));
    EXPECT_EQ(k_lowdeg(5, 1, 2, 7), FinAbPGroup(5, {1, 3}));
    EXPECT_EQ(k_lowdeg(5, 1, 2, 8), FinAbPGroup(5, {1}));
    EXPECT_TRUE(k_lowdeg(5, 1, 2, 4).trivial());
    EXPECT_EQ(k_lowdeg(7, 2, 3, 11), FinAbPGroup(7, {1, 11, 12}));
    EXPECT_THROW(k_lowdeg(5, 1, 2, 9), std::out_of_range);
    EXPECT_THROW(k_lowdeg(5, 1, 1, 3), std::invalid_argument);
}

TEST(OracleK, DegreeOneIsUnitGroup)
{
    for (int p : {5, 7})
        for (int s : {1, 2})
            for (int n : {2, 3}) EXPECT_EQ(k_lowdeg(p, s, n, 1), enumerate::unit_sylow(p, s, n)) << p << "," << s << "," << n;
}

TEST(OracleK, FiniteFields)
{
    EXPECT_EQ(k_fq(4, 1).str(), "Z/" + std::to_string(enumerate::unit_count(2, 2)));
    EXPECT_EQ(k_fq(2, 2).str(), "0");
    EXPECT_EQ(k_fq(2, 3).str(), "Z/3");
    EXPECT_EQ(k_fq(5, 0).free_rank, 1);
}

TEST(OracleTC, ResidueField)
{
    EXPECT_EQ(tc_of_k(3, 2, -1), FinAbPGroup(3, {1}));
    EXPECT_EQ(tc_of_k(3, 2, 0).free_rank, 1);
    EXPECT_TRUE(tc_of_k(3, 2, 5).trivial());
    for (int p : {2, 3})
        for (int s = 1; s <= 6; ++s) EXPECT_EQ(enumerate::coker_frobenius_minus_one(p, s), tc_of_k(p, s, -1).length()) << p << "," << s;
}

TEST(OracleV0, Dimensions)
{
    for (int p : {2, 3, 5}) {
        EXPECT_EQ(v0_dims(V0Target::K, p, 1, 0), 1);
        // for p = 2 the class d v1 * v1 also sits in degree 2p - 1
        EXPECT_EQ(v0_dims(V0Target::K, p, 2, 2 * p - 1), p == 2 ? 4 : 3);
        EXPECT_EQ(v0_dims(V0Target::K, p, 1, -1), 0);
        EXPECT_EQ(v0_dims(V0Target::TC, p, 1, -1), 1);
        for (int s : {1, 2})
            for (int j = 0; j <= 4 * p; ++j) EXPECT_EQ(v0_dims(V0Target::K, p, s, j), v0_dims(V0Target::TC, p, s, j)) << p << " j=" << j;
    }
}

TEST(OracleQuery, EchoAndConventions)
{
    json P{{"p", 5}, {"n", 2}, {"degree", 7}};
    json r = run_oracle("K_lowdeg", P);
    EXPECT_EQ(r["family"], "K_lowdeg");
    EXPECT_EQ(r["params"], P);
    EXPECT_EQ(r["result"]["text"], "Z/5 + Z/5^3");
    json t = run_oracle("TR_shifted", {{"p", 2}, {"d", 5}, {"m", 4}, {"i", 1}});
    EXPECT_EQ(t["conventions"]["lambda_fixed_dims"], json({5, 2, 1, 0}));
    json h = run_oracle("THH", {{"p", 3}, {"n", 2}, {"degree", 5}, {"target", "W_n(k)"}, {"mode", "as-printed"}});
    EXPECT_EQ(h["mode"], "as-printed");
    EXPECT_EQ(h["conventions"]["nu0"], "zero");
    EXPECT_FALSE(h["other_mode"]["agree"].get<bool>());
    EXPECT_THROW(run_oracle("K_groups", P), std::invalid_argument);
    EXPECT_THROW(run_oracle("K_lowdeg", {{"p", 5}}), std::invalid_argument);
    for (const auto& f : oracle_families()) EXPECT_FALSE(f.empty());
}
