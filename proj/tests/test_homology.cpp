#include <gtest/gtest.h>

#include "hkw/homology/homology.hpp"

using namespace hkw;

namespace {

FinAbPGroup cyc(int p, std::vector<int> f) { return FinAbPGroup(p, std::move(f)); }

} // namespace

TEST(DGRing, ModelsSatisfyAxioms)
{
    for (int p : {2, 3, 5}) {
        EXPECT_EQ(validate_dgring(koszul_model(p, 1)), "");
        EXPECT_EQ(validate_dgring(koszul_model(p, 3)), "");
        EXPECT_EQ(validate_dgring(padded_koszul_model(p)), "");
        EXPECT_EQ(validate_dgring(filtered_shukla_model(p, 1, 2, 7)), "");
        EXPECT_EQ(validate_dgring(filtered_shukla_model(p, 1, 4, 9)), "");
        EXPECT_EQ(validate_dgring(filtered_witt_model(p, 1, 6)), "");
        EXPECT_EQ(validate_dgring(graded_shukla_model(p, 1, 3, 8)), "");
        EXPECT_EQ(validate_dgring(graded_shukla_model(p, 2, -1, 5)), "");
        EXPECT_EQ(validate_dgring(integral_truncpoly(p, 3, -1)), "");
    }
}

TEST(DGRing, KoszulGeneratorSquaresToZero)
{
    DGRing A = koszul_model(2, 2);
    ASSERT_EQ(A.size(), 2u);
    EXPECT_EQ(A.product(1, 1).first, -1);
    EXPECT_EQ(A.diff[1], (SparseVec{{0, 4}}));
}

TEST(Homology, ZeroComplexIsTrivial)
{
    ChainComplex C;
    C.p = 3;
    C.lo = 0;
    C.hi = 2;
    C.mods.resize(3);
    C.bnd.resize(3);
    for (auto& [q, g] : homology_of(C, 0, 1)) EXPECT_TRUE(g.trivial()) << q;
}

TEST(Homology, MultiplicationByPSquared)
{
    for (int p : {2, 3, 7}) {
        ChainComplex C;
        C.p = p;
        C.lo = 0;
        C.hi = 2;
        C.mods = {{{"a"}, {0}}, {{"b"}, {0}}, {}};
        C.bnd = {{{}}, {{{0, p * p}}}, {}};
        auto H = homology_of(C, 0, 1);
        EXPECT_EQ(H[0], cyc(p, {2}));
        EXPECT_TRUE(H[1].trivial());
        EXPECT_EQ(homology_snf(C, 0), cyc(p, {2}));
    }
}

TEST(Hochschild, ShuklaModPIsDividedPowers)
{
    for (int p : {2, 3, 5}) {
        BarOptions o;
        o.q_max = 7;
        auto C = cyclic_bar_complex(koszul_model(p, 1), o);
        for (int k = 0; k <= 7; ++k) EXPECT_EQ(C.rank(k), 1u);
        auto H = homology_of(C, 0, 6);
        for (int k = 0; k <= 6; ++k) EXPECT_EQ(H[k], k % 2 ? FinAbPGroup(p) : cyc(p, {1})) << "p=" << p << " k=" << k;
    }
}

TEST(Hochschild, ShuklaModPSquared)
{
    BarOptions o;
    o.q_max = 5;
    auto H = homology_of(cyclic_bar_complex(koszul_model(2, 2), o), 0, 4);
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(H[k], k % 2 ? FinAbPGroup(2) : cyc(2, {2})) << k;
}

TEST(Hochschild, ReductionAgreesWithSmithNormalForm)
{
    for (int p : {2, 3}) {
        for (bool normalized : {true, false}) {
            BarOptions o;
            o.q_max = 5;
            o.normalized = normalized;
            auto C = cyclic_bar_complex(padded_koszul_model(p), o);
            auto H = homology_of(C, 0, 4);
            for (int k = 0; k <= 3; ++k) EXPECT_EQ(H[k], homology_snf(C, k)) << "p=" << p << " k=" << k << " normalized=" << normalized;
        }
    }
}

TEST(Hochschild, ModelIndependence)
{
    for (int p : {2, 3}) {
        BarOptions o;
        o.q_max = 6;
        auto a = homology_of(cyclic_bar_complex(koszul_model(p, 1), o), 0, 5);
        auto b = homology_of(cyclic_bar_complex(padded_koszul_model(p), o), 0, 5);
        o.normalized = false;
        o.q_max = 5;
        auto c = homology_of(cyclic_bar_complex(koszul_model(p, 1), o), 0, 4);
        for (int k = 0; k <= 5; ++k) EXPECT_EQ(a[k], b[k]) << k;
        for (int k = 0; k <= 4; ++k) EXPECT_EQ(a[k], c[k]) << k;
    }
}

TEST(Hochschild, FilteredModelComputesTheSameGroups)
{
    // Z[y] (x) Lambda(eta, eps) resolves Z/p^2; weights >= 7 do not reach degree 4
    for (int p : {2, 3}) {
        BarOptions o;
        o.q_max = 5;
        auto H = homology_of(cyclic_bar_complex(filtered_shukla_model(p, 1, 2, 7), o), 0, 4);
        for (int k = 0; k <= 4; ++k) EXPECT_EQ(H[k], k % 2 ? FinAbPGroup(p) : cyc(p, {2})) << "p=" << p << " k=" << k;
    }
}

TEST(Hochschild, InternalSplitRecoversRanks)
{
    BarOptions o;
    o.q_max = 4;
    auto C = cyclic_bar_complex(graded_shukla_model(2, 1, 2, 7), o);
    for (int k = 0; k <= 4; ++k) {
        size_t t = 0;
        for (int s = 0; s <= 6; ++s) t += internal_split(C, s).rank(k);
        EXPECT_EQ(t, C.rank(k));
    }
    EXPECT_THROW(internal_split(C, -1), std::invalid_argument);
    auto S1 = internal_split(C, 1);
    o.only_weight = 1;
    o.weight_cap = 7;
    auto D1 = cyclic_bar_complex(graded_shukla_model(2, 1, 2, 7), o);
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(S1.rank(k), D1.rank(k));
}

TEST(Hochschild, WordCountsMatchConstruction)
{
    BarOptions o;
    o.q_max = 5;
    DGRing A = filtered_shukla_model(3, 1, 2, 7);
    auto C = cyclic_bar_complex(A, o);
    auto n = bar_word_counts(A, o);
    for (int k = 0; k <= 5; ++k) EXPECT_EQ(static_cast<long long>(C.rank(k)), n[static_cast<size_t>(k)]);
}

TEST(HHCompute, ShuklaTables)
{
    auto T = hh_compute(parse_ring_spec("shukla:3,1"), 6);
    ASSERT_EQ(T.cells.size(), 7u);
    for (const auto& c : T.cells) EXPECT_EQ(c.group, c.degree % 2 ? FinAbPGroup(3) : cyc(3, {1}));
    auto U = hh_compute(parse_ring_spec("shukla:2,2"), 4);
    for (const auto& c : U.cells) EXPECT_EQ(c.group, c.degree % 2 ? FinAbPGroup(2) : cyc(2, {2}));
}

TEST(HHCompute, BaseChangeForLargerFields)
{
    auto T = hh_compute(parse_ring_spec("wm:2,3,2"), 2);
    EXPECT_EQ(T.cells[0].group, cyc(2, {2, 2, 2}));
    EXPECT_TRUE(T.cells[1].group.trivial());
}

TEST(HHCompute, TruncatedPolynomialExamples)
{
    // internal degree 1 of F_2[x]/x^2: Gamma(mu_0) (x) {x, sigma x}
    auto T = hh_compute(parse_ring_spec("truncpoly:2,1,2"), 3, true, 1);
    ASSERT_EQ(T.cells.size(), 4u);
    for (const auto& c : T.cells) EXPECT_EQ(c.group, cyc(2, {1})) << c.degree;
    auto P = hh_compute(parse_ring_spec("poly:3,1;smax=2"), 2, true, 2);
    ASSERT_EQ(P.cells.size(), 3u);
    for (const auto& c : P.cells) EXPECT_EQ(c.group, cyc(3, {1})) << c.degree;
    // over the ground field, internal degree 0 is the field itself
    auto F = hh_compute(parse_ring_spec("truncpoly:2,1,2;base=field"), 3, true, 0);
    EXPECT_EQ(F.cells[0].group, cyc(2, {1}));
    for (size_t i = 1; i < F.cells.size(); ++i) EXPECT_TRUE(F.cells[i].group.trivial());
    // over Z the same summand is Gamma(mu_0)
    auto G = hh_compute(parse_ring_spec("truncpoly:2,1,2"), 3, true, 0);
    EXPECT_EQ(G.cells[2].group, cyc(2, {1}));
}

TEST(HHCompute, FieldCoefficientsMatchIntegralSNF)
{
    // HH over F_p of F_p[x]/x^n is H(C (x) F_p) for the integral complex of Z[x]/x^n
    for (int n : {2, 3}) {
        BarOptions o;
        o.q_max = 4;
        o.only_weight = 3;
        auto C = cyclic_bar_complex(integral_truncpoly(2, n, -1), o);
        auto F = hh_compute(parse_ring_spec("truncpoly:2,1," + std::to_string(n) + ";base=field"), 3, true, 3);
        for (int k = 0; k <= 3; ++k) {
            auto hk = homology_snf(C, k), hk1 = homology_snf(C, k - 1 >= 0 ? k - 1 : 0);
            // universal coefficients: dim H(C (x) F_p)_k = rank_k + #torsion_k + #torsion_{k-1}
            size_t dim = static_cast<size_t>(hk.free_rank) + hk.factors.size() + (k > 0 ? hk1.factors.size() : 0);
            EXPECT_EQ(F.cells[static_cast<size_t>(k)].group.factors.size(), dim) << "n=" << n << " k=" << k;
        }
    }
}

TEST(HHCompute, RefusesBeyondFeasibility)
{
    try {
        hh_compute(parse_ring_spec("shukla:2,1"), 12);
        FAIL();
    } catch (const FeasibilityError& e) {
        EXPECT_GT(e.cost, 0);
    }
    EXPECT_THROW(hh_compute(parse_ring_spec("truncpoly:2,1,2"), 7), FeasibilityError);
    EXPECT_THROW(parse_ring_spec("shukla:4,1"), std::invalid_argument);
    EXPECT_THROW(parse_ring_spec("nonsense:1"), std::invalid_argument);
    EXPECT_THROW(parse_ring_spec("shukla:2,1;base=field"), std::invalid_argument);
}

TEST(HHCompute, CsvAndJsonExport)
{
    auto T = hh_compute(parse_ring_spec("shukla:2,1"), 2);
    EXPECT_EQ(hh_csv(T), "degree,internal_degree,factors\n0,,\"Z/2\"\n1,,\"0\"\n2,,\"Z/2\"\n");
    BarOptions o;
    o.q_max = 2;
    auto j = complex_to_json(cyclic_bar_complex(koszul_model(2, 1), o));
    EXPECT_EQ(j["ranks"], json({1, 1, 1}));
    EXPECT_EQ(j["boundaries"]["1"].size(), 1u);
}
