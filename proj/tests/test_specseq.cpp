#include <gtest/gtest.h>

#include <random>

#include "hkw/specseq/parity.hpp"
#include "hkw/specseq/presented.hpp"

using namespace hkw;

namespace {

FinAbPGroup cell(const SSPage& P, int s, int q)
{
    auto it = P.cells.find({s, q - s});
    return it == P.cells.end() ? FinAbPGroup(2) : it->second;
}

int length_at(const SSPage& P, int s, int q) { return cell(P, s, q).length(); }

RingSpec shukla(int p, int n) { return parse_ring_spec("shukla:" + std::to_string(p) + "," + std::to_string(n)); }

} // namespace

TEST(Filtration, GradedPiecesAreTruncatedPolynomialHH)
{
    auto F = padic_filtration(shukla(2, 2), 5, 1);
    auto S = compute_pages(F, 0, 4);
    EXPECT_TRUE(S.problems.empty());
    auto T = hh_compute(parse_ring_spec("truncpoly:2,1,2;smax=6"), 4, true);
    int checked = 0;
    for (const auto& c : T.cells) {
        if (c.internal < 0 || c.internal > 4) continue;
        EXPECT_EQ(length_at(S.page(1), c.internal, c.degree), c.group.length()) << "q=" << c.degree << " s=" << c.internal;
        ++checked;
    }
    EXPECT_GE(checked, 20);
}

TEST(Filtration, TrivialFiltrationCollapses)
{
    BarOptions o;
    o.q_max = 5;
    auto F = trivial_filtration(cyclic_bar_complex(koszul_model(3, 1), o));
    auto S = compute_pages(F, 0, 4);
    EXPECT_TRUE(S.problems.empty());
    for (int q = 0; q <= 4; ++q) {
        EXPECT_EQ(cell(S.page(1), 0, q), cell(S.einf, 0, q));
        EXPECT_EQ(cell(S.page(1), 0, q), S.homology.at(q));
    }
    EXPECT_TRUE(S.page(1).diff_image.empty());
}

TEST(Filtration, SquareStepMatchesGradedWittModel)
{
    auto F = padic_filtration(shukla(2, 4), 5, 2);
    auto S = compute_pages(F, 0, 4);
    EXPECT_TRUE(S.problems.empty());
    BarOptions o;
    o.q_max = 5;
    auto G = cyclic_bar_complex(graded_shukla_model(2, 2, 2, F.cap), o);
    for (int s = 0; s <= 3; ++s) {
        auto H = homology_of(internal_split(G, s), 0, 4);
        for (int q = 0; q <= 4; ++q) EXPECT_EQ(cell(S.page(1), s, q), H.at(q)) << "s=" << s << " q=" << q;
    }
}

TEST(Filtration, RejectsBadStep)
{
    EXPECT_THROW(padic_filtration(shukla(2, 3), 4, 2), std::invalid_argument);
    EXPECT_THROW(padic_filtration(parse_ring_spec("poly:2,1"), 4, 1), std::invalid_argument);
}

TEST(Pages, FirstDifferentialOnMu0)
{
    for (int p : {2, 3, 5}) {
        PresentedWindow w{0, 3, 4};
        auto S = eval_presented(presented_thh_wk(p, w), w);
        const auto& E1 = S.page(1);
        EXPECT_EQ(cell(E1, 0, 2), FinAbPGroup(p, {1}));
        EXPECT_EQ(cell(E1, 1, 1), FinAbPGroup(p, {1}));
        ASSERT_TRUE(E1.diff_image.count({0, 2}));
        EXPECT_EQ(E1.diff_image.at({0, 2}), FinAbPGroup(p, {1}));
        EXPECT_TRUE(cell(S.page(2), 0, 2).trivial());
        EXPECT_TRUE(cell(S.page(2), 1, 1).trivial());
        EXPECT_TRUE(S.problems.empty());
    }
}

TEST(Pages, PrimeFieldCollapses)
{
    auto S = compute_pages(padic_filtration(shukla(5, 1), 5, 1), 0, 4);
    for (const auto& P : S.pages) EXPECT_TRUE(P.diff_image.empty());
    for (int q = 0; q <= 4; ++q) EXPECT_EQ(S.homology.at(q), q % 2 ? FinAbPGroup(5) : FinAbPGroup(5, {1}));
}

TEST(Pages, ShuklaZ4ConvergesToHH)
{
    auto S = compute_pages(padic_filtration(shukla(2, 2), 5, 1), 0, 4);
    EXPECT_TRUE(S.problems.empty());
    for (int q = 0; q <= 4; ++q) {
        int total = 0;
        for (const auto& [st, g] : S.einf.cells)
            if (st.first + st.second == q) total += g.length();
        EXPECT_EQ(total, q % 2 ? 0 : 2) << q;
        EXPECT_EQ(S.homology.at(q), q % 2 ? FinAbPGroup(2) : FinAbPGroup(2, {2}));
    }
    for (int q : {0, 2, 4}) EXPECT_TRUE(S.hidden.at(q).extension_required);
}

TEST(Pages, HiddenExtensionOnlyWhenPDoesNotDivideN)
{
    auto S3 = compute_pages(padic_filtration(shukla(3, 2), 5, 1), 0, 4);
    EXPECT_EQ(S3.hidden.at(2).hidden_at, std::vector<int>{1});
    EXPECT_EQ(S3.hidden.at(4).hidden_at, std::vector<int>{3});
    EXPECT_EQ(length_at(S3.einf, 1, 2), 1);
    EXPECT_EQ(length_at(S3.einf, 3, 2), 1);
    auto S2 = compute_pages(padic_filtration(shukla(2, 2), 5, 1), 0, 4);
    for (int q = 0; q <= 4; ++q) EXPECT_TRUE(S2.hidden.at(q).hidden_at.empty());
}

TEST(Pages, RefusesMissingGuardDegree)
{
    auto F = padic_filtration(shukla(2, 1), 4, 1);
    EXPECT_THROW(compute_pages(F, 0, 4), std::invalid_argument);
}

TEST(Pages, JsonExport)
{
    auto S = compute_pages(padic_filtration(shukla(3, 2), 3, 1), 0, 2);
    json j = page_to_json(S.page(1), 3);
    EXPECT_EQ(j["r"], 1);
    ASSERT_FALSE(j["differentials"].empty());
    auto d = j["differentials"][0];
    EXPECT_EQ(d["to"][0].get<int>(), d["from"][0].get<int>() + 1);
    EXPECT_EQ(d["to"][0].get<int>() + d["to"][1].get<int>(), d["from"][0].get<int>() + d["from"][1].get<int>() - 1);
    json k = ss_to_json(S);
    EXPECT_EQ(k["homology"]["2"]["text"], "Z/3^2");
    EXPECT_FALSE(page_grid(S.page(1), 0, 2, S.cap).empty());
}

TEST(Presented, ThhOfWittVectorsSecondPage)
{
    for (int p : {2, 3}) {
        PresentedWindow w{0, 2 * p * p - 2, 2 * p * p + 2};
        auto A = presented_thh_wk(p, w);
        auto S = eval_presented(A, w);
        EXPECT_TRUE(S.problems.empty());
        // E_2 = P(mu0^p) (x) P(x) (x) E(mu0^(p-1) sx)
        for (int q = 0; q <= w.qhi; ++q)
            for (int s = 0; s + 2 < w.cap; ++s) {
                int expect = 0;
                if (q % (2 * p) == 0) expect = 1;
                if (q % (2 * p) == 2 * p - 1 && s >= 1) expect = 1;
                EXPECT_EQ(length_at(S.page(2), s, q), expect) << "p=" << p << " s=" << s << " q=" << q;
            }
    }
}

TEST(Presented, EmptyScheduleIsConstant)
{
    PresentedAlgebraComplex A;
    A.p = 3;
    A.gens = {{"mu0", GenKind::Polynomial, 0, 2}, {"x", GenKind::Polynomial, 1, -1}, {"sx", GenKind::Exterior, 1, 0}};
    PresentedWindow w{0, 6, 6};
    auto S = eval_presented(A, w);
    for (const auto& P : S.pages) EXPECT_EQ(P.cells, S.page(1).cells);
    EXPECT_EQ(S.einf.cells, S.page(1).cells);
}

TEST(Presented, WittCoefficientsCollapseToPolynomial)
{
    for (int n : {2, 3}) {
        auto A = presented_hh_wk_from_wn(2, n);
        PresentedWindow w{0, 4, 6};
        auto S = eval_presented(A, w);
        for (int q = 0; q <= 4; ++q)
            for (int s = 0; s + 2 < w.cap; ++s) {
                FinAbPGroup expect(2);
                if (q == 0) expect = FinAbPGroup(2, {n});
                EXPECT_EQ(cell(S.page(2), s, q), expect) << "s=" << s << " q=" << q;
            }
    }
}

TEST(Presented, PowerRule)
{
    PresentedWindow w{0, 19, 10};
    PresentedAlgebraComplex A;
    A.p = 3;
    A.gens = {{"mu0", GenKind::Polynomial, 0, 2}, {"x", GenKind::Polynomial, 1, -1}, {"sx", GenKind::Exterior, 1, 0}};
    A.p_generator = "x";
    auto e = power_rule_differentials(A, "mu0", 1, A.parse("sx"), 1, w);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e[0].page, 2);
    EXPECT_EQ(e[0].power, 3);
    EXPECT_EQ(e[0].target, A.parse("x mu0^2 sx"));
    EXPECT_EQ(e[1].page, 3);
    EXPECT_EQ(e[1].power, 9);
    EXPECT_EQ(e[1].target, A.parse("x^2 mu0^8 sx"));
    EXPECT_NE(e[0].provenance.find("power-rule"), std::string::npos);
    EXPECT_TRUE(power_rule_differentials(A, "mu0", 1, A.parse("sx"), 0, w).empty());

    PresentedAlgebraComplex B;
    B.p = 2;
    B.gens = {{"mu1", GenKind::Polynomial, 0, 4}, {"v0", GenKind::Polynomial, 1, -1}, {"l1", GenKind::Exterior, 0, 3}};
    B.p_generator = "v0";
    auto f = power_rule_differentials(B, "mu1", 1, B.parse("v0 l1"), 1, PresentedWindow{0, 17, 8});
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].target, B.parse("v0^2 mu1 l1"));
    EXPECT_EQ(f[1].target, B.parse("v0^3 mu1^3 l1"));
    B.add(1, "mu1", 1, "v0 l1");
    for (auto& x : f) B.schedule.push_back(x);
    EXPECT_NO_THROW(validate_presented(B));
}

TEST(Presented, Rejections)
{
    PresentedAlgebraComplex A;
    A.p = 2;
    A.gens = {{"mu0", GenKind::Polynomial, 0, 2}, {"x", GenKind::Polynomial, 1, -1}, {"sx", GenKind::Exterior, 1, 0}};
    A.add(2, "mu0", 1, "sx");
    EXPECT_THROW(validate_presented(A), std::invalid_argument);
    PresentedAlgebraComplex L;
    L.p = 2;
    PresentedGenerator t{"t", GenKind::Laurent, 0, -2};
    t.lo = -3;
    t.hi = 3;
    L.gens = {t, {"u", GenKind::Polynomial, 0, 0}};
    EXPECT_THROW(presented_basis(L, PresentedWindow{0, 4, 4}), std::invalid_argument);
    PresentedAlgebraComplex O;
    O.p = 3;
    O.gens = {{"a", GenKind::Polynomial, 0, 3}};
    EXPECT_THROW(validate_presented(O), std::invalid_argument);
    // d(a) = b, d(b) = c with b even: d^2 != 0
    PresentedAlgebraComplex Q;
    Q.p = 3;
    Q.gens = {{"a", GenKind::Exterior, 0, 3}, {"b", GenKind::Polynomial, 1, 1}, {"c", GenKind::Exterior, 2, -1}};
    Q.add(1, "a", 1, "b");
    Q.add(1, "b", 1, "c");
    EXPECT_THROW(presented_complex(Q, PresentedWindow{0, 3, 4}), std::invalid_argument);
}

TEST(Presented, LaurentWindow)
{
    PresentedAlgebraComplex A;
    A.p = 3;
    PresentedGenerator t{"t", GenKind::Laurent, 0, -2};
    t.lo = -2;
    t.hi = 2;
    A.gens = {t, {"mu", GenKind::Polynomial, 0, 2}};
    auto B = presented_basis(A, PresentedWindow{0, 2, 3});
    EXPECT_EQ(B[0].size(), 3u);  // t^k mu^k, k = 0, 1, 2
}

TEST(Presented, AgreesWithBruteForceForTruncatedWitt)
{
    for (int p : {2, 3})
        for (int n : {2, 3}) {
            auto F = padic_filtration(shukla(p, n), 5, 1);
            auto S = compute_pages(F, 0, 4);
            auto T = eval_presented(presented_hh_wn(p, n), PresentedWindow{0, 4, F.cap});
            EXPECT_TRUE(T.problems.empty());
            for (int q = 0; q <= 4; ++q)
                for (int s = 0; s < F.cap; ++s) EXPECT_EQ(length_at(T.einf, s, q), length_at(S.einf, s, q)) << p << "," << n << " s=" << s << " q=" << q;
        }
}

TEST(Presented, TowersGiveThhOfTruncatedWitt)
{
    for (int p : {2, 3})
        for (int n : {2, 3}) {
            PresentedWindow w{0, 2 * p + 2, 3 * n + 8};
            auto G = tower_groups(presented_thh_wn(p, n, w), w);
            for (int i = 1; 2 * i - 1 < 2 * p - 1; ++i) EXPECT_TRUE(G.at(2 * i - 1).trivial()) << 2 * i - 1;
            EXPECT_EQ(G.at(2 * p - 1), WittModuleDescriptor(PrimePower(p, 1), {{1, 1}}));
            EXPECT_EQ(G.at(0), WittModuleDescriptor(PrimePower(p, 1), {{n, 1}}));
        }
}

TEST(Parity, ShuklaFiltrationsAreEvenToOdd)
{
    auto S = compute_pages(padic_filtration(shukla(3, 1), 5, 1), 0, 4);
    EXPECT_TRUE(parity_check(S, 1).even_to_odd_only);
    for (int step : {1, 2}) {
        auto T = compute_pages(padic_filtration(shukla(2, 4), 5, step), 0, 4);
        EXPECT_TRUE(parity_check(T, 1).even_to_odd_only) << step;
    }
}

TEST(Parity, OddSourceIsReported)
{
    FilteredComplex F;
    auto& C = F.complex;
    C.p = 2;
    C.lo = 0;
    C.hi = 2;
    C.mods = {ChainModule{{"y"}, {1}, {}}, ChainModule{{"x"}, {0}, {}}, ChainModule{}};
    C.bnd = {{{}}, {{{0, 1}}}, {}};
    F.cap = 2;
    auto S = compute_pages(F, 0, 1);
    auto r = parity_check(S, 1);
    EXPECT_FALSE(r.even_to_odd_only);
    ASSERT_EQ(r.offending.size(), 1u);
    EXPECT_NE(r.offending[0].find("d_1"), std::string::npos);
}

TEST(Morphism, IdentityAndZero)
{
    auto F = padic_filtration(shukla(3, 2), 4, 1);
    auto id = morphism_pages(identity_morphism(F), 0, 3);
    for (auto [r, b] : id.injective_even) EXPECT_TRUE(b) << r;
    for (const auto& c : id.cells) {
        EXPECT_TRUE(c.kernel.trivial());
        EXPECT_EQ(c.image.length(), cell(id.source.page(std::min(c.r, id.r_inf)), c.s, c.q).length());
    }
    EXPECT_TRUE(id.hypothesis);
    EXPECT_TRUE(id.violations.empty());

    auto zr = morphism_pages(zero_morphism(F, F), 0, 3);
    for (const auto& c : zr.cells) {
        EXPECT_TRUE(c.image.trivial());
        EXPECT_FALSE(c.kernel.trivial());
    }
    EXPECT_FALSE(zr.injective_even.at(1));
}

TEST(Morphism, RejectsNonChainMap)
{
    auto F = padic_filtration(shukla(2, 1), 3, 1);
    auto m = identity_morphism(F);
    for (auto& c : m.map.cols[1]) c.clear();
    EXPECT_THROW(validate_morphism(m), std::invalid_argument);
    auto lower = identity_morphism(F);
    lower.map.shift = 1;
    EXPECT_THROW(validate_morphism(lower), std::invalid_argument);
}

TEST(Morphism, QuotientOfShuklaModels)
{
    auto m = shukla_quotient_morphism(2, 4, 2, 1, 4);
    MorphismOptions o;
    o.r0 = 0;
    auto rep = morphism_pages(m, 0, 3, o);
    EXPECT_TRUE(rep.violations.empty());
    // degree 0: Z/16 -> Z/4 is onto, with E_1 map F2[x]/x^4 -> F2[x]/x^2
    EXPECT_EQ(rep.image_length(1, 0), 2);
    EXPECT_EQ(rep.image_length(rep.r_inf, 0), 2);
}

TEST(Morphism, RandomInstancesSatisfyTheLemma)
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 25; ++i) {
        auto m = random_lemma_instance(rng, i % 2 ? 3 : 2, 4);
        auto rep = morphism_pages(m, 0, 4);
        EXPECT_TRUE(rep.hypothesis) << i;
        EXPECT_TRUE(rep.violations.empty()) << i;
    }
}

TEST(Morphism, BifilteredSquare)
{
    auto sq = commuting_square_check(padic_bifiltration(2, 2, 2, 4), 0, 3);
    EXPECT_TRUE(sq.lemma_holds);
    EXPECT_TRUE(sq.ss4.even_to_odd_only);
}
