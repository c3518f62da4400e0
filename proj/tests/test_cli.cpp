#include <gtest/gtest.h>

#include <filesystem>

#include "hkw/cli/cache.hpp"
#include "hkw/cli/commands.hpp"

using namespace hkw;

namespace {

std::filesystem::path scratch(const std::string& name)
{
    auto d = std::filesystem::temp_directory_path() / ("hkw_test_" + name);
    std::filesystem::remove_all(d);
    return d;
}

} // namespace

TEST(Cache, StoreThenLookup)
{
    ResultCache c(scratch("store"));
    json q{{"command", "hh"}, {"params", {{"ring", "shukla:3,1"}}}};
    EXPECT_FALSE(c.lookup(q).has_value());
    json r{{"x", 1}, {"y", {1, 2, 3}}};
    c.store(q, r);
    auto got = c.lookup(q);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(got->dump(), r.dump());
}

TEST(Cache, FormatIsNotPartOfTheKey)
{
    json a{{"command", "oracle"}, {"format", "json"}};
    json b{{"command", "oracle"}, {"format", "csv"}};
    EXPECT_EQ(cache_key(a), cache_key(b));
    EXPECT_NE(cache_key(a), cache_key(json{{"command", "hh"}}));
    EXPECT_EQ(cache_key(a).size(), 32u);
}

TEST(Cache, CorruptEntryWarns)
{
    ResultCache c(scratch("corrupt"));
    json q{{"command", "replay"}};
    c.store(q, json{{"v", 1}});
    std::ofstream(c.path_for(q)) << "{truncated";
    std::string warn;
    EXPECT_FALSE(c.lookup(q, &warn).has_value());
    EXPECT_NE(warn.find("corrupt"), std::string::npos);
}

TEST(Report, EmptyReportIsHeaderOnly)
{
    Report r;
    r.command = "hh";
    json cfg{{"command", "hh"}};
    std::string t = emit(r, Format::table, cfg);
    EXPECT_EQ(t.find("FAILURES"), std::string::npos);
    EXPECT_EQ(t.rfind("# ", 0), 0u);
    std::string c = emit(r, Format::csv, cfg);
    EXPECT_EQ(c, "# config: " + cfg.dump() + "\ndegree,internal_degree,p_exponent,factors,provenance\n");
}

TEST(Report, JsonRoundTrip)
{
    auto r = cmd_oracle("k-lowdeg", {{"p", 5}, {"n", 2}, {"degree", 7}});
    auto back = report_from_json(json::parse(report_to_json(r).dump()));
    json cfg = json::object();
    for (auto f : {Format::table, Format::json, Format::csv}) EXPECT_EQ(emit(r, f, cfg), emit(back, f, cfg));
}

TEST(Report, ProvenanceTagsAreChecked)
{
    Report r;
    r.provenance = "guess";
    EXPECT_THROW(check_provenance(r), std::logic_error);
    r.provenance = "closed-form";
    r.rows.push_back({0, std::nullopt, 1, "Z/3", "brute-force"});
    EXPECT_NO_THROW(check_provenance(r));
}

TEST(Commands, CrosscheckCitesBothEngines)
{
    CrosscheckOptions o;
    o.single = std::array<int, 3>{2, 2, 1};
    auto r = cmd_crosscheck("order-theorem", o);
    EXPECT_FALSE(r.mismatch);
    for (const auto& c : r.payload["cells"]) EXPECT_EQ(c["engines"].size(), 2u);
    o.inject_failure = true;
    auto bad = cmd_crosscheck("order-theorem", o);
    EXPECT_TRUE(bad.mismatch);
    ASSERT_EQ(bad.failures.size(), 1u);
}

TEST(Commands, FeasibilityGate)
{
    EXPECT_THROW(cmd_ss_ring(parse_ring_spec("shukla:2,2"), 9, 1, -1, false), FeasibilityError);
    Limits big;
    big.presented_basis = 10;
    EXPECT_THROW(cmd_ss_presented("thh-wk", 2, 1, 1, PresentedWindow{0, 6, 8}, false, big), FeasibilityError);
    EXPECT_THROW(cmd_replay("example", 2, 2), std::invalid_argument);
}

TEST(Commands, ReplaysPass)
{
    for (const auto& n : replay_names()) {
        auto r = cmd_replay(n, 3, 2);
        EXPECT_FALSE(r.mismatch) << n;
        EXPECT_NO_THROW(check_provenance(r)) << n;
    }
}
