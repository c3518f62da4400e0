#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "hkw/cli/cache.hpp"
#include "hkw/cli/commands.hpp"

using namespace hkw;

namespace {

enum Exit { ok = 0, mismatch = 1, infeasible = 2, bad_input = 3 };

struct Options {
    std::string format = "table";
    std::string cache_dir;
    std::uint64_t seed = 1;
    bool timing = false;
    bool verify_cache = false;
    Limits limits;

    std::string ring;
    int max_degree = 6;
    bool split = false;
    int internal = -1;

    int step = 1;
    int cap = -1;
    bool all_pages = false;
    std::string presented;
    int qlo = 0, qhi = -1;

    std::string name;
    int p = 2, s = 1, n = 2;

    // oracle parameters, sent only when given
    std::map<std::string, int> ints;
    std::map<std::string, std::string> strs;
    std::string relative;

    int q = 0, i = 0;
    int instances = 20;
    bool inject_failure = false;
};

json oracle_params(const Options& o, CLI::App* sub)
{
    json P = json::object();
    for (const auto& [k, v] : o.ints)
        if (sub->count("--" + (k == "max_degree" ? std::string("max-degree") : k))) P[k] = v;
    for (const auto& [k, v] : o.strs)
        if (sub->count("--" + k)) P[k] = v;
    if (sub->count("--relative")) {
        if (o.relative != "true" && o.relative != "false") throw std::invalid_argument("--relative takes true or false");
        P["relative"] = o.relative == "true";
    }
    return P;
}

Report run(const std::string& cmd, const json& params, const Options& o)
{
    if (cmd == "hh") return cmd_hh(parse_ring_spec(params.at("ring")), params.at("max_degree"), params.at("split"), params.at("internal"));
    if (cmd == "ss") {
        if (params.contains("presented")) {
            const int qhi = params.at("qhi");
            PresentedWindow w{params.at("qlo"), qhi, params.at("cap")};
            return cmd_ss_presented(params.at("presented"), params.at("p"), params.at("n"), params.at("s"), w, params.at("all_pages"), o.limits);
        }
        return cmd_ss_ring(parse_ring_spec(params.at("ring")), params.at("max_degree"), params.at("step"), params.at("cap"), params.at("all_pages"), o.limits);
    }
    if (cmd == "oracle") return cmd_oracle(params.at("family"), params.at("params"), o.limits);
    if (cmd == "crosscheck") {
        CrosscheckOptions c;
        c.seed = o.seed;
        c.random_instances = params.at("instances");
        c.inject_failure = params.at("inject_failure");
        if (params.contains("single")) c.single = params.at("single").get<std::array<int, 3>>();
        return cmd_crosscheck(params.at("name"), c);
    }
    if (cmd == "replay") return cmd_replay(params.at("name"), params.at("p"), params.at("n"));
    throw std::invalid_argument("unknown command '" + cmd + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hochschild and topological Hochschild homology of Witt vectors: brute-force, spectral-sequence and closed-form engines"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--cache-dir", o.cache_dir, "result cache directory (default: $HKW_CACHE_DIR)");
    app.add_option("--seed", o.seed, "seed for randomized checks");
    app.add_flag("--timing", o.timing, "report wall time");
    app.add_flag("--verify-cache", o.verify_cache, "recompute on a cache hit and fail unless the outputs are byte-identical");
    app.add_option("--limit-ss-degree", o.limits.ss_degree, "largest total degree for ss --ring");
    app.add_option("--limit-basis", o.limits.presented_basis, "largest basis of a presented complex");
    app.add_option("--limit-diff-degree", o.limits.mode_diff_degree, "largest degree for oracle thh-diff");

    auto* hh = app.add_subcommand("hh", "Hochschild homology tables by brute force");
    hh->add_option("--ring", o.ring, "shukla:p,n | wm:p,s,m | truncpoly:p,s,n | poly:p,s, optional ;smax=K ;base=field")->required();
    hh->add_option("--max-degree", o.max_degree, "top total degree");
    hh->add_flag("--split", o.split, "split by internal degree");
    hh->add_option("--internal", o.internal, "only this internal degree");

    auto* ss = app.add_subcommand("ss", "spectral sequence pages");
    auto* ss_ring = ss->add_option("--ring", o.ring, "ring filtered by powers of p^step");
    auto* ss_pres = ss->add_option("--presented", o.presented, "hh-wk | hh-wn | hh-wk-from-wn | thh-wk | thh-wn");
    ss_ring->excludes(ss_pres);
    ss->add_option("--max-degree", o.max_degree, "top total degree (--ring)");
    ss->add_option("--step", o.step, "filtration step (--ring)");
    ss->add_option("--cap", o.cap, "filtration cap");
    ss->add_flag("--all-pages", o.all_pages, "print every page");
    ss->add_option("--p", o.p, "prime (--presented)");
    ss->add_option("--n", o.n, "truncation n (--presented)");
    ss->add_option("--s", o.s, "residue field degree (--presented)");
    ss->add_option("--qlo", o.qlo, "lowest total degree (--presented)");
    ss->add_option("--qhi", o.qhi, "highest total degree (--presented)");

    auto* orc = app.add_subcommand("oracle", "closed-form answers");
    orc->add_option("family", o.name, "hh, thh, thh-rel, thh-diff, tr-shifted, tf-column, tc-k, k-lowdeg, k-ratio, v0-k, v0-tc, k-fq")->required();
    for (const char* k : {"p", "s", "n", "degree", "internal", "d", "m", "i", "column", "q"}) orc->add_option(std::string("--") + k, o.ints[k]);
    orc->add_option("--max-degree", o.ints["max_degree"], "top degree (thh-diff)");
    for (const char* k : {"ring", "target", "nu0", "mode"}) orc->add_option(std::string("--") + k, o.strs[k]);
    orc->add_option("--relative", o.relative, "true or false (k-ratio)");

    auto* cc = app.add_subcommand("crosscheck", "compare independent engines; exit 1 on any disagreement");
    cc->add_option("name", o.name, "order-theorem, hh-closed-form, k-lowdeg, thh-recomputed, tc-coker, v0, parity, all")->required();
    cc->add_option("--q", o.q, "single order-theorem cell: q");
    cc->add_option("--n", o.n, "single order-theorem cell: n");
    cc->add_option("--i", o.i, "single order-theorem cell: i");
    cc->add_option("--instances", o.instances, "random instances for the parity check");
    cc->add_flag("--inject-failure", o.inject_failure, "force one failing cell");

    auto* rp = app.add_subcommand("replay", "reproduce a worked example");
    rp->add_option("name", o.name, "hh-wk, hh-wnk, hh-wk-from-wnk, thh-wk, thh-wnk")->required();
    rp->add_option("--p", o.p, "prime");
    rp->add_option("--n", o.n, "truncation n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }

    std::string cmd;
    json params;
    try {
        if (hh->parsed()) {
            cmd = "hh";
            params = {{"ring", parse_ring_spec(o.ring).str()}, {"max_degree", o.max_degree}, {"split", o.split}, {"internal", o.internal}};
        } else if (ss->parsed()) {
            cmd = "ss";
            if (!o.presented.empty()) {
                const int qhi = o.qhi < 0 ? 2 * o.p + 2 : o.qhi;
                params = {{"presented", o.presented}, {"p", o.p}, {"n", o.n}, {"s", o.s}, {"qlo", o.qlo}, {"qhi", qhi}, {"cap", o.cap < 0 ? qhi + 2 : o.cap}, {"all_pages", o.all_pages}};
            } else if (!o.ring.empty()) {
                params = {{"ring", parse_ring_spec(o.ring).str()}, {"max_degree", o.max_degree}, {"step", o.step}, {"cap", o.cap}, {"all_pages", o.all_pages}};
            } else {
                throw std::invalid_argument("ss needs --ring or --presented");
            }
        } else if (orc->parsed()) {
            cmd = "oracle";
            params = {{"family", oracle_family_from_cli(o.name)}, {"params", oracle_params(o, orc)}};
        } else if (cc->parsed()) {
            cmd = "crosscheck";
            params = {{"name", o.name}, {"instances", o.instances}, {"inject_failure", o.inject_failure}};
            const size_t given = cc->count("--q") + cc->count("--n") + cc->count("--i");
            if (given) {
                if (given != 3 || o.name != "order-theorem") throw std::invalid_argument("--q --n --i go together, with order-theorem");
                params["single"] = {o.q, o.n, o.i};
            }
        } else {
            cmd = "replay";
            params = {{"name", o.name}, {"p", o.p}, {"n", o.n}};
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }

    json limits = o.limits;
    json query{{"command", cmd}, {"params", params}, {"seed", o.seed}, {"limits", limits}};
    json config = query;
    config["format"] = o.format;

    std::optional<ResultCache> cache;
    if (!o.cache_dir.empty()) cache.emplace(o.cache_dir);
    else cache = ResultCache::from_env();
    const Format fmt = parse_format(o.format);

    try {
        const auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count(); };
        Report R;
        bool hit = false;
        if (cache) {
            std::string warn;
            if (auto j = cache->lookup(query, &warn)) {
                R = report_from_json(*j);
                hit = true;
            } else if (!warn.empty()) {
                std::cerr << "warning: " << warn << "; recomputing\n";
            }
        }
        if (!hit) {
            R = run(cmd, params, o);
            check_provenance(R);
            if (cache) cache->store(query, report_to_json(R));
        } else if (o.verify_cache) {
            Report fresh = run(cmd, params, o);
            if (emit(fresh, fmt, config) != emit(R, fmt, config)) {
                std::cerr << "error: cache entry " << cache->path_for(query).string() << " differs from recomputation\n";
                return mismatch;
            }
        }
        R.wall_ms = elapsed();
        std::cout << emit(R, fmt, config, o.timing);
        return R.mismatch ? mismatch : ok;
    } catch (const FeasibilityError& e) {
        std::cerr << "infeasible: " << e.what() << " (estimated cost " << e.cost << ")\n";
        return infeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
}
