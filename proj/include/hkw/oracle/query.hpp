#pragma once

#include <string>

#include "hkw/oracle/closed_forms.hpp"

namespace hkw {

inline const std::vector<std::string>& oracle_families()
{
    static const std::vector<std::string> f{"HH", "THH", "THH_rel", "TR_shifted", "TF_column", "TC_k", "K_lowdeg", "K_ratio", "V0_KWk", "V0_TCWk", "K_Fq"};
    return f;
}

namespace detail {

inline int need_int(const json& P, const char* key)
{
    if (!P.contains(key)) throw std::invalid_argument(std::string("oracle: missing parameter '") + key + "'");
    return P.at(key).get<int>();
}

inline int opt_int(const json& P, const char* key, int dflt) { return P.contains(key) ? P.at(key).get<int>() : dflt; }

} // namespace detail

// Evaluates one closed form; the answer echoes the query and the conventions in force.
inline json run_oracle(const std::string& family, const json& P)
{
    using detail::need_int;
    using detail::opt_int;
    json out{{"family", family}, {"params", P}, {"provenance", "closed-form"}};
    json conv{{"nu0", nullptr}, {"lambda_fixed_dims", nullptr}};
    json mode = nullptr;

    if (family == "HH") {
        const std::string f = P.value("ring", std::string("k"));
        std::optional<int> internal;
        if (P.contains("internal")) internal = P.at("internal").get<int>();
        auto d = hh_closed_form(parse_hh_family(f), need_int(P, "p"), opt_int(P, "s", 1), opt_int(P, "n", 1), need_int(P, "degree"), internal);
        out["result"] = d;
    } else if (family == "THH" || family == "THH_rel") {
        THHQuery Q;
        const std::string t = P.value("target", std::string("W(k)"));
        if (t == "W(k)" || t == "Wk") Q.target = THHTarget::Wk;
        else if (t == "W_n(k)" || t == "Wnk") Q.target = THHTarget::Wnk;
        else throw std::invalid_argument("THH target must be W(k) or W_n(k)");
        Q.p = need_int(P, "p");
        Q.s = opt_int(P, "s", 1);
        Q.n = opt_int(P, "n", 1);
        Q.degree = need_int(P, "degree");
        Q.relative = family == "THH_rel";
        Q.nu0 = parse_nu0(P.value("nu0", std::string("zero")));
        Q.mode = parse_thh_mode(P.value("mode", std::string("as-printed")));
        auto a = thh_closed_form(Q);
        out["result"] = a.group;
        out["provenance"] = a.provenance;
        if (!a.note.empty()) out["note"] = a.note;
        if (Q.target == THHTarget::Wnk) {
            mode = mode_name(Q.mode);
            conv["nu0"] = Q.mode == THHMode::as_printed ? nu0_name(Q.nu0) : "infinity";
            THHQuery other = Q;
            other.mode = Q.mode == THHMode::as_printed ? THHMode::recomputed : THHMode::as_printed;
            auto b = thh_closed_form(other);
            out["other_mode"] = {{"mode", mode_name(other.mode)}, {"result", b.group}, {"agree", b.group == a.group}};
        }
    } else if (family == "TR_shifted") {
        const int p = need_int(P, "p");
        auto rep = rep_shift(p, need_int(P, "d"));
        const int m = need_int(P, "m"), i = need_int(P, "i");
        const int len = tr_witt_length(m, rep, i);
        out["result"] = WittModuleDescriptor(PrimePower(p, opt_int(P, "s", 1)), {{len, 1}});
        out["witt_length"] = len;
        conv["lambda_fixed_dims"] = rep.fixed_dims;
    } else if (family == "TF_column") {
        const int p = need_int(P, "p"), n = need_int(P, "n"), col = need_int(P, "column");
        out["result"] = tf_column(p, opt_int(P, "s", 1), n, col, need_int(P, "degree"));
        conv["lambda_fixed_dims"] = rep_shift(p, col / n).fixed_dims;
    } else if (family == "TC_k") {
        out["result"] = tc_of_k(need_int(P, "p"), opt_int(P, "s", 1), need_int(P, "degree"));
    } else if (family == "K_lowdeg") {
        out["result"] = k_lowdeg(need_int(P, "p"), opt_int(P, "s", 1), need_int(P, "n"), need_int(P, "degree"));
    } else if (family == "K_ratio") {
        out["result"] = k_order_ratio(need_int(P, "q"), need_int(P, "n"), need_int(P, "i"), P.value("relative", true));
    } else if (family == "V0_KWk" || family == "V0_TCWk") {
        const int p = need_int(P, "p"), s = opt_int(P, "s", 1), j = need_int(P, "degree");
        const V0Target t = family == "V0_KWk" ? V0Target::K : V0Target::TC;
        out["result"] = {{"fp_dimension", v0_dims(t, p, s, j)}};
    } else if (family == "K_Fq") {
        auto k = k_fq(need_int(P, "q"), need_int(P, "degree"));
        out["result"] = {{"free_rank", k.free_rank}, {"order", k.order.str()}, {"text", k.str()}};
    } else {
        throw std::invalid_argument("unknown oracle family '" + family + "'");
    }
    out["mode"] = mode;
    out["conventions"] = conv;
    return out;
}

inline json crosscheck_to_json(const OrderCrosscheck& c, i64 q, int n, int i)
{
    json cols = json::array();
    for (auto [s, l] : c.columns) cols.push_back({{"s", s}, {"p_exponent", l}});
    return json{{"q", q}, {"n", n}, {"i", i}, {"N", c.N}, {"lhs_p_exponent", c.lhs_exp}, {"rhs_p_exponent", c.rhs_exp},
                {"columns", cols}, {"vanishing_beyond_N", c.vanishing}, {"pass", c.pass}};
}

} // namespace hkw
