#include "lorentz/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "lorentz/errors.hpp"

namespace lorentz {

namespace {

[[noreturn]] void fail(const std::string& what) { throw validation_error(what); }

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) fail(std::string("missing numeric field \"") + key + "\"");
    return j[key].get<double>();
}

std::int64_t require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) fail(std::string("missing integer field \"") + key + "\"");
    return j[key].get<std::int64_t>();
}

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) fail(std::string("missing string field \"") + key + "\"");
    return j[key].get<std::string>();
}

std::vector<double> require_array(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) fail(std::string("missing array field \"") + key + "\"");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) fail(std::string("non-numeric entry in \"") + key + "\"");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

json num(double v) {
    if (!std::isfinite(v)) return json(nullptr);
    return json::parse(format_double(v));
}

SparseVec parse_sparse_vec(const json& j) {
    if (!j.is_array()) fail("SparseVec JSON must be an array of {\"n\":..,\"a\":..}");
    std::vector<SparseVec::Entry> entries;
    Index prev = 0;
    for (const auto& item : j) {
        if (!item.is_object()) fail("SparseVec entries must be objects");
        const auto n = require_int(item, "n");
        const double a = require_number(item, "a");
        if (n <= prev) fail("SparseVec indices must be strictly increasing");
        if (a == 0.0) fail("SparseVec entries must be nonzero");
        entries.push_back({n, a});
        prev = n;
    }
    return SparseVec(std::move(entries));
}

json to_json(const SparseVec& f) {
    json out = json::array();
    for (const auto& e : f.entries()) out.push_back({{"n", e.n}, {"a", num(e.a)}});
    return out;
}

WeightSeq parse_weight(const json& j, int default_horizon) {
    const std::string kind = require_string(j, "kind");
    if (kind == "power") {
        const double p = require_number(j, "p");
        const int N = j.contains("N") ? static_cast<int>(require_int(j, "N")) : default_horizon;
        return WeightSeq::power(p, N);
    }
    if (kind == "explicit") return WeightSeq(require_array(j, "values"));
    if (kind == "from_increments") {
        return primitive_from_increments(require_array(j, "w"), require_number(j, "q"));
    }
    fail("unknown weight kind \"" + kind + "\"");
}

LorentzSpaceSpec parse_space(const json& j, int default_horizon) {
    const std::string space = require_string(j, "space");
    if (space == "lpq") {
        const double p = require_number(j, "p");
        const double q = require_number(j, "q");
        const int N = j.contains("N") ? static_cast<int>(require_int(j, "N")) : default_horizon;
        return make_lpq_space(p, q, N);
    }
    if (space == "d_q") {
        if (!j.contains("weight")) fail("d_q space needs a \"weight\" field");
        const double q = require_number(j, "q");
        const json& wj = j["weight"];
        if (wj.is_object() && wj.contains("kind") && wj["kind"] == "from_increments" &&
            require_number(wj, "q") == q) {
            return make_dwq_space(require_array(wj, "w"), q);
        }
        return make_dq_space(parse_weight(wj, default_horizon), q);
    }
    fail("unknown space \"" + space + "\"");
}

DisjointFamily parse_family(const json& j) {
    if (!j.is_array()) fail("family JSON must be an array of index arrays");
    std::vector<std::vector<Index>> blocks;
    for (const auto& blk : j) {
        if (!blk.is_array()) fail("family blocks must be arrays");
        std::vector<Index> b;
        for (const auto& v : blk) {
            if (!v.is_number_integer()) fail("family indices must be integers");
            b.push_back(v.get<Index>());
        }
        blocks.push_back(std::move(b));
    }
    return DisjointFamily(std::move(blocks));
}

json to_json(const DisjointFamily& a) {
    json out = json::array();
    for (const auto& blk : a.blocks()) out.push_back(blk);
    return out;
}

IntervalPartition parse_interval_partition(const json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "dyadic") return IntervalPartition::dyadic(static_cast<int>(require_int(j, "k")));
    if (kind == "constant")
        return IntervalPartition::constant(require_int(j, "size"), static_cast<int>(require_int(j, "count")));
    if (kind == "explicit") {
        if (!j.contains("sizes") || !j["sizes"].is_array()) fail("explicit partition needs \"sizes\"");
        std::vector<std::int64_t> sizes;
        for (const auto& v : j["sizes"]) sizes.push_back(v.get<std::int64_t>());
        return IntervalPartition(std::move(sizes));
    }
    fail("unknown partition kind \"" + kind + "\"");
}

std::shared_ptr<const NormOracle> parse_base_oracle(const json& j, int default_horizon) {
    const std::string kind = require_string(j, "kind");
    if (kind == "diff_lq") return std::make_shared<DiffBasisOracle>(require_number(j, "q"));
    if (kind == "unit_lq") return unit_lq_oracle(require_number(j, "q"), default_horizon);
    if (kind == "dq") {
        json space = j;
        space["space"] = "d_q";
        const auto spec = parse_space(space, default_horizon);
        return std::make_shared<SymmetricGauge>(spec.gauge());
    }
    if (kind == "direct_sum") {
        if (!j.contains("x") || !j.contains("y")) fail("direct_sum base needs \"x\" and \"y\"");
        return std::make_shared<DirectSumOracle>(parse_base_oracle(j["x"], default_horizon),
                                                 parse_base_oracle(j["y"], default_horizon),
                                                 require_number(j, "q_sum"));
    }
    fail("unknown base oracle kind \"" + kind + "\"");
}

DkkSpec parse_dkk_spec(const json& j, int default_horizon) {
    if (!j.contains("base") || !j.contains("sym") || !j.contains("partition"))
        fail("dkk spec needs \"base\", \"sym\" and \"partition\"");
    const auto sym_spec = parse_space(j["sym"], default_horizon);
    return DkkSpec{parse_base_oracle(j["base"], default_horizon),
                   std::make_shared<SymmetricGauge>(sym_spec.gauge()),
                   parse_interval_partition(j["partition"])};
}

json to_json(const RegularityReport& rep) {
    json rho = json::array();
    for (const auto& e : rep.ratio_table) rho.push_back({{"d", e.d}, {"rho", num(e.rho)}});
    return {{"horizon", rep.horizon},
            {"doubling_constant", num(rep.doubling_constant)},
            {"rho", rho},
            {"urp_witness", rep.urp_witness ? json(*rep.urp_witness) : json(nullptr)},
            {"lrp_witness", rep.lrp_witness ? json(*rep.lrp_witness) : json(nullptr)},
            {"ess_incr_constant", num(rep.ess_incr_constant)},
            {"ess_decr_constant", num(rep.ess_decr_constant)}};
}

json to_json(const UrpEquivalences& rep) {
    json rho = json::array();
    for (const auto& e : rep.rho_over_d) rho.push_back({{"d", e.d}, {"rho_over_d", num(e.rho)}});
    return {{"horizon", rep.horizon},
            {"ess_incr_constant", num(rep.ess_incr_constant)},
            {"essentially_increasing", rep.essentially_increasing},
            {"rho_over_d", rho},
            {"min_rho_over_d", num(rep.min_rho_over_d)},
            {"dini_over_dual_sup", num(rep.dini_over_dual_sup)},
            {"dual_over_dini_sup", num(rep.dual_over_dini_sup)},
            {"urp_witness", rep.urp_witness ? json(*rep.urp_witness) : json(nullptr)},
            {"consistent", rep.consistent}};
}

namespace {
const char* origin_name(TheoremWeightOrigin origin) {
    switch (origin) {
        case TheoremWeightOrigin::ExplicitW: return "explicit_w";
        case TheoremWeightOrigin::PowerLaw: return "power_law";
        case TheoremWeightOrigin::RunningMin: return "running_min";
    }
    return "?";
}
} // namespace

json to_json(const TheoremBound& bound) {
    return {{"b", bound.b},
            {"C", num(bound.C)},
            {"rho_b", num(bound.rho_b)},
            {"threshold", num(bound.threshold)},
            {"horizon", bound.horizon},
            {"weight_origin", origin_name(bound.weight.origin)},
            {"weight_certified", bound.weight.certified},
            {"equiv_lower", num(bound.weight.equiv_lower)},
            {"equiv_upper", num(bound.weight.equiv_upper)}};
}

json to_json(const ProofTrace& trace) {
    json blocks = json::array();
    for (std::size_t j = 0; j < trace.blocks.size(); ++j) {
        blocks.push_back({{"block", trace.blocks[j]},
                          {"x", num(trace.x[j])},
                          {"D", trace.D[j]},
                          {"m", trace.m[j + 1]}});
    }
    json enlarged = json::array();
    for (std::size_t i = 0; i < trace.J.size(); ++i) {
        enlarged.push_back({{"j", trace.J[i] + 1}, // 1-based in reports
                            {"E", trace.E[i]},
                            {"y", num(trace.y[i])}});
    }
    json j_idx = json::array(), g_idx = json::array();
    for (int j : trace.J) j_idx.push_back(j + 1);
    for (int j : trace.G) g_idx.push_back(j + 1);
    return {{"blocks", blocks},
            {"J", j_idx},
            {"G", g_idx},
            {"E", enlarged},
            {"R", num(trace.R)},
            {"S", num(trace.S)},
            {"b", trace.b},
            {"C", num(trace.C)},
            {"norm_vb_pow_q", num(trace.norm_vb_pow_q)},
            {"norm_f_pow_q", num(trace.norm_f_pow_q)},
            {"rho_condition", trace.rho_condition},
            {"r_le_s", trace.r_le_s},
            {"s_bound_ok", trace.s_bound_ok}};
}

json to_json(const SearchResult& result) {
    json src = json::array();
    for (const auto& blk : result.source_blocks) src.push_back(blk);
    return {{"ratio", num(result.ratio)},
            {"family", to_json(result.family)},
            {"source_blocks", src},
            {"target_sizes", result.target_sizes},
            {"size_cap", result.size_cap},
            {"partitions_scanned", result.partitions_scanned},
            {"exact_within_cap", result.exact_within_cap}};
}

json to_json(const BoundCheck& check) {
    return {{"ratio", num(check.ratio)},
            {"bound", num(check.bound)},
            {"margin", num(check.margin)},
            {"ok", check.ok}};
}

} // namespace lorentz
