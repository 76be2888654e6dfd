// Command-line front end for the weighted-Lorentz averaging-projection lab.
//
// Exit codes: 0 success, 1 reproduce-suite failure, 2 validation error,
// 3 invariant violation (a bug signal, e.g. a verified bound failing).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lorentz/dkk.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/json_io.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/parallel.hpp"
#include "lorentz/projections.hpp"
#include "lorentz/reproduce.hpp"
#include "lorentz/rng.hpp"

namespace {

using namespace lorentz;

int default_horizon() {
    if (const char* env = std::getenv("LORENTZ_HORIZON")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return kDefaultHorizon;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw validation_error("cannot open output file " + out_path);
    os << content;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const std::int64_t v = std::stoll(text);
        return {v, v};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

struct SpaceFlags {
    std::string space = "lpq";
    double p = 2.0;
    double q = 0.5;
    std::string weight_json;
    std::string space_json;

    void attach(CLI::App* cmd) {
        cmd->add_option("--space", space, "space kind: lpq | d_q")->capture_default_str();
        cmd->add_option("--p", p, "exponent p for lpq")->capture_default_str();
        cmd->add_option("--q", q, "exponent q")->capture_default_str();
        cmd->add_option("--weight", weight_json, "weight JSON for d_q spaces");
        cmd->add_option("--space-json", space_json, "full space spec JSON (overrides the flags)");
    }

    LorentzSpaceSpec resolve(int horizon) const {
        if (!space_json.empty()) return parse_space(json::parse(space_json), horizon);
        if (space == "lpq") return make_lpq_space(p, q, horizon);
        if (space == "d_q") {
            if (weight_json.empty()) throw validation_error("d_q space needs --weight");
            json spec{{"space", "d_q"}, {"weight", json::parse(weight_json)}, {"q", q}};
            return parse_space(spec, horizon);
        }
        throw validation_error("unknown --space \"" + space + "\" (use lpq or d_q)");
    }
};

int run(int argc, char** argv) {
    CLI::App app{"weighted Lorentz sequence spaces and averaging projections"};
    app.require_subcommand(1);

    int horizon = default_horizon();
    app.add_option("--horizon", horizon, "primitive-sequence horizon N")->capture_default_str();

    std::string out_path;
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    // norm
    auto* cmd_norm = app.add_subcommand("norm", "evaluate a Lorentz gauge on a vector");
    SpaceFlags norm_space;
    norm_space.attach(cmd_norm);
    std::string norm_vec;
    double norm_pvariant = 0.0;
    cmd_norm->add_option("--vec", norm_vec, "SparseVec JSON")->required();
    cmd_norm->add_option("--pvariant", norm_pvariant, "evaluate the p-variant gauge instead");

    // project
    auto* cmd_project = app.add_subcommand("project", "apply an averaging projection");
    SpaceFlags project_space;
    project_space.attach(cmd_project);
    std::string project_vec, project_family;
    cmd_project->add_option("--vec", project_vec, "SparseVec JSON")->required();
    cmd_project->add_option("--family", project_family, "family JSON, e.g. [[1,2],[5,6,7]]")->required();

    // search-worst
    auto* cmd_search = app.add_subcommand("search-worst", "search the worst averaging partition");
    SpaceFlags search_space;
    search_space.attach(cmd_search);
    std::string search_vec;
    std::int64_t search_cap = 1 << 10;
    std::int64_t search_budget = 4096;
    std::uint64_t search_seed = 1;
    bool search_exact = false, search_heuristic = false;
    cmd_search->add_option("--vec", search_vec, "SparseVec JSON")->required();
    cmd_search->add_flag("--exact", search_exact, "exhaustive set-partition scan (|supp| <= 9)");
    cmd_search->add_flag("--heuristic", search_heuristic, "seeded local search");
    cmd_search->add_option("--cap", search_cap, "target-size cap")->capture_default_str();
    cmd_search->add_option("--budget", search_budget, "heuristic move budget")->capture_default_str();
    cmd_search->add_option("--seed", search_seed, "heuristic seed")->capture_default_str();

    // verify-bound
    auto* cmd_verify = app.add_subcommand("verify-bound", "stress the boundedness constant on random inputs");
    SpaceFlags verify_space;
    verify_space.attach(cmd_verify);
    int verify_trials = 10000;
    std::uint64_t verify_seed = 7;
    int verify_bmax = 4096;
    int verify_max_support = 200;
    int verify_max_block = 500;
    int verify_threads = 1;
    cmd_verify->add_option("--trials", verify_trials)->capture_default_str();
    cmd_verify->add_option("--seed", verify_seed)->capture_default_str();
    cmd_verify->add_option("--b-max", verify_bmax, "largest b scanned")->capture_default_str();
    cmd_verify->add_option("--max-support", verify_max_support)->capture_default_str();
    cmd_verify->add_option("--max-block", verify_max_block)->capture_default_str();
    cmd_verify->add_option("--threads", verify_threads)->capture_default_str();

    // trace
    auto* cmd_trace = app.add_subcommand("trace", "emit the proof-trace certificate for (f, B)");
    SpaceFlags trace_space;
    trace_space.attach(cmd_trace);
    std::string trace_vec, trace_family;
    int trace_b = 0;
    cmd_trace->add_option("--vec", trace_vec, "nonnegative SparseVec JSON")->required();
    cmd_trace->add_option("--family", trace_family, "cover of supp(f), family JSON")->required();
    cmd_trace->add_option("--b", trace_b, "splitting parameter (default: from the theorem scan)");

    // witness
    auto* cmd_witness = app.add_subcommand("witness", "single-block divergence witness table (CSV)");
    SpaceFlags witness_space;
    witness_space.attach(cmd_witness);
    std::string witness_range = "1..64";
    cmd_witness->add_option("--m", witness_range, "m range, e.g. 1..64")->capture_default_str();

    // diagnose-weight
    auto* cmd_diag = app.add_subcommand("diagnose-weight", "regularity report for a primitive sequence");
    std::string diag_weight;
    int diag_bmax = kDefaultWitnessScan;
    cmd_diag->add_option("--weight", diag_weight, "weight JSON")->required();
    cmd_diag->add_option("--b-max", diag_bmax, "largest witness scanned")->capture_default_str();

    // dkk-norm
    auto* cmd_dkk = app.add_subcommand("dkk-norm", "evaluate the construction norm");
    std::string dkk_spec_json, dkk_vec;
    cmd_dkk->add_option("--spec", dkk_spec_json, "dkk spec JSON")->required();
    cmd_dkk->add_option("--vec", dkk_vec, "SparseVec JSON")->required();

    // cond-params
    auto* cmd_cond = app.add_subcommand("cond-params", "conditionality parameters (CSV)");
    std::string cond_base = R"({"kind":"diff_lq","q":0.5})";
    std::string cond_range = "1..16";
    std::int64_t cond_dim = 32;
    std::int64_t cond_budget = 2000;
    std::uint64_t cond_seed = 7;
    cmd_cond->add_option("--base", cond_base, "base oracle JSON")->capture_default_str();
    cmd_cond->add_option("--m", cond_range, "m range")->capture_default_str();
    cmd_cond->add_option("--dim", cond_dim)->capture_default_str();
    cmd_cond->add_option("--budget", cond_budget)->capture_default_str();
    cmd_cond->add_option("--seed", cond_seed)->capture_default_str();

    // reproduce
    auto* cmd_repro = app.add_subcommand("reproduce", "run an acceptance suite");
    std::string repro_suite;
    std::uint64_t repro_seed = 7;
    int repro_threads = 1;
    cmd_repro->add_option("suite", repro_suite, "regularity | bound | unbounded | dkk | all")->required();
    cmd_repro->add_option("--seed", repro_seed)->capture_default_str();
    cmd_repro->add_option("--threads", repro_threads)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (cmd_norm->parsed()) {
        const auto spec = norm_space.resolve(horizon);
        const SparseVec f = parse_sparse_vec(json::parse(norm_vec));
        double value;
        if (cmd_norm->count("--pvariant") > 0) {
            value = lorentz_norm_pvariant(f, spec.s, spec.q, norm_pvariant);
        } else {
            value = spec.gauge()(f);
        }
        write_output(out_path, format_double(value) + "\n");
        return 0;
    }

    if (cmd_project->parsed()) {
        const auto spec = project_space.resolve(horizon);
        const SparseVec f = parse_sparse_vec(json::parse(project_vec));
        const DisjointFamily fam = parse_family(json::parse(project_family));
        const SparseVec vf = apply_averaging(f, fam);
        const SymmetricGauge gauge = spec.gauge();
        json out{{"projected", to_json(vf)}, {"ratio", num(projection_ratio(f, fam, gauge))}};
        write_output(out_path, out.dump(2) + "\n");
        return 0;
    }

    if (cmd_search->parsed()) {
        const auto spec = search_space.resolve(horizon);
        const SparseVec f = parse_sparse_vec(json::parse(search_vec));
        const SymmetricGauge gauge = spec.gauge();
        if (search_exact == search_heuristic)
            throw validation_error("search-worst: pass exactly one of --exact / --heuristic");
        const SearchResult result = search_exact
                                        ? worst_partition_exact(f, gauge, search_cap)
                                        : worst_partition_heuristic(f, gauge, search_cap, search_budget, search_seed);
        json out = to_json(result);
        out["config"] = {{"space", spec.label},
                         {"mode", search_exact ? "exact" : "heuristic"},
                         {"cap", search_cap},
                         {"budget", search_budget},
                         {"seed", search_seed},
                         {"horizon", horizon}};
        write_output(out_path, out.dump(2) + "\n");
        return 0;
    }

    if (cmd_verify->parsed()) {
        const auto spec = verify_space.resolve(horizon);
        const TheoremBound bound = theorem_bound_constant(spec, verify_bmax);
        int violations = 0;
        double max_ratio = 0.0;
        auto ratios = parallel_map<BoundCheck>(static_cast<std::size_t>(verify_trials), verify_threads, [&](std::size_t i) {
            auto g = rng_for(verify_seed, 0x0300 + i);
            std::set<Index> idx;
            const auto size = uniform_int(g, 1, verify_max_support);
            while (static_cast<std::int64_t>(idx.size()) < size) idx.insert(uniform_int(g, 1, 6000));
            std::vector<SparseVec::Entry> e;
            for (Index n : idx) {
                double v = uniform(g, -2.0, 2.0);
                if (v == 0.0) v = 1.0;
                e.push_back({n, v});
            }
            const SparseVec f{std::move(e)};
            const auto nb = uniform_int(g, 1, 8);
            std::vector<std::vector<Index>> blocks;
            Index pos = 1 + uniform_int(g, 0, 50);
            for (std::int64_t j = 0; j < nb; ++j) {
                const auto len = uniform_int(g, 1, verify_max_block);
                std::vector<Index> blk;
                for (Index n = pos; n < pos + len; ++n) blk.push_back(n);
                blocks.push_back(std::move(blk));
                pos += len + uniform_int(g, 1, 100);
            }
            return verify_bound(f, DisjointFamily(std::move(blocks)), bound);
        });
        for (const auto& r : ratios) {
            max_ratio = std::max(max_ratio, r.ratio);
            if (!r.ok) ++violations;
        }
        json out{{"bound", to_json(bound)},
                 {"config",
                  {{"space", spec.label},
                   {"trials", verify_trials},
                   {"seed", verify_seed},
                   {"b_max", verify_bmax},
                   {"max_support", verify_max_support},
                   {"max_block", verify_max_block},
                   {"horizon", horizon}}},
                 {"trials", verify_trials},
                 {"seed", verify_seed},
                 {"violations", violations},
                 {"max_ratio", num(max_ratio)}};
        write_output(out_path, out.dump(2) + "\n");
        if (violations > 0) throw invariant_violation("verify-bound: the certified bound failed on random input");
        return 0;
    }

    if (cmd_trace->parsed()) {
        const auto spec = trace_space.resolve(horizon);
        const SparseVec f = parse_sparse_vec(json::parse(trace_vec));
        const DisjointFamily fam = parse_family(json::parse(trace_family));
        int b = trace_b;
        TheoremWeight weight;
        if (b <= 0) {
            const TheoremBound bound = theorem_bound_constant(spec);
            weight = bound.weight;
            b = bound.b;
        } else {
            weight = resolve_theorem_weight(spec);
        }
        const ProofTrace trace = proof_trace(f, fam, weight, b);
        write_output(out_path, to_json(trace).dump(2) + "\n");
        return 0;
    }

    if (cmd_witness->parsed()) {
        const auto spec = witness_space.resolve(horizon);
        const SymmetricGauge gauge = spec.gauge();
        const auto [lo, hi] = parse_range(witness_range);
        std::ostringstream os;
        os << "m,ratio\n";
        for (const auto& [m, ratio] : unboundedness_table(gauge, lo, hi))
            os << m << "," << format_double(ratio) << "\n";
        write_output(out_path, os.str());
        return 0;
    }

    if (cmd_diag->parsed()) {
        const WeightSeq s = parse_weight(json::parse(diag_weight), horizon);
        json out{{"regularity", to_json(regularity_report(s, std::min(diag_bmax, s.horizon())))},
                 {"urp_equivalences", to_json(urp_equivalences_report(s, std::min(diag_bmax, s.horizon())))}};
        const auto upe = urp_power_exponent(s);
        out["urp_power_exponent"] = {{"alpha", num(upe.alpha)},
                                     {"doubling_constant", num(upe.doubling_constant)},
                                     {"rho4_of_power", num(upe.rho4_of_power)},
                                     {"urp_b4_at_horizon", upe.urp_b4_at_horizon}};
        write_output(out_path, out.dump(2) + "\n");
        return 0;
    }

    if (cmd_dkk->parsed()) {
        const DkkSpec spec = parse_dkk_spec(json::parse(dkk_spec_json), horizon);
        const SparseVec f = parse_sparse_vec(json::parse(dkk_vec));
        write_output(out_path, format_double(dkk_norm(f, spec)) + "\n");
        return 0;
    }

    if (cmd_cond->parsed()) {
        const auto base = parse_base_oracle(json::parse(cond_base), horizon);
        const auto [lo, hi] = parse_range(cond_range);
        std::ostringstream os;
        os << "# base=" << json::parse(cond_base).dump() << " dim=" << cond_dim
           << " budget=" << cond_budget << " seed=" << cond_seed << "\n";
        os << "m,witness_ratio,estimate\n";
        for (std::int64_t m = lo; m <= hi; ++m) {
            // witness pair evaluated in the requested oracle; equals m^{1/q}
            // for the difference basis
            const SparseVec f = SparseVec::indicator(1, 2 * m);
            std::vector<Index> odds;
            for (Index n = 1; n <= 2 * m; n += 2) odds.push_back(n);
            const double witness_ratio = coordinate_projection(f, odds, *base) / (*base)(f);
            const double est = cond_param_estimate(*base, {std::min(m, cond_dim), cond_dim, cond_budget, cond_seed});
            os << m << "," << format_double(witness_ratio) << "," << format_double(est) << "\n";
        }
        write_output(out_path, os.str());
        return 0;
    }

    if (cmd_repro->parsed()) {
        ReproduceOptions options;
        options.seed = repro_seed;
        options.threads = repro_threads;
        options.horizon = horizon;
        const SuiteReport rep = run_suite(repro_suite, options);
        write_output(out_path, rep.text);
        return rep.pass ? 0 : 1;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lorentz::invariant_violation& ex) {
        std::cerr << "invariant violation: " << ex.what() << "\n";
        return 3;
    } catch (const lorentz::validation_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
