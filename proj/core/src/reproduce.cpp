#include "lorentz/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "lorentz/dkk.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/json_io.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/parallel.hpp"
#include "lorentz/projections.hpp"
#include "lorentz/rng.hpp"

namespace lorentz {

namespace {

struct Check {
    CriterionResult result;

    explicit Check(std::string name) { result.name = std::move(name); result.pass = true; }

    void line(bool ok, const std::string& text) {
        result.pass = result.pass && ok;
        result.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + text);
    }

    void info(const std::string& text) { result.lines.push_back("     " + text); }
};

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// --------------------------------------------------------------------------
// regularity suite: norm engine + weight diagnostics
// --------------------------------------------------------------------------

CriterionResult criterion_norm_engine(const ReproduceOptions& opt) {
    Check c("norm-engine");

    // oracle: the two-term defining sum for chi_{1,2} in l_{2,1/2}
    const double s1 = 1.0, s2 = std::sqrt(2.0);
    const double oracle = std::pow(std::pow(s1, 0.5) * (s1 - 0.0) / s1 +
                                       std::pow(s2, 0.5) * (s2 - s1) / s2,
                                   2.0);
    const double got = lpq_norm(SparseVec::indicator(1, 2), 2.0, 0.5, opt.horizon);
    c.line(close_rel(got, oracle, 1e-12), "chi_{1,2} in l_{2,1/2}: " + format_double(got) +
                                              " matches the two-term oracle " + format_double(oracle));
    c.line(std::fabs(got - 1.817942) <= 1e-6, "value within 1e-6 of 1.817942");

    auto results = parallel_map<bool>(1000, opt.threads, [&](std::size_t i) {
        auto g = rng_for(opt.seed, 0x0100 + i);
        const int len = static_cast<int>(uniform_int(g, 1, 200));
        std::vector<double> w(static_cast<std::size_t>(len));
        w[0] = uniform(g, 0.5, 2.0);
        for (int n = 1; n < len; ++n)
            w[static_cast<std::size_t>(n)] = w[static_cast<std::size_t>(n - 1)] * uniform(g, 0.6, 1.0);
        const double q = uniform(g, 0.25, 2.0);
        const int m = static_cast<int>(uniform_int(g, 1, len));
        const WeightSeq s = primitive_from_increments(w, q);
        const double lhs = acl_norm(SparseVec::indicator(1, m), w, q);
        return close_rel(lhs, s.at(m), 1e-12);
    });
    const auto bad = std::count(results.begin(), results.end(), false);
    c.line(bad == 0, "acl(chi_{1..m}, w, q) = s_m for 1000 random (w,q,m); failures: " + std::to_string(bad));
    return c.result;
}

CriterionResult criterion_regularity(const ReproduceOptions& opt) {
    Check c("regularity");
    const WeightSeq pi2 = WeightSeq::power(2.0, opt.horizon);
    const WeightSeq pi1 = WeightSeq::power(1.0, opt.horizon);
    const WeightSeq pi_half = WeightSeq::power(0.5, opt.horizon);

    const auto urp2 = check_urp(pi2, 1 << 12);
    const auto lrp2 = check_lrp(pi2, 1 << 12);
    c.line(urp2 && *urp2 == 4, "pi_2 URP witness = " + (urp2 ? std::to_string(*urp2) : "none") + " (want 4)");
    c.line(lrp2 && *lrp2 == 4, "pi_2 LRP witness = " + (lrp2 ? std::to_string(*lrp2) : "none") + " (want 4)");

    const auto urp1 = check_urp(pi1, 1 << 12);
    c.line(!urp1.has_value(), "pi_1 has no URP witness for b <= 4096");

    const double rho2 = multiplicative_ratio(pi_half, 2);
    c.line(close_rel(rho2, 4.0, 1e-12), "pi_{0.5}: rho(2) = " + format_double(rho2) + " (want 4)");

    bool power_law_ok = true;
    double worst = 0.0;
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
        const WeightSeq s = WeightSeq::power(p, opt.horizon);
        for (int d = 1; d <= 64; ++d) {
            const double want = std::pow(static_cast<double>(d), 1.0 / p);
            const double got = multiplicative_ratio(s, d);
            const double err = std::fabs(got - want) / want;
            worst = std::max(worst, err);
            power_law_ok = power_law_ok && err <= 1e-12;
        }
    }
    c.line(power_law_ok, "rho(d) = d^{1/p} for p in {0.5,1,2,4}, d <= 64; worst rel err " + format_double(worst));
    return c.result;
}

// --------------------------------------------------------------------------
// bound suite: theorem constant, random verification, proof traces, key lemma
// --------------------------------------------------------------------------

SparseVec random_vec(std::mt19937_64& g, int max_support, Index index_range, bool nonneg) {
    const auto size = uniform_int(g, 1, max_support);
    std::set<Index> idx;
    while (static_cast<std::int64_t>(idx.size()) < size) idx.insert(uniform_int(g, 1, index_range));
    std::vector<SparseVec::Entry> e;
    for (Index n : idx) {
        double v = nonneg ? uniform(g, 0.0, 2.0) : uniform(g, -2.0, 2.0);
        if (v == 0.0) v = 1.0;
        e.push_back({n, v});
    }
    return SparseVec(std::move(e));
}

// Disjoint blocks laid out left to right with random gaps; sizes <= max_block.
DisjointFamily random_family(std::mt19937_64& g, int max_blocks, int max_block, Index start_lo) {
    const auto nb = uniform_int(g, 1, max_blocks);
    std::vector<std::vector<Index>> blocks;
    Index pos = start_lo + uniform_int(g, 0, 50);
    for (std::int64_t j = 0; j < nb; ++j) {
        const auto len = uniform_int(g, 1, max_block);
        std::vector<Index> blk;
        for (Index n = pos; n < pos + len; ++n) blk.push_back(n);
        blocks.push_back(std::move(blk));
        pos += len + uniform_int(g, 1, 100);
    }
    return DisjointFamily(std::move(blocks));
}

CriterionResult criterion_bound_constant(const ReproduceOptions& opt, TheoremBound& bound_out) {
    Check c("bound-constant");
    const auto spec = make_lpq_space(2.0, 0.5, opt.horizon); // exact t_m = m^{1/4}
    const TheoremBound bound = theorem_bound_constant(spec, 2048);
    bound_out = bound;

    // integer oracle: b^{1/4} <= 2^{-2.5}(1+b)^{1/2}  <=>  b^2 - 1022 b + 1 >= 0
    int oracle_b = 0;
    for (std::int64_t b = 2; b <= 2048; ++b) {
        if (b * b - 1022 * b + 1 >= 0) {
            oracle_b = static_cast<int>(b);
            break;
        }
    }
    c.line(bound.b == oracle_b && bound.b == 1022,
           "least admissible b = " + std::to_string(bound.b) + " (integer-scan oracle " + std::to_string(oracle_b) + ")");
    c.line(close_rel(bound.C, 8355872.0, 1e-9), "C = " + format_double(bound.C) + " (want 8355872)");
    c.info("rho(b) = " + format_double(bound.rho_b) + " <= threshold " + format_double(bound.threshold));

    const int trials = 10000;
    auto ratios = parallel_map<double>(trials, opt.threads, [&](std::size_t i) {
        auto g = rng_for(opt.seed, 0x0300 + i);
        const SparseVec f = random_vec(g, 200, 6000, false);
        const DisjointFamily A = random_family(g, 8, 500, 1);
        return verify_bound(f, A, bound).ratio;
    });
    double max_ratio = 0.0;
    int violations = 0;
    for (double r : ratios) {
        max_ratio = std::max(max_ratio, r);
        if (!(r <= bound.C)) ++violations;
    }
    c.line(violations == 0, std::to_string(trials) + " random (f, A): ratio <= C; violations: " + std::to_string(violations));
    c.line(max_ratio < 10.0, "observed max ratio " + format_double(max_ratio) + " < 10");
    return c.result;
}

CriterionResult criterion_proof_trace(const ReproduceOptions& opt, const TheoremBound& bound) {
    Check c("proof-trace");
    const int trials = 1000;
    struct Outcome {
        bool ok = false;
        std::string what;
    };
    auto outcomes = parallel_map<Outcome>(trials, opt.threads, [&](std::size_t i) -> Outcome {
        auto g = rng_for(opt.seed, 0x0400 + i);
        const SparseVec f = random_vec(g, 100, 4000, true);
        // random cover of supp(f): consecutive support runs, padded with
        // fresh indices to at most 500 slots per block
        const auto supp = f.support();
        std::vector<std::vector<Index>> blocks;
        Index fresh = 6001; // supp lives in [1, 4000]
        std::size_t at = 0;
        while (at < supp.size()) {
            const auto take = static_cast<std::size_t>(uniform_int(g, 1, 20));
            std::vector<Index> blk;
            for (std::size_t t = 0; t < take && at < supp.size(); ++t) blk.push_back(supp[at++]);
            const auto pad = uniform_int(g, 0, 300);
            for (std::int64_t t = 0; t < pad; ++t) blk.push_back(fresh++);
            blocks.push_back(std::move(blk));
        }
        try {
            const ProofTrace tr = proof_trace(f, DisjointFamily(std::move(blocks)), bound.weight, bound.b);
            if (!tr.r_le_s) return {false, "R > S at trial " + std::to_string(i)};
            if (!tr.rho_condition) return {false, "rho condition lost at trial " + std::to_string(i)};
            return {true, ""};
        } catch (const std::exception& ex) {
            return {false, std::string(ex.what()) + " at trial " + std::to_string(i)};
        }
    });
    int bad = 0;
    std::string first;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++bad;
            if (first.empty()) first = o.what;
        }
    }
    c.line(bad == 0, std::to_string(trials) +
                         " random covers: R+S reconstruction, D/E/x-y invariants and R <= S; failures: " +
                         std::to_string(bad) + (first.empty() ? "" : " (" + first + ")"));
    return c.result;
}

KeyLemmaConfig random_key_lemma_config(std::mt19937_64& g) {
    KeyLemmaConfig cfg;
    const int L = 1024;
    cfg.w.resize(L);
    cfg.w[0] = uniform(g, 0.5, 2.0);
    for (int n = 1; n < L; ++n) cfg.w[static_cast<std::size_t>(n)] = cfg.w[static_cast<std::size_t>(n - 1)] * uniform(g, 0.8, 1.0);
    cfg.q = uniform(g, 0.2, 1.5);
    cfg.b = static_cast<int>(uniform_int(g, 1, 4));
    cfg.d = cfg.b + static_cast<int>(uniform_int(g, 0, 5));
    cfg.k = static_cast<int>(uniform_int(g, 1, 10));
    for (int j = 1; j <= cfg.k; ++j)
        if (uniform01(g) < 0.6) cfg.J.push_back(j);

    std::vector<std::int64_t> block_size(cfg.J.size());
    for (std::size_t i = 0; i < cfg.J.size(); ++i) block_size[i] = uniform_int(g, 1, 6);

    cfg.m.assign(static_cast<std::size_t>(cfg.k) + 1, 0);
    std::size_t ji = 0;
    for (int j = 1; j <= cfg.k; ++j) {
        std::int64_t gap;
        if (ji < cfg.J.size() && cfg.J[ji] == j) {
            gap = uniform_int(g, cfg.b * block_size[ji], cfg.d * block_size[ji]);
            ++ji;
        } else {
            gap = uniform_int(g, 0, 8);
        }
        cfg.m[static_cast<std::size_t>(j)] = cfg.m[static_cast<std::size_t>(j - 1)] + gap;
    }

    // disjoint A_j with values above the (nonincreasing) floor x_j
    std::vector<SparseVec::Entry> entries;
    Index pos = 1;
    double floor_prev = uniform(g, 1.0, 4.0);
    for (std::size_t i = 0; i < cfg.J.size(); ++i) {
        const double base = uniform(g, 0.1, floor_prev);
        cfg.x.push_back(base);
        floor_prev = base;
        std::vector<Index> Aj;
        for (std::int64_t t = 0; t < block_size[i]; ++t) {
            Aj.push_back(pos);
            entries.push_back({pos, base * uniform(g, 1.0, 2.0)});
            pos += uniform_int(g, 1, 3);
        }
        cfg.sets.push_back(std::move(Aj));
    }
    const auto extras = uniform_int(g, 0, 12);
    for (std::int64_t t = 0; t < extras; ++t) {
        entries.push_back({pos, uniform(g, 0.0, 3.0) + 0.01});
        pos += uniform_int(g, 1, 4);
    }
    cfg.f = SparseVec(std::move(entries));
    return cfg;
}

CriterionResult criterion_key_lemma(const ReproduceOptions& opt) {
    Check c("key-lemma");
    const int trials = 10000;
    auto results = parallel_map<int>(trials, opt.threads, [&](std::size_t i) {
        auto g = rng_for(opt.seed, 0x0500 + i);
        const KeyLemmaConfig cfg = random_key_lemma_config(g);
        try {
            return key_lemma_check(cfg).holds ? 0 : 1;
        } catch (const hypothesis_violation&) {
            return 2; // generator bug, counted separately
        }
    });
    const auto fails = std::count(results.begin(), results.end(), 1);
    const auto rejects = std::count(results.begin(), results.end(), 2);
    c.line(fails == 0 && rejects == 0,
           std::to_string(trials) + " randomized configurations: inequality failures " + std::to_string(fails) +
               ", hypothesis rejects " + std::to_string(rejects));
    return c.result;
}

// --------------------------------------------------------------------------
// unbounded suite: attained-supremum search + divergence witness
// --------------------------------------------------------------------------

CriterionResult criterion_search(const ReproduceOptions& opt) {
    Check c("search");
    const SymmetricGauge gauge = lpq_gauge(2.0, 0.5, opt.horizon);

    // every f with supp in [1,5] and entries from {1, 1/2, 1/4}
    std::vector<SparseVec> inputs;
    const double levels[3] = {1.0, 0.5, 0.25};
    for (int code = 1; code < 1024; ++code) {
        int x = code;
        std::vector<SparseVec::Entry> e;
        for (Index n = 1; n <= 5; ++n, x /= 4) {
            const int digit = x % 4;
            if (digit > 0) e.push_back({n, levels[digit - 1]});
        }
        if (!e.empty()) inputs.push_back(SparseVec(std::move(e)));
    }

    struct Row {
        double exact64, heur64, exact128;
        bool same_partition;
    };
    auto rows = parallel_map<Row>(inputs.size(), opt.threads, [&](std::size_t i) {
        const auto& f = inputs[i];
        const auto e64 = worst_partition_exact(f, gauge, 64);
        const auto h64 = worst_partition_heuristic(f, gauge, 64, 256, splitmix64(opt.seed ^ (0x0600 + i)));
        const auto e128 = worst_partition_exact(f, gauge, 128);
        return Row{e64.ratio, h64.ratio, e128.ratio, e64.source_blocks == e128.source_blocks};
    });
    int heur_above = 0, cap_unstable = 0, part_unstable = 0;
    double worst_gap = 0.0;
    for (const auto& r : rows) {
        if (r.heur64 > r.exact64 + 1e-12) ++heur_above;
        const double gap = std::fabs(r.exact64 - r.exact128) / std::max(1.0, r.exact64);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-9) ++cap_unstable;
        if (!r.same_partition) ++part_unstable;
    }
    c.line(heur_above == 0, std::to_string(rows.size()) + " inputs: heuristic <= exact everywhere; violations " +
                                std::to_string(heur_above));
    // Known red: the worst family in these gauges is a cascade of widening
    // blocks, so the cap-64 optimum is cap-limited on many inputs (widening a
    // small block behind a large one increases the gauge; e.g. averaging the
    // 1/4 of f=(1,1/4) over two slots already gives ratio 1.0594 > 1).
    c.line(cap_unstable == 0, "exact ratio cap-stable between 64 and 128 to 1e-9; unstable " +
                                  std::to_string(cap_unstable) + ", worst rel gap " + format_double(worst_gap));
    c.info("argmax set partition identical across caps on " + std::to_string(rows.size() - part_unstable) +
           "/" + std::to_string(rows.size()) + " inputs");
    return c.result;
}

CriterionResult criterion_witness(const ReproduceOptions& opt) {
    Check c("witness");
    const SymmetricGauge half = lpq_gauge(0.5, 0.5, opt.horizon);
    const SymmetricGauge l212 = lpq_gauge(2.0, 0.5, opt.horizon);

    bool closed_form_ok = true;
    double worst = 0.0;
    double harmonic = 0.0;
    double at5 = 0.0, at64 = 0.0;
    for (std::int64_t m = 1; m <= 1024; ++m) {
        harmonic += 1.0 / static_cast<double>(m);
        const double oracle = std::pow(2.0 * static_cast<double>(m) - harmonic, 2.0) / static_cast<double>(m);
        const double got = unboundedness_witness(half, m);
        const double err = std::fabs(got - oracle) / oracle;
        worst = std::max(worst, err);
        closed_form_ok = closed_form_ok && err <= 1e-9;
        if (m == 5) at5 = got;
        if (m == 64) at64 = got;
    }
    c.line(closed_form_ok, "l_{1/2} witness matches (2m - H_m)^2/m for m <= 1024; worst rel err " + format_double(worst));
    c.line(at5 > 10.0, "witness(5) = " + format_double(at5) + " > 10");
    c.line(at64 > 100.0, "witness(64) = " + format_double(at64) + " > 100");

    bool bounded = true, monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t m = 1; m <= 1024; ++m) {
        const double got = unboundedness_witness(l212, m);
        bounded = bounded && got <= 1.0 + 1e-12;
        monotone = monotone && got <= prev * (1.0 + 1e-12);
        prev = got;
    }
    c.line(bounded, "l_{2,1/2} witness <= 1 for m <= 1024");
    c.line(monotone, "l_{2,1/2} witness nonincreasing for m <= 1024");
    return c.result;
}

// --------------------------------------------------------------------------
// dkk suite
// --------------------------------------------------------------------------

CriterionResult criterion_dkk(const ReproduceOptions& opt) {
    Check c("dkk");

    bool witness_ok = true;
    double worst = 0.0;
    for (double q : {0.25, 0.5, 0.75}) {
        for (std::int64_t m = 1; m <= 1024; ++m) {
            const double want = std::pow(static_cast<double>(m), 1.0 / q);
            const double got = cond_param_witness(m, q).ratio;
            const double err = std::fabs(got - want) / want;
            worst = std::max(worst, err);
            witness_ok = witness_ok && err <= 1e-12;
        }
    }
    c.line(witness_ok, "difference-basis witness ratio = m^{1/q} for q in {0.25,0.5,0.75}, m <= 1024; worst rel err " +
                           format_double(worst));

    const auto sym = std::make_shared<SymmetricGauge>(lpq_gauge(2.0, 0.5, opt.horizon));
    const DkkSpec spec{
        std::make_shared<DirectSumOracle>(unit_lq_oracle(0.5, opt.horizon),
                                          std::make_shared<DiffBasisOracle>(0.5), 0.5),
        sym, IntervalPartition::dyadic(10)};

    bool zero_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        auto g = rng_for(opt.seed, 0x0800 + static_cast<std::uint64_t>(trial));
        std::vector<SparseVec::Entry> e;
        for (int k = 1; k < spec.partition.count(); ++k) { // block 0 has size 1, cannot cancel
            if (uniform01(g) < 0.5) continue;
            const auto [first, last] = spec.partition.interval(k);
            const Index n1 = uniform_int(g, first, last);
            Index n2 = uniform_int(g, first, last - 1);
            if (n2 >= n1) ++n2;
            const double v = uniform(g, 0.1, 3.0);
            e.push_back({n1, v});
            e.push_back({n2, -v});
        }
        if (e.empty()) continue;
        const SparseVec f(std::move(e));
        zero_ok = zero_ok && close_rel(dkk_norm(f, spec), (*sym)(f), 1e-12);
    }
    c.line(zero_ok, "dkk norm equals the symmetric norm on block-sum-zero vectors (200 trials)");

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Index n = 1; n <= spec.partition.range_end(); ++n) {
        const double v = dkk_norm(SparseVec::unit(n), spec);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    c.line(hi <= 20.0 * lo, "unit-vector dkk norms over dyadic(10) within a factor 20: [" + format_double(lo) +
                                ", " + format_double(hi) + "]");
    return c.result;
}

// --------------------------------------------------------------------------

std::string render(const SuiteReport& rep, const ReproduceOptions& opt) {
    std::ostringstream os;
    os << "# reproduce " << rep.suite << "\n";
    os << "seed=" << opt.seed << " horizon=" << opt.horizon << "\n";
    for (const auto& cr : rep.criteria) {
        for (const auto& ln : cr.lines) os << "[" << cr.name << "] " << ln << "\n";
        os << "[" << cr.name << "] " << (cr.pass ? "PASS" : "FAIL") << "\n";
    }
    os << "suite " << rep.suite << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"regularity", "bound", "unbounded", "dkk", "all"};
    return names;
}

SuiteReport run_suite(const std::string& suite, const ReproduceOptions& options) {
    SuiteReport rep;
    rep.suite = suite;
    if (suite == "regularity") {
        rep.criteria.push_back(criterion_norm_engine(options));
        rep.criteria.push_back(criterion_regularity(options));
    } else if (suite == "bound") {
        TheoremBound bound;
        rep.criteria.push_back(criterion_bound_constant(options, bound));
        rep.criteria.push_back(criterion_proof_trace(options, bound));
        rep.criteria.push_back(criterion_key_lemma(options));
    } else if (suite == "unbounded") {
        rep.criteria.push_back(criterion_search(options));
        rep.criteria.push_back(criterion_witness(options));
    } else if (suite == "dkk") {
        rep.criteria.push_back(criterion_dkk(options));
    } else if (suite == "all") {
        for (const auto& name : {"regularity", "bound", "unbounded", "dkk"}) {
            const SuiteReport sub = run_suite(name, options);
            rep.criteria.insert(rep.criteria.end(), sub.criteria.begin(), sub.criteria.end());
        }
    } else {
        throw validation_error("unknown suite \"" + suite + "\"; valid: regularity, bound, unbounded, dkk, all");
    }
    rep.pass = true;
    for (const auto& cr : rep.criteria) rep.pass = rep.pass && cr.pass;
    rep.text = render(rep, options);
    return rep;
}

} // namespace lorentz
