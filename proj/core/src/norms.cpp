#include "lorentz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorentz/errors.hpp"
#include "lorentz/rng.hpp"

namespace lorentz {

namespace {

// Slot weights s_n^q (s_n^p - s_{n-1}^p) / s_n^p with s_0 = 0. The ratio
// factor is 1 - (s_{n-1}/s_n)^p, evaluated through expm1 so nearly flat
// primitives do not lose the increment to cancellation.
std::vector<double> variant_slot_weights(const WeightSeq& s, double q, double p) {
    const int N = s.horizon();
    std::vector<double> omega(static_cast<std::size_t>(N));
    omega[0] = std::pow(s.at(1), q);
    const std::optional<double> pe = s.power_exponent();
    for (int n = 2; n <= N; ++n) {
        double factor;
        if (pe) {
            factor = -std::expm1((p / *pe) * std::log1p(-1.0 / static_cast<double>(n)));
        } else {
            factor = -std::expm1(p * std::log(s.at(n - 1) / s.at(n)));
        }
        omega[static_cast<std::size_t>(n - 1)] = std::pow(s.at(n), q) * factor;
    }
    return omega;
}

} // namespace

SymmetricGauge::SymmetricGauge(std::vector<double> slot_weights, double q, std::string label)
    : weights_(std::move(slot_weights)), q_(q), label_(std::move(label)) {
    if (weights_.empty()) throw validation_error("SymmetricGauge: empty slot weights");
    if (!(q_ > 0.0)) throw validation_error("SymmetricGauge: q must be positive");
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw validation_error("SymmetricGauge: slot weights must be nonnegative");
    }
    if (!(weights_[0] > 0.0)) throw validation_error("SymmetricGauge: first slot weight must be positive");
    if (q_ != kInfQ) {
        prefix_.resize(weights_.size() + 1);
        prefix_[0] = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) prefix_[i + 1] = prefix_[i] + weights_[i];
    }
}

double SymmetricGauge::of_rearranged(const std::vector<double>& a) const {
    if (static_cast<std::int64_t>(a.size()) > horizon())
        throw validation_error("SymmetricGauge: support exceeds horizon " + std::to_string(horizon()));
    if (a.empty()) return 0.0;
    if (q_ == kInfQ) {
        double best = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, weights_[i] * a[i]);
        return best;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(a[i], q_) * weights_[i];
    return std::pow(acc, 1.0 / q_);
}

double SymmetricGauge::operator()(const SparseVec& f) const {
    return of_rearranged(decreasing_rearrangement(f));
}

double SymmetricGauge::profile_power(const std::vector<ProfileBlock>& sorted) const {
    std::int64_t pos = 0;
    double acc = 0.0;
    for (const auto& blk : sorted) {
        if (blk.value <= 0.0) continue; // zero coordinates occupy no slots
        const std::int64_t end = pos + blk.count;
        if (end > horizon()) throw validation_error("SymmetricGauge: profile exceeds horizon");
        acc += std::pow(blk.value, q_) * (prefix_[static_cast<std::size_t>(end)] - prefix_[static_cast<std::size_t>(pos)]);
        pos = end;
    }
    return acc;
}

double SymmetricGauge::of_profile(std::vector<ProfileBlock> blocks) const {
    std::sort(blocks.begin(), blocks.end(),
              [](const ProfileBlock& l, const ProfileBlock& r) { return l.value > r.value; });
    if (q_ == kInfQ) {
        std::int64_t pos = 0;
        double best = 0.0;
        for (const auto& blk : blocks) {
            if (blk.value <= 0.0) continue;
            const std::int64_t end = pos + blk.count;
            if (end > horizon()) throw validation_error("SymmetricGauge: profile exceeds horizon");
            // sup weights are nondecreasing in canonical specs, but scan the
            // whole span to stay correct for arbitrary ones
            for (std::int64_t i = pos; i < end; ++i)
                best = std::max(best, blk.value * weights_[static_cast<std::size_t>(i)]);
            pos = end;
        }
        return best;
    }
    return std::pow(profile_power(blocks), 1.0 / q_);
}

double SymmetricGauge::fundamental(std::int64_t m) const {
    if (m < 1 || m > horizon()) throw validation_error("fundamental: m outside [1, horizon]");
    if (q_ == kInfQ) {
        double best = 0.0;
        for (std::int64_t i = 0; i < m; ++i) best = std::max(best, weights_[static_cast<std::size_t>(i)]);
        return best;
    }
    return std::pow(prefix_[static_cast<std::size_t>(m)], 1.0 / q_);
}

OracleInfo SymmetricGauge::info() const {
    return {true, true, std::min(1.0, q_ == kInfQ ? 1.0 : q_)};
}

SymmetricGauge lorentz_gauge(const WeightSeq& s, double q) {
    if (q == kInfQ) {
        return SymmetricGauge(s.values(), q, "d_inf(s)");
    }
    if (!(q > 0.0)) throw validation_error("lorentz_gauge: q must be positive");
    return SymmetricGauge(variant_slot_weights(s, q, 1.0), q, "d_q(s)");
}

SymmetricGauge lorentz_gauge_pvariant(const WeightSeq& s, double q, double p) {
    if (!(q > 0.0) || q == kInfQ) throw validation_error("lorentz_gauge_pvariant: q must be finite positive");
    if (!(p > 0.0) || !std::isfinite(p)) throw validation_error("lorentz_gauge_pvariant: p must be finite positive");
    return SymmetricGauge(variant_slot_weights(s, q, p), q, "d_q(s;p-variant)");
}

SymmetricGauge acl_gauge(std::vector<double> w, double q) {
    if (!(q > 0.0) || q == kInfQ) throw validation_error("acl_gauge: q must be finite positive");
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] > w[i - 1] * (1.0 + 1e-12)) throw validation_error("acl_gauge: weight must be nonincreasing");
    }
    if (w.empty() || !(w[0] > 0.0)) throw validation_error("acl_gauge: weight must start positive");
    return SymmetricGauge(std::move(w), q, "d(w,q)");
}

SymmetricGauge lpq_gauge(double p, double q, int horizon) {
    return lorentz_gauge(WeightSeq::power(p, horizon), q);
}

double lorentz_norm(const SparseVec& f, const WeightSeq& s, double q) {
    return lorentz_gauge(s, q)(f);
}

double lorentz_norm_pvariant(const SparseVec& f, const WeightSeq& s, double q, double p) {
    return lorentz_gauge_pvariant(s, q, p)(f);
}

double acl_norm(const SparseVec& f, const std::vector<double>& w, double q) {
    return acl_gauge(w, q)(f);
}

double lpq_norm(const SparseVec& f, double p, double q, int horizon) {
    return lpq_gauge(p, q, horizon)(f);
}

SymmetricGauge LorentzSpaceSpec::gauge() const {
    if (explicit_w) return acl_gauge(*explicit_w, q);
    return lorentz_gauge(s, q);
}

LorentzSpaceSpec make_dq_space(WeightSeq s, double q) {
    if (!s.nondecreasing())
        throw validation_error("make_dq_space: the primitive sequence must be nondecreasing");
    LorentzSpaceSpec spec{std::move(s), q, std::nullopt, ""};
    spec.label = "d_q(s)[q=" + std::to_string(q) + ",N=" + std::to_string(spec.s.horizon()) + "]";
    return spec;
}

LorentzSpaceSpec make_lpq_space(double p, double q, int horizon) {
    LorentzSpaceSpec spec{WeightSeq::power(p, horizon), q, std::nullopt, ""};
    spec.label = "lpq[p=" + std::to_string(p) + ",q=" + std::to_string(q) + ",N=" + std::to_string(horizon) + "]";
    return spec;
}

LorentzSpaceSpec make_dwq_space(std::vector<double> w, double q) {
    LorentzSpaceSpec spec{primitive_from_increments(w, q), q, std::move(w), ""};
    spec.label = "d(w,q)[q=" + std::to_string(q) + ",N=" + std::to_string(spec.s.horizon()) + "]";
    return spec;
}

EmbeddingEstimate embedding_constant(const WeightSeq& s, double q, double r, int samples,
                                     std::uint64_t seed) {
    if (!(q < r)) throw validation_error("embedding_constant: requires q < r");
    const SymmetricGauge gq = lorentz_gauge(s, q);
    const SymmetricGauge gr = lorentz_gauge(s, r);
    EmbeddingEstimate out;
    auto consider = [&](const SparseVec& f, const std::string& name) {
        if (f.empty()) return;
        const double ratio = gr(f) / gq(f);
        if (ratio > out.sup_ratio) {
            out.sup_ratio = ratio;
            out.witness = name;
        }
    };
    const int N = s.horizon();
    for (int m = 1; m <= std::min(N, 1 << 10); m *= 2)
        consider(SparseVec::indicator(1, m), "indicator m=" + std::to_string(m));
    for (double beta : {0.25, 0.5, 1.0, 2.0}) {
        std::vector<SparseVec::Entry> e;
        const int len = std::min(N, 256);
        for (int n = 1; n <= len; ++n) e.push_back({n, std::pow(static_cast<double>(n), -beta)});
        consider(SparseVec(std::move(e)), "staircase beta=" + std::to_string(beta));
    }
    for (int i = 0; i < samples; ++i) {
        auto g = rng_for(seed, static_cast<std::uint64_t>(i));
        const int len = static_cast<int>(uniform_int(g, 1, std::min<std::int64_t>(64, N)));
        std::vector<SparseVec::Entry> e;
        for (int n = 1; n <= len; ++n) {
            const double v = uniform(g, -2.0, 2.0);
            if (v != 0.0) e.push_back({n, v});
        }
        if (e.empty()) continue;
        consider(SparseVec(std::move(e)), "random i=" + std::to_string(i));
    }
    return out;
}

EquivalenceEstimate pvariant_equivalence(const WeightSeq& s, double q, double p, int samples,
                                         std::uint64_t seed) {
    const SymmetricGauge base = lorentz_gauge(s, q);
    const SymmetricGauge variant = lorentz_gauge_pvariant(s, q, p);
    EquivalenceEstimate est{std::numeric_limits<double>::infinity(), 0.0};
    auto consider = [&](const SparseVec& f) {
        const double r = variant(f) / base(f);
        est.lower = std::min(est.lower, r);
        est.upper = std::max(est.upper, r);
    };
    for (int m = 1; m <= std::min(s.horizon(), 1 << 10); m *= 2) consider(SparseVec::indicator(1, m));
    for (int i = 0; i < samples; ++i) {
        auto g = rng_for(seed, static_cast<std::uint64_t>(i));
        const auto len = uniform_int(g, 1, std::min<std::int64_t>(64, s.horizon()));
        std::vector<SparseVec::Entry> e;
        for (Index n = 1; n <= len; ++n) {
            double v = uniform(g, -2.0, 2.0);
            if (v == 0.0) continue;
            e.push_back({n, v});
        }
        if (!e.empty()) consider(SparseVec(std::move(e)));
    }
    return est;
}

double measure_kappa(const NormOracle& oracle, int trials, std::uint64_t seed, std::int64_t dim) {
    double kappa = 0.0;
    for (int i = 0; i < trials; ++i) {
        auto g = rng_for(seed, static_cast<std::uint64_t>(i));
        auto draw = [&]() {
            std::vector<SparseVec::Entry> e;
            const std::int64_t len = uniform_int(g, 1, dim);
            for (Index n = 1; n <= len; ++n) {
                if (uniform01(g) < 0.5) continue;
                e.push_back({n, uniform(g, -1.0, 1.0)});
            }
            if (e.empty()) e.push_back({1, 1.0});
            for (auto& x : e)
                if (x.a == 0.0) x.a = 0.5;
            return SparseVec(std::move(e));
        };
        const SparseVec f = draw();
        const SparseVec h = draw();
        const double denom = oracle(f) + oracle(h);
        if (denom == 0.0) continue;
        const SparseVec sum = f.minus(h.scaled(-1.0));
        kappa = std::max(kappa, oracle(sum) / denom);
    }
    return kappa;
}

} // namespace lorentz
