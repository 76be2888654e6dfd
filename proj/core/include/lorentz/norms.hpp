#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/seq.hpp"
#include "lorentz/weights.hpp"

namespace lorentz {

inline constexpr double kInfQ = std::numeric_limits<double>::infinity();

struct OracleInfo {
    bool rearrangement_invariant = false;
    bool lattice_monotone = false;
    double q_exponent = 1.0; // claimed convexity exponent of the gauge
};

class NormOracle {
public:
    virtual ~NormOracle() = default;
    virtual double operator()(const SparseVec& f) const = 0;
    virtual OracleInfo info() const = 0;
    virtual std::string label() const = 0;
};

// One spread block of an averaged vector, index-free: |value| repeated over
// `count` slots. Rearrangement invariance makes this the whole story for the
// symmetric gauges, which is what the partition search optimizes over.
struct ProfileBlock {
    double value; // >= 0
    std::int64_t count;
};

// Rearrangement-invariant gauge (sum_n a_n^q omega_n)^{1/q} on a = D(|f|),
// with the sup modification sup_n sup_weights_n * a_n when q = infinity.
// Covers the weighted Lorentz quasi-norm, its p-variant, and the d(w,q)
// gauge; they differ only in the slot weights omega.
class SymmetricGauge final : public NormOracle {
public:
    SymmetricGauge(std::vector<double> slot_weights, double q, std::string label);

    double operator()(const SparseVec& f) const override;
    OracleInfo info() const override;
    std::string label() const override { return label_; }

    double q() const { return q_; }
    std::int64_t horizon() const { return static_cast<std::int64_t>(weights_.size()); }

    // a nonincreasing, nonnegative.
    double of_rearranged(const std::vector<double>& a) const;

    // Blocks in any order; zero values occupy no slots.
    double of_profile(std::vector<ProfileBlock> blocks) const;

    // ||.||^q of a profile already sorted by nonincreasing value (finite q).
    // This is the hot path of the partition search.
    double profile_power(const std::vector<ProfileBlock>& sorted) const;

    // Fundamental function: Gamma_m = ||chi_A|| for |A| = m (sign patterns
    // are gauge-irrelevant).
    double fundamental(std::int64_t m) const;

    // Prefix sums T_m of the slot weights, T_0 = 0 (finite q only).
    const std::vector<double>& prefix() const { return prefix_; }

private:
    std::vector<double> weights_; // omega_n (finite q) or s_n (q = inf)
    std::vector<double> prefix_;
    double q_;
    std::string label_;
};

// ||.||_{q,s}: omega_n = s_n^q (s_n - s_{n-1}) / s_n.
SymmetricGauge lorentz_gauge(const WeightSeq& s, double q);

// eq-variant with (s_n^p - s_{n-1}^p)/s_n^p in place of the p = 1 factor;
// equivalent to lorentz_gauge with constants independent of f.
SymmetricGauge lorentz_gauge_pvariant(const WeightSeq& s, double q, double p);

// ||.||_{(w,q)}: omega_n = w_n, w positive nonincreasing.
SymmetricGauge acl_gauge(std::vector<double> w, double q);

// l_{p,q} = d_q(pi_p).
SymmetricGauge lpq_gauge(double p, double q, int horizon = kDefaultHorizon);

double lorentz_norm(const SparseVec& f, const WeightSeq& s, double q);
double lorentz_norm_pvariant(const SparseVec& f, const WeightSeq& s, double q, double p);
double acl_norm(const SparseVec& f, const std::vector<double>& w, double q);
double lpq_norm(const SparseVec& f, double p, double q, int horizon = kDefaultHorizon);

// Space spec: primitive sequence + exponent, optionally remembering an
// explicit nonincreasing weight when the space was given as d(w,q).
struct LorentzSpaceSpec {
    WeightSeq s;
    double q;
    std::optional<std::vector<double>> explicit_w;
    std::string label;

    // The gauge the spec denotes: d(w,q) when explicit_w is set, the
    // ||.||_{q,s} quasi-norm otherwise.
    SymmetricGauge gauge() const;
};

LorentzSpaceSpec make_dq_space(WeightSeq s, double q);
LorentzSpaceSpec make_lpq_space(double p, double q, int horizon = kDefaultHorizon);
LorentzSpaceSpec make_dwq_space(std::vector<double> w, double q);

// Empirical embedding constant d_q(s) -> d_r(s), q < r: running sup of
// ||f||_{r,s} / ||f||_{q,s} over staircases, indicators and random vectors.
// A lower bound on the true constant; finite by the embedding.
struct EmbeddingEstimate {
    double sup_ratio = 0;
    std::string witness;
};
EmbeddingEstimate embedding_constant(const WeightSeq& s, double q, double r, int samples,
                                     std::uint64_t seed);

// Measured quasi-norm modulus: max ||f+g|| / (||f|| + ||g||) over random
// pairs. Reported, never asserted.
double measure_kappa(const NormOracle& oracle, int trials, std::uint64_t seed,
                     std::int64_t dim = 64);

// Measured two-sided constants of the p-variant gauge against the defining
// one, per (s, q, p): min and max of ||f||_{p-variant} / ||f||_{q,s} over a
// seeded sample. The equivalence holds with constants independent of f; no
// closed-form values exist to pin, so they are reported.
struct EquivalenceEstimate {
    double lower = 1;
    double upper = 1;
};
EquivalenceEstimate pvariant_equivalence(const WeightSeq& s, double q, double p, int samples,
                                         std::uint64_t seed);

} // namespace lorentz
