#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/norms.hpp"
#include "lorentz/seq.hpp"

namespace lorentz {

// Pairwise disjoint family of nonempty finite index sets; the partition
// parameter of the averaging projection V_A.
class DisjointFamily {
public:
    DisjointFamily() = default; // the empty family; V is the zero operator
    explicit DisjointFamily(std::vector<std::vector<Index>> blocks);

    static DisjointFamily singletons(const std::vector<Index>& indices);

    const std::vector<std::vector<Index>>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }

    // R(A) = union of the blocks, sorted.
    std::vector<Index> range() const;

private:
    std::vector<std::vector<Index>> blocks_; // each block sorted
};

// V_A(f): every coordinate inside a block is replaced by the block average;
// coordinates outside R(A) become zero.
SparseVec apply_averaging(const SparseVec& f, const DisjointFamily& A);

// ||V_A f|| / ||f||; f must be nonzero.
double projection_ratio(const SparseVec& f, const DisjointFamily& A, const NormOracle& norm);

// ---------------------------------------------------------------------------
// Worst-partition search (the attained-supremum lemma as an algorithm)
// ---------------------------------------------------------------------------

// Index-free answer of a search: source block j of the partition of supp(f)
// is averaged over target_sizes[j] >= |source_blocks[j]| slots.
struct SearchResult {
    DisjointFamily family; // materialized witness (source blocks + padding)
    double ratio;
    std::vector<std::vector<Index>> source_blocks;
    std::vector<std::int64_t> target_sizes;
    std::int64_t size_cap;
    std::int64_t partitions_scanned;
    bool exact_within_cap;
};

// Enumerates every set partition of supp(f) (restricted growth strings) and
// optimizes the spread size of each block over [|block|, size_cap] by
// coordinate ascent. Exact within the cap; |supp(f)| <= 9.
SearchResult worst_partition_exact(const SparseVec& f, const SymmetricGauge& norm,
                                   std::int64_t size_cap, int threads = 1);

// Seeded local search (merge / split / grow / shrink moves, multi-restart).
// The final ratio is recomputed with the same size optimizer the exact
// search uses, so heuristic <= exact holds structurally whenever both run.
SearchResult worst_partition_heuristic(const SparseVec& f, const SymmetricGauge& norm,
                                       std::int64_t size_cap, std::int64_t budget,
                                       std::uint64_t seed);

struct SamplerConfig {
    int trials = 256;
    int max_support = 24;
    std::int64_t size_cap = 1 << 10;
    std::int64_t heuristic_budget = 512;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct OperatorNormEstimate {
    double max_ratio = 0;
    std::string witness; // which f / which family achieved the max
    SparseVec witness_f;
    std::vector<std::vector<Index>> witness_blocks;
    std::vector<std::int64_t> witness_sizes;
};

// Empirical lower bound on ||V_.|| over a seeded family of inputs
// (decreasing staircases, indicators, geometric decay, random vectors), each
// paired with its heuristic worst partition.
OperatorNormEstimate operator_norm_lower_bound(const SymmetricGauge& norm,
                                               const SamplerConfig& config);

// ---------------------------------------------------------------------------
// The boundedness theorem: explicit constant, certificates, key lemma
// ---------------------------------------------------------------------------

enum class TheoremWeightOrigin { ExplicitW, PowerLaw, RunningMin };

// The d(w,q) machinery the theorem runs on: a nonincreasing weight w with
// partial sums t, plus how it was obtained from the space spec.
struct TheoremWeight {
    std::vector<double> w;
    std::vector<double> t; // t_m = w_1 + ... + w_m
    double q = 0;
    TheoremWeightOrigin origin = TheoremWeightOrigin::RunningMin;
    bool certified = false; // URP+LRP of s witnessed at horizon
    double equiv_lower = 1; // min_m t_m / s_m^q
    double equiv_upper = 1; // max_m t_m / s_m^q

    double rho(int b) const; // multiplicative ratio of t at horizon
};

TheoremWeight resolve_theorem_weight(const LorentzSpaceSpec& spec);

struct TheoremBound {
    int b = 0;
    double C = 0;
    double rho_b = 0;
    double threshold = 0; // 2^{-2-q} (1+b)^q
    TheoremWeight weight;
    int horizon = 0;
};

// Least integer b >= 2 with rho_t(b) <= 2^{-2-q}(1+b)^q, and the resulting
// bound C = 2^{1+1/q} b^{1/q} on every averaging projection of d(w,q).
// Throws validation_error when q >= 1 or no admissible b exists at horizon.
TheoremBound theorem_bound_constant(const LorentzSpaceSpec& spec, int b_max = kDefaultWitnessScan);

struct BoundCheck {
    double ratio = 0;
    double bound = 0;
    double margin = 0; // bound - ratio
    bool ok = false;
};

// Checks projection_ratio(f, A) <= C in the d(w,q) gauge the constant
// certifies. A failure signals an implementation bug, not an input problem.
BoundCheck verify_bound(const SparseVec& f, const DisjointFamily& A, const TheoremBound& bound);

// Certificate reproducing the block-splitting argument of the boundedness
// theorem on a concrete nonnegative input. Construction invariants
// (reconstruction of ||V_B f||^q, D_j != {}, D_j <= E_j <= B_j,
// x_j <= 2 y_j/(1+b), S <= b 2^q ||f||^q) are enforced; R <= S is guaranteed
// only at worst-case families and is reported, not enforced.
struct ProofTrace {
    std::vector<std::vector<Index>> blocks; // B_j, sorted by nonincreasing average
    std::vector<double> x;                  // block averages, nonincreasing
    std::vector<std::vector<Index>> D;      // {n in B_j : a_n >= x_j/2}
    std::vector<std::int64_t> m;            // m_0..m_k, partial block sizes
    std::vector<int> J;                     // dilute blocks: |D_j| < |B_j|/b
    std::vector<int> G;                     // the rest
    std::vector<std::vector<Index>> E;      // enlarged sets, parallel to J
    std::vector<double> y;                  // averages over E_j, parallel to J
    double R = 0;
    double S = 0;
    int b = 0;
    double C = 0;
    double norm_vb_pow_q = 0; // ||V_B |f|||^q_(w,q), computed independently
    double norm_f_pow_q = 0;  // ||f||^q_(w,q)
    bool rho_condition = false;
    bool r_le_s = false;
    bool s_bound_ok = false;
};

ProofTrace proof_trace(const SparseVec& f, const DisjointFamily& B, const TheoremWeight& weight,
                       int b);

// Hypotheses and data of the key rearrangement lemma. A_j and x_j are
// parallel to J (increasing j order).
struct KeyLemmaConfig {
    std::vector<double> w; // nonincreasing positive
    double q = 0.5;
    int b = 1;
    int d = 1;
    int k = 0;
    std::vector<std::int64_t> m;          // m_0..m_k, nondecreasing, m_0 = 0
    std::vector<int> J;                   // subset of [1,k]
    std::vector<std::vector<Index>> sets; // A_j
    std::vector<double> x;                // nonincreasing over J
    SparseVec f;                          // nonnegative
};

struct KeyLemmaResult {
    double lhs = 0;
    double rhs = 0;
    double rho_b = 0;
    bool holds = false;
};

// Validates every hypothesis (throws hypothesis_violation otherwise), then
// evaluates sum_{j in J} x_j^q (t_{m_j} - t_{m_{j-1}}) <= (d rho(b)/b) ||f||^q.
KeyLemmaResult key_lemma_check(const KeyLemmaConfig& config);

// Ratio of the single-block averaging on e_1: Gamma_m / (m Gamma_1). Grows
// without bound exactly when Gamma_m/m does.
double unboundedness_witness(const SymmetricGauge& norm, std::int64_t m);

std::vector<std::pair<std::int64_t, double>> unboundedness_table(const SymmetricGauge& norm,
                                                                 std::int64_t m_first,
                                                                 std::int64_t m_last);

} // namespace lorentz
