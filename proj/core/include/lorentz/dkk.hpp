#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lorentz/norms.hpp"
#include "lorentz/projections.hpp"
#include "lorentz/seq.hpp"

namespace lorentz {

// Consecutive intervals J_1, J_2, ... of the positive integers, given by
// their sizes; max(J_k) < min(J_{k+1}) by construction.
class IntervalPartition {
public:
    explicit IntervalPartition(std::vector<std::int64_t> sizes);

    static IntervalPartition constant(std::int64_t size, int count);
    static IntervalPartition dyadic(int k); // sizes 1, 2, 4, ..., 2^{k-1}

    int count() const { return static_cast<int>(sizes_.size()); }
    std::int64_t size(int k) const { return sizes_.at(static_cast<std::size_t>(k)); }
    // [first, last] of the 0-based k-th interval.
    std::pair<Index, Index> interval(int k) const;
    Index range_end() const { return offsets_.back(); }
    // 0-based interval containing n, or -1 past the range.
    int block_of(Index n) const;

    DisjointFamily as_family() const;

private:
    std::vector<std::int64_t> sizes_;
    std::vector<Index> offsets_; // offsets_[k] = last index of J_k, offsets_[0..]
};

struct DkkSpec {
    std::shared_ptr<const NormOracle> base;    // X with basis (x_k)
    std::shared_ptr<const SymmetricGauge> sym; // S with its symmetric basis
    IntervalPartition partition;
};

// Two-term construction norm: base norm of the block-average coefficients
// scaled by Gamma_{|J_k|}[S], plus the S-norm of the averaging remainder
// f - V_J(f).
double dkk_norm(const SparseVec& f, const DkkSpec& spec);

// l_q gauge of the first differences b_n = a_n - a_{n-1} (a_0 = 0), taken
// over supp(a) extended by one. The coefficient gauge of the difference
// basis of l_q.
double difference_basis_norm(const SparseVec& a, double q);

class DiffBasisOracle final : public NormOracle {
public:
    explicit DiffBasisOracle(double q);
    double operator()(const SparseVec& f) const override;
    OracleInfo info() const override;
    std::string label() const override;
    double q() const { return q_; }

private:
    double q_;
};

// Unit vector basis of l_q: acl gauge with unit weights.
std::shared_ptr<const SymmetricGauge> unit_lq_oracle(double q, std::int64_t horizon = kDefaultHorizon);

// Interleaved direct sum: odd coordinates feed X, even coordinates feed Y;
// combined as (||.||_X^{q_sum} + ||.||_Y^{q_sum})^{1/q_sum}.
class DirectSumOracle final : public NormOracle {
public:
    DirectSumOracle(std::shared_ptr<const NormOracle> x, std::shared_ptr<const NormOracle> y,
                    double q_sum);
    double operator()(const SparseVec& f) const override;
    OracleInfo info() const override;
    std::string label() const override;

private:
    std::shared_ptr<const NormOracle> x_;
    std::shared_ptr<const NormOracle> y_;
    double q_sum_;
};

// ||S_A a|| in the given oracle.
double coordinate_projection(const SparseVec& a, const std::vector<Index>& A,
                             const NormOracle& oracle);

// Certified lower-bound witness for the conditionality of the difference
// basis: f = chi_{[1,2m]}, A = odd indices, ratio m^{1/q}.
struct CondWitness {
    SparseVec f;
    std::vector<Index> A;
    double ratio;
};
CondWitness cond_param_witness(std::int64_t m, double q);

struct CondEstimateConfig {
    std::int64_t m = 4;     // cardinality budget for A
    std::int64_t dim = 16;  // supports live in [1, dim]
    std::int64_t budget = 0; // candidate pairs beyond the witness family
    std::uint64_t seed = 1;
};

// Lower bound on sup{ ||S_A f|| / ||f|| : supp f in [1,dim], A in supp f,
// |A| <= m }. Monotone nondecreasing in m, dim and budget; always covers the
// closed-form witness family.
double cond_param_estimate(const NormOracle& oracle, const CondEstimateConfig& config);

} // namespace lorentz
