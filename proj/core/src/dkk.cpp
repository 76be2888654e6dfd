#include "lorentz/dkk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorentz/errors.hpp"
#include "lorentz/rng.hpp"

namespace lorentz {

IntervalPartition::IntervalPartition(std::vector<std::int64_t> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw validation_error("IntervalPartition: no blocks");
    offsets_.resize(sizes_.size());
    Index end = 0;
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
        if (sizes_[k] < 1) throw validation_error("IntervalPartition: block sizes must be >= 1");
        end += sizes_[k];
        offsets_[k] = end;
    }
}

IntervalPartition IntervalPartition::constant(std::int64_t size, int count) {
    if (count < 1) throw validation_error("IntervalPartition::constant: count must be >= 1");
    return IntervalPartition(std::vector<std::int64_t>(static_cast<std::size_t>(count), size));
}

IntervalPartition IntervalPartition::dyadic(int k) {
    if (k < 1) throw validation_error("IntervalPartition::dyadic: k must be >= 1");
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) sizes[static_cast<std::size_t>(i)] = std::int64_t{1} << i;
    return IntervalPartition(std::move(sizes));
}

std::pair<Index, Index> IntervalPartition::interval(int k) const {
    const Index last = offsets_.at(static_cast<std::size_t>(k));
    return {last - sizes_[static_cast<std::size_t>(k)] + 1, last};
}

int IntervalPartition::block_of(Index n) const {
    if (n < 1 || n > range_end()) return -1;
    const auto it = std::lower_bound(offsets_.begin(), offsets_.end(), n);
    return static_cast<int>(it - offsets_.begin());
}

DisjointFamily IntervalPartition::as_family() const {
    std::vector<std::vector<Index>> blocks;
    blocks.reserve(sizes_.size());
    for (int k = 0; k < count(); ++k) {
        const auto [first, last] = interval(k);
        std::vector<Index> blk;
        blk.reserve(static_cast<std::size_t>(last - first + 1));
        for (Index n = first; n <= last; ++n) blk.push_back(n);
        blocks.push_back(std::move(blk));
    }
    return DisjointFamily(std::move(blocks));
}

double dkk_norm(const SparseVec& f, const DkkSpec& spec) {
    if (!spec.base || !spec.sym) throw validation_error("dkk_norm: spec is missing oracles");
    if (f.empty()) return 0.0;
    if (f.max_index() > spec.partition.range_end())
        throw validation_error("dkk_norm: support outside the partition range");

    // block averages over the touched intervals
    std::vector<double> block_sum(static_cast<std::size_t>(spec.partition.count()), 0.0);
    std::vector<std::vector<Index>> touched;
    for (const auto& e : f.entries()) block_sum[static_cast<std::size_t>(spec.partition.block_of(e.n))] += e.a;

    std::vector<SparseVec::Entry> coeffs;
    for (int k = 0; k < spec.partition.count(); ++k) {
        const double sum = block_sum[static_cast<std::size_t>(k)];
        if (sum == 0.0) continue;
        const double len = static_cast<double>(spec.partition.size(k));
        coeffs.push_back({static_cast<Index>(k) + 1,
                          (sum / len) * spec.sym->fundamental(spec.partition.size(k))});
        const auto [first, last] = spec.partition.interval(k);
        std::vector<Index> blk;
        blk.reserve(static_cast<std::size_t>(last - first + 1));
        for (Index n = first; n <= last; ++n) blk.push_back(n);
        touched.push_back(std::move(blk));
    }

    const double first_term = coeffs.empty() ? 0.0 : (*spec.base)(SparseVec(std::move(coeffs)));
    const SparseVec remainder = f.minus(apply_averaging(f, DisjointFamily(std::move(touched))));
    const double second_term = remainder.empty() ? 0.0 : (*spec.sym)(remainder);
    return first_term + second_term;
}

double difference_basis_norm(const SparseVec& a, double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw validation_error("difference_basis_norm: q must be in (0,inf)");
    if (a.empty()) return 0.0;
    // jumps can only occur on supp(a) and one past each support point
    std::vector<Index> spots;
    for (const auto& e : a.entries()) {
        spots.push_back(e.n);
        spots.push_back(e.n + 1);
    }
    std::sort(spots.begin(), spots.end());
    spots.erase(std::unique(spots.begin(), spots.end()), spots.end());
    double acc = 0.0;
    for (Index p : spots) {
        const double diff = a.at(p) - a.at(p - 1);
        if (diff != 0.0) acc += std::pow(std::fabs(diff), q);
    }
    return std::pow(acc, 1.0 / q);
}

DiffBasisOracle::DiffBasisOracle(double q) : q_(q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw validation_error("DiffBasisOracle: q must be in (0,inf)");
}

double DiffBasisOracle::operator()(const SparseVec& f) const { return difference_basis_norm(f, q_); }

OracleInfo DiffBasisOracle::info() const { return {false, false, std::min(1.0, q_)}; }

std::string DiffBasisOracle::label() const { return "diff_lq(q=" + std::to_string(q_) + ")"; }

std::shared_ptr<const SymmetricGauge> unit_lq_oracle(double q, std::int64_t horizon) {
    if (!(q > 0.0) || !std::isfinite(q)) throw validation_error("unit_lq_oracle: q must be in (0,inf)");
    return std::make_shared<SymmetricGauge>(std::vector<double>(static_cast<std::size_t>(horizon), 1.0), q,
                                            "l_q(q=" + std::to_string(q) + ")");
}

DirectSumOracle::DirectSumOracle(std::shared_ptr<const NormOracle> x,
                                 std::shared_ptr<const NormOracle> y, double q_sum)
    : x_(std::move(x)), y_(std::move(y)), q_sum_(q_sum) {
    if (!x_ || !y_) throw validation_error("DirectSumOracle: missing summands");
    if (!(q_sum > 0.0) || q_sum > 1.0) throw validation_error("DirectSumOracle: q_sum must be in (0,1]");
}

double DirectSumOracle::operator()(const SparseVec& f) const {
    std::vector<SparseVec::Entry> odd, even;
    for (const auto& e : f.entries()) {
        if (e.n % 2 == 1)
            odd.push_back({(e.n + 1) / 2, e.a});
        else
            even.push_back({e.n / 2, e.a});
    }
    const double nx = odd.empty() ? 0.0 : (*x_)(SparseVec(std::move(odd)));
    const double ny = even.empty() ? 0.0 : (*y_)(SparseVec(std::move(even)));
    return std::pow(std::pow(nx, q_sum_) + std::pow(ny, q_sum_), 1.0 / q_sum_);
}

OracleInfo DirectSumOracle::info() const {
    const auto ix = x_->info();
    const auto iy = y_->info();
    return {false, ix.lattice_monotone && iy.lattice_monotone,
            std::min({q_sum_, ix.q_exponent, iy.q_exponent})};
}

std::string DirectSumOracle::label() const {
    return x_->label() + " (+) " + y_->label() + " [q_sum=" + std::to_string(q_sum_) + "]";
}

double coordinate_projection(const SparseVec& a, const std::vector<Index>& A,
                             const NormOracle& oracle) {
    const SparseVec cut = a.restricted(A);
    return cut.empty() ? 0.0 : oracle(cut);
}

CondWitness cond_param_witness(std::int64_t m, double q) {
    if (m < 1) throw validation_error("cond_param_witness: m must be >= 1");
    if (!(q > 0.0) || !std::isfinite(q)) throw validation_error("cond_param_witness: q must be in (0,inf)");
    CondWitness w;
    w.f = SparseVec::indicator(1, 2 * m);
    for (Index n = 1; n <= 2 * m; n += 2) w.A.push_back(n);
    const double num = coordinate_projection(w.f, w.A, DiffBasisOracle(q));
    const double den = difference_basis_norm(w.f, q);
    w.ratio = num / den;
    return w;
}

double cond_param_estimate(const NormOracle& oracle, const CondEstimateConfig& config) {
    if (config.m < 1 || config.dim < 1) throw validation_error("cond_param_estimate: m, dim >= 1");
    if (config.m > config.dim) throw validation_error("cond_param_estimate: m must be <= dim");
    double best = 0.0;
    auto consider = [&](const SparseVec& f, const std::vector<Index>& A) {
        if (f.empty() || static_cast<std::int64_t>(A.size()) > config.m) return;
        const double den = oracle(f);
        if (den == 0.0) return;
        best = std::max(best, coordinate_projection(f, A, oracle) / den);
    };

    // certified witness family: chi_{[1,2j]} against the odd indices
    for (std::int64_t j = 1; 2 * j <= config.dim && j <= config.m; ++j) {
        std::vector<Index> odds;
        for (Index n = 1; n <= 2 * j; n += 2) odds.push_back(n);
        consider(SparseVec::indicator(1, 2 * j), odds);
    }
    // A = supp(f) baseline (ratio 1) so unconditional oracles report exactly 1
    if (config.m >= 1) {
        std::vector<Index> a1{1};
        consider(SparseVec::unit(1), a1);
    }

    // budgeted stream of (f, A) candidates, ordered so that enlarging m, dim
    // or budget only appends work; budget counts generated pairs whether or
    // not the |A| <= m filter lets them through
    std::int64_t left = config.budget;
    std::vector<std::int64_t> dims;
    for (std::int64_t d = 2; d < config.dim; d *= 2) dims.push_back(d);
    dims.push_back(config.dim);
    for (std::size_t di = 0; di < dims.size() && left > 0; ++di) {
        const std::int64_t dim = dims[di];
        // alternating and interval indicators with enumerated subsets
        std::vector<SparseVec> fs;
        fs.push_back(SparseVec::indicator(1, dim));
        if (dim >= 2) {
            std::vector<SparseVec::Entry> alt;
            for (Index n = 1; n <= dim; n += 2) alt.push_back({n, 1.0});
            fs.push_back(SparseVec(std::move(alt)));
        }
        for (int rep = 0; rep < 8; ++rep) {
            auto g = rng_for(config.seed, (static_cast<std::uint64_t>(di) << 8) + static_cast<std::uint64_t>(rep));
            std::vector<SparseVec::Entry> e;
            double level = 1.0;
            for (Index n = 1; n <= dim; ++n) {
                if (uniform01(g) < 0.3) continue;
                level *= uniform(g, 0.5, 1.0);
                e.push_back({n, uniform01(g) < 0.5 ? level : -level});
            }
            if (!e.empty()) fs.push_back(SparseVec(std::move(e)));
        }
        for (const auto& f : fs) {
            if (left <= 0) break;
            const auto supp = f.support();
            const auto ssz = supp.size();
            if (ssz <= 16) {
                const std::uint64_t lim = std::uint64_t{1} << ssz;
                for (std::uint64_t mask = 1; mask < lim && left > 0; ++mask, --left) {
                    std::vector<Index> A;
                    for (std::size_t i = 0; i < ssz; ++i)
                        if (mask & (std::uint64_t{1} << i)) A.push_back(supp[i]);
                    consider(f, A);
                }
            } else {
                auto g = rng_for(config.seed, 0xa5u ^ static_cast<std::uint64_t>(dim));
                const std::int64_t samples = std::min<std::int64_t>(left, 256);
                for (std::int64_t i = 0; i < samples; ++i, --left) {
                    std::vector<Index> A;
                    for (Index n : supp)
                        if (uniform01(g) < 0.5) A.push_back(n);
                    if (!A.empty()) consider(f, A);
                }
            }
        }
    }
    return best;
}

} // namespace lorentz
