#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace lorentz {

using Index = std::int64_t;

// Finitely supported real sequence over positive integer indices.
// Entries are stored sorted by index; zero values are never stored, so the
// support is exactly the set of stored indices.
class SparseVec {
public:
    struct Entry {
        Index n;
        double a;
    };

    SparseVec() = default;

    // Validates: positive indices, finite nonzero values, no duplicates.
    // Input order is irrelevant.
    explicit SparseVec(std::vector<Entry> entries);

    static SparseVec unit(Index n);
    static SparseVec indicator(Index first, Index last);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // Coefficient at n; 0 when n is outside the support.
    double at(Index n) const;

    std::vector<Index> support() const;
    Index max_index() const; // 0 when empty

    SparseVec abs() const;
    SparseVec scaled(double factor) const;
    SparseVec minus(const SparseVec& other) const;

    // Coordinate projection S_A: keeps entries with index in `keep`.
    SparseVec restricted(const std::vector<Index>& keep) const;

    bool operator==(const SparseVec& other) const { return entries_ == other.entries_; }

private:
    std::vector<Entry> entries_;
};

inline bool operator==(const SparseVec::Entry& l, const SparseVec::Entry& r) {
    return l.n == r.n && l.a == r.a;
}

// Nonzero part of the nonincreasing rearrangement D(|f|). Ties keep the
// order of the original indices (stable; the gauges are tie-independent).
std::vector<double> decreasing_rearrangement(const SparseVec& f);

// Evaluates both sides of the Abel summation identity
//   sum_n a_n b_n = sum_n (a_n - a_{n+1}) (b_1 + ... + b_n),
// with `a` extended by one trailing zero. The two components agree up to
// roundoff; this exists as a self-test utility for the gauge identities.
std::pair<double, double> abel_sum(const std::vector<double>& a, const std::vector<double>& b);

} // namespace lorentz
