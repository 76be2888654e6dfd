#include "lorentz/seq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorentz/errors.hpp"

namespace lorentz {

SparseVec::SparseVec(std::vector<Entry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
        if (e.n <= 0) throw validation_error("SparseVec: indices must be positive, got " + std::to_string(e.n));
        if (!std::isfinite(e.a)) throw validation_error("SparseVec: values must be finite");
        if (e.a == 0.0) throw validation_error("SparseVec: zero value at index " + std::to_string(e.n));
    }
    std::sort(entries_.begin(), entries_.end(), [](const Entry& l, const Entry& r) { return l.n < r.n; });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i - 1].n == entries_[i].n)
            throw validation_error("SparseVec: duplicate index " + std::to_string(entries_[i].n));
    }
}

SparseVec SparseVec::unit(Index n) { return SparseVec({{n, 1.0}}); }

SparseVec SparseVec::indicator(Index first, Index last) {
    if (first <= 0 || last < first) throw validation_error("SparseVec::indicator: bad interval");
    std::vector<Entry> e;
    e.reserve(static_cast<std::size_t>(last - first + 1));
    for (Index n = first; n <= last; ++n) e.push_back({n, 1.0});
    return SparseVec(std::move(e));
}

double SparseVec::at(Index n) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                               [](const Entry& e, Index v) { return e.n < v; });
    if (it != entries_.end() && it->n == n) return it->a;
    return 0.0;
}

std::vector<Index> SparseVec::support() const {
    std::vector<Index> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.n);
    return out;
}

Index SparseVec::max_index() const { return entries_.empty() ? 0 : entries_.back().n; }

SparseVec SparseVec::abs() const {
    SparseVec out(*this);
    for (auto& e : out.entries_) e.a = std::fabs(e.a);
    return out;
}

SparseVec SparseVec::scaled(double factor) const {
    if (!std::isfinite(factor)) throw validation_error("SparseVec::scaled: factor must be finite");
    if (factor == 0.0) return SparseVec();
    SparseVec out(*this);
    for (auto& e : out.entries_) e.a *= factor;
    return out;
}

SparseVec SparseVec::minus(const SparseVec& other) const {
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    std::size_t i = 0, j = 0;
    while (i < entries_.size() || j < other.entries_.size()) {
        if (j == other.entries_.size() || (i < entries_.size() && entries_[i].n < other.entries_[j].n)) {
            merged.push_back(entries_[i++]);
        } else if (i == entries_.size() || other.entries_[j].n < entries_[i].n) {
            merged.push_back({other.entries_[j].n, -other.entries_[j].a});
            ++j;
        } else {
            const double v = entries_[i].a - other.entries_[j].a;
            if (v != 0.0) merged.push_back({entries_[i].n, v});
            ++i;
            ++j;
        }
    }
    SparseVec out;
    out.entries_ = std::move(merged); // already sorted, nonzero
    return out;
}

SparseVec SparseVec::restricted(const std::vector<Index>& keep) const {
    std::vector<Index> sorted(keep);
    std::sort(sorted.begin(), sorted.end());
    std::vector<Entry> out;
    for (const auto& e : entries_) {
        if (std::binary_search(sorted.begin(), sorted.end(), e.n)) out.push_back(e);
    }
    SparseVec r;
    r.entries_ = std::move(out);
    return r;
}

std::vector<double> decreasing_rearrangement(const SparseVec& f) {
    std::vector<double> vals;
    vals.reserve(f.support_size());
    for (const auto& e : f.entries()) vals.push_back(std::fabs(e.a));
    std::stable_sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

std::pair<double, double> abel_sum(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw validation_error("abel_sum: length mismatch");
    double direct = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) direct += a[i] * b[i];
    double summed = 0.0;
    double b_prefix = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        b_prefix += b[i];
        const double a_next = (i + 1 < a.size()) ? a[i + 1] : 0.0;
        summed += (a[i] - a_next) * b_prefix;
    }
    return {direct, summed};
}

} // namespace lorentz
