#include "lorentz/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorentz/errors.hpp"

namespace lorentz {

namespace {
// Witness comparisons get a hair of slack so that exact power-law identities
// (rho(4) = 2 for pi_2, ...) are not lost to a final ulp.
constexpr double kCmpSlack = 1e-12;
} // namespace

WeightSeq::WeightSeq(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw validation_error("WeightSeq: empty sequence");
    for (double v : values_) {
        if (!(v > 0.0) || !std::isfinite(v)) throw validation_error("WeightSeq: entries must be positive and finite");
    }
}

WeightSeq WeightSeq::power(double p, int horizon) {
    if (!(p > 0.0)) throw validation_error("WeightSeq::power: p must be positive");
    if (horizon < 1) throw validation_error("WeightSeq::power: horizon must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(horizon));
    const double e = 1.0 / p;
    for (int m = 1; m <= horizon; ++m) v[static_cast<std::size_t>(m - 1)] = std::pow(static_cast<double>(m), e);
    WeightSeq s(std::move(v));
    s.power_p_ = p;
    return s;
}

double WeightSeq::at(int m) const {
    if (m < 1 || m > horizon()) throw validation_error("WeightSeq: index " + std::to_string(m) + " outside horizon");
    return values_[static_cast<std::size_t>(m - 1)];
}

bool WeightSeq::nondecreasing() const {
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] < values_[i - 1]) return false;
    return true;
}

WeightSeq WeightSeq::pow(double alpha) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) v[i] = std::pow(values_[i], alpha);
    WeightSeq out(std::move(v));
    if (power_p_) out.power_p_ = *power_p_ / alpha;
    return out;
}

std::vector<double> WeightSeq::increments() const {
    std::vector<double> inc(values_.size());
    if (power_p_) {
        // m^{1/p} - (m-1)^{1/p} = m^{1/p} * (-expm1(log1p(-1/m)/p)), exact to
        // rounding even when the two terms nearly cancel.
        const double e = 1.0 / *power_p_;
        inc[0] = values_[0];
        for (std::size_t i = 1; i < values_.size(); ++i) {
            const double m = static_cast<double>(i + 1);
            inc[i] = values_[i] * (-std::expm1(e * std::log1p(-1.0 / m)));
        }
        return inc;
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        inc[i] = values_[i] - prev;
        prev = values_[i];
    }
    return inc;
}

WeightSeq primitive_from_increments(const std::vector<double>& w, double q) {
    if (w.empty()) throw validation_error("primitive_from_increments: empty weight");
    if (!(q > 0.0) || !std::isfinite(q)) throw validation_error("primitive_from_increments: q must be in (0,inf)");
    std::vector<double> s(w.size());
    double acc = 0.0;
    const double e = 1.0 / q;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(w[i] > 0.0) || !std::isfinite(w[i]))
            throw validation_error("primitive_from_increments: weights must be positive");
        acc += w[i];
        s[i] = std::pow(acc, e);
    }
    return WeightSeq(std::move(s));
}

std::vector<double> increments_from_primitive(const WeightSeq& s, double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw validation_error("increments_from_primitive: q must be in (0,inf)");
    if (!s.nondecreasing()) throw validation_error("increments_from_primitive: s must be nondecreasing");
    std::vector<double> w(static_cast<std::size_t>(s.horizon()));
    double prev = 0.0;
    for (int m = 1; m <= s.horizon(); ++m) {
        const double cur = std::pow(s.at(m), q);
        w[static_cast<std::size_t>(m - 1)] = cur - prev;
        prev = cur;
    }
    return w;
}

WeightSeq dual_sequence(const WeightSeq& s) {
    std::vector<double> v(static_cast<std::size_t>(s.horizon()));
    for (int m = 1; m <= s.horizon(); ++m) v[static_cast<std::size_t>(m - 1)] = static_cast<double>(m) / s.at(m);
    return WeightSeq(std::move(v));
}

WeightSeq dini_sums(const WeightSeq& s) {
    std::vector<double> v(static_cast<std::size_t>(s.horizon()));
    double acc = 0.0;
    for (int m = 1; m <= s.horizon(); ++m) {
        acc += 1.0 / s.at(m);
        v[static_cast<std::size_t>(m - 1)] = acc;
    }
    return WeightSeq(std::move(v));
}

double multiplicative_ratio(const WeightSeq& s, int d) {
    const int N = s.horizon();
    if (d < 1 || d > N) throw validation_error("multiplicative_ratio: d outside [1, horizon]");
    double best = 0.0;
    for (int m = 1; static_cast<std::int64_t>(m) * d <= N; ++m)
        best = std::max(best, s.at(m * d) / s.at(m));
    return best;
}

std::optional<int> check_urp(const WeightSeq& s, int b_max) {
    if (b_max > s.horizon()) throw validation_error("check_urp: b_max exceeds horizon");
    for (int b = 2; b <= b_max; ++b) {
        if (multiplicative_ratio(s, b) <= 0.5 * b * (1.0 + kCmpSlack)) return b;
    }
    return std::nullopt;
}

std::optional<int> check_lrp(const WeightSeq& s, int b_max) {
    const int N = s.horizon();
    if (b_max > N) throw validation_error("check_lrp: b_max exceeds horizon");
    for (int b = 2; b <= b_max; ++b) {
        double worst = std::numeric_limits<double>::infinity();
        for (int m = 1; static_cast<std::int64_t>(m) * b <= N; ++m)
            worst = std::min(worst, s.at(m * b) / s.at(m));
        if (std::isfinite(worst) && worst >= 2.0 * (1.0 - kCmpSlack)) return b;
    }
    return std::nullopt;
}

EssentialMonotonicity essential_monotonicity(const WeightSeq& s) {
    double run_max = 0.0, run_min = std::numeric_limits<double>::infinity();
    double incr = 0.0, decr = 0.0;
    for (int n = 1; n <= s.horizon(); ++n) {
        const double v = s.at(n);
        run_max = std::max(run_max, v);
        run_min = std::min(run_min, v);
        incr = std::max(incr, run_max / v);
        decr = std::max(decr, v / run_min);
    }
    return {incr, decr};
}

UrpPowerResult urp_power_exponent(const WeightSeq& s) {
    const int N = s.horizon();
    double C = 0.0;
    for (int m = 1; 2 * m <= N; ++m) C = std::max(C, s.at(2 * m) / s.at(m));
    if (C == 0.0) C = 1.0; // horizon 1: no pair to compare
    double alpha = 1.0;
    const double root2 = std::sqrt(2.0);
    if (C > root2) alpha = (0.5 * std::log(2.0)) / std::log(C);
    const WeightSeq powered = s.pow(alpha);
    double rho4 = 1.0;
    if (N >= 4) rho4 = multiplicative_ratio(powered, 4);
    return {alpha, C, rho4, rho4 <= 2.0 * (1.0 + kCmpSlack)};
}

NonincreasingEquivalent nonincreasing_equivalent(const WeightSeq& s, double q, int b_max) {
    if (!(q > 0.0) || !std::isfinite(q)) throw validation_error("nonincreasing_equivalent: q must be in (0,inf)");
    const int N = s.horizon();
    NonincreasingEquivalent out;
    out.w.resize(static_cast<std::size_t>(N));
    double run_min = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= N; ++m) {
        run_min = std::min(run_min, std::pow(s.at(m), q) / static_cast<double>(m));
        out.w[static_cast<std::size_t>(m - 1)] = run_min;
    }
    const int scan = std::min(b_max, N);
    out.urp_witness = check_urp(s, scan);
    out.lrp_witness = check_lrp(s, scan);
    out.certified = out.urp_witness.has_value() && out.lrp_witness.has_value();
    double t = 0.0;
    out.lower_constant = std::numeric_limits<double>::infinity();
    out.upper_constant = 0.0;
    for (int m = 1; m <= N; ++m) {
        t += out.w[static_cast<std::size_t>(m - 1)];
        const double ratio = t / std::pow(s.at(m), q);
        out.lower_constant = std::min(out.lower_constant, ratio);
        out.upper_constant = std::max(out.upper_constant, ratio);
    }
    return out;
}

std::vector<int> geometric_grid(int max_d) {
    std::vector<int> grid;
    for (std::int64_t d = 2; d <= max_d; d *= 2) grid.push_back(static_cast<int>(d));
    for (std::int64_t d = 3; d <= max_d; d *= 2) grid.push_back(static_cast<int>(d));
    std::sort(grid.begin(), grid.end());
    return grid;
}

RegularityReport regularity_report(const WeightSeq& s, int b_max) {
    const int N = s.horizon();
    RegularityReport rep;
    rep.horizon = N;
    double C = 0.0;
    for (int m = 1; 2 * m <= N; ++m) C = std::max(C, s.at(2 * m) / s.at(m));
    rep.doubling_constant = (C == 0.0) ? 1.0 : C;
    for (int d : geometric_grid(std::max(2, N / 4)))
        rep.ratio_table.push_back({d, multiplicative_ratio(s, d)});
    const int scan = std::min(b_max, N);
    rep.urp_witness = check_urp(s, scan);
    rep.lrp_witness = check_lrp(s, scan);
    const auto ess = essential_monotonicity(s);
    rep.ess_incr_constant = ess.incr_constant;
    rep.ess_decr_constant = ess.decr_constant;
    return rep;
}

UrpEquivalences urp_equivalences_report(const WeightSeq& s, int b_max) {
    const int N = s.horizon();
    UrpEquivalences rep;
    rep.horizon = N;
    rep.ess_incr_constant = essential_monotonicity(s).incr_constant;
    rep.essentially_increasing = rep.ess_incr_constant <= 10.0;

    rep.min_rho_over_d = std::numeric_limits<double>::infinity();
    for (int d : geometric_grid(std::max(2, N / 4))) {
        const double r = multiplicative_ratio(s, d) / d;
        rep.rho_over_d.push_back({d, r});
        rep.min_rho_over_d = std::min(rep.min_rho_over_d, r);
    }

    const WeightSeq v = dini_sums(s);
    rep.dini_over_dual_sup = 0.0;
    rep.dual_over_dini_sup = 0.0;
    for (int m = 1; m <= N; ++m) {
        const double dual = static_cast<double>(m) / s.at(m);
        rep.dini_over_dual_sup = std::max(rep.dini_over_dual_sup, v.at(m) / dual);
        rep.dual_over_dini_sup = std::max(rep.dual_over_dini_sup, dual / v.at(m));
    }

    rep.urp_witness = check_urp(s, std::min(b_max, N));
    // At a finite horizon "rho(d)/d -> 0" can only be sampled; the witness and
    // the grid decay must point the same way.
    rep.consistent = rep.urp_witness.has_value() == (rep.min_rho_over_d <= 0.5 * (1.0 + kCmpSlack));
    return rep;
}

} // namespace lorentz
