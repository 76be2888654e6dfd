#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lorentz {

inline constexpr int kDefaultHorizon = 1 << 16;
inline constexpr int kDefaultWitnessScan = 1 << 12;

// Primitive sequence s_1..s_N (the fundamental-function scale of the space),
// strictly positive, held at a finite horizon. All regularity diagnostics in
// this module are horizon-qualified: they witness or refute a property up to
// N, never in the limit.
class WeightSeq {
public:
    explicit WeightSeq(std::vector<double> values);

    // pi_p = (m^{1/p}), p > 0.
    static WeightSeq power(double p, int horizon);

    int horizon() const { return static_cast<int>(values_.size()); }
    double at(int m) const; // 1-based, bounds-checked
    const std::vector<double>& values() const { return values_; }

    bool nondecreasing() const;

    // Set when the sequence was built as pi_p; enables exact power-law
    // increments elsewhere.
    std::optional<double> power_exponent() const { return power_p_; }

    // Elementwise s^alpha. pi_p^alpha = pi_{p/alpha}.
    WeightSeq pow(double alpha) const;

    // s_m - s_{m-1} with s_0 = 0, computed cancellation-free for power
    // weights.
    std::vector<double> increments() const;

private:
    std::vector<double> values_;
    std::optional<double> power_p_;
};

// s_m = (w_1 + ... + w_m)^{1/q}; w positive. The result is nondecreasing.
WeightSeq primitive_from_increments(const std::vector<double>& w, double q);

// w_n = s_n^q - s_{n-1}^q with s_0 = 0; requires s nondecreasing.
// Round-trips with primitive_from_increments.
std::vector<double> increments_from_primitive(const WeightSeq& s, double q);

// Dual sequence s* = (m / s_m).
WeightSeq dual_sequence(const WeightSeq& s);

// Dini sums v_m = sum_{n<=m} 1/s_n.
WeightSeq dini_sums(const WeightSeq& s);

// rho_N(d) = max_{dm<=N} s_{dm}/s_m, 1 <= d <= N.
double multiplicative_ratio(const WeightSeq& s, int d);

// Smallest b in [2, b_max] with rho_N(b) <= b/2, if any. A returned witness
// certifies the URP at this horizon only.
std::optional<int> check_urp(const WeightSeq& s, int b_max);

// Smallest b in [2, b_max] with min_{bm<=N} s_{bm}/s_m >= 2, if any.
std::optional<int> check_lrp(const WeightSeq& s, int b_max);

struct EssentialMonotonicity {
    double incr_constant; // sup_{m<=n<=N} s_m / s_n
    double decr_constant; // sup_{m<=n<=N} s_n / s_m
};
EssentialMonotonicity essential_monotonicity(const WeightSeq& s);

// Exponent alpha with (doubling constant)^alpha <= sqrt(2), so that s^alpha
// carries the URP with witness 4; alpha = 1 when the constant is already
// below sqrt(2).
struct UrpPowerResult {
    double alpha;
    double doubling_constant;
    double rho4_of_power;   // rho_N(4) of s^alpha
    bool urp_b4_at_horizon; // rho4_of_power <= 2
};
UrpPowerResult urp_power_exponent(const WeightSeq& s);

// Running-minimum nonincreasing minorant of (s_n^q / n): the canonical
// choice of weight with d_q(s) = d(w,q). The equivalence constants compare
// t_m = sum_{n<=m} w_n against s_m^q at the horizon.
struct NonincreasingEquivalent {
    std::vector<double> w;
    bool certified; // URP and LRP witnessed at horizon
    std::optional<int> urp_witness;
    std::optional<int> lrp_witness;
    double lower_constant; // min_m t_m / s_m^q
    double upper_constant; // max_m t_m / s_m^q
};
NonincreasingEquivalent nonincreasing_equivalent(const WeightSeq& s, double q,
                                                 int b_max = kDefaultWitnessScan);

struct RhoEntry {
    int d;
    double rho;
};

struct RegularityReport {
    int horizon = 0;
    double doubling_constant = 0;
    std::vector<RhoEntry> ratio_table;
    std::optional<int> urp_witness;
    std::optional<int> lrp_witness;
    double ess_incr_constant = 0;
    double ess_decr_constant = 0;
};
RegularityReport regularity_report(const WeightSeq& s, int b_max = kDefaultWitnessScan);

// Sample grid {2,4,8,...} merged with {3*2^k}, capped at `max_d`.
std::vector<int> geometric_grid(int max_d);

// Finite-horizon shadow of the URP <-> Dini equivalences: tabulates
// rho_N(d)/d on the geometric grid and compares the Dini sums v against the
// dual sequence s*. `consistent` records whether the URP witness and the
// decay of rho(d)/d agree at this horizon.
struct UrpEquivalences {
    int horizon = 0;
    double ess_incr_constant = 0;
    bool essentially_increasing = false; // ess_incr_constant <= threshold (10)
    std::vector<RhoEntry> rho_over_d;
    double min_rho_over_d = 0;
    double dini_over_dual_sup = 0; // sup_m v_m / s*_m
    double dual_over_dini_sup = 0; // sup_m s*_m / v_m
    std::optional<int> urp_witness;
    bool consistent = false;
};
UrpEquivalences urp_equivalences_report(const WeightSeq& s, int b_max = kDefaultWitnessScan);

} // namespace lorentz
