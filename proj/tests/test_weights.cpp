#include <doctest.h>

#include <cmath>

#include "lorentz/errors.hpp"
#include "lorentz/rng.hpp"
#include "lorentz/weights.hpp"

using namespace lorentz;

namespace {
WeightSeq random_positive_seq(std::mt19937_64& g, int len) {
    std::vector<double> v(static_cast<std::size_t>(len));
    v[0] = uniform(g, 0.5, 2.0);
    for (int i = 1; i < len; ++i)
        v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i - 1)] * uniform(g, 0.6, 1.6);
    return WeightSeq(std::move(v));
}
} // namespace

TEST_SUITE_BEGIN("weights");

TEST_CASE("power weights") {
    const WeightSeq s1 = WeightSeq::power(1.0, 3);
    CHECK(s1.values() == std::vector<double>{1.0, 2.0, 3.0});
    const WeightSeq s2 = WeightSeq::power(2.0, 4);
    CHECK(s2.at(2) == doctest::Approx(1.41421356).epsilon(1e-8));
    CHECK(s2.at(3) == doctest::Approx(1.73205081).epsilon(1e-8));
    CHECK(s2.at(4) == doctest::Approx(2.0));
    const WeightSeq sh = WeightSeq::power(0.5, 3);
    CHECK(sh.values() == std::vector<double>{1.0, 4.0, 9.0});
    CHECK_THROWS_AS(WeightSeq::power(0.0, 4), validation_error);
    CHECK_THROWS_AS(WeightSeq::power(-1.0, 4), validation_error);
}

TEST_CASE("primitive from increments and back") {
    CHECK(primitive_from_increments({1, 1, 1}, 1.0).values() == std::vector<double>{1, 2, 3});
    CHECK(primitive_from_increments({1, 1}, 0.5).at(2) == doctest::Approx(4.0));
    CHECK(primitive_from_increments({4, 2}, 2.0).at(2) == doctest::Approx(std::sqrt(6.0)));
    CHECK_THROWS_AS(primitive_from_increments({1, -1}, 1.0), validation_error);

    CHECK(increments_from_primitive(WeightSeq({1, 2, 3}), 1.0) == std::vector<double>{1, 1, 1});
    const auto w = increments_from_primitive(WeightSeq({1, 4}), 0.5);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(1.0));
    CHECK(increments_from_primitive(WeightSeq({1, 1, 1}), 1.0) == std::vector<double>{1, 0, 0});
    CHECK_THROWS_AS(increments_from_primitive(WeightSeq({2, 1}), 1.0), validation_error);
}

TEST_CASE("round trip: increments -> primitive -> increments") {
    for (double q : {0.25, 0.5, 1.0}) {
        for (int trial = 0; trial < 200; ++trial) {
            auto g = rng_for(23, static_cast<std::uint64_t>(trial) * 8 + static_cast<std::uint64_t>(q * 4));
            const auto len = uniform_int(g, 1, 80);
            std::vector<double> w(static_cast<std::size_t>(len));
            w[0] = uniform(g, 0.5, 3.0);
            for (std::size_t i = 1; i < w.size(); ++i) w[i] = w[i - 1] * uniform(g, 0.5, 1.0);
            const auto back = increments_from_primitive(primitive_from_increments(w, q), q);
            for (std::size_t i = 0; i < w.size(); ++i)
                CHECK(back[i] == doctest::Approx(w[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("dual sequence and Dini sums") {
    const WeightSeq pi1 = WeightSeq::power(1.0, 8);
    for (int m = 1; m <= 8; ++m) CHECK(dual_sequence(pi1).at(m) == doctest::Approx(1.0));
    CHECK(dual_sequence(WeightSeq::power(2.0, 4)).at(4) == doctest::Approx(2.0));
    CHECK(dual_sequence(WeightSeq({1, 1, 1})).at(3) == doctest::Approx(3.0));

    CHECK(dini_sums(WeightSeq({1, 1})).values() == std::vector<double>{1, 2});
    CHECK(dini_sums(pi1).at(3) == doctest::Approx(1.0 + 0.5 + 1.0 / 3.0));
    CHECK(dini_sums(WeightSeq::power(2.0, 2)).at(2) == doctest::Approx(1.70710678).epsilon(1e-8));
}

TEST_CASE("multiplicative ratio") {
    const WeightSeq pi2 = WeightSeq::power(2.0, 1 << 10);
    CHECK(multiplicative_ratio(pi2, 4) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(multiplicative_ratio(pi2, 1) == doctest::Approx(1.0));
    CHECK(multiplicative_ratio(WeightSeq::power(0.5, 1 << 10), 2) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK_THROWS_AS(multiplicative_ratio(pi2, 0), validation_error);
    CHECK_THROWS_AS(multiplicative_ratio(pi2, (1 << 10) + 1), validation_error);
}

TEST_CASE("rho is submultiplicative at horizon") {
    for (int trial = 0; trial < 40; ++trial) {
        auto g = rng_for(29, static_cast<std::uint64_t>(trial));
        const WeightSeq s = random_positive_seq(g, 96);
        for (int cc = 2; cc <= 4; ++cc) {
            for (int d = 2; d <= 6; ++d) {
                if (cc * d > s.horizon()) continue;
                CHECK(multiplicative_ratio(s, cc * d) <=
                      multiplicative_ratio(s, cc) * multiplicative_ratio(s, d) + 1e-12);
            }
        }
    }
}

TEST_CASE("power-law rho closed form") {
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
        const WeightSeq s = WeightSeq::power(p, 1 << 12);
        for (int d = 1; d <= 64; ++d) {
            const double want = std::pow(static_cast<double>(d), 1.0 / p);
            CHECK(multiplicative_ratio(s, d) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("URP and LRP witnesses") {
    const int N = 1 << 14;
    CHECK(check_urp(WeightSeq::power(2.0, N), 64) == 4);
    CHECK(!check_urp(WeightSeq::power(1.0, N), 1 << 12).has_value());
    CHECK(check_urp(WeightSeq::power(4.0, N), 64) == 3);

    CHECK(check_lrp(WeightSeq::power(2.0, N), 64) == 4);
    CHECK(check_lrp(WeightSeq::power(1.0, N), 64) == 2);
    CHECK(!check_lrp(WeightSeq(std::vector<double>(64, 1.0)), 32).has_value());

    // a URP witness forces a finite doubling constant: s_{2m} <= s_{bm} <= (b/2) s_m
    const WeightSeq pi2 = WeightSeq::power(2.0, N);
    CHECK(multiplicative_ratio(pi2, 2) <= 0.5 * 4 * multiplicative_ratio(pi2, 1) + 1e-12);
}

TEST_CASE("essential monotonicity constants") {
    const auto a = essential_monotonicity(WeightSeq::power(2.0, 64));
    CHECK(a.incr_constant == doctest::Approx(1.0));
    CHECK(essential_monotonicity(WeightSeq({2, 1, 2})).incr_constant == doctest::Approx(2.0));
    CHECK(essential_monotonicity(WeightSeq({1, 3, 2})).decr_constant == doctest::Approx(3.0));
}

TEST_CASE("URP power exponent") {
    const auto r1 = urp_power_exponent(WeightSeq::power(1.0, 1 << 12));
    CHECK(r1.doubling_constant == doctest::Approx(2.0));
    CHECK(r1.alpha == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r1.urp_b4_at_horizon); // pi_1^{1/2} = pi_2 carries the b=4 witness
    CHECK(r1.rho4_of_power == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(urp_power_exponent(WeightSeq::power(2.0, 1 << 12)).alpha == doctest::Approx(1.0));
    CHECK(urp_power_exponent(WeightSeq(std::vector<double>(32, 3.0))).alpha == doctest::Approx(1.0));
}

TEST_CASE("nonincreasing equivalent weight") {
    const auto a = nonincreasing_equivalent(WeightSeq::power(2.0, 256), 0.5, 64);
    for (int m = 1; m <= 256; ++m)
        CHECK(a.w[static_cast<std::size_t>(m - 1)] ==
              doctest::Approx(std::pow(m, -0.75)).epsilon(1e-12));
    CHECK(a.certified);

    const auto b = nonincreasing_equivalent(WeightSeq::power(1.0, 64), 1.0, 32);
    for (double v : b.w) CHECK(v == doctest::Approx(1.0));
    CHECK(!b.certified); // pi_1 has no URP witness

    const auto cvals = nonincreasing_equivalent(WeightSeq({1, 2, 2}), 1.0, 3).w;
    CHECK(cvals[0] == doctest::Approx(1.0));
    CHECK(cvals[1] == doctest::Approx(1.0));
    CHECK(cvals[2] == doctest::Approx(2.0 / 3.0));
}

// s_m <= s_{bm} plus not moving down steeply forces essential increase with
// the explicit constant D^{ceil(log2 b)}.
TEST_CASE("essential-increase bound from the block hypothesis") {
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 60; ++trial) {
        auto g = rng_for(31, static_cast<std::uint64_t>(trial));
        const int N = 128;
        std::vector<double> v(N);
        v[0] = 1.0;
        for (int i = 1; i < N; ++i) v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i - 1)] * uniform(g, 0.9, 1.3);
        const WeightSeq s(v);
        const int b = static_cast<int>(uniform_int(g, 2, 4));
        bool hyp = true;
        for (int m = 1; m * b <= N; ++m) hyp = hyp && s.at(m) <= s.at(b * m);
        if (!hyp) continue;
        ++tested;
        double D = 0.0; // sup of s_m / s_n over m <= n <= 2m
        for (int m = 1; m <= N; ++m)
            for (int n = m; n <= std::min(2 * m, N); ++n) D = std::max(D, s.at(m) / s.at(n));
        const double j = std::ceil(std::log2(static_cast<double>(b)));
        CHECK(essential_monotonicity(s).incr_constant <= std::pow(D, j) * (1.0 + 1e-9));
    }
    CHECK(tested >= 20);
}

// v_{2m} >= (1 + 1/(CD)) v_m with C = sup_{m<=n<=2m} s_n/s_m and
// D = sup_m s_m v_m / m; both are finite at any horizon.
TEST_CASE("Dini sums inherit lower regularity") {
    for (int trial = 0; trial < 60; ++trial) {
        auto g = rng_for(37, static_cast<std::uint64_t>(trial));
        const WeightSeq s = random_positive_seq(g, 160);
        const int N = s.horizon();
        const WeightSeq v = dini_sums(s);
        double C = 0.0, D = 0.0;
        for (int m = 1; m <= N; ++m) {
            for (int n = m; n <= std::min(2 * m, N); ++n) C = std::max(C, s.at(n) / s.at(m));
            D = std::max(D, s.at(m) * v.at(m) / m);
        }
        const double gain = 1.0 + 1.0 / (C * D);
        for (int m = 1; 2 * m <= N; ++m)
            CHECK(v.at(2 * m) >= gain * v.at(m) * (1.0 - 1e-12));
    }
}

TEST_CASE("regularity report") {
    const auto rep = regularity_report(WeightSeq::power(2.0, 1 << 12), 1 << 10);
    CHECK(rep.horizon == (1 << 12));
    CHECK(rep.doubling_constant == doctest::Approx(std::sqrt(2.0)));
    CHECK(rep.urp_witness == 4);
    CHECK(rep.lrp_witness == 4);
    CHECK(rep.ess_incr_constant == doctest::Approx(1.0));
    CHECK(!rep.ratio_table.empty());
    CHECK(rep.ratio_table.front().d == 2);
}

TEST_CASE("geometric grid") {
    const auto grid = geometric_grid(32);
    CHECK(grid == std::vector<int>{2, 3, 4, 6, 8, 12, 16, 24, 32});
}

// The lattice r-convexity/r-concavity conditions reduce to diagnostics of
// powered primitives: (s^r)* essentially increasing (resp. decreasing), or
// s^r carrying the URP. For s = pi_p these have closed-form answers.
TEST_CASE("convexity and concavity condition checks at horizon") {
    const int N = 1 << 12;
    auto dual_incr = [&](const WeightSeq& s, double r) {
        return essential_monotonicity(dual_sequence(s.pow(r))).incr_constant;
    };
    auto dual_decr = [&](const WeightSeq& s, double r) {
        return essential_monotonicity(dual_sequence(s.pow(r))).decr_constant;
    };
    const WeightSeq pi2 = WeightSeq::power(2.0, N);

    // (pi_p^r)* = (m^{1 - r/p}): monotone up iff r <= p, down iff r >= p
    CHECK(dual_incr(pi2, 0.5) == doctest::Approx(1.0));  // r = q < p: convexity-side check passes
    CHECK(dual_incr(pi2, 2.0) == doctest::Approx(1.0));  // boundary r = p
    CHECK(dual_incr(pi2, 4.0) > 10.0);                   // r > p: fails, and instead
    CHECK(dual_decr(pi2, 4.0) == doctest::Approx(1.0));  // the concavity-side check passes

    // r < q route: s^r with the URP
    CHECK(check_urp(pi2.pow(0.5), 64).has_value());      // pi_2^{1/2} = pi_4
    CHECK(!check_urp(WeightSeq::power(1.0, N).pow(1.0), 64).has_value());

    // LRP drives the concavity side: pi_2 has it, a bounded primitive does not
    CHECK(check_lrp(pi2, 64).has_value());
    CHECK(!check_lrp(WeightSeq(std::vector<double>(N, 1.0)), 64).has_value());
}

TEST_CASE("URP-Dini equivalences report") {
    const auto r2 = urp_equivalences_report(WeightSeq::power(2.0, 100000), 1 << 10);
    CHECK(r2.essentially_increasing);
    CHECK(r2.urp_witness == 4);
    CHECK(r2.consistent);
    // integral comparison: v_m in [2 sqrt(m) - 2, 2 sqrt(m)], s*_m = sqrt(m)
    CHECK(r2.dini_over_dual_sup <= 2.0);
    CHECK(r2.dini_over_dual_sup >= 1.0);

    const auto r1 = urp_equivalences_report(WeightSeq::power(1.0, 1 << 12), 1 << 10);
    CHECK(!r1.urp_witness.has_value());
    CHECK(r1.min_rho_over_d == doctest::Approx(1.0));
    CHECK(r1.consistent);

    const auto rc = urp_equivalences_report(WeightSeq(std::vector<double>(256, 2.5)), 128);
    CHECK(rc.dini_over_dual_sup == doctest::Approx(1.0));
    CHECK(rc.dual_over_dini_sup == doctest::Approx(1.0));
    CHECK(rc.urp_witness == 2);
    CHECK(rc.consistent);
}

TEST_SUITE_END();
