#include <doctest.h>

#include <cmath>

#include "lorentz/dkk.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/rng.hpp"

using namespace lorentz;

TEST_SUITE_BEGIN("dkk");

TEST_CASE("interval partitions") {
    const IntervalPartition dy = IntervalPartition::dyadic(4);
    CHECK(dy.count() == 4);
    CHECK(dy.range_end() == 15);
    CHECK(dy.interval(0) == std::pair<Index, Index>{1, 1});
    CHECK(dy.interval(3) == std::pair<Index, Index>{8, 15});
    CHECK(dy.block_of(1) == 0);
    CHECK(dy.block_of(7) == 2);
    CHECK(dy.block_of(16) == -1);

    const IntervalPartition c = IntervalPartition::constant(3, 2);
    CHECK(c.interval(1) == std::pair<Index, Index>{4, 6});

    CHECK_THROWS_AS(IntervalPartition({2, 0}), validation_error);
    CHECK_THROWS_AS(IntervalPartition(std::vector<std::int64_t>{}), validation_error);
}

TEST_CASE("difference basis norm") {
    for (double q : {0.25, 0.5, 1.0}) {
        const double two = std::pow(2.0, 1.0 / q);
        CHECK(difference_basis_norm(SparseVec::unit(1), q) == doctest::Approx(two));
        for (std::int64_t m : {1, 3, 8})
            CHECK(difference_basis_norm(SparseVec::indicator(1, 2 * m), q) == doctest::Approx(two));
        // alternating pattern: 2m unit jumps
        std::vector<SparseVec::Entry> alt;
        for (Index n = 1; n <= 12; n += 2) alt.push_back({n, 1.0});
        CHECK(difference_basis_norm(SparseVec(alt), q) ==
              doctest::Approx(std::pow(12.0, 1.0 / q)).epsilon(1e-12));
    }
    // gap handling: {1:1, 5:2} has jumps (1,-1,2,-2)
    const double acc = 2.0 * (1.0 + std::pow(2.0, 0.5));
    CHECK(difference_basis_norm(SparseVec({{1, 1.0}, {5, 2.0}}), 0.5) ==
          doctest::Approx(std::pow(acc, 2.0)).epsilon(1e-12));
    CHECK(difference_basis_norm(SparseVec(), 0.5) == 0.0);
}

TEST_CASE("coordinate projection") {
    const DiffBasisOracle diff(0.5);
    const SparseVec a = SparseVec::indicator(1, 4);
    CHECK(coordinate_projection(a, {1, 2, 3, 4}, diff) == doctest::Approx(diff(a)));
    CHECK(coordinate_projection(a, {}, diff) == 0.0);
    CHECK(coordinate_projection(a, {1, 3}, diff) == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("conditionality witness") {
    CHECK(cond_param_witness(4, 0.5).ratio == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(cond_param_witness(9, 1.0).ratio == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(cond_param_witness(1, 0.7).ratio == doctest::Approx(1.0).epsilon(1e-12));
    const auto w = cond_param_witness(3, 0.5);
    CHECK(w.f.support_size() == 6);
    CHECK(w.A == std::vector<Index>{1, 3, 5});
}

TEST_CASE("conditionality estimate") {
    // lattice gauges contract coordinate projections: the estimate is exactly 1
    const auto lq = unit_lq_oracle(0.5, 64);
    CHECK(cond_param_estimate(*lq, {4, 16, 500, 3}) == doctest::Approx(1.0));

    const DiffBasisOracle diff(0.5);
    CHECK(cond_param_estimate(diff, {4, 8, 500, 3}) >= 16.0);
    CHECK(cond_param_estimate(diff, {4, 8, 0, 3}) >= 16.0); // witness family alone

    // monotone in m, dim and budget
    const double base = cond_param_estimate(diff, {2, 8, 200, 3});
    CHECK(cond_param_estimate(diff, {4, 8, 200, 3}) >= base);
    CHECK(cond_param_estimate(diff, {2, 16, 200, 3}) >= base);
    CHECK(cond_param_estimate(diff, {2, 8, 800, 3}) >= base);

    CHECK_THROWS_AS(cond_param_estimate(diff, {9, 8, 10, 3}), validation_error);
}

TEST_CASE("direct sum oracle") {
    const auto x = unit_lq_oracle(0.5, 64);
    const auto y = std::make_shared<DiffBasisOracle>(0.5);

    const DirectSumOracle sum1(x, x, 1.0);
    // odd coordinates only: plain X norm
    CHECK(sum1(SparseVec({{1, 2.0}, {3, 1.0}})) == doctest::Approx((*x)(SparseVec({{1, 2.0}, {2, 1.0}}))));
    // unit vectors on both sides at q_sum = 1
    CHECK(sum1(SparseVec({{1, 1.0}, {2, 1.0}})) == doctest::Approx(2.0));

    const DirectSumOracle sumh(x, y, 0.5);
    // both components of norm 1 -> (1+1)^2 = 4 ... e_1 odd has X-norm 1; pick
    // an even coordinate with diff-norm 1: 0.25 * e_1 has diff norm 4*0.25 = 1
    CHECK(sumh(SparseVec({{1, 1.0}, {2, 0.25}})) == doctest::Approx(4.0).epsilon(1e-12));

    CHECK_THROWS_AS(DirectSumOracle(x, y, 1.5), validation_error);
}

TEST_CASE("construction norm") {
    const auto sym = std::make_shared<SymmetricGauge>(lpq_gauge(2.0, 0.5, 1 << 12));
    const auto base = unit_lq_oracle(0.5, 1 << 12);
    const DkkSpec spec{base, sym, IntervalPartition::dyadic(5)}; // range 31

    // vanishing block sums: the first term and V_J both vanish
    const SparseVec cancel({{2, 1.0}, {3, -1.0}, {4, 2.0}, {6, -2.0}});
    CHECK(dkk_norm(cancel, spec) == doctest::Approx((*sym)(cancel)).epsilon(1e-13));

    // f = chi_{J_k}: the remainder vanishes and the first term is Gamma_{|J_k|}
    const auto [f3, l3] = spec.partition.interval(3);
    const SparseVec block = SparseVec::indicator(f3, l3);
    CHECK(dkk_norm(block, spec) == doctest::Approx(sym->fundamental(l3 - f3 + 1)).epsilon(1e-13));

    // e_1 against a |J_1| = 4 partition: two-term hand assembly
    const DkkSpec spec4{base, sym, IntervalPartition::constant(4, 3)};
    std::vector<SparseVec::Entry> rem{{1, 0.75}, {2, -0.25}, {3, -0.25}, {4, -0.25}};
    const double expected = 0.25 * sym->fundamental(4) + (*sym)(SparseVec(rem));
    CHECK(dkk_norm(SparseVec::unit(1), spec4) == doctest::Approx(expected).epsilon(1e-13));

    // support past the partition range is rejected
    CHECK_THROWS_AS(dkk_norm(SparseVec::unit(32), spec), validation_error);

    // homogeneity and the remainder lower bound
    for (int trial = 0; trial < 200; ++trial) {
        auto g = rng_for(83, static_cast<std::uint64_t>(trial));
        std::vector<SparseVec::Entry> e;
        for (Index n = 1; n <= 31; ++n) {
            if (uniform01(g) < 0.5) continue;
            double v = uniform(g, -2.0, 2.0);
            if (v == 0.0) v = 1.0;
            e.push_back({n, v});
        }
        if (e.empty()) continue;
        const SparseVec f(e);
        const double val = dkk_norm(f, spec);
        CHECK(val > 0.0);
        CHECK(dkk_norm(f.scaled(3.0), spec) == doctest::Approx(3.0 * val).epsilon(1e-12));
        const SparseVec remainder = f.minus(apply_averaging(f, spec.partition.as_family()));
        const double second = remainder.empty() ? 0.0 : (*sym)(remainder);
        CHECK(val >= second * (1.0 - 1e-12));
    }
}

TEST_SUITE_END();
