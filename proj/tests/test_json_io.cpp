#include <doctest.h>

#include "lorentz/errors.hpp"
#include "lorentz/json_io.hpp"

using namespace lorentz;

TEST_SUITE_BEGIN("json_io");

TEST_CASE("sparse vector wire format") {
    const auto f = parse_sparse_vec(json::parse(R"([{"n":1,"a":0.5},{"n":7,"a":-2}])"));
    CHECK(f.support() == std::vector<Index>{1, 7});
    CHECK(f.at(7) == -2.0);
    CHECK(to_json(f).dump() == R"([{"a":0.5,"n":1},{"a":-2,"n":7}])");

    CHECK_THROWS_AS(parse_sparse_vec(json::parse(R"([{"n":1,"a":0}])")), validation_error);
    CHECK_THROWS_AS(parse_sparse_vec(json::parse(R"([{"n":2,"a":1},{"n":1,"a":1}])")), validation_error);
    CHECK_THROWS_AS(parse_sparse_vec(json::parse(R"({"n":2})")), validation_error);
}

TEST_CASE("weight wire format") {
    const auto power = parse_weight(json::parse(R"({"kind":"power","p":2.0,"N":16})"), 64);
    CHECK(power.horizon() == 16);
    CHECK(power.power_exponent() == 2.0);

    const auto expl = parse_weight(json::parse(R"({"kind":"explicit","values":[1,2,2.5]})"), 64);
    CHECK(expl.values() == std::vector<double>{1, 2, 2.5});

    const auto fromw = parse_weight(json::parse(R"({"kind":"from_increments","w":[1,1,1],"q":1.0})"), 64);
    CHECK(fromw.values() == std::vector<double>{1, 2, 3});

    CHECK_THROWS_AS(parse_weight(json::parse(R"({"kind":"nope"})"), 64), validation_error);
}

TEST_CASE("space wire format") {
    const auto lpq = parse_space(json::parse(R"({"space":"lpq","p":2,"q":0.5})"), 32);
    CHECK(lpq.q == 0.5);
    CHECK(lpq.s.horizon() == 32);
    CHECK(!lpq.explicit_w.has_value());

    const auto dq = parse_space(
        json::parse(R"({"space":"d_q","weight":{"kind":"explicit","values":[1,2,3]},"q":1.0})"), 32);
    CHECK(dq.s.values() == std::vector<double>{1, 2, 3});

    // from_increments at the space's q keeps the d(w,q) parameterization
    const auto dwq = parse_space(
        json::parse(R"({"space":"d_q","weight":{"kind":"from_increments","w":[1,0.5],"q":0.5},"q":0.5})"), 32);
    CHECK(dwq.explicit_w.has_value());

    CHECK_THROWS_AS(parse_space(json::parse(R"({"space":"zzz"})"), 32), validation_error);
}

TEST_CASE("family wire format") {
    const auto fam = parse_family(json::parse("[[1,2],[5,6,7]]"));
    CHECK(fam.size() == 2);
    CHECK(fam.blocks()[1] == std::vector<Index>{5, 6, 7});
    CHECK(to_json(fam).dump() == "[[1,2],[5,6,7]]");
    CHECK_THROWS_AS(parse_family(json::parse("[[1,2],[2,3]]")), validation_error);
}

TEST_CASE("dkk spec wire format") {
    const auto spec = parse_dkk_spec(json::parse(R"({
        "base": {"kind":"direct_sum",
                 "x": {"kind":"unit_lq","q":0.5},
                 "y": {"kind":"diff_lq","q":0.5},
                 "q_sum": 0.5},
        "sym": {"space":"lpq","p":2,"q":0.5},
        "partition": {"kind":"dyadic","k":4}})"), 256);
    CHECK(spec.partition.count() == 4);
    CHECK(spec.base->label().find("diff_lq") != std::string::npos);
    CHECK(dkk_norm(SparseVec::unit(1), spec) > 0.0);

    const auto cpart = parse_interval_partition(json::parse(R"({"kind":"constant","size":4,"count":2})"));
    CHECK(cpart.range_end() == 8);
    const auto epart = parse_interval_partition(json::parse(R"({"kind":"explicit","sizes":[2,5]})"));
    CHECK(epart.interval(1) == std::pair<Index, Index>{3, 7});
}

TEST_CASE("fifteen significant digits") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(8355872.0) == "8355872");
    CHECK(format_double(1.81794174305766243) == "1.81794174305766");
    CHECK(format_double(0.1) == "0.1");
    CHECK(num(1.0 / 3.0).dump() == "0.333333333333333");
}

TEST_SUITE_END();
