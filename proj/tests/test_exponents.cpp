#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evoscope/exponents.hpp"

using namespace evoscope;

namespace {

EvolutionFamily example1() {
    return EvolutionFamily::scalar_potential(
        [](double t) { return t * (2.0 + std::sin(t)); }, 1, "ex1");
}

NormEngine make(const EvolutionFamily& fam, double t_max, double h) {
    auto grid = std::make_shared<const TimeGrid>(TimeGrid::uniform(t_max, h));
    return NormEngine(fam, grid, SupSampler::linear(*grid));
}

}  // namespace

TEST_CASE("constant decay exponents") {
    auto e = make(EvolutionFamily::constant_decay(1.0), 100.0, 0.01);
    CHECK(lyapunov_exponent(e) == doctest::Approx(-1.0).epsilon(0.01));
    auto b = bohl_exponent(e, 20.0);
    CHECK_FALSE(b.divergent);
    CHECK(b.value == doctest::Approx(-1.0).epsilon(0.01));
    CHECK(is_admissible(e, -1.0).admissible);
    CHECK(is_admissible(e, 0.0).admissible);
    CHECK_FALSE(is_admissible(e, -1.2).admissible);
    CHECK(is_strict(e, -0.5));
    CHECK(inf_admissible(e, -3.0, 0.0, 0.02) == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("admissibility evidence names a blow-up pair") {
    auto e = make(EvolutionFamily::constant_decay(1.0), 100.0, 0.01);
    auto res = is_admissible(e, -1.5);
    REQUIRE_FALSE(res.admissible);
    CHECK(res.growth > 0.0);
    CHECK(res.evidence_t > res.evidence_s);
}

TEST_CASE("first example: admissible from -1, never strict") {
    auto e = make(example1(), 200.0, 0.01);
    CHECK(is_admissible(e, -1.0).admissible);
    CHECK(is_admissible(e, 0.0).admissible);
    CHECK_FALSE(is_admissible(e, -1.3).admissible);
    CHECK_FALSE(is_strict(e, -1.0));
    CHECK_FALSE(is_strict(e, 0.0));
    CHECK_FALSE(is_strict(e, 5.0));
    CHECK(inf_admissible(e, -2.0, 0.0, 0.02) == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(bohl_exponent(e, 40.0).divergent);
}

TEST_CASE("strict requires admissible") {
    auto e = make(EvolutionFamily::constant_decay(1.0), 100.0, 0.01);
    CHECK_THROWS_AS(is_strict(e, -2.0), DomainError);
}

TEST_CASE("admissibility is monotone across tested exponents") {
    auto e = make(example1(), 200.0, 0.01);
    bool seen_admissible = false;
    for (double a : {-1.6, -1.3, -1.0, -0.5, 0.0, 1.0, 5.0}) {
        bool adm = is_admissible(e, a).admissible;
        if (seen_admissible) CHECK(adm);
        seen_admissible = seen_admissible || adm;
    }
    CHECK(seen_admissible);
}

TEST_CASE("bisection bracket is validated") {
    auto e = make(EvolutionFamily::constant_decay(1.0), 100.0, 0.01);
    CHECK_THROWS_AS(inf_admissible(e, 0.0, -3.0, 0.02), DomainError);
    CHECK_THROWS_AS(inf_admissible(e, -0.5, 0.0, 0.02), DomainError);  // lo admissible
    CHECK_THROWS_AS(inf_admissible(e, -3.0, -2.0, 0.02), DomainError);  // hi not
}

TEST_CASE("rescaling shifts the admissibility boundary") {
    for (double lambda : {-1.0, 0.7}) {
        auto e = make(EvolutionFamily::constant_decay(1.0).rescale(lambda), 100.0,
                      0.01);
        double inf_a = inf_admissible(e, -3.0 - lambda, 0.5 - lambda, 0.02);
        CHECK(inf_a == doctest::Approx(-1.0 - lambda).epsilon(0.05));
    }
}

TEST_CASE("classification verdicts") {
    SUBCASE("constant decay is uniformly exponentially stable") {
        auto e = make(EvolutionFamily::constant_decay(1.0), 100.0, 0.01);
        auto rep = classify(e, {-1.0, -0.5, 0.0});
        CHECK(rep.classification == "uniform_exp_stable");
        CHECK(rep.k_l <= rep.k_b.value + 0.02);
        CHECK(rep.inf_a == doctest::Approx(-1.0).epsilon(0.06));
        for (const auto& v : rep.tested)
            if (v.strict) CHECK(v.admissible);
    }
    SUBCASE("first example is only nonuniformly stable") {
        auto e = make(example1(), 200.0, 0.01);
        auto rep = classify(e, {-1.0, 0.0, 5.0});
        CHECK(rep.classification == "nonuniform_exp_stable");
        CHECK(rep.k_b.divergent);
        CHECK(rep.inf_a < 0.0);
        CHECK_FALSE(rep.uniform_exp_stable);
    }
}

TEST_CASE("bohl gap range is validated") {
    auto e = make(EvolutionFamily::constant_decay(1.0), 100.0, 0.01);
    CHECK_THROWS_AS(bohl_exponent(e, 1.0), DomainError);
    CHECK_THROWS_AS(bohl_exponent(e, 80.0), DomainError);
}
