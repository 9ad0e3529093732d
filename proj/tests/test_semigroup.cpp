#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evoscope/semigroup.hpp"

using namespace evoscope;

namespace {

EvolutionFamily example1() {
    return EvolutionFamily::scalar_potential(
        [](double t) { return t * (2.0 + std::sin(t)); }, 1, "ex1");
}

NormEngine make(const EvolutionFamily& fam, double t_max = 20.0,
                double h = 0.01) {
    auto grid = std::make_shared<const TimeGrid>(TimeGrid::uniform(t_max, h));
    return NormEngine(fam, grid, SupSampler::linear(*grid));
}

}  // namespace

TEST_CASE("zero shift is the identity, bitwise") {
    auto e = make(EvolutionFamily::constant_decay(1.0));
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    auto u = gen.next();
    CHECK(semigroup_apply(e, 0.0, u).values() == u.values());
}

TEST_CASE("transport and the zero branch") {
    auto e = make(EvolutionFamily::constant_decay(1.0));
    const auto& g = e.grid();
    // indicator-style bump carried from s = 2 to s = 3 picks up U(3,2)
    Matrix v = Matrix::Zero(1, static_cast<Eigen::Index>(g.size()));
    v(0, static_cast<Eigen::Index>(g.node_index(2.0))) = 1.0;
    auto tu = semigroup_apply(e, 1.0, GridFunction(e.grid_ptr(), v));
    CHECK(tu.value(g.node_index(3.0))(0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    auto w = semigroup_apply(e, 1.0, gen.next());
    for (std::size_t i = 0; i <= g.node_index(1.0); ++i)
        CHECK(w.node_norm(i) == 0.0);
    CHECK_THROWS_AS(semigroup_apply(e, 0.005, gen.next()), DomainError);
}

TEST_CASE("semigroup law") {
    auto scalar = make(example1());
    BumpGenerator sg(scalar.grid_ptr(), 1, 0x5EED);
    for (auto [t, s] : {std::pair{0.5, 0.25}, {1.0, 1.0}, {0.0, 2.0}}) {
        auto u = sg.next();
        double scale = std::max(1.0, scalar.phi_profile(-1.0, u).norm);
        CHECK(semigroup_law_residual(scalar, -1.0, t, s, u) <= 1e-12 * scale);
    }

    Matrix a(2, 2);
    a << 0.0, 1.0, -1.0, 0.0;
    auto rot = make(EvolutionFamily::matrix_ode([a](double) { return a; }, 2, 0.01),
                    5.0, 0.01);
    BumpGenerator rg(rot.grid_ptr(), 2, 0x5EED);
    CHECK(semigroup_law_residual(rot, 0.0, 0.5, 0.5, rg.next()) <= 1e-6);
}

TEST_CASE("growth bound") {
    auto cd = make(EvolutionFamily::constant_decay(1.0));
    auto ex1 = make(example1(), 50.0, 0.01);
    BumpGenerator g1(cd.grid_ptr(), 1, 0x5EED);
    BumpGenerator g2(ex1.grid_ptr(), 1, 0x5EED);
    for (int i = 0; i < 20; ++i) {
        auto u = g1.next();
        CHECK(growth_bound_margin(cd, 0.0, 1.0, u) >=
              -1e-12 * cd.phi_profile(0.0, u).norm);
        auto v = g2.next();
        CHECK(growth_bound_margin(ex1, -1.0, 2.0, v) >=
              -1e-12 * ex1.phi_profile(-1.0, v).norm);
    }
}

TEST_CASE("membership survives transport") {
    auto e = make(example1(), 50.0, 0.01);
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    for (int i = 0; i < 10; ++i) {
        auto u = gen.next();
        REQUIRE(e.membership(-1.0, u).member);
        CHECK(e.membership(-1.0, semigroup_apply(e, 1.0, u)).member);
    }
}

TEST_CASE("shifted-phi domination") {
    auto e = make(example1(), 50.0, 0.01);
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    auto u = gen.next();
    double alpha = -1.0, t = 2.0;
    auto base = e.phi_profile(alpha, u);
    auto moved = e.phi_profile(alpha, semigroup_apply(e, t, u));
    std::size_t k = e.grid().node_index(t);
    for (std::size_t j = k + 1; j < e.grid().size(); ++j)
        CHECK(moved.phi[j] <=
              std::exp(alpha * t) * base.phi[j - k] * (1.0 + 1e-12) + 1e-300);
}

TEST_CASE("strong continuity residuals shrink with the shift") {
    auto e = make(EvolutionFamily::constant_decay(1.0));
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    auto u = gen.next();
    auto table = strong_continuity_probe(e, 0.0, u,
                                         {0.32, 0.16, 0.08, 0.04, 0.02, 0.01});
    CHECK(table.front().second > 0.0);
    for (std::size_t i = 1; i < table.size(); ++i)
        CHECK(table[i].second < table[i - 1].second);
    auto zeros = strong_continuity_probe(
        e, 0.0, GridFunction::zero(e.grid_ptr(), 1), {0.32, 0.01});
    for (auto [t, r] : zeros) CHECK(r == 0.0);
}

TEST_CASE("rescaling leaves the weighted profile unchanged") {
    auto ex1 = make(example1(), 50.0, 0.01);
    auto cd = make(EvolutionFamily::constant_decay(1.0));
    BumpGenerator g1(ex1.grid_ptr(), 1, 0x5EED);
    BumpGenerator g2(cd.grid_ptr(), 1, 0x5EED);
    auto u1 = g1.next();
    auto u2 = g2.next();
    CHECK(rescaling_invariance_deviation(ex1, 0.0, 0.0, u1) == 0.0);
    CHECK(rescaling_invariance_deviation(ex1, 0.0, 0.7, u1) <=
          1e-9 * (1.0 + ex1.phi_profile(0.0, u1).norm));
    CHECK(rescaling_invariance_deviation(cd, -0.5, -0.5, u2) <=
          1e-9 * (1.0 + cd.phi_profile(-0.5, u2).norm));
}
