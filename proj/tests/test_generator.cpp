#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evoscope/generator.hpp"

using namespace evoscope;

namespace {

EvolutionFamily cd() { return EvolutionFamily::constant_decay(1.0); }

NormEngine make(const EvolutionFamily& fam, double t_max = 20.0,
                double h = 0.01) {
    auto grid = std::make_shared<const TimeGrid>(TimeGrid::uniform(t_max, h));
    return NormEngine(fam, grid, SupSampler::linear(*grid));
}

GridFunction from_fn(const std::shared_ptr<const TimeGrid>& g,
                     double (*fn)(double)) {
    Matrix v(1, static_cast<Eigen::Index>(g->size()));
    for (std::size_t i = 0; i < g->size(); ++i)
        v(0, static_cast<Eigen::Index>(i)) = fn((*g)[i]);
    return GridFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("zero source gives the zero solution") {
    auto g = std::make_shared<const TimeGrid>(TimeGrid::uniform(10.0, 0.01));
    auto u = apply_inverse(cd(), GridFunction::zero(g, 1));
    CHECK(u.sup_norm() == 0.0);
}

TEST_CASE("closed-form check: f = t e^{-t} yields u = (t^2/2) e^{-t}") {
    auto g = std::make_shared<const TimeGrid>(TimeGrid::uniform(10.0, 0.01));
    CHECK_THROWS_AS(
        apply_inverse(cd(), from_fn(g, [](double t) { return std::exp(-t); })),
        DomainError);  // f(0) != 0
    auto u = apply_inverse(cd(), from_fn(g, [](double t) {
                               return t * std::exp(-t);
                           }));
    CHECK(u.value(g->node_index(2.0))(0) ==
          doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-4));
    CHECK(u.value(g->node_index(7.0))(0) ==
          doctest::Approx(0.5 * 49.0 * std::exp(-7.0)).epsilon(1e-4));
}

TEST_CASE("step response saturates at 1 - e^{-t}") {
    auto g = std::make_shared<const TimeGrid>(TimeGrid::uniform(10.0, 0.01));
    auto f = from_fn(g, [](double t) { return t > 0.0 ? 1.0 : 0.0; });
    auto u = apply_inverse(cd(), f);
    // the jump at 0 is resolved as a one-cell ramp, an O(h) defect
    for (double t : {1.0, 3.0, 8.0})
        CHECK(u.value(g->node_index(t))(0) ==
              doctest::Approx(1.0 - std::exp(-t)).epsilon(0.005));
}

TEST_CASE("the inverse map is linear and causal") {
    auto g = std::make_shared<const TimeGrid>(TimeGrid::uniform(10.0, 0.01));
    BumpGenerator gen(g, 1, 0x5EED);
    auto f1 = gen.next();
    auto f2 = gen.next();
    auto lhs = apply_inverse(cd(), f1.scaled(2.0).plus(f2, -3.0));
    auto rhs = apply_inverse(cd(), f1).scaled(2.0).plus(apply_inverse(cd(), f2),
                                                       -3.0);
    double scale = std::max(1.0, rhs.sup_norm());
    CHECK(lhs.plus(rhs, -1.0).sup_norm() <= 1e-12 * scale);

    // editing f past a node leaves the solution before it bitwise unchanged
    std::size_t cut = g->node_index(5.0);
    Matrix v = f1.values();
    for (std::size_t j = cut + 1; j < g->size(); ++j)
        v(0, static_cast<Eigen::Index>(j)) += 1.0;
    auto u_orig = apply_inverse(cd(), f1);
    auto u_edit = apply_inverse(cd(), GridFunction(g, std::move(v)));
    for (std::size_t j = 0; j <= cut; ++j)
        CHECK(u_edit.value(j)(0) == u_orig.value(j)(0));
}

TEST_CASE("resolvent bound holds on seeded bumps") {
    auto e = make(cd(), 20.0, 0.01);
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    for (int i = 0; i < 10; ++i)
        CHECK(resolvent_bound_margin(e, -0.5, gen.next()) >= -1e-9);
    CHECK_THROWS_AS(resolvent_bound_margin(e, 0.0, gen.next()), DomainError);
}

TEST_CASE("decay transfer matches a trapezoid oracle") {
    // oracle: evaluate the quadrature directly at a far node and compare
    auto g = std::make_shared<const TimeGrid>(TimeGrid::uniform(10.0, 0.01));
    BumpGenerator gen(g, 1, 0x5EED);
    auto f = gen.next();
    auto u = apply_inverse(cd(), f);
    std::size_t t_node = g->node_index(9.0);
    double t = (*g)[t_node];
    double acc = 0.0;
    for (std::size_t j = 0; j < t_node; ++j) {
        double h = (*g)[j + 1] - (*g)[j];
        acc += 0.5 * h *
               (std::exp(-(t - (*g)[j])) * f.value(j)(0) +
                std::exp(-(t - (*g)[j + 1])) * f.value(j + 1)(0));
    }
    CHECK(u.value(t_node)(0) == doctest::Approx(acc).epsilon(1e-9));
}

TEST_CASE("resolvent estimate on constant decay") {
    auto e = make(cd(), 100.0, 0.01);
    auto at0 = estimate_resolvent_norm(e, 0.0);
    CHECK(at0.c >= 0.9);
    CHECK(at0.c <= 1.1);
    CHECK_FALSE(at0.unbounded);
    CHECK(at0.n_tests > 20);
    auto neg = estimate_resolvent_norm(e, -0.5);
    CHECK(neg.c <= 2.05);
    CHECK_FALSE(neg.unbounded);
}

TEST_CASE("certification on constant decay") {
    auto e = make(cd(), 100.0, 0.01);
    auto est = estimate_resolvent_norm(e, 0.0);
    auto v = certify_stability(e, 0.0, est, 0.5);
    CHECK(v.certified);
    CHECK(v.rate >= 0.45);
    CHECK(v.step1_ok);
    CHECK(v.step2_ok);
    CHECK(v.measured_margin >= -1e-9);
    CHECK_THROWS_AS(certify_stability(e, 0.0, est, 0.0), DomainError);
    CHECK_THROWS_AS(certify_stability(e, 0.0, est, 1.0), DomainError);

    auto swept = certify_stability_sweep(e, 0.0, est);
    CHECK(swept.certified);
    CHECK(swept.rate >= v.rate);

    ResolventEstimate fake = est;
    fake.unbounded = true;
    auto refused = certify_stability(e, 0.0, fake, 0.5);
    CHECK_FALSE(refused.certified);
    CHECK(refused.reason == "inverse unbounded");
}

TEST_CASE("quadrature consistency along subintervals") {
    auto g = std::make_shared<const TimeGrid>(TimeGrid::uniform(10.0, 0.01));
    BumpGenerator gen(g, 1, 0x5EED);
    auto f = gen.next();
    auto u = apply_inverse(cd(), f);
    double scale = std::max(1.0, u.sup_norm());
    CHECK(inverse_consistency_residual(cd(), f, u, g->node_index(1.0),
                                       g->node_index(8.0)) <=
          10.0 * 0.01 * 0.01 * scale);
    CHECK_THROWS_AS(inverse_consistency_residual(cd(), f, u, 5, 5), DomainError);

    Matrix a(2, 2);
    a << 0.0, 1.0, -1.0, 0.0;
    auto rot = EvolutionFamily::matrix_ode([a](double) { return a; }, 2, 0.01);
    auto g2 = std::make_shared<const TimeGrid>(TimeGrid::uniform(5.0, 0.01));
    BumpGenerator gen2(g2, 2, 0x5EED);
    auto f2 = gen2.next();
    auto u2 = apply_inverse(rot, f2);
    double scale2 = std::max(1.0, u2.sup_norm());
    CHECK(inverse_consistency_residual(rot, f2, u2, g2->node_index(0.5),
                                       g2->node_index(4.0)) <=
          10.0 * 0.01 * 0.01 * scale2);
}
