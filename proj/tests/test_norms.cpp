#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evoscope/norms.hpp"
#include "evoscope/witness.hpp"

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

GridFunction ones(const NormEngine& e) {
    return GridFunction(
        e.grid_ptr(),
        Matrix::Ones(e.family().dim(), static_cast<Eigen::Index>(e.grid().size())));
}

// straight re-evaluation of the sup, one term at a time
double brute_phi(const NormEngine& e, double alpha, std::size_t node,
                 const GridFunction& u) {
    double nu = u.node_norm(node);
    if (nu == 0.0) return 0.0;
    double t = e.grid()[node];
    double best = 0.0;
    for (double tau : e.sampler().times) {
        if (tau < t) continue;
        best = std::max(best,
                        std::exp(-alpha * (tau - t)) * e.family().norm(tau, t));
    }
    return best * nu;
}

}  // namespace

TEST_CASE("phi matches the brute-force sup") {
    auto e = make(example1(), 50.0, 0.01);
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    auto u = gen.next();
    for (double alpha : {-1.0, 0.0, 2.0})
        for (std::size_t node : {0ul, 137ul, 1000ul, 4999ul})
            CHECK(e.phi(alpha, node, u) ==
                  doctest::Approx(brute_phi(e, alpha, node, u)).epsilon(1e-9));
}

TEST_CASE("phi of a zero value is zero and of constant decay is the norm") {
    auto e = make(EvolutionFamily::constant_decay(1.0), 20.0, 0.01);
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    auto u = gen.next();
    auto p = e.phi_profile(0.0, u);
    for (std::size_t i = 0; i < e.grid().size(); ++i)
        CHECK(p.phi[i] == doctest::Approx(u.node_norm(i)).epsilon(1e-12));
    CHECK(e.phi_profile(0.0, GridFunction::zero(e.grid_ptr(), 1)).norm == 0.0);
}

TEST_CASE("phi profile reports the smallest maximizer") {
    auto e = make(EvolutionFamily::constant_decay(1.0), 20.0, 0.01);
    auto zero = GridFunction::zero(e.grid_ptr(), 1);
    auto p = e.phi_profile(0.0, zero);
    CHECK(p.argmax_index == 0);
    CHECK(p.argmax_t == 0.0);

    // bump peaking at t = 2 with peak value 1
    Matrix v = Matrix::Zero(1, static_cast<Eigen::Index>(e.grid().size()));
    for (std::size_t i = 0; i < e.grid().size(); ++i) {
        double t = e.grid()[i];
        v(0, static_cast<Eigen::Index>(i)) = std::max(0.0, 1.0 - std::abs(t - 2.0));
    }
    auto q = e.phi_profile(0.0, GridFunction(e.grid_ptr(), v));
    CHECK(q.norm == doctest::Approx(1.0));
    CHECK(q.argmax_t == doctest::Approx(2.0));
}

TEST_CASE("look-ahead peak of the first example at alpha = -1") {
    auto e = make(example1(), 50.0, 0.01);
    // sup_{t >= s} of the weighted gain is s(1 + sin s), so e^pi at s = pi/2
    double v = e.phi(-1.0, e.grid().snap_index(M_PI / 2.0), ones(e));
    CHECK(v == doctest::Approx(std::exp(M_PI)).epsilon(0.01));
    auto wp = e.weight_profile(-1.0);
    CHECK(wp.w[e.grid().snap_index(M_PI / 2.0)] ==
          doctest::Approx(std::exp(M_PI)).epsilon(0.01));
}

TEST_CASE("weight of constant decay at matching rate is one") {
    auto e = make(EvolutionFamily::constant_decay(1.0), 20.0, 0.01);
    auto wp = e.weight_profile(-1.0);
    for (double w : wp.w) CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sandwich and monotonicity hold to rounding") {
    auto e = make(example1(), 50.0, 0.01);
    BumpGenerator gen(e.grid_ptr(), 1, 0x5EED);
    for (int i = 0; i < 10; ++i) {
        auto u = gen.next();
        CHECK(e.sandwich_violation(-1.0, u) <= 1e-12);
        CHECK(e.sandwich_violation(0.0, u) <= 1e-12);
        CHECK(e.monotonicity_violation(-1.0, 0.0, u) <= 1e-12);
        CHECK(e.monotonicity_violation(0.0, 0.0, u) <= 1e-12);
    }
    CHECK_THROWS_AS(e.monotonicity_violation(0.0, -1.0, ones(e)), DomainError);
}

TEST_CASE("matrix-path phi agrees with the brute-force sup") {
    Matrix a(2, 2);
    a << 0.0, 1.0, -1.0, 0.0;
    auto rot = EvolutionFamily::matrix_ode([a](double) { return a; }, 2, 0.01);
    auto e = make(rot, 5.0, 0.01);
    BumpGenerator gen(e.grid_ptr(), 2, 0x5EED);
    auto u = gen.next();
    for (std::size_t node : {0ul, 100ul, 400ul}) {
        double nu = u.node_norm(node);
        double t = e.grid()[node];
        double best = 0.0;
        for (std::size_t j = node; j < e.grid().size(); ++j) {
            double tau = e.grid()[j];
            best = std::max(best, std::exp(0.2 * (tau - t)) *
                                      (rot.evaluate(tau, t) * u.value(node)).norm());
        }
        CHECK(e.phi(-0.2, node, u) == doctest::Approx(best).epsilon(1e-6));
    }
    CHECK(e.sandwich_violation(0.0, u) <= 1e-12);
}

TEST_CASE("membership verdicts") {
    auto e1 = make(example1(), 50.0, 0.01);
    SUBCASE("compactly supported bump is a member") {
        BumpGenerator gen(e1.grid_ptr(), 1, 0x5EED);
        CHECK(e1.membership(-1.0, gen.next()).member);
    }
    SUBCASE("nonzero constant fails under constant decay at alpha 0") {
        auto cd = make(EvolutionFamily::constant_decay(1.0), 20.0, 0.01);
        CHECK_FALSE(cd.membership(0.0, ones(cd)).member);
    }
    SUBCASE("weight-normalized plateau is a member") {
        auto wp = e1.weight_profile(-1.0);
        PlateauSpec spec{2.0, 1.0, 30.0, 2.0};
        auto plateau = make_plateau(spec, e1.grid_ptr());
        Matrix v(1, static_cast<Eigen::Index>(e1.grid().size()));
        for (std::size_t i = 0; i < e1.grid().size(); ++i)
            v(0, static_cast<Eigen::Index>(i)) =
                plateau.values()(0, static_cast<Eigen::Index>(i)) / wp.w[i];
        CHECK(e1.membership(-1.0, GridFunction(e1.grid_ptr(), v)).member);
    }
    SUBCASE("zero function is a member") {
        CHECK(e1.membership(-1.0, GridFunction::zero(e1.grid_ptr(), 1)).member);
    }
}

TEST_CASE("quasi-negativity") {
    auto e = make(example1(), 200.0, 0.01);
    SUBCASE("same exponent gives K = 1") {
        auto rep = e.quasi_negativity(-1.0, 1.0, 4, 0x5EED);
        CHECK(rep.equivalent);
        CHECK(rep.k_measured == doctest::Approx(1.0));
    }
    SUBCASE("0 against -1 stabilizes under the known bound") {
        auto rep = e.quasi_negativity(0.0, 1.0, 4, 0x5EED);
        CHECK(rep.equivalent);
        CHECK(rep.k_measured <= std::exp(2.0 * M_PI) * 1.01);
        CHECK(rep.k_measured >= 1.0);
    }
    SUBCASE("precondition") {
        CHECK_THROWS_AS(e.quasi_negativity(-2.0, 1.0, 4, 0x5EED), DomainError);
        CHECK_THROWS_AS(e.quasi_negativity(0.0, -1.0, 4, 0x5EED), DomainError);
    }
}

TEST_CASE("log-augmented sampler extends past the horizon") {
    auto grid = std::make_shared<const TimeGrid>(TimeGrid::uniform(100.0, 0.1));
    auto s = SupSampler::log_augmented(*grid, 1000.0, 50);
    CHECK(s.grid_count == grid->size());
    CHECK(s.times.size() > s.grid_count);
    CHECK(s.t_sup() == doctest::Approx(1000.0));
    CHECK(std::is_sorted(s.times.begin(), s.times.end()));
    CHECK_THROWS_AS(SupSampler::log_augmented(*grid, 50.0, 10), DomainError);
}

TEST_CASE("refinement stability of phi") {
    auto coarse = make(example1(), 50.0, 0.02);
    auto fine = make(example1(), 50.0, 0.01);
    auto u_fine = [&] {
        BumpGenerator gen(fine.grid_ptr(), 1, 0x5EED);
        return gen.next();
    }();
    // resample onto the coarse grid; triangle bumps are piecewise linear
    Matrix v(1, static_cast<Eigen::Index>(coarse.grid().size()));
    for (std::size_t i = 0; i < coarse.grid().size(); ++i)
        v(0, static_cast<Eigen::Index>(i)) = u_fine.interp(coarse.grid()[i])(0);
    GridFunction u_coarse(coarse.grid_ptr(), v);
    double nc = coarse.phi_profile(-1.0, u_coarse).norm;
    double nf = fine.phi_profile(-1.0, u_fine).norm;
    CHECK(nc == doctest::Approx(nf).epsilon(0.01));
}
