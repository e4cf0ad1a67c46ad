#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "ttdens/grid.hpp"

using namespace ttdens;

TEST_CASE("equidistant grid matches the documented axes") {
    const Grid g = make_equidistant_grid({-5.0, 0.0}, {0.2, 0.2}, {66, 41});
    CHECK(g.axes[0].size() == 66);
    CHECK(g.axes[0].front() == -5.0);
    CHECK(g.axes[0].back() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(g.axes[1].front() == 0.0);
    CHECK(g.axes[1].back() == doctest::Approx(8.0).epsilon(1e-12));

    const Grid h = make_equidistant_grid({-4.0}, {0.2}, {41});
    CHECK(h.axes[0].back() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("equidistant grid rejects bad parameters") {
    CHECK_THROWS_AS(make_equidistant_grid({0.0}, {0.0}, {5}), std::invalid_argument);
    CHECK_THROWS_AS(make_equidistant_grid({0.0}, {-1.0}, {5}), std::invalid_argument);
    CHECK_THROWS_AS(make_equidistant_grid({0.0}, {1.0}, {1}), std::invalid_argument);
}

TEST_CASE("sample_function reproduces f at grid points bit-exactly") {
    const Grid g = make_equidistant_grid({0.0, -1.0}, {0.5, 0.25}, {5, 9});
    const DenseTensor ones =
        sample_function(g, [](const Eigen::VectorXd&) { return 1.0; });
    for (double v : ones.values) CHECK(v == 1.0);

    const DenseTensor proj =
        sample_function(g, [](const Eigen::VectorXd& x) { return x(0) * x(1); });
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            CHECK(proj.at({i, j}) == g.axes[0][i] * g.axes[1][j]);
}

TEST_CASE("sample_function on a 1-D grid gives the coordinate vector") {
    const Grid g{{{0.0, 1.0, 2.0}}};
    const DenseTensor t =
        sample_function(g, [](const Eigen::VectorXd& x) { return x(0); });
    CHECK(t.values == std::vector<double>{0.0, 1.0, 2.0});
}

TEST_CASE("sample_function names the offending index on non-finite values") {
    const Grid g{{{0.0, 1.0, 2.0}}};
    CHECK_THROWS_WITH_AS(
        sample_function(g, [](const Eigen::VectorXd& x) {
            return x(0) == 2.0 ? std::nan("") : 1.0;
        }),
        "sample_function: non-finite value at index (2)", std::runtime_error);
}

TEST_CASE("moments of a separable standard Gaussian product") {
    const Grid g = make_equidistant_grid({-4.0, -4.0}, {0.2, 0.2}, {41, 41});
    auto phi = [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    };
    const DenseTensor t = sample_function(
        g, [&](const Eigen::VectorXd& x) { return phi(x(0)) * phi(x(1)); });
    const MomentEstimate m = estimate_moments(t, g);

    // direct-summation oracle
    double mass = 0.0, m1 = 0.0, c11 = 0.0;
    for (std::size_t i = 0; i < 41; ++i)
        for (std::size_t j = 0; j < 41; ++j) {
            const double w = t.at({i, j}) * 0.04;
            mass += w;
            m1 += w * g.axes[0][i];
        }
    m1 /= mass;
    for (std::size_t i = 0; i < 41; ++i)
        for (std::size_t j = 0; j < 41; ++j)
            c11 += t.at({i, j}) * 0.04 * (g.axes[0][i] - m1) * (g.axes[0][i] - m1);
    c11 /= mass;

    CHECK(m.mass == doctest::Approx(mass).epsilon(1e-12));
    CHECK(m.mean(0) == doctest::Approx(m1).epsilon(1e-9));
    CHECK(m.covariance(0, 0) == doctest::Approx(c11).epsilon(1e-9));
    CHECK(std::abs(m.mean(0)) < 0.01);
    CHECK(std::abs(m.mean(1)) < 0.01);
    CHECK(std::abs(m.covariance(0, 0) - 1.0) < 0.01);
    CHECK(std::abs(m.covariance(1, 1) - 1.0) < 0.01);
    CHECK(std::abs(m.covariance(0, 1)) < 0.01);
}

TEST_CASE("point mass puts the mean at its grid point") {
    const Grid g = make_equidistant_grid({0.0, 0.0}, {1.0, 1.0}, {5, 5});
    DenseTensor t{{5, 5}, std::vector<double>(25, 0.0)};
    t.at({2, 3}) = 1.0;
    const MomentEstimate m = estimate_moments(t, g);
    CHECK(m.mean(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m.mean(1) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("symmetric tensor about a grid-symmetric center has centered mean") {
    const Grid g = make_equidistant_grid({-2.0, -2.0}, {0.5, 0.5}, {9, 9});
    const DenseTensor t = sample_function(g, [](const Eigen::VectorXd& x) {
        return std::exp(-(x(0) * x(0) + 0.3 * x(1) * x(1)));
    });
    const MomentEstimate m = estimate_moments(t, g);
    CHECK(std::abs(m.mean(0)) < 1e-12);
    CHECK(std::abs(m.mean(1)) < 1e-12);
}

TEST_CASE("covariance is exactly symmetric as stored") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.1, 2.0);
    const Grid g = make_equidistant_grid({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {4, 5, 6});
    DenseTensor t{{4, 5, 6}, {}};
    t.values.resize(120);
    for (double& v : t.values) v = unif(rng);
    const MomentEstimate m = estimate_moments(t, g);
    CHECK(m.covariance == m.covariance.transpose());
}

TEST_CASE("moment estimation rejects non-equidistant axes and zero mass") {
    const Grid bad{{{0.0, 1.0, 3.0}}};
    DenseTensor t{{3}, {1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(estimate_moments(t, bad), std::invalid_argument);

    const Grid g = make_equidistant_grid({0.0}, {1.0}, {3});
    DenseTensor zero{{3}, {0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(estimate_moments(zero, g), std::runtime_error);
}
