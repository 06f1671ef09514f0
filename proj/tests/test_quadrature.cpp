#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <omp.h>

#include "ellax/quadrature.hpp"

using namespace ellax;

namespace {

std::vector<cplx> random_table(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (cplx& c : out)
        c = {g(rng), g(rng)};
    return out;
}

} // namespace

TEST_CASE("trapezoid rule is exact on Laurent monomials") {
    for (int k = -5; k <= 5; ++k) {
        auto f = [k](std::span<const cplx> z) { return std::pow(z[0], k); };
        const QuadratureResult r = integrate_circle(f, 1, {64, 1e-12, 128});
        CHECK(std::abs(r.value - (k == 0 ? 1.0 : 0.0)) < 1e-14);
    }
}

TEST_CASE("a simple pole inside the circle") {
    // mean of 1/(1 - a/z) over |z| = 1 is 1 for |a| < 1.
    const cplx a(0.6, 0.3);
    auto f = [a](std::span<const cplx> z) { return 1.0 / (1.0 - a / z[0]); };
    const QuadratureResult r = integrate_circle(f, 1);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
    CHECK(r.n_used > 0);
}

TEST_CASE("two- and three-dimensional tensor integrals") {
    const cplx a(0.4, -0.2), b(-0.3, 0.5);
    auto f2 = [&](std::span<const cplx> z) { return 1.0 / ((1.0 - a * z[0]) * (1.0 - b / z[1])) * z[0] * z[1]; };
    CHECK(std::abs(integrate_circle(f2, 2).value) < 1e-13);
    auto f3 = [&](std::span<const cplx> z) { return (1.0 + a * z[0] / z[1]) * (1.0 + b * z[1] / z[2]) * z[2] / z[0]; };
    CHECK(std::abs(integrate_circle(f3, 3).value - a * b) < 1e-13);
}

TEST_CASE("parallel tensor sum matches the nested-loop reference") {
    for (int n = 1; n <= 3; ++n) {
        const int N = n == 3 ? 32 : 64;
        const auto w = random_table(N, 10 + n), g = random_table(N, 20 + n);
        const TensorSums fast = symmetric_tensor_sum(n, w, g);
        const TensorSums ref = symmetric_tensor_sum_reference(n, w, g);
        const double scale = ref.abs_full;
        CHECK(std::abs(fast.full - ref.full) <= 1e-12 * scale);
        CHECK(std::abs(fast.even - ref.even) <= 1e-12 * scale);
        CHECK(std::abs(fast.abs_full - ref.abs_full) <= 1e-12 * scale);
    }
}

TEST_CASE("tensor sums do not depend on the thread count") {
    const int N = 96;
    const auto w = random_table(N, 1), g = random_table(N, 2);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const TensorSums one = symmetric_tensor_sum(3, w, g);
    omp_set_num_threads(std::max(2, omp_get_num_procs()));
    const TensorSums many = symmetric_tensor_sum(3, w, g);
    omp_set_num_threads(saved);
    CHECK(one.full == many.full);
    CHECK(one.even == many.even);
}

TEST_CASE("refinement reports failure through AccuracyError") {
    // A pole on the contour never converges.
    auto f = [](std::span<const cplx> z) { return 1.0 / std::sqrt(std::abs(z[0] - 1.0) + 1e-300); };
    CHECK_THROWS_AS(integrate_circle(f, 1, {16, 1e-14, 64}), AccuracyError);
}

TEST_CASE("node probe tracks the largest converged grid") {
    reset_nodes_probe();
    CHECK(nodes_probe() == 0);
    auto f = [](std::span<const cplx> z) { return std::exp(z[0]); };
    const QuadratureResult r = integrate_circle(f, 1, {32, 1e-12, 256});
    CHECK(nodes_probe() == r.n_used);
}

TEST_CASE("contour admissibility") {
    const Nome p(0.05), q(0.08);
    const ParameterSet good = ParameterSet::autobalance(p, q, 0, 1, {0.4, 0.5, 0.45, -0.35, 0.3});
    CHECK(check_contour(good).ok);
    std::vector<cplx> u = good.u();
    u[0] = 1.2;
    u[1] /= 3.0;
    const ParameterSet outside(p, q, 0, 1, u, false);
    const ContourVerdict v = check_contour(outside);
    CHECK_FALSE(v.ok);
    CHECK(v.r == 0);
    const cplx extra[] = {cplx(0.01, 0.0)};
    CHECK_FALSE(check_contour(good, extra).ok);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(CircleGrid(0, 1), DomainError);
    CHECK_THROWS_AS(CircleGrid(24, 1), DomainError);
    CHECK_THROWS_AS(CircleGrid(16, 4), DomainError);
    CHECK(CircleGrid(16, 2).points().size() == 16);
    CHECK(std::abs(CircleGrid::node(4, 16) - cplx(0.0, 1.0)) < 1e-15);
}
