#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ellax/bc_theta.hpp"

using namespace ellax;

TEST_CASE("BC1 symmetry and quasi-periodicity") {
    const Nome p(std::polar(0.15, 0.3));
    const BC1Theta f(p, {cplx(0.4, 0.2), std::polar(0.7, -1.0), cplx(-0.5, 0.1)}, cplx(1.5, -0.5));
    const cplx z(0.6, 0.35);
    CHECK(std::abs(f(1.0 / z) - f(z)) <= 1e-14 * std::abs(f(z)));
    const cplx pz2 = p.value() * z * z;
    CHECK(std::abs(f(p.value() * z) - std::pow(pz2, -3) * f(z)) <= 1e-13 * std::abs(f(p.value() * z)));
    CHECK(f.degree() == 3);
    CHECK(eval_bc1(f, z) == f(z));
}

TEST_CASE("constant functions") {
    const BC1Theta c = BC1Theta::constant(Nome(0.2), 2.5);
    CHECK(c.degree() == 0);
    CHECK(c(cplx(0.3, 0.1)) == cplx(2.5, 0.0));
}

TEST_CASE("random bases span the degree-n space") {
    const Nome p(0.1);
    for (int n = 0; n <= 3; ++n) {
        const std::vector<BC1Theta> fs = basis(p, n, 100 + n);
        REQUIRE(fs.size() == static_cast<std::size_t>(n + 1));
        const std::vector<cplx> nodes = generic_points(n + 1, 7);
        CHECK(evaluation_condition(fs, nodes) < 1e8);
        // An unrelated decomposable product of the same degree.
        std::vector<cplx> factors;
        for (int k = 0; k < n; ++k)
            factors.push_back(std::polar(0.55 + 0.1 * k, 0.9 * k - 0.4));
        const BC1Theta target(p, factors, cplx(0.3, 0.8));
        std::vector<cplx> values;
        for (const cplx& z : nodes)
            values.push_back(target(z));
        const std::vector<cplx> c = interpolate(fs, nodes, values);
        for (const cplx z : {cplx(0.7, 0.3), std::polar(0.45, 2.2), std::polar(0.9, -0.7)}) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < fs.size(); ++j)
                s += c[j] * fs[j](z);
            CHECK(std::abs(s - target(z)) <= 1e-8 * std::abs(target(z)));
        }
    }
}

TEST_CASE("bases are reproducible from the seed") {
    const auto a = basis(Nome(0.1), 2, 5), b = basis(Nome(0.1), 2, 5);
    for (std::size_t j = 0; j < a.size(); ++j)
        CHECK(a[j].factors() == b[j].factors());
}

TEST_CASE("generic points stay in the stated band") {
    for (const cplx& z : generic_points(16, 3)) {
        CHECK(std::abs(z) >= 0.55 - 1e-15);
        CHECK(std::abs(z) <= 0.95 + 1e-15);
    }
}
