#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ellax/kernel.hpp"

using namespace ellax;
using mp = boost::multiprecision::cpp_complex_50;

namespace {

// Straight products in 50 digits, cut where the factors no longer move a
// double.
constexpr double kCut = 1e-24;

mp to_mp(cplx z) { return mp(z.real(), z.imag()); }

cplx to_double(const mp& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

double mag(const mp& z) { return static_cast<double>(abs(z)); }

cplx theta_oracle(cplx p, cplx z) {
    const mp P = to_mp(p), Z = to_mp(z);
    mp prod = 1, pi = 1;
    while (mag(pi) > kCut * 1e-3) {
        prod *= (mp(1) - pi * P / Z) * (mp(1) - pi * Z);
        pi *= P;
    }
    return to_double(prod);
}

cplx gamma_oracle(cplx p, cplx q, cplx z) {
    const mp P = to_mp(p), Q = to_mp(q), Z = to_mp(z);
    mp num = 1, den = 1;
    for (mp pi = 1; mag(pi) > kCut; pi *= P)
        for (mp pq = pi; mag(pq) > kCut; pq *= Q) {
            num *= mp(1) - pq * P * Q / Z;
            den *= mp(1) - pq * Z;
        }
    return to_double(num / den);
}

cplx gamma_plus_oracle(cplx p, cplx q, cplx t, cplx x) {
    const mp P = to_mp(p), Q = to_mp(q), T = to_mp(t), X = to_mp(x);
    mp prod = 1;
    for (mp a = 1; mag(a) > kCut; a *= P)
        for (mp b = a; mag(b) > kCut; b *= Q)
            for (mp c = b; mag(c) > kCut; c *= T)
                prod *= (mp(1) - c * P * Q * T / X) * (mp(1) - c * X);
    return to_double(prod);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace

TEST_CASE("theta agrees with the 50-digit product") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const cplx p = std::polar(0.05 + 0.5 * u(rng), 2 * std::numbers::pi * u(rng));
        const cplx z = std::polar(0.3 + 2.0 * u(rng), 2 * std::numbers::pi * u(rng));
        CHECK(rel(theta(Nome(p), z), theta_oracle(p, z)) < 1e-13);
    }
}

TEST_CASE("elliptic gamma agrees with the 50-digit product") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 12; ++k) {
        const cplx p = std::polar(0.05 + 0.35 * u(rng), 2 * std::numbers::pi * u(rng));
        const cplx q = std::polar(0.05 + 0.35 * u(rng), 2 * std::numbers::pi * u(rng));
        const cplx z = std::polar(0.5 + 1.5 * u(rng), 2 * std::numbers::pi * u(rng));
        CHECK(rel(gamma(Nome(p), Nome(q), z), gamma_oracle(p, q, z)) < 1e-13);
    }
}

TEST_CASE("third-order gamma agrees with the 50-digit product") {
    const cplx p = std::polar(0.12, 0.4), q = std::polar(0.2, -1.1);
    for (const cplx x : {cplx(0.7, 0.2), cplx(-1.3, 0.4), std::polar(2.5, 2.0)}) {
        CHECK(rel(gamma_plus(Nome(p), Nome(q), Nome(q), x), gamma_plus_oracle(p, q, q, x)) < 1e-13);
        CHECK(rel(gamma_plus(Nome(p), Nome(q), Nome(0.3), x), gamma_plus_oracle(p, q, 0.3, x)) < 1e-13);
    }
}

TEST_CASE("theta and gamma functional equations") {
    const Nome p(std::polar(0.2, 0.7)), q(std::polar(0.3, -0.4));
    const cplx z(0.8, -0.3);
    CHECK(rel(theta(p, 1.0 / z), -theta(p, z) / z) < 1e-14);
    CHECK(rel(theta(p, p.value() * z), -theta(p, z) / z) < 1e-14);
    CHECK(rel(gamma(p, q, q.value() * z), theta(p, z) * gamma(p, q, z)) < 1e-13);
    CHECK(rel(gamma(p, q, p.value() * z), theta(q, z) * gamma(p, q, z)) < 1e-13);
    CHECK(rel(gamma(p, q, p.value() * q.value() / z) * gamma(p, q, z), 1.0) < 1e-13);
    CHECK(rel(gamma_plus(p, q, q, q.value() * z), gamma(p, q, z) * gamma_plus(p, q, q, z)) < 1e-13);
}

TEST_CASE("theta vanishes at its zeros") {
    const Nome p(0.1);
    CHECK(std::abs(theta(p, 1.0)) == 0.0);
    CHECK(std::abs(theta(p, 0.1)) < 1e-15);
}

TEST_CASE("gamma poles name their lattice indices") {
    const Nome p(0.1), q(0.2);
    try {
        gamma(p, q, 1.0);
        FAIL("expected a pole");
    } catch (const PoleError& e) {
        CHECK(e.i() == 0);
        CHECK(e.j() == 0);
        CHECK(std::string(e.what()).find("i=0, j=0") != std::string::npos);
    }
    try {
        gamma(p, q, 1.0 / (0.1 * 0.2 * 0.2));
        FAIL("expected a pole");
    } catch (const PoleError& e) {
        CHECK(e.i() == 1);
        CHECK(e.j() == 2);
    }
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(Nome(1.0), DomainError);
    CHECK_THROWS_AS(Nome(0.0), DomainError);
    CHECK_THROWS_AS(Nome(cplx(0.8, 0.8)), DomainError);
    CHECK_THROWS_AS(theta(Nome(0.1), 0.0), DomainError);
    CHECK_THROWS_AS(gamma(Nome(0.1), Nome(0.1), 0.0), DomainError);
}

TEST_CASE("Pochhammer symbols") {
    const Nome p(0.3);
    // Euler's pentagonal series for (p;p).
    double series = 0.0;
    for (int k = -20; k <= 20; ++k)
        series += ((k % 2) ? -1.0 : 1.0) * std::pow(0.3, k * (3 * k - 1) / 2.0);
    CHECK(std::abs(euler_phi(p) - series) < 1e-15);
    // Gamma(q) = (p;p) / (q;q).
    const Nome q(0.15);
    CHECK(rel(gamma(p, q, 0.15), euler_phi(p) / euler_phi(q)) < 1e-14);
}
