#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellax/selberg.hpp"
#include "oracle.hpp"

using namespace ellax;
using oracle::rel;

namespace {

const Nome kP(0.05), kQ(0.08);

ParameterSet m0n1() {
    return ParameterSet::autobalance(kP, kQ, 0, 1, {0.40, 0.50, 0.45, -0.35, std::polar(0.30, 0.7)});
}

ParameterSet m1n1() {
    return ParameterSet::autobalance(kP, 0.3, 1, 1,
                                     {0.45, std::polar(0.2, 0.4), 0.35, -0.4, std::polar(0.27, 2.0), 0.37,
                                      std::polar(0.36, -1.1)});
}

} // namespace

TEST_CASE("density vanishes at z = +-1 and is inversion symmetric") {
    const ParameterSet ps = m0n1();
    CHECK(std::abs(density(ps, 1.0)) == 0.0);
    CHECK(std::abs(density(ps, -1.0)) == 0.0);
    const cplx z = std::polar(1.0, 0.7);
    CHECK(rel(density(ps, z), density(ps, 1.0 / z)) < 1e-13);
}

TEST_CASE("one-dimensional integral against the direct trapezoid sum") {
    const ParameterSet ps = m0n1();
    const cplx direct = oracle::selberg1(ps.p(), ps.q(), ps.u(), {});
    CHECK(rel(selberg(ps).value, direct) < 1e-12);
    const ParameterSet ps1 = m1n1();
    CHECK(rel(selberg(ps1).value, oracle::selberg1(ps1.p(), ps1.q(), ps1.u(), {})) < 1e-12);
}

TEST_CASE("elliptic beta evaluation") {
    const ParameterSet ps = m0n1();
    const QuadratureResult r = elliptic_beta_integral(ps);
    CHECK(rel(r.value, elliptic_beta_product(ps)) < 1e-12);
    CHECK(r.est_error < 1e-12 * std::abs(r.value));
    // The Selberg measure carries an extra Gamma(q) relative to the beta integral.
    CHECK(rel(selberg_closed_form_m0(ps), gamma(kP, kQ, 0.08) * elliptic_beta_product(ps)) < 1e-13);
}

TEST_CASE("m = 0 closed form at n = 2") {
    const ParameterSet ps = ParameterSet::autobalance(
        kP, 0.5, 0, 2, {0.75, std::polar(0.7, 0.4), 0.65, -0.7, std::polar(0.7, 2.0)});
    const QuadratureResult r = selberg(ps, {256, 1e-10, 256});
    CHECK(rel(r.value, selberg_closed_form_m0(ps)) < 1e-8);
}

TEST_CASE("n = 0 is the empty integral") {
    const ParameterSet ps = ParameterSet::autobalance(kP, kQ, 0, 0, {0.4, 0.5, 0.45, -0.35, 0.3});
    CHECK(selberg(ps).value == cplx(1.0, 0.0));
}

TEST_CASE("order-one transformation law") {
    const ParameterSet ps = m1n1();
    const TransformSides t = transform_9_7(ps);
    CHECK(rel(t.lhs, t.rhs) < 1e-10);
    CHECK(t.u_prime == transform_9_7_image(ps));
    // x^2 = u_0u_1u_2u_3 / (p q^{2-n}).
    const cplx x2 = ps.u(0) * ps.u(1) * ps.u(2) * ps.u(3) / (0.05 * 0.3);
    CHECK(rel(t.x * t.x, x2) < 1e-14);
    // The map is an involution up to the sign of x.
    const std::vector<cplx> back = transform_9_7_image(ps.with_u(t.u_prime));
    for (int r = 0; r < 8; ++r)
        CHECK(std::abs(std::abs(back[r]) - std::abs(ps.u(r))) < 1e-14);
}

TEST_CASE("transformation law needs m = 1") {
    CHECK_THROWS_AS(transform_9_7(m0n1()), DomainError);
}

TEST_CASE("contour violations are reported") {
    std::vector<cplx> u = m0n1().u();
    u[0] = 1.5;
    u[1] /= 1.5;
    CHECK_THROWS_AS(selberg(ParameterSet(kP, kQ, 0, 1, u)), DomainError);
}

TEST_CASE("balancing") {
    const ParameterSet ps = m0n1();
    CHECK(ps.balancing_residual() < 1e-14);
    std::vector<cplx> u = ps.u();
    u[0] *= 1.01;
    CHECK_THROWS_WITH_AS(ParameterSet(kP, kQ, 0, 1, u), doctest::Contains("balancing violated"), DomainError);
}

TEST_CASE("renormalized order-one integral is invariant under the reflection") {
    const Nome p(0.05), q(0.3);
    std::vector<cplx> u{0.8, std::polar(0.6, 0.4), 0.65, -0.7, std::polar(0.5, 2.0), 0.62, std::polar(0.66, -1.1)};
    cplx prod = 1.0;
    for (const cplx& ur : u)
        prod *= ur;
    // q^{1/2} u balances at m = 1, n = 1: prod u = p^2 / q^2.
    u.push_back(0.05 * 0.05 / (0.3 * 0.3) / prod);
    const cplx a = tau_renormalized(p, q, 1, u);
    const cplx b = tau_renormalized(p, q, 1, tau_reflect(p, q, 1, u));
    CHECK(rel(a, b) < 1e-10);
}
