#pragma once

// Elliptic special functions: theta, elliptic gamma, third-order elliptic
// gamma and the Pochhammer symbols built from the same truncated products.

#include <complex>

#include "ellax/errors.hpp"

namespace ellax {

using cplx = std::complex<double>;

/// A nome: a complex number strictly inside the punctured unit disc.
class Nome {
public:
    explicit Nome(cplx value);
    Nome(double value) : Nome(cplx(value, 0.0)) {}

    cplx value() const noexcept { return value_; }
    double abs() const noexcept { return std::abs(value_); }
    operator cplx() const noexcept { return value_; }

private:
    cplx value_;
};

/// Controls how the infinite products are cut off. A factor (1 - c) is kept
/// while |c| >= epsilon; each exponent axis is capped at max_terms.
struct TruncationPolicy {
    double epsilon = 1e-17;
    int max_terms = 1024;

    void validate() const;
};

inline constexpr double kPoleTolerance = 1e-12;

/// theta_p(z) = prod_{i>=0} (1 - p^{i+1}/z)(1 - p^i z).
cplx theta(Nome p, cplx z, const TruncationPolicy& policy = {});

/// Elliptic gamma function Gamma_{p,q}(z). Throws PoleError when z is within
/// kPoleTolerance of p^{-i} q^{-j}.
cplx gamma(Nome p, Nome q, cplx z, const TruncationPolicy& policy = {});

/// Third-order elliptic gamma function Gamma^+_{p,q,t}(x).
cplx gamma_plus(Nome p, Nome q, Nome t, cplx x, const TruncationPolicy& policy = {});

/// (x; p, q) = prod_{i,j>=0} (1 - p^i q^j x).
cplx pochhammer2(cplx x, Nome p, Nome q, const TruncationPolicy& policy = {});

/// (a; p) = prod_{k>=0} (1 - a p^k).
cplx pochhammer1(cplx a, Nome p, const TruncationPolicy& policy = {});

/// (p; p) = prod_{k>=1} (1 - p^k).
inline cplx euler_phi(Nome p, const TruncationPolicy& policy = {}) {
    return pochhammer1(p.value(), p, policy);
}

/// psi_p(x, z) = x^{-1} theta_p(x z) theta_p(x / z).
cplx psi(Nome p, cplx x, cplx z, const TruncationPolicy& policy = {});

// Multiple-argument shorthands: f(a z^{+-1}) = f(a z) f(a / z).
inline cplx theta_pm(Nome p, cplx a, cplx z, const TruncationPolicy& policy = {}) {
    return theta(p, a * z, policy) * theta(p, a / z, policy);
}

inline cplx gamma_pm(Nome p, Nome q, cplx a, cplx z, const TruncationPolicy& policy = {}) {
    return gamma(p, q, a * z, policy) * gamma(p, q, a / z, policy);
}

} // namespace ellax
