#pragma once

// Higher-order elliptic Selberg integrals at t = q on the unit torus.

#include <functional>
#include <vector>

#include "ellax/params.hpp"
#include "ellax/quadrature.hpp"

namespace ellax {

/// prod_r Gamma(u_r z^{+-1}) / Gamma(z^{+-2}), with the reciprocal written as
/// theta_p(z^2) theta_q(z^{-2}) so that z = +-1 gives 0 instead of a pole.
cplx density(Nome p, Nome q, std::span<const cplx> u, cplx z);
cplx density(const ParameterSet& params, cplx z);

/// theta_p(w^{+-1}): the t = q cross factor Gamma(q w)/Gamma(w) evaluated
/// on both orientations, so that the pair term for (z_i, z_j) is
/// pair_factor(z_i z_j) * pair_factor(z_i / z_j).
cplx pair_factor(Nome p, cplx w);

/// Caches the density and the pair table on the finest grid used by the
/// refinement ladder; coarser grids are subsampled. Immutable once built.
class SelbergEngine {
public:
    SelbergEngine(Nome p, Nome q, std::vector<cplx> u, QuadOptions opts = {});
    explicit SelbergEngine(const ParameterSet& params, QuadOptions opts = {})
        : SelbergEngine(params.p(), params.q(), params.u(), opts) {}

    Nome p() const noexcept { return p_; }
    Nome q() const noexcept { return q_; }
    const std::vector<cplx>& u() const noexcept { return u_; }
    const QuadOptions& options() const noexcept { return opts_; }

    cplx density(cplx z) const { return ellax::density(p_, q_, u_, z); }

    /// ((p;p)(q;q) Gamma(q))^k / (2^k k!).
    cplx prefactor(int k) const;

    /// II_k over the cached density, each variable additionally weighted by
    /// extra(z) when given. The prefactor is included; k = 0 returns 1.
    QuadratureResult integrate(int k, const std::function<cplx(cplx)>& extra = {}) const;

    void fill_density(int nodes, std::span<cplx> out) const;
    void fill_pairs(int nodes, std::span<cplx> out) const;

private:
    Nome p_;
    Nome q_;
    std::vector<cplx> u_;
    QuadOptions opts_;
    int cache_nodes_;
    std::vector<cplx> density_cache_;
    std::vector<cplx> pair_cache_;
    cplx measure_;  // (p;p)(q;q) Gamma(q)
};

/// II^{(m)}_{n;q;p,q}(u). Requires a valid unit-circle contour and n <= 3.
QuadratureResult selberg(const ParameterSet& params, const QuadOptions& opts = {});

/// The m = 0 evaluation prod_{i<n} Gamma(q^{i+1}) prod_{r<s} Gamma(q^i u_r u_s).
cplx selberg_closed_form_m0(const ParameterSet& params);

/// The elliptic beta integral: (p;p)(q;q)/2 times the integral of
/// the m = 0 density; equals prod_{r<s} Gamma(u_r u_s).
QuadratureResult elliptic_beta_integral(const ParameterSet& params, const QuadOptions& opts = {});
cplx elliptic_beta_product(const ParameterSet& params);

/// Renormalized order-1 integral
///   II^{(1)}_n(q^{1/2} u_0, ..., q^{1/2} u_7) prod_{r<s} Gamma^+_{p,q,q}(q u_r u_s).
/// u is given in the unshifted coordinates; the shifted set must balance.
cplx tau_renormalized(Nome p, Nome q, int n, const std::vector<cplx>& u, const QuadOptions& opts = {});

/// Image of tau coordinates under the order-1 transformation map (see
/// transform_9_7); tau_renormalized is invariant under it.
std::vector<cplx> tau_reflect(Nome p, Nome q, int n, const std::vector<cplx>& u);

/// u'_r = u_r/x (r < 4), u_r x (r >= 4) with x^2 = u_0u_1u_2u_3/(p q^{2-n}).
std::vector<cplx> transform_9_7_image(const ParameterSet& params);

struct TransformSides {
    cplx lhs;
    cplx rhs;
    cplx x;
    std::vector<cplx> u_prime;
};

/// Both sides of
///   II_n(u) = prod_{1<=j<=n} prod_{r<s<4} Gamma(q^{n-j} u_r u_s)
///             prod_{4<=r<s<8} Gamma(q^{n-j} u_r u_s) II_n(u')
/// with u' = transform_9_7_image(u). Requires m = 1, n <= 2 and valid
/// contours for u and u'.
TransformSides transform_9_7(const ParameterSet& params, const QuadOptions& opts = {});

} // namespace ellax
