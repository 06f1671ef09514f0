#pragma once

#include <cstdint>
#include <vector>

#include "ellax/kernel.hpp"

namespace ellax {

/// A decomposable BC_1-symmetric theta function of degree n,
///   f(z) = scalar * prod_k theta_p(a_k z) theta_p(a_k / z),
/// so that f(1/z) = f(z) and f(pz) = (p z^2)^{-n} f(z).
class BC1Theta {
public:
    BC1Theta(Nome p, std::vector<cplx> factors, cplx scalar = 1.0);

    static BC1Theta constant(Nome p, cplx c) { return BC1Theta(p, {}, c); }

    int degree() const noexcept { return static_cast<int>(factors_.size()); }
    Nome nome() const noexcept { return p_; }
    const std::vector<cplx>& factors() const noexcept { return factors_; }
    cplx scalar() const noexcept { return scalar_; }

    cplx operator()(cplx z) const;

private:
    Nome p_;
    std::vector<cplx> factors_;
    cplx scalar_;
};

cplx eval_bc1(const BC1Theta& f, cplx z);

/// n+1 random decomposable functions of degree n spanning the degree-n
/// space: their evaluation matrix at n+1 generic points has condition number
/// below 1e8. Factors have modulus in [0.3, 0.9] and uniform phase.
/// Throws DegeneracyError after 32 unsuccessful draws.
std::vector<BC1Theta> basis(Nome p, int n, std::uint64_t seed);

/// Deterministic generic evaluation points used by basis() (moduli in
/// [0.55, 0.95], spread phases).
std::vector<cplx> generic_points(int count, std::uint64_t seed);

/// Condition number (2-norm) of the matrix [f_j(z_i)].
double evaluation_condition(const std::vector<BC1Theta>& fs, const std::vector<cplx>& points);

/// Coefficients c with sum_j c_j f_j(z_i) = target(z_i) at the given points
/// (least squares when overdetermined).
std::vector<cplx> interpolate(const std::vector<BC1Theta>& fs, const std::vector<cplx>& points,
                              const std::vector<cplx>& values);

} // namespace ellax
