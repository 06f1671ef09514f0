#pragma once

// Semiclassical biorthogonal functions F_n(x; v), their Cauchy transforms
// F^+_n(x, v) and the companion F^-_n(x, v), all as Selberg integrals over
// the cached order-m density.

#include <memory>
#include <utility>

#include "ellax/bc_theta.hpp"
#include "ellax/params.hpp"
#include "ellax/selberg.hpp"

namespace ellax {

enum class ArgKind { Plain, Hatted };

/// A point of C* disjoint-union C*: hatted points select the F / F^- rows
/// of the extended F^+.
struct ArgumentPoint {
    ArgKind kind = ArgKind::Plain;
    cplx value{1.0, 0.0};

    static ArgumentPoint plain(cplx z) { return {ArgKind::Plain, z}; }
    static ArgumentPoint hatted(cplx z) { return {ArgKind::Hatted, z}; }

    bool is_plain() const noexcept { return kind == ArgKind::Plain; }
    bool is_hatted() const noexcept { return kind == ArgKind::Hatted; }
    ArgumentPoint scaled(cplx c) const { return {kind, value * c}; }
};

class BiorthContext {
public:
    explicit BiorthContext(ParameterSet params, QuadOptions opts = {});

    const ParameterSet& params() const noexcept { return params_; }
    const SelbergEngine& engine() const noexcept { return engine_; }
    int n() const noexcept { return params_.n(); }
    Nome p() const noexcept { return params_.p(); }
    Nome q() const noexcept { return params_.q(); }

    /// II_n(u_0, ..., u_{2m+5}), computed once at construction.
    cplx selberg_n() const noexcept { return selberg_n_; }

    /// |p| < |x| < 1 (with a small relative margin).
    bool in_annulus(cplx x) const;

    /// F_n(x; v); hatted v gives F^-_n(x, v).
    cplx F(cplx x, ArgumentPoint v) const;
    /// Extended F^+_n on (C* u C*)^2. Plain arguments outside the annulus
    /// are reduced through x -> 1/x and x -> p/x before any quadrature.
    cplx Fplus(ArgumentPoint x, ArgumentPoint v) const;
    /// F^-_n(x, v) = psi_p(x,v) x^{1-n} v^{1-n} II_{n-1}(u, qx, pq/x, qv, pq/v);
    /// zero for n = 0.
    cplx Fminus(cplx x, cplx v) const;

    /// x^{-1} theta_q(x^2) prod_r Gamma(u_r x^{+-1}): the jump of F^+ across
    /// the unit circle.
    cplx jump(cplx x) const;

    /// Direct quadratures, without any argument normalization.
    QuadratureResult F_direct(cplx x, cplx v) const;
    QuadratureResult Fplus_direct(cplx x, cplx v) const;
    QuadratureResult Fminus_direct(cplx x, cplx v) const;

private:
    cplx fplus_impl(ArgumentPoint x, ArgumentPoint v, int depth) const;

    ParameterSet params_;
    SelbergEngine engine_;
    cplx selberg_n_;
};

cplx eval_F(const BiorthContext& ctx, cplx x, ArgumentPoint v);
cplx eval_Fplus(const BiorthContext& ctx, ArgumentPoint x, ArgumentPoint v);

/// F^+_n(1/x, v) = F^+_n(x, v) + x^{-1} theta_q(x^2) F_n(x; v) prod_r Gamma(u_r x^{+-1}),
/// for |p| < |x| < 1.
cplx reflect_Fplus(const BiorthContext& ctx, cplx x, ArgumentPoint v);

/// Residual records carry the normalized residual and the value scale that
/// normalized it.
struct Residual {
    double value = 0.0;
    double scale = 0.0;
};

/// |int F_n(z;v) H(z) / psi_p(v,z) Delta(z)| / int |...|, H of degree n-1.
Residual check_biorthogonality(const BiorthContext& ctx, ArgumentPoint v, const BC1Theta& H);

/// Cauchy-transform identity
///   c int F_n(z;v) G(z) / (psi_p(x,z) psi_p(v,z)) Delta(z) = G(x) x^{n+1} v^{n+1} II_{n+1}(u, x, p/x, v, p/v)
/// with c = (p;p)(q;q)Gamma(q)/2 = (p;p)^2/2.
Residual check_cauchy_identity(const BiorthContext& ctx, cplx x, cplx v, const BC1Theta& G);

/// Three-term Pluecker relation among extended F^+ values.
Residual check_pluecker(const BiorthContext& ctx, ArgumentPoint w, ArgumentPoint x, ArgumentPoint y,
                        ArgumentPoint z);

/// F_n(x;v) F^+_n(x,w) - F_n(x;w) F^+_n(x,v) - II_n F^+_n(v,w).
Residual check_three_term(const BiorthContext& ctx, cplx x, ArgumentPoint v, ArgumentPoint w);

/// c int F^-_n(z,v) G(z) psi_p(x,y) / (psi_p(x,z) psi_p(y,z)) Delta(z)
///   = G(x) F_n(v;x) - G(y) F_n(v;y).
Residual check_fminus_cauchy(const BiorthContext& ctx, cplx x, cplx y, cplx v, const BC1Theta& G);

/// |int F^-_n(z,v) H(z) Delta(z)| / int |...|, H of degree n-2.
Residual check_fminus_orthogonality(const BiorthContext& ctx, cplx v, const BC1Theta& H);

/// |F^+(a,b) + F^+(b,a)| / max(|F^+(a,b)|, |F^+(b,a)|).
Residual check_antisymmetry(const BiorthContext& ctx, ArgumentPoint a, ArgumentPoint b);

/// F(1/x;v) = F(x;v) and F(px;v) = (p x^2)^{-n} F(x;v), by direct quadrature.
std::pair<Residual, Residual> check_F_symmetry(const BiorthContext& ctx, cplx x, ArgumentPoint v);

/// Both rows of the monodromy action (x -> 1/x, x -> px) on (F, F^+).
std::pair<Residual, Residual> check_monodromy_action(const BiorthContext& ctx, cplx x, ArgumentPoint v);

/// max_i |a_i| over a list of terms; the normalizer for algebraic identities.
double max_term(std::initializer_list<cplx> terms);

} // namespace ellax
