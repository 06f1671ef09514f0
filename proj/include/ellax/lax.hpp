#pragma once

// Fundamental matrix M_n(z;v,w), the normalized shift matrices A~ and B~,
// and the explicit isomonodromy transformations.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ellax/biorth.hpp"

namespace ellax {

struct Matrix2C {
    cplx a11{}, a12{}, a21{}, a22{};

    static Matrix2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2C diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

    cplx det() const { return a11 * a22 - a12 * a21; }
    /// Throws DegeneracyError when |det| <= 1e-300.
    Matrix2C inverse() const;
    Matrix2C transpose() const { return {a11, a21, a12, a22}; }
    double max_abs() const;

    Matrix2C operator*(const Matrix2C& o) const;
    Matrix2C operator*(cplx s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Matrix2C operator+(const Matrix2C& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Matrix2C operator-(const Matrix2C& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
};

inline Matrix2C operator*(cplx s, const Matrix2C& m) { return m * s; }

/// max |x - y| / max(max |x|, max |y|).
double relative_difference(const Matrix2C& x, const Matrix2C& y);

/// column (c1, c2) times row (r1, r2).
Matrix2C outer(cplx c1, cplx c2, cplx r1, cplx r2);

/// J = [[0,-1],[1,0]]; J X^t J^{-1} is the adjugate of X.
Matrix2C adjugate_conjugate(const Matrix2C& x);

/// Element of the shift lattice: k_r (all integers or all half-integers),
/// l with k_r = l mod 1, and nu with 2 nu + sum k_r = 0. Stored doubled.
class ShiftVector {
public:
    ShiftVector(std::vector<int> twice_k, int twice_l, int nu);
    static ShiftVector integral(std::vector<int> k, int nu = 0);

    const std::vector<int>& twice_k() const noexcept { return k2_; }
    int twice_l() const noexcept { return l2_; }
    int nu() const noexcept { return nu_; }

private:
    std::vector<int> k2_;
    int l2_;
    int nu_;
};

/// BiorthContext together with the basis choice (v, w).
class LaxContext {
public:
    LaxContext(std::shared_ptr<const BiorthContext> ctx, ArgumentPoint v, ArgumentPoint w);

    const BiorthContext& biorth() const noexcept { return *ctx_; }
    std::shared_ptr<const BiorthContext> biorth_ptr() const noexcept { return ctx_; }
    ArgumentPoint v() const noexcept { return v_; }
    ArgumentPoint w() const noexcept { return w_; }
    cplx Fplus_vw() const noexcept { return fp_vw_; }
    /// II_n(u) F^+_n(v, w).
    cplx normalizer() const noexcept { return ctx_->selberg_n() * fp_vw_; }

private:
    std::shared_ptr<const BiorthContext> ctx_;
    ArgumentPoint v_;
    ArgumentPoint w_;
    cplx fp_vw_;
};

/// Deterministic points with |p|^{3/4} <= |z| <= |p|^{1/4} and uniform phase.
std::vector<cplx> sample_points(Nome p, int count, std::uint64_t seed);
/// As above, additionally keeping |qz| away from the circles |x| = |p|^k so
/// that both z and qz reduce into the open annulus.
std::vector<cplx> sample_points(Nome p, Nome q, int count, std::uint64_t seed);

// ---- M_n -------------------------------------------------------------

Matrix2C build_M(const LaxContext& lc, cplx z);
/// det M = II_n F^+(v,w) z^{-1} theta_p(z^2) / Delta(z).
double check_det_M(const LaxContext& lc, cplx z);
/// M(1/z) = M(z) [[1,1],[0,-1]].
double check_M_reflection(const LaxContext& lc, cplx z);
/// M(pz) = M(z) [[(pz^2)^{-n}, -k],[0, k]], k = (pz^2)^{n-2} Delta(z)/Delta(pz).
double check_p_shift_of_M(const LaxContext& lc, cplx z);

// ---- A~ ----------------------------------------------------------------

/// q^{-1} z^{-2} prod_r theta_p(u_r z).
cplx atilde_scale(const BiorthContext& ctx, cplx z);
/// Factored form (F(qz;.), b F^+(qz,.)) (a F^+(z,.), F(z;.)); entries whose
/// theta coefficient vanishes are not evaluated.
Matrix2C build_Atilde(const LaxContext& lc, cplx z);
/// atilde_scale(z) M(qz) M(z)^{-1}.
Matrix2C build_Atilde_definition(const LaxContext& lc, cplx z);

double check_Atilde_definition(const LaxContext& lc, cplx z);
double check_Atilde_det(const LaxContext& lc, cplx z);
double check_Atilde_p_law(const LaxContext& lc, cplx z);
double check_Atilde_symmetry(const LaxContext& lc, cplx z);
/// A~(1/qz) A~(z) = det A~(z) I.
double check_Atilde_inverse(const LaxContext& lc, cplx z);

struct SpecialValue {
    std::string label;
    cplx point;
    Matrix2C computed;
    Matrix2C expected;
    double residual = 0.0;
    bool skipped = false;
    std::string note;
};

/// Rank-1 values at u_s/q and 1/u_s for every s, then the four ramification
/// points +-q^{-1/2}, +-(p/q)^{1/2}.
std::vector<SpecialValue> special_values_A(const LaxContext& lc);

/// |det A~(z)| relative to max|A~|^2 at z, for the rank check at u_s/q.
double rank_defect(const Matrix2C& m);

/// max |A~(z) at a tiny circle| / max |A~(z) at a wider circle| around z0.
double holomorphy_ratio(const LaxContext& lc, cplx z0);
/// The candidate pole locations 1/(q u_r) and p u_r.
std::vector<cplx> candidate_poles(const BiorthContext& ctx);

// ---- isomonodromy -------------------------------------------------------

struct IsomonoVW {
    Matrix2C transform;
    double residual = 0.0;
};

/// M(z;v',w') = T M(z;v,w), T = F^+(v,w)^{-1} [[F^+(v',w), -F^+(v',v)],[F^+(w',w), -F^+(w',v)]].
IsomonoVW apply_isomono_vw(const LaxContext& lc, ArgumentPoint vp, ArgumentPoint wp,
                           const std::vector<cplx>& zs);

enum class IntegerShift { UD, UU };

/// The two D_{2m+6} generators acting on (u_0, u_1):
///   UD: (q u_0, u_1/q, n),  UU: (q u_0, q u_1, n - 1).
/// Returns the max residual over zs of (primes mark the shifted set)
///   UD: M'(z; u_0, (u_1/q)^) = (u_0 q/u_1)^n D M(z; u_1/q, u_0^),
///       D = diag(1, theta_p(u_1 z^{+-1}/q) / theta_p(u_0 z^{+-1})),
///   UU: M'(z; u_0, u_1) = -(u_0 u_1)^{n-1} D M(z; u_1^, u_0^),
///       D = diag(u_1 / theta_p(u_1 z^{+-1}), u_0 / theta_p(u_0 z^{+-1})).
double apply_isomono_integer(const BiorthContext& ctx, IntegerShift which, const std::vector<cplx>& zs);

/// Shifted parameter set for a generator; throws DomainError when the
/// shifted parameters leave the contour domain.
ParameterSet shifted_parameters(const ParameterSet& params, IntegerShift which);

// ---- B~ -----------------------------------------------------------------

/// u'_r = q^{1/2} u_r (r < m+3), q^{-1/2} u_r (r >= m+3).
ParameterSet half_shifted_parameters(const ParameterSet& params);

/// A LaxContext for (v, w) under u together with (v', w') under u'.
class BContext {
public:
    BContext(LaxContext base, std::shared_ptr<const BiorthContext> prime, ArgumentPoint vp, ArgumentPoint wp);

    const LaxContext& base() const noexcept { return base_; }
    const BiorthContext& prime() const noexcept { return *prime_; }
    ArgumentPoint vp() const noexcept { return vp_; }
    ArgumentPoint wp() const noexcept { return wp_; }

    /// G_n(x; b) = F_n(q^{1/2} x; q^{1/2} b; u').
    cplx G(cplx x, ArgumentPoint b) const;
    /// G^+_n(a, b) = F^+_n(q^{1/2} a, q^{1/2} b; u').
    cplx Gplus(ArgumentPoint a, ArgumentPoint b) const;
    cplx Gplus_vpwp() const noexcept { return gp_; }
    cplx sqrt_q() const noexcept { return h_; }
    /// -q^{-1/2} II(u') G^+(v',w') / (II(u) F^+(v,w)).
    cplx relation_constant() const;

private:
    LaxContext base_;
    std::shared_ptr<const BiorthContext> prime_;
    ArgumentPoint vp_;
    ArgumentPoint wp_;
    cplx h_;
    cplx gp_;
};

BContext make_B_context(const LaxContext& lc, ArgumentPoint vp, ArgumentPoint wp, const QuadOptions& opts);

/// (q^{1/2} z)^{-1} prod_{r<m+3} theta_p(u_r z).
cplx btilde_scale(const BiorthContext& ctx, cplx z);
Matrix2C build_Btilde(const BContext& bc, cplx z);
/// btilde_scale(z) M(q^{1/2}z; q^{1/2}v', q^{1/2}w'; u') M(z; v, w; u)^{-1}.
Matrix2C build_Btilde_definition(const BContext& bc, cplx z);

double check_Btilde_definition(const BContext& bc, cplx z);
double check_Btilde_det(const BContext& bc, cplx z);
double check_Btilde_p_law(const BContext& bc, cplx z);
/// J B~(1/qz)^t J^{-1} B~(z) = C A~(z).
double check_AB_relation(const BContext& bc, cplx z);
/// B(1/qz)^{-1} B(z) = A(z) with the unnormalized matrices.
double check_B_inverse_relation(const BContext& bc, cplx z);

/// 1/u_s for s < m+3 (through p/u_s and the p-theta law) and u_s/q for s >= m+3.
std::vector<SpecialValue> special_values_B(const BContext& bc);

struct FayResult {
    double residual = 0.0;
    cplx lhs;
    cplx rhs;
    int terms = 0;  // nonvanishing terms on the right
};

/// Expresses B~_11(u_{m+3}/q) through the special values of B~_11 at 1/u_s
/// (s < m+3) by theta-function interpolation, with v' = u_0/q and w = u_1^
/// so that the s = 0, 1 terms vanish. For n = 0 those nodes are not
/// unisolvent and the values at u_s/q (s > m+3) are added (least squares).
FayResult fay_from_B(const BContext& bc);

// ---- apparent singularities ------------------------------------------------

/// Gamma(x z^{+-1}) / Gamma(q^n x z^{+-1}) M(z).
Matrix2C apparent_singularity_wrap(const LaxContext& lc, cplx x, cplx z);
/// theta_p(xz, q^{n-1}x/z) / theta_p(q^n xz, x/qz) A(z).
Matrix2C build_Aprime(const LaxContext& lc, cplx x, cplx z);
/// M'(qz) M'(z)^{-1} against build_Aprime.
double check_Aprime_definition(const LaxContext& lc, cplx x, cplx z);
/// A'(pz) = A'(z).
double check_Aprime_elliptic(const LaxContext& lc, cplx x, cplx z);
/// M'(1/z) = M'(z) [[1,1],[0,-1]].
double check_Mprime_reflection(const LaxContext& lc, cplx x, cplx z);
/// B' (half shift, l = l' = 1/2, nu = 0) from its Gamma-ratio prefactor
/// against M'(q^{1/2}z; q^{1/2}x; u') M'(z; x; u)^{-1}.
double check_Bprime(const BContext& bc, cplx x, cplx z);

} // namespace ellax
