#include "ellax/lax.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace ellax {

namespace {

cplx ipow(cplx base, int k) {
    cplx out = 1.0;
    if (k < 0) {
        base = 1.0 / base;
        k = -k;
    }
    for (int i = 0; i < k; ++i)
        out *= base;
    return out;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

cplx theta_product(const BiorthContext& ctx, int first, int last, cplx scale) {
    cplx v = 1.0;
    for (int r = first; r < last; ++r)
        v *= theta(ctx.p(), ctx.params().u(r) * scale);
    return v;
}

int half_count(const BiorthContext& ctx) { return ctx.params().m() + 3; }

double matrix_residual(const Matrix2C& x, const Matrix2C& y) { return relative_difference(x, y); }

} // namespace

// ---- Matrix2C --------------------------------------------------------------

Matrix2C Matrix2C::inverse() const {
    const cplx d = det();
    if (!(std::abs(d) > 1e-300))
        throw DegeneracyError("2x2 matrix is singular");
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double Matrix2C::max_abs() const { return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)}); }

Matrix2C Matrix2C::operator*(const Matrix2C& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22, a21 * o.a11 + a22 * o.a21,
            a21 * o.a12 + a22 * o.a22};
}

double relative_difference(const Matrix2C& x, const Matrix2C& y) {
    const double scale = std::max(x.max_abs(), y.max_abs());
    const double diff = (x - y).max_abs();
    if (!(scale > 0.0))
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / scale;
}

Matrix2C outer(cplx c1, cplx c2, cplx r1, cplx r2) { return {c1 * r1, c1 * r2, c2 * r1, c2 * r2}; }

Matrix2C adjugate_conjugate(const Matrix2C& x) { return {x.a22, -x.a12, -x.a21, x.a11}; }

// ---- ShiftVector -------------------------------------------------------------

ShiftVector::ShiftVector(std::vector<int> twice_k, int twice_l, int nu)
    : k2_(std::move(twice_k)), l2_(twice_l), nu_(nu) {
    int sum = 0;
    for (int k : k2_) {
        if (((k - l2_) % 2) != 0)
            throw DomainError("shift vector entries must all be congruent to l modulo 1");
        sum += k;
    }
    if (2 * 2 * nu_ + sum != 0)
        throw DomainError("shift vector violates 2 nu + sum k_r = 0");
}

ShiftVector ShiftVector::integral(std::vector<int> k, int nu) {
    for (int& x : k)
        x *= 2;
    return ShiftVector(std::move(k), 0, nu);
}

// ---- LaxContext ----------------------------------------------------------------

LaxContext::LaxContext(std::shared_ptr<const BiorthContext> ctx, ArgumentPoint v, ArgumentPoint w)
    : ctx_(std::move(ctx)), v_(v), w_(w) {
    fp_vw_ = ctx_->Fplus(v_, w_);
    if (!(std::abs(fp_vw_) > 1e-300))
        throw DegeneracyError("F^+_n(v,w) = 0: M_n(z;v,w) is singular");
}

std::vector<cplx> sample_points(Nome p, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(count));
    const double lp = std::log(p.abs());
    for (int i = 0; i < count; ++i) {
        const double t = 0.25 + 0.5 * uniform01(rng);
        const double phase = 2.0 * std::numbers::pi * uniform01(rng);
        out.push_back(std::polar(std::exp(t * lp), phase));
    }
    return out;
}

std::vector<cplx> sample_points(Nome p, Nome q, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(count));
    const double lp = std::log(p.abs());
    const double lq = std::log(q.abs());
    constexpr double kMargin = 0.05;  // in units of log|p|
    while (static_cast<int>(out.size()) < count) {
        const double t = 0.25 + 0.5 * uniform01(rng);
        const double phase = 2.0 * std::numbers::pi * uniform01(rng);
        const double s = t + lq / lp;
        if (std::abs(s - std::round(s)) < kMargin)
            continue;
        out.push_back(std::polar(std::exp(t * lp), phase));
    }
    return out;
}

// ---- M_n ------------------------------------------------------------------------

Matrix2C build_M(const LaxContext& lc, cplx z) {
    const BiorthContext& ctx = lc.biorth();
    const cplx d = density(ctx.params(), z);
    if (d == cplx(0.0, 0.0) || !std::isfinite(std::abs(d)))
        throw DomainError("density vanishes or is singular at z");
    const cplx c = theta(ctx.p(), z * z) / (z * d);
    const ArgumentPoint zp = ArgumentPoint::plain(z);
    return {ctx.F(z, lc.v()), c * ctx.Fplus(zp, lc.v()), ctx.F(z, lc.w()), c * ctx.Fplus(zp, lc.w())};
}

double check_det_M(const LaxContext& lc, cplx z) {
    const BiorthContext& ctx = lc.biorth();
    const Matrix2C m = build_M(lc, z);
    const cplx expected = lc.normalizer() * theta(ctx.p(), z * z) / (z * density(ctx.params(), z));
    const double scale = max_term({m.a11 * m.a22, m.a12 * m.a21, expected});
    return std::abs(m.det() - expected) / scale;
}

double check_M_reflection(const LaxContext& lc, cplx z) {
    const Matrix2C lhs = build_M(lc, 1.0 / z);
    const Matrix2C rhs = build_M(lc, z) * Matrix2C{1.0, 1.0, 0.0, -1.0};
    return matrix_residual(lhs, rhs);
}

double check_p_shift_of_M(const LaxContext& lc, cplx z) {
    const BiorthContext& ctx = lc.biorth();
    const cplx p = ctx.p().value();
    const cplx pz2 = p * z * z;
    const cplx k = ipow(pz2, ctx.n() - 2) * density(ctx.params(), z) / density(ctx.params(), p * z);
    const Matrix2C t{ipow(pz2, -ctx.n()), -k, 0.0, k};
    return matrix_residual(build_M(lc, p * z), build_M(lc, z) * t);
}

// ---- A~ ---------------------------------------------------------------------------

cplx atilde_scale(const BiorthContext& ctx, cplx z) {
    return theta_product(ctx, 0, ctx.params().count(), z) / (ctx.q().value() * z * z);
}

Matrix2C build_Atilde(const LaxContext& lc, cplx z) {
    const BiorthContext& ctx = lc.biorth();
    const cplx q = ctx.q().value();
    const cplx nrm = lc.normalizer();
    const cplx a = atilde_scale(ctx, z) / nrm;
    const cplx b = q * z * z * theta_product(ctx, 0, ctx.params().count(), 1.0 / (q * z)) / nrm;
    const cplx qz = q * z;
    const ArgumentPoint v = lc.v(), w = lc.w();
    Matrix2C left{ctx.F(qz, v), 0.0, ctx.F(qz, w), 0.0};
    if (b != cplx(0.0, 0.0)) {
        left.a12 = b * ctx.Fplus(ArgumentPoint::plain(qz), v);
        left.a22 = b * ctx.Fplus(ArgumentPoint::plain(qz), w);
    }
    Matrix2C right{0.0, 0.0, -ctx.F(z, w), ctx.F(z, v)};
    if (a != cplx(0.0, 0.0)) {
        right.a11 = a * ctx.Fplus(ArgumentPoint::plain(z), w);
        right.a12 = -a * ctx.Fplus(ArgumentPoint::plain(z), v);
    }
    return left * right;
}

Matrix2C build_Atilde_definition(const LaxContext& lc, cplx z) {
    const cplx q = lc.biorth().q().value();
    return atilde_scale(lc.biorth(), z) * (build_M(lc, q * z) * build_M(lc, z).inverse());
}

double check_Atilde_definition(const LaxContext& lc, cplx z) {
    return matrix_residual(build_Atilde(lc, z), build_Atilde_definition(lc, z));
}

double check_Atilde_det(const LaxContext& lc, cplx z) {
    const BiorthContext& ctx = lc.biorth();
    const Matrix2C a = build_Atilde(lc, z);
    const int R = ctx.params().count();
    const cplx expected = theta_product(ctx, 0, R, z) * theta_product(ctx, 0, R, 1.0 / (ctx.q().value() * z));
    const double scale = max_term({a.a11 * a.a22, a.a12 * a.a21, expected});
    return std::abs(a.det() - expected) / scale;
}

double check_Atilde_p_law(const LaxContext& lc, cplx z) {
    const BiorthContext& ctx = lc.biorth();
    const cplx p = ctx.p().value(), q = ctx.q().value();
    const cplx factor = ipow(p * q * z * z, -(ctx.params().m() + 3));
    return matrix_residual(build_Atilde(lc, p * z), factor * build_Atilde(lc, z));
}

double check_Atilde_symmetry(const LaxContext& lc, cplx z) {
    const cplx q = lc.biorth().q().value();
    return matrix_residual(build_Atilde(lc, 1.0 / (q * z)), adjugate_conjugate(build_Atilde(lc, z)));
}

double check_Atilde_inverse(const LaxContext& lc, cplx z) {
    const cplx q = lc.biorth().q().value();
    const Matrix2C a = build_Atilde(lc, z);
    const Matrix2C prod = build_Atilde(lc, 1.0 / (q * z)) * a;
    return matrix_residual(prod, a.det() * Matrix2C::identity());
}

namespace {

template <class Compute, class Expect>
SpecialValue special_value(std::string label, cplx point, Compute compute, Expect expect) {
    SpecialValue sv;
    sv.label = std::move(label);
    sv.point = point;
    try {
        sv.computed = compute();
        sv.expected = expect();
        sv.residual = relative_difference(sv.computed, sv.expected);
    } catch (const DomainError& e) {
        sv.skipped = true;
        sv.note = e.what();
        sv.residual = std::numeric_limits<double>::quiet_NaN();
    } catch (const PoleError& e) {
        sv.skipped = true;
        sv.note = e.what();
        sv.residual = std::numeric_limits<double>::quiet_NaN();
    }
    return sv;
}

std::string indexed(const char* fmt_head, int s, const char* tail) {
    std::ostringstream os;
    os << fmt_head << s << tail;
    return os.str();
}

} // namespace

std::vector<SpecialValue> special_values_A(const LaxContext& lc) {
    const BiorthContext& ctx = lc.biorth();
    const cplx p = ctx.p().value(), q = ctx.q().value();
    const int R = ctx.params().count();
    const int m3 = half_count(ctx);
    const ArgumentPoint v = lc.v(), w = lc.w();
    std::vector<SpecialValue> out;
    for (int s = 0; s < R; ++s) {
        const cplx us = ctx.params().u(s);
        const cplx xs = us / q;
        auto scalar = [&] { return q / (us * us) * theta_product(ctx, 0, R, xs) / lc.normalizer(); };
        out.push_back(special_value(
            indexed("A(u_", s, "/q)"), xs, [&] { return build_Atilde(lc, xs); },
            [&] {
                const ArgumentPoint xp = ArgumentPoint::plain(xs);
                return scalar() * outer(ctx.F(us, v), ctx.F(us, w), ctx.Fplus(xp, w), -ctx.Fplus(xp, v));
            }));
        out.push_back(special_value(
            indexed("A(1/u_", s, ")"), 1.0 / us,
            [&] { return ipow(p * q / (us * us), m3) * build_Atilde(lc, p / us); },
            [&] {
                const ArgumentPoint xp = ArgumentPoint::plain(xs);
                return scalar() * outer(ctx.Fplus(xp, v), ctx.Fplus(xp, w), -ctx.F(us, w), ctx.F(us, v));
            }));
    }
    const cplx h = std::sqrt(q);
    const cplx r = std::sqrt(p / q);
    const cplx qn = ipow(q, -ctx.n()) / p;
    struct Ram {
        const char* label;
        cplx z;
        cplx factor;
    };
    const Ram rams[] = {{"A(q^-1/2)", 1.0 / h, 1.0},
                        {"A(-q^-1/2)", -1.0 / h, 1.0},
                        {"A((p/q)^1/2)", r, qn},
                        {"A(-(p/q)^1/2)", -r, qn}};
    for (const Ram& rm : rams) {
        out.push_back(special_value(
            rm.label, rm.z, [&] { return build_Atilde(lc, rm.z); },
            [&] { return (rm.factor * theta_product(ctx, 0, R, rm.z)) * Matrix2C::identity(); }));
    }
    return out;
}

double rank_defect(const Matrix2C& m) {
    const double s = m.max_abs();
    if (!(s > 0.0))
        return 0.0;
    return std::abs(m.det()) / (s * s);
}

std::vector<cplx> candidate_poles(const BiorthContext& ctx) {
    std::vector<cplx> out;
    const cplx p = ctx.p().value(), q = ctx.q().value();
    for (const cplx& u : ctx.params().u()) {
        out.push_back(1.0 / (q * u));
        out.push_back(p * u);
    }
    return out;
}

double holomorphy_ratio(const LaxContext& lc, cplx z0) {
    auto ring = [&](double rel) {
        double mx = 0.0;
        for (int k = 0; k < 8; ++k) {
            const cplx z = z0 + std::polar(rel * std::abs(z0), 2.0 * std::numbers::pi * (k + 0.5) / 8.0);
            mx = std::max(mx, build_Atilde(lc, z).max_abs());
        }
        return mx;
    };
    return ring(1e-4) / ring(1e-2);
}

// ---- isomonodromy ------------------------------------------------------------------

IsomonoVW apply_isomono_vw(const LaxContext& lc, ArgumentPoint vp, ArgumentPoint wp,
                           const std::vector<cplx>& zs) {
    const BiorthContext& ctx = lc.biorth();
    const ArgumentPoint v = lc.v(), w = lc.w();
    IsomonoVW out;
    out.transform = (1.0 / lc.Fplus_vw()) *
                    Matrix2C{ctx.Fplus(vp, w), -ctx.Fplus(vp, v), ctx.Fplus(wp, w), -ctx.Fplus(wp, v)};
    const LaxContext other(lc.biorth_ptr(), vp, wp);
    for (const cplx& z : zs)
        out.residual = std::max(out.residual, matrix_residual(build_M(other, z), out.transform * build_M(lc, z)));
    return out;
}

ParameterSet shifted_parameters(const ParameterSet& params, IntegerShift which) {
    std::vector<cplx> u = params.u();
    const cplx q = params.q().value();
    int n = params.n();
    if (which == IntegerShift::UD) {
        u[0] *= q;
        u[1] /= q;
    } else {
        if (n < 1)
            throw DomainError("the (q u_0, q u_1, n-1) shift needs n >= 1");
        u[0] *= q;
        u[1] *= q;
        n -= 1;
    }
    ParameterSet shifted = params.with_n_u(n, std::move(u));
    const ContourVerdict verdict = check_contour(shifted);
    if (!verdict.ok)
        throw DomainError("shifted parameters leave the contour domain: " + verdict.reason);
    return shifted;
}

double apply_isomono_integer(const BiorthContext& ctx, IntegerShift which, const std::vector<cplx>& zs) {
    const ParameterSet& params = ctx.params();
    const ParameterSet shifted = shifted_parameters(params, which);
    auto image = std::make_shared<const BiorthContext>(shifted, ctx.engine().options());
    auto base = std::shared_ptr<const BiorthContext>(&ctx, [](const BiorthContext*) {});
    const Nome p = ctx.p();
    const cplx q = ctx.q().value();
    const cplx u0 = params.u(0), u1 = params.u(1);
    const int n = params.n();
    double worst = 0.0;
    if (which == IntegerShift::UD) {
        const LaxContext lhs(image, ArgumentPoint::plain(u0), ArgumentPoint::hatted(u1 / q));
        const LaxContext rhs(base, ArgumentPoint::plain(u1 / q), ArgumentPoint::hatted(u0));
        const cplx scalar = ipow(u0 * q / u1, n);
        for (const cplx& z : zs) {
            const Matrix2C d = Matrix2C::diag(1.0, theta_pm(p, u1 / q, z) / theta_pm(p, u0, z));
            worst = std::max(worst, matrix_residual(build_M(lhs, z), scalar * (d * build_M(rhs, z))));
        }
    } else {
        const LaxContext lhs(image, ArgumentPoint::plain(u0), ArgumentPoint::plain(u1));
        const LaxContext rhs(base, ArgumentPoint::hatted(u1), ArgumentPoint::hatted(u0));
        const cplx scalar = -ipow(u0 * u1, n - 1);
        for (const cplx& z : zs) {
            const Matrix2C d = Matrix2C::diag(u1 / theta_pm(p, u1, z), u0 / theta_pm(p, u0, z));
            worst = std::max(worst, matrix_residual(build_M(lhs, z), scalar * (d * build_M(rhs, z))));
        }
    }
    return worst;
}

// ---- B~ --------------------------------------------------------------------------------

ParameterSet half_shifted_parameters(const ParameterSet& params) {
    std::vector<cplx> u = params.u();
    const cplx h = std::sqrt(params.q().value());
    const int m3 = params.m() + 3;
    for (int r = 0; r < params.count(); ++r)
        u[static_cast<std::size_t>(r)] *= (r < m3) ? h : 1.0 / h;
    ParameterSet shifted = params.with_u(std::move(u));
    const ContourVerdict verdict = check_contour(shifted);
    if (!verdict.ok)
        throw DomainError("half-shifted parameters leave the contour domain: " + verdict.reason);
    return shifted;
}

BContext::BContext(LaxContext base, std::shared_ptr<const BiorthContext> prime, ArgumentPoint vp, ArgumentPoint wp)
    : base_(std::move(base)), prime_(std::move(prime)), vp_(vp), wp_(wp), h_(std::sqrt(base_.biorth().q().value())) {
    gp_ = Gplus(vp_, wp_);
    if (!(std::abs(gp_) > 1e-300))
        throw DegeneracyError("G^+_n(v',w') = 0: the shifted fundamental matrix is singular");
}

cplx BContext::G(cplx x, ArgumentPoint b) const { return prime_->F(h_ * x, b.scaled(h_)); }

cplx BContext::Gplus(ArgumentPoint a, ArgumentPoint b) const { return prime_->Fplus(a.scaled(h_), b.scaled(h_)); }

cplx BContext::relation_constant() const {
    return -(1.0 / h_) * prime_->selberg_n() * gp_ / base_.normalizer();
}

BContext make_B_context(const LaxContext& lc, ArgumentPoint vp, ArgumentPoint wp, const QuadOptions& opts) {
    auto prime = std::make_shared<const BiorthContext>(half_shifted_parameters(lc.biorth().params()), opts);
    return BContext(lc, std::move(prime), vp, wp);
}

cplx btilde_scale(const BiorthContext& ctx, cplx z) {
    return theta_product(ctx, 0, half_count(ctx), z) / (std::sqrt(ctx.q().value()) * z);
}

Matrix2C build_Btilde(const BContext& bc, cplx z) {
    const LaxContext& lc = bc.base();
    const BiorthContext& ctx = lc.biorth();
    const cplx q = ctx.q().value();
    const cplx nrm = lc.normalizer();
    const int m3 = half_count(ctx);
    const cplx c = btilde_scale(ctx, z) / nrm;
    const cplx d = -z * theta_product(ctx, m3, ctx.params().count(), 1.0 / (q * z)) / nrm;
    const ArgumentPoint zp = ArgumentPoint::plain(z);
    Matrix2C left{bc.G(z, bc.vp()), 0.0, bc.G(z, bc.wp()), 0.0};
    if (d != cplx(0.0, 0.0)) {
        left.a12 = d * bc.Gplus(zp, bc.vp());
        left.a22 = d * bc.Gplus(zp, bc.wp());
    }
    Matrix2C right{0.0, 0.0, -ctx.F(z, lc.w()), ctx.F(z, lc.v())};
    if (c != cplx(0.0, 0.0)) {
        right.a11 = c * ctx.Fplus(zp, lc.w());
        right.a12 = -c * ctx.Fplus(zp, lc.v());
    }
    return left * right;
}

Matrix2C build_Btilde_definition(const BContext& bc, cplx z) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx h = bc.sqrt_q();
    auto prime = std::shared_ptr<const BiorthContext>(&bc.prime(), [](const BiorthContext*) {});
    const LaxContext shifted(prime, bc.vp().scaled(h), bc.wp().scaled(h));
    return btilde_scale(ctx, z) * (build_M(shifted, h * z) * build_M(bc.base(), z).inverse());
}

double check_Btilde_definition(const BContext& bc, cplx z) {
    return matrix_residual(build_Btilde(bc, z), build_Btilde_definition(bc, z));
}

double check_Btilde_det(const BContext& bc, cplx z) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx q = ctx.q().value();
    const int m3 = half_count(ctx);
    const Matrix2C b = build_Btilde(bc, z);
    const cplx expected = -(1.0 / bc.sqrt_q()) * bc.prime().selberg_n() * bc.Gplus_vpwp() /
                          bc.base().normalizer() * theta_product(ctx, 0, m3, z) *
                          theta_product(ctx, m3, ctx.params().count(), 1.0 / (q * z));
    const double scale = max_term({b.a11 * b.a22, b.a12 * b.a21, expected});
    return std::abs(b.det() - expected) / scale;
}

namespace {

cplx btilde_multiplier(const BiorthContext& ctx) {
    const int m3 = half_count(ctx);
    cplx k = ipow(ctx.q().value(), -ctx.n()) / ctx.p().value();
    if (m3 % 2 != 0)
        k = -k;
    for (int r = 0; r < m3; ++r)
        k /= ctx.params().u(r);
    return k;
}

} // namespace

double check_Btilde_p_law(const BContext& bc, cplx z) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx p = ctx.p().value();
    const cplx factor = btilde_multiplier(ctx) * ipow(z, -half_count(ctx));
    return matrix_residual(build_Btilde(bc, p * z), factor * build_Btilde(bc, z));
}

double check_AB_relation(const BContext& bc, cplx z) {
    const cplx q = bc.base().biorth().q().value();
    const Matrix2C lhs = adjugate_conjugate(build_Btilde(bc, 1.0 / (q * z))) * build_Btilde(bc, z);
    return matrix_residual(lhs, bc.relation_constant() * build_Atilde(bc.base(), z));
}

double check_B_inverse_relation(const BContext& bc, cplx z) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx q = ctx.q().value();
    const cplx zr = 1.0 / (q * z);
    const Matrix2C b_z = (1.0 / btilde_scale(ctx, z)) * build_Btilde(bc, z);
    const Matrix2C b_r = (1.0 / btilde_scale(ctx, zr)) * build_Btilde(bc, zr);
    const Matrix2C a = (1.0 / atilde_scale(ctx, z)) * build_Atilde(bc.base(), z);
    return matrix_residual(b_r.inverse() * b_z, a);
}

namespace {

cplx b_scalar_low(const BContext& bc, int s) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx us = ctx.params().u(s);
    return -(1.0 / us) * theta_product(ctx, half_count(ctx), ctx.params().count(), us / ctx.q().value()) /
           bc.base().normalizer();
}

cplx b_scalar_high(const BContext& bc, int s) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx us = ctx.params().u(s);
    return bc.sqrt_q() / us * theta_product(ctx, 0, half_count(ctx), us / ctx.q().value()) /
           bc.base().normalizer();
}

Matrix2C b_expected_low(const BContext& bc, int s) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx us = ctx.params().u(s);
    const ArgumentPoint xp = ArgumentPoint::plain(us / ctx.q().value());
    const LaxContext& lc = bc.base();
    return b_scalar_low(bc, s) *
           outer(bc.Gplus(xp, bc.vp()), bc.Gplus(xp, bc.wp()), -ctx.F(us, lc.w()), ctx.F(us, lc.v()));
}

Matrix2C b_expected_high(const BContext& bc, int s) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx xs = ctx.params().u(s) / ctx.q().value();
    const ArgumentPoint xp = ArgumentPoint::plain(xs);
    const LaxContext& lc = bc.base();
    return b_scalar_high(bc, s) *
           outer(bc.G(xs, bc.vp()), bc.G(xs, bc.wp()), ctx.Fplus(xp, lc.w()), -ctx.Fplus(xp, lc.v()));
}

} // namespace

std::vector<SpecialValue> special_values_B(const BContext& bc) {
    const BiorthContext& ctx = bc.base().biorth();
    const cplx p = ctx.p().value(), q = ctx.q().value();
    const int m3 = half_count(ctx);
    const cplx K = btilde_multiplier(ctx);
    std::vector<SpecialValue> out;
    for (int s = 0; s < m3; ++s) {
        const cplx us = ctx.params().u(s);
        out.push_back(special_value(
            indexed("B(1/u_", s, ")"), 1.0 / us,
            [&] { return (1.0 / (K * ipow(us, m3))) * build_Btilde(bc, p / us); },
            [&] { return b_expected_low(bc, s); }));
    }
    for (int s = m3; s < ctx.params().count(); ++s) {
        const cplx xs = ctx.params().u(s) / q;
        out.push_back(special_value(
            indexed("B(u_", s, "/q)"), xs, [&] { return build_Btilde(bc, xs); },
            [&] { return b_expected_high(bc, s); }));
    }
    return out;
}

namespace {

// Theta function of the B~ multiplier class with zeros at z = b_k p^Z.
cplx theta_monomial(Nome p, const std::vector<cplx>& b, cplx z) {
    cplx v = 1.0;
    for (const cplx& bk : b)
        v *= theta(p, z / bk);
    return v;
}

} // namespace

FayResult fay_from_B(const BContext& bc) {
    const LaxContext& lc = bc.base();
    const BiorthContext& ctx = lc.biorth();
    const ParameterSet& params = ctx.params();
    if (params.m() != 1)
        throw DomainError("fay_from_B is set up for order m = 1");
    const Nome pn = ctx.p();
    const cplx p = pn.value(), q = ctx.q().value();
    const int m3 = half_count(ctx);
    const int R = params.count();
    const cplx u0 = params.u(0), u1 = params.u(1);
    if (!bc.vp().is_plain() || std::abs(bc.vp().value - u0 / q) > 1e-14 * std::abs(u0 / q))
        throw DomainError("fay_from_B needs v' = u_0/q (plain)");
    if (!lc.w().is_hatted() || std::abs(lc.w().value - u1) > 1e-14 * std::abs(u1))
        throw DomainError("fay_from_B needs w = u_1 hatted");

    // Product of the zeros of any function in the multiplier class.
    cplx zero_product = ipow(q, -ctx.n()) / p;
    for (int r = 0; r < m3; ++r)
        zero_product /= params.u(r);

    std::vector<cplx> nodes, values;
    for (int s = 0; s < m3; ++s) {
        nodes.push_back(1.0 / params.u(s));
        values.push_back(b_expected_low(bc, s).a11);
    }
    const cplx target = params.u(m3) / q;
    const cplx target_value = b_expected_high(bc, m3).a11;

    FayResult out;
    out.lhs = target_value;
    double scale = std::abs(target_value);
    if (ctx.n() >= 1) {
        // Lagrange basis at the nodes 1/u_s.
        cplx sum = 0.0;
        for (int s = 0; s < m3; ++s) {
            if (values[s] == cplx(0.0, 0.0))
                continue;
            std::vector<cplx> b;
            cplx prod = 1.0;
            for (int k = 0; k < m3; ++k) {
                if (k == s)
                    continue;
                b.push_back(1.0 / params.u(k));
                prod *= 1.0 / params.u(k);
            }
            b.push_back(zero_product / prod);
            const cplx term = theta_monomial(pn, b, target) / theta_monomial(pn, b, nodes[s]) * values[s];
            scale = std::max(scale, std::abs(term));
            sum += term;
            ++out.terms;
        }
        out.rhs = sum;
    } else {
        // The nodes 1/u_s are not unisolvent at n = 0; add u_s/q for s > m+3.
        for (int s = m3 + 1; s < R; ++s) {
            nodes.push_back(params.u(s) / q);
            values.push_back(b_expected_high(bc, s).a11);
        }
        std::vector<std::vector<cplx>> basis;
        for (int k = 0; k < m3; ++k) {
            std::vector<cplx> b;
            cplx prod = 1.0;
            for (int j = 0; j + 1 < m3; ++j) {
                const cplx bj = std::polar(0.6, 0.7 + 1.9 * k + 1.1 * j);
                b.push_back(bj);
                prod *= bj;
            }
            b.push_back(zero_product / prod);
            basis.push_back(std::move(b));
        }
        Eigen::MatrixXcd A(static_cast<Eigen::Index>(nodes.size()), m3);
        Eigen::VectorXcd y(static_cast<Eigen::Index>(nodes.size()));
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (int k = 0; k < m3; ++k)
                A(static_cast<Eigen::Index>(i), k) = theta_monomial(pn, basis[k], nodes[i]);
            y(static_cast<Eigen::Index>(i)) = values[i];
            scale = std::max(scale, std::abs(values[i]));
            if (values[i] != cplx(0.0, 0.0))
                ++out.terms;
        }
        const Eigen::VectorXcd coef = A.colPivHouseholderQr().solve(y);
        cplx pred = 0.0;
        for (int k = 0; k < m3; ++k)
            pred += coef(k) * theta_monomial(pn, basis[k], target);
        out.rhs = pred;
    }
    out.residual = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
    return out;
}

// ---- apparent singularities --------------------------------------------------------------

Matrix2C apparent_singularity_wrap(const LaxContext& lc, cplx x, cplx z) {
    const BiorthContext& ctx = lc.biorth();
    const cplx qn = ipow(ctx.q().value(), ctx.n());
    const cplx ratio = gamma_pm(ctx.p(), ctx.q(), x, z) / gamma_pm(ctx.p(), ctx.q(), qn * x, z);
    return ratio * build_M(lc, z);
}

Matrix2C build_Aprime(const LaxContext& lc, cplx x, cplx z) {
    const BiorthContext& ctx = lc.biorth();
    const Nome p = ctx.p();
    const cplx q = ctx.q().value();
    const int n = ctx.n();
    const cplx num = theta(p, x * z) * theta(p, ipow(q, n - 1) * x / z);
    const cplx den = theta(p, ipow(q, n) * x * z) * theta(p, x / (q * z));
    return (num / (den * atilde_scale(ctx, z))) * build_Atilde(lc, z);
}

double check_Aprime_definition(const LaxContext& lc, cplx x, cplx z) {
    const cplx q = lc.biorth().q().value();
    const Matrix2C def = apparent_singularity_wrap(lc, x, q * z) * apparent_singularity_wrap(lc, x, z).inverse();
    return matrix_residual(def, build_Aprime(lc, x, z));
}

double check_Aprime_elliptic(const LaxContext& lc, cplx x, cplx z) {
    const cplx p = lc.biorth().p().value();
    return matrix_residual(build_Aprime(lc, x, p * z), build_Aprime(lc, x, z));
}

double check_Mprime_reflection(const LaxContext& lc, cplx x, cplx z) {
    const Matrix2C lhs = apparent_singularity_wrap(lc, x, 1.0 / z);
    const Matrix2C rhs = apparent_singularity_wrap(lc, x, z) * Matrix2C{1.0, 1.0, 0.0, -1.0};
    return matrix_residual(lhs, rhs);
}

double check_Bprime(const BContext& bc, cplx x, cplx z) {
    const BiorthContext& ctx = bc.base().biorth();
    const Nome pn = ctx.p(), qn_ = ctx.q();
    const cplx q = qn_.value();
    const cplx h = bc.sqrt_q();
    const cplx qn = ipow(q, ctx.n());
    auto G = [&](cplx a) { return gamma(pn, qn_, a); };
    // l = l' = 1/2, nu = 0.
    const cplx ratio = G(q * x * z) * G(x / z) / (G(x * z) * G(x / z)) * G(qn * x * z) * G(qn * x / z) /
                       (G(qn * q * x * z) * G(qn * x / z));
    const Matrix2C b = (1.0 / btilde_scale(ctx, z)) * build_Btilde(bc, z);
    const Matrix2C formula = ratio * b;

    auto prime = std::shared_ptr<const BiorthContext>(&bc.prime(), [](const BiorthContext*) {});
    const LaxContext shifted(prime, bc.vp().scaled(h), bc.wp().scaled(h));
    const Matrix2C direct =
        apparent_singularity_wrap(shifted, h * x, h * z) * apparent_singularity_wrap(bc.base(), x, z).inverse();
    return matrix_residual(direct, formula);
}

} // namespace ellax
