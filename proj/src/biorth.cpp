#include "ellax/biorth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ellax {

namespace {

constexpr int kMaxReductions = 256;
constexpr double kCircleGuard = 1e-10;

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

void require_dimension(int d, const char* what) {
    if (d > kMaxDimension) {
        std::ostringstream os;
        os << what << " needs a " << d << "-dimensional integral (maximum " << kMaxDimension << ")";
        throw DomainError(os.str());
    }
}

Residual normalized(cplx diff, double scale) {
    if (!(scale > 0.0))
        return {std::abs(diff) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity(), scale};
    return {std::abs(diff) / scale, scale};
}

} // namespace

double max_term(std::initializer_list<cplx> terms) {
    double m = 0.0;
    for (const cplx& t : terms)
        m = std::max(m, std::abs(t));
    return m;
}

BiorthContext::BiorthContext(ParameterSet params, QuadOptions opts)
    : params_(std::move(params)), engine_(params_, opts) {
    const ContourVerdict v = check_contour(params_);
    if (!v.ok)
        throw DomainError("unit circle is not a valid contour: " + v.reason);
    require_dimension(params_.n(), "II_n");
    selberg_n_ = engine_.integrate(params_.n()).value;
}

bool BiorthContext::in_annulus(cplx x) const {
    const double a = std::abs(x);
    return a > p().abs() * (1.0 + kCircleGuard) && a < 1.0 - kCircleGuard;
}

QuadratureResult BiorthContext::F_direct(cplx x, cplx v) const {
    if (n() == 0)
        return {1.0, 0.0, 0, 1.0};
    if (!in_annulus(v))
        throw DomainError("F_n(x;v) needs |p| < |v| < 1");
    const Nome pp = p();
    auto extra = [&](cplx z) { return theta_pm(pp, x, z) / theta_pm(pp, v, z); };
    QuadratureResult r = engine_.integrate(n(), extra);
    const cplx c = ipow(v / x, n());
    r.value *= c;
    r.est_error *= std::abs(c);
    r.abs_scale *= std::abs(c);
    return r;
}

QuadratureResult BiorthContext::Fplus_direct(cplx x, cplx v) const {
    if (!in_annulus(x) || !in_annulus(v))
        throw DomainError("direct F^+_n(x,v) needs both arguments in |p| < |.| < 1");
    require_dimension(n() + 1, "F^+_n");
    const Nome pp = p();
    auto extra = [&](cplx z) { return 1.0 / (theta_pm(pp, x, z) * theta_pm(pp, v, z)); };
    QuadratureResult r = engine_.integrate(n() + 1, extra);
    const cplx c = ipow(v * x, n() + 1) * psi(pp, v, x);
    r.value *= c;
    r.est_error *= std::abs(c);
    r.abs_scale *= std::abs(c);
    return r;
}

QuadratureResult BiorthContext::Fminus_direct(cplx x, cplx v) const {
    if (n() == 0)
        return {0.0, 0.0, 0, 0.0};
    require_dimension(n() - 1, "F^-_n");
    const Nome pp = p();
    auto extra = [&](cplx z) { return theta_pm(pp, x, z) * theta_pm(pp, v, z); };
    QuadratureResult r = engine_.integrate(n() - 1, n() > 1 ? std::function<cplx(cplx)>(extra) : nullptr);
    // psi_p(x, v) = -psi_p(v, x): this orientation is the one for which the
    // F^- Cauchy identity and the hatted Pluecker relations hold.
    const cplx c = psi(pp, x, v) * ipow(x * v, 1 - n());
    r.value *= c;
    r.est_error *= std::abs(c);
    r.abs_scale *= std::abs(c);
    return r;
}

cplx BiorthContext::Fminus(cplx x, cplx v) const { return Fminus_direct(x, v).value; }

cplx BiorthContext::jump(cplx x) const {
    cplx j = theta(q(), x * x) / x;
    if (j == cplx(0.0, 0.0))
        return j;
    for (const cplx& ur : params_.u())
        j *= gamma_pm(p(), q(), ur, x);
    return j;
}

cplx BiorthContext::F(cplx x, ArgumentPoint v) const {
    if (v.is_hatted())
        return Fminus(x, v.value);
    return fplus_impl(ArgumentPoint::hatted(x), v, 0);
}

cplx BiorthContext::Fplus(ArgumentPoint x, ArgumentPoint v) const { return fplus_impl(x, v, 0); }

cplx BiorthContext::fplus_impl(ArgumentPoint a, ArgumentPoint b, int depth) const {
    if (depth > kMaxReductions)
        throw DomainError("argument reduction did not reach the annulus");
    if (a.value == cplx(0.0, 0.0) || b.value == cplx(0.0, 0.0))
        throw DomainError("F^+_n arguments must be nonzero");

    if (a.is_plain() && !in_annulus(a.value)) {
        const cplx x = a.value;
        const double r = std::abs(x);
        if (std::abs(r - 1.0) <= kCircleGuard || std::abs(r - p().abs()) <= kCircleGuard * p().abs())
            throw DomainError("F^+_n argument lies on the boundary of the annulus |p| < |x| < 1");
        if (r > 1.0) {
            // F^+(1/y, b) = F^+(y, b) + J(y) F^+(y^, b)
            const cplx y = 1.0 / x;
            const cplx base = fplus_impl(ArgumentPoint::plain(y), b, depth + 1);
            const cplx j = jump(y);
            if (j == cplx(0.0, 0.0))
                return base;
            return base + j * fplus_impl(ArgumentPoint::hatted(y), b, depth + 1);
        }
        // F^+(p/y, b) = (p/y^2)^n F^+(y, b)
        const cplx y = p().value() / x;
        return ipow(p().value() / (y * y), n()) * fplus_impl(ArgumentPoint::plain(y), b, depth + 1);
    }
    if (b.is_plain() && !in_annulus(b.value))
        return -fplus_impl(b, a, depth + 1);

    if (a.is_plain() && b.is_plain())
        return Fplus_direct(a.value, b.value).value;
    if (a.is_hatted() && b.is_plain())
        return F_direct(a.value, b.value).value;
    if (a.is_plain() && b.is_hatted())
        return -F_direct(b.value, a.value).value;
    return Fminus(a.value, b.value);
}

cplx eval_F(const BiorthContext& ctx, cplx x, ArgumentPoint v) { return ctx.F(x, v); }

cplx eval_Fplus(const BiorthContext& ctx, ArgumentPoint x, ArgumentPoint v) { return ctx.Fplus(x, v); }

cplx reflect_Fplus(const BiorthContext& ctx, cplx x, ArgumentPoint v) {
    if (!ctx.in_annulus(x))
        throw DomainError("reflect_Fplus needs |p| < |x| < 1");
    const cplx base = ctx.Fplus(ArgumentPoint::plain(x), v);
    const cplx j = ctx.jump(x);
    if (j == cplx(0.0, 0.0))
        return base;
    return base + j * ctx.F(x, v);
}

namespace {

QuadratureResult weighted_line(const BiorthContext& ctx, const std::function<cplx(cplx)>& extra) {
    const SelbergEngine& eng = ctx.engine();
    auto weights = [&](int N, std::span<cplx> out) {
        eng.fill_density(N, out);
        for (int i = 0; i < N; ++i)
            if (out[i] != cplx(0.0, 0.0))
                out[i] *= extra(CircleGrid::node(i, N));
    };
    return integrate_symmetric(1, weights, {}, eng.options());
}

} // namespace

Residual check_biorthogonality(const BiorthContext& ctx, ArgumentPoint v, const BC1Theta& H) {
    if (ctx.n() < 1)
        throw DomainError("biorthogonality needs n >= 1");
    if (!v.is_plain())
        throw DomainError("biorthogonality is stated for plain v");
    const Nome p = ctx.p();
    auto extra = [&](cplx z) { return ctx.F(z, v) * H(z) / psi(p, v.value, z); };
    const QuadratureResult r = weighted_line(ctx, extra);
    return normalized(r.value, r.abs_scale);
}

Residual check_cauchy_identity(const BiorthContext& ctx, cplx x, cplx v, const BC1Theta& G) {
    if (!ctx.in_annulus(x) || !ctx.in_annulus(v))
        throw DomainError("Cauchy identity needs x and v in |p| < |.| < 1");
    require_dimension(ctx.n() + 1, "Cauchy identity");
    const Nome p = ctx.p();
    const ArgumentPoint vp = ArgumentPoint::plain(v);
    auto extra = [&](cplx z) { return ctx.F(z, vp) * G(z) / (psi(p, x, z) * psi(p, v, z)); };
    QuadratureResult lhs = weighted_line(ctx, extra);
    const cplx c = ctx.engine().prefactor(1);
    lhs.value *= c;
    lhs.abs_scale *= std::abs(c);

    auto pole = [&](cplx z) { return 1.0 / (theta_pm(p, x, z) * theta_pm(p, v, z)); };
    const cplx rhs = G(x) * ipow(x * v, ctx.n() + 1) * ctx.engine().integrate(ctx.n() + 1, pole).value;
    return normalized(lhs.value - rhs, std::max(lhs.abs_scale, std::abs(rhs)));
}

Residual check_pluecker(const BiorthContext& ctx, ArgumentPoint w, ArgumentPoint x, ArgumentPoint y,
                        ArgumentPoint z) {
    const cplx t1 = ctx.Fplus(w, x) * ctx.Fplus(y, z);
    const cplx t2 = ctx.Fplus(w, y) * ctx.Fplus(x, z);
    const cplx t3 = ctx.Fplus(w, z) * ctx.Fplus(x, y);
    return normalized(t1 - t2 + t3, max_term({t1, t2, t3}));
}

Residual check_three_term(const BiorthContext& ctx, cplx x, ArgumentPoint v, ArgumentPoint w) {
    const ArgumentPoint xp = ArgumentPoint::plain(x);
    const cplx t1 = ctx.F(x, v) * ctx.Fplus(xp, w);
    const cplx t2 = ctx.F(x, w) * ctx.Fplus(xp, v);
    const cplx t3 = ctx.selberg_n() * ctx.Fplus(v, w);
    return normalized(t1 - t2 - t3, max_term({t1, t2, t3}));
}

Residual check_fminus_cauchy(const BiorthContext& ctx, cplx x, cplx y, cplx v, const BC1Theta& G) {
    if (!ctx.in_annulus(x) || !ctx.in_annulus(y))
        throw DomainError("F^- Cauchy identity needs x and y in |p| < |.| < 1");
    const Nome p = ctx.p();
    const cplx pxy = psi(p, x, y);
    auto extra = [&](cplx z) { return ctx.Fminus(z, v) * G(z) * pxy / (psi(p, x, z) * psi(p, y, z)); };
    QuadratureResult lhs = weighted_line(ctx, extra);
    const cplx c = ctx.engine().prefactor(1);
    lhs.value *= c;
    lhs.abs_scale *= std::abs(c);
    const cplx a = G(x) * ctx.F(v, ArgumentPoint::plain(x));
    const cplx b = G(y) * ctx.F(v, ArgumentPoint::plain(y));
    return normalized(lhs.value - (a - b), std::max({lhs.abs_scale, std::abs(a), std::abs(b)}));
}

Residual check_fminus_orthogonality(const BiorthContext& ctx, cplx v, const BC1Theta& H) {
    if (ctx.n() < 2)
        throw DomainError("F^- orthogonality needs n >= 2");
    auto extra = [&](cplx z) { return ctx.Fminus(z, v) * H(z); };
    const QuadratureResult r = weighted_line(ctx, extra);
    return normalized(r.value, r.abs_scale);
}

Residual check_antisymmetry(const BiorthContext& ctx, ArgumentPoint a, ArgumentPoint b) {
    const cplx ab = ctx.Fplus(a, b);
    const cplx ba = ctx.Fplus(b, a);
    return normalized(ab + ba, max_term({ab, ba}));
}

std::pair<Residual, Residual> check_F_symmetry(const BiorthContext& ctx, cplx x, ArgumentPoint v) {
    const int n = ctx.n();
    const cplx px = ctx.p().value() * x;
    const cplx f = ctx.F(x, v);
    const cplx finv = ctx.F(1.0 / x, v);
    const cplx fp = ctx.F(px, v);
    const cplx fp_expected = ipow(px * x, -n) * f;
    return {normalized(finv - f, max_term({finv, f})),
            normalized(fp - fp_expected, max_term({fp, fp_expected}))};
}

std::pair<Residual, Residual> check_monodromy_action(const BiorthContext& ctx, cplx x, ArgumentPoint v) {
    if (!ctx.in_annulus(x))
        throw DomainError("monodromy action check needs |p| < |x| < 1");
    const int n = ctx.n();
    const ArgumentPoint xp = ArgumentPoint::plain(x);
    const cplx f = ctx.F(x, v);
    const cplx fp = ctx.Fplus(xp, v);
    const cplx j = ctx.jump(x);

    // x -> 1/x: (F, F^+) -> (F, J F + F^+)
    const cplx f_inv = ctx.F(1.0 / x, v);
    const cplx fp_inv = reflect_Fplus(ctx, x, v);
    const cplx e0 = f_inv - f;
    const cplx e1 = fp_inv - (j * f + fp);
    const double s_inv = max_term({f_inv, f, fp_inv, j * f, fp});
    const Residual r_inv = normalized(std::max(std::abs(e0), std::abs(e1)), s_inv);

    // x -> px: (F, F^+) -> (F, F^+) [[(px^2)^{-n}, (px^2)^n J], [0, (px^2)^n]]
    const cplx px = ctx.p().value() * x;
    const cplx k = ipow(px * x, n);
    const cplx f_p = ctx.F(px, v);
    const cplx fp_p = ctx.Fplus(ArgumentPoint::plain(px), v);
    const cplx g0 = f_p - f / k;
    const cplx g1 = fp_p - (k * j * f + k * fp);
    const double s_p = max_term({f_p, f / k, fp_p, k * j * f, k * fp});
    const Residual r_p = normalized(std::max(std::abs(g0), std::abs(g1)), s_p);
    return {r_inv, r_p};
}

} // namespace ellax
