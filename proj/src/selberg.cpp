#include "ellax/selberg.hpp"

#include <sstream>

namespace ellax {

cplx density(Nome p, Nome q, std::span<const cplx> u, cplx z) {
    cplx v = theta(p, z * z) * theta(q, 1.0 / (z * z));
    if (v == cplx(0.0, 0.0))
        return v;
    for (const cplx& ur : u)
        v *= gamma_pm(p, q, ur, z);
    return v;
}

cplx density(const ParameterSet& params, cplx z) { return density(params.p(), params.q(), params.u(), z); }

cplx pair_factor(Nome p, cplx w) { return theta(p, w) * theta(p, 1.0 / w); }

SelbergEngine::SelbergEngine(Nome p, Nome q, std::vector<cplx> u, QuadOptions opts)
    : p_(p), q_(q), u_(std::move(u)), opts_(opts) {
    cache_nodes_ = std::max(default_max_nodes(1), opts_.max_nodes);
    const int N = cache_nodes_;
    density_cache_.assign(static_cast<std::size_t>(N), 0.0);
    pair_cache_.assign(static_cast<std::size_t>(N), 0.0);
    // Both tables are invariant under z -> 1/z, i.e. k -> N - k.
#pragma omp parallel for schedule(static)
    for (int k = 0; k <= N / 2; ++k) {
        const cplx z = CircleGrid::node(k, N);
        density_cache_[k] = ellax::density(p_, q_, u_, z);
        pair_cache_[k] = pair_factor(p_, z);
    }
    for (int k = N / 2 + 1; k < N; ++k) {
        density_cache_[k] = density_cache_[N - k];
        pair_cache_[k] = pair_cache_[N - k];
    }
    measure_ = euler_phi(p_) * euler_phi(q_) * gamma(p_, q_, q_.value());
}

cplx SelbergEngine::prefactor(int k) const {
    cplx v = 1.0;
    for (int i = 1; i <= k; ++i)
        v *= measure_ / (2.0 * i);
    return v;
}

void SelbergEngine::fill_density(int nodes, std::span<cplx> out) const {
    if (nodes > cache_nodes_ || cache_nodes_ % nodes != 0)
        throw DomainError("grid finer than the cached density table");
    const int stride = cache_nodes_ / nodes;
    for (int k = 0; k < nodes; ++k)
        out[k] = density_cache_[static_cast<std::size_t>(k) * stride];
}

void SelbergEngine::fill_pairs(int nodes, std::span<cplx> out) const {
    if (nodes > cache_nodes_ || cache_nodes_ % nodes != 0)
        throw DomainError("grid finer than the cached pair table");
    const int stride = cache_nodes_ / nodes;
    for (int k = 0; k < nodes; ++k)
        out[k] = pair_cache_[static_cast<std::size_t>(k) * stride];
}

QuadratureResult SelbergEngine::integrate(int k, const std::function<cplx(cplx)>& extra) const {
    if (k < 0)
        throw DomainError("negative integral dimension");
    if (k > kMaxDimension) {
        std::ostringstream os;
        os << "Selberg dimension " << k << " unsupported (maximum " << kMaxDimension << ")";
        throw DomainError(os.str());
    }
    if (k == 0)
        return {1.0, 0.0, 0, 1.0};
    auto weights = [&](int N, std::span<cplx> out) {
        fill_density(N, out);
        if (extra) {
            for (int i = 0; i < N; ++i)
                if (out[i] != cplx(0.0, 0.0))
                    out[i] *= extra(CircleGrid::node(i, N));
        }
    };
    auto pairs = [&](int N, std::span<cplx> out) { fill_pairs(N, out); };
    QuadratureResult r = integrate_symmetric(k, weights, pairs, opts_);
    const cplx c = prefactor(k);
    r.value *= c;
    r.est_error *= std::abs(c);
    r.abs_scale *= std::abs(c);
    return r;
}

namespace {

void require_contour(const ParameterSet& params) {
    const ContourVerdict v = check_contour(params);
    if (!v.ok)
        throw DomainError("unit circle is not a valid contour: " + v.reason);
}

} // namespace

QuadratureResult selberg(const ParameterSet& params, const QuadOptions& opts) {
    if (params.n() > kMaxDimension) {
        std::ostringstream os;
        os << "Selberg dimension " << params.n() << " unsupported (maximum " << kMaxDimension << ")";
        throw DomainError(os.str());
    }
    if (params.n() == 0)
        return {1.0, 0.0, 0, 1.0};
    require_contour(params);
    return SelbergEngine(params, opts).integrate(params.n());
}

cplx selberg_closed_form_m0(const ParameterSet& params) {
    if (params.m() != 0)
        throw DomainError("closed form exists only for order m = 0");
    const Nome p = params.p();
    const Nome q = params.q();
    const auto& u = params.u();
    cplx v = 1.0;
    cplx qi = 1.0;  // q^i
    for (int i = 0; i < params.n(); ++i) {
        v *= gamma(p, q, qi * q.value());
        for (int r = 0; r < 6; ++r)
            for (int s = r + 1; s < 6; ++s)
                v *= gamma(p, q, qi * u[r] * u[s]);
        qi *= q.value();
    }
    return v;
}

QuadratureResult elliptic_beta_integral(const ParameterSet& params, const QuadOptions& opts) {
    if (params.m() != 0 || params.n() != 1)
        throw DomainError("elliptic beta integral needs m = 0, n = 1");
    require_contour(params);
    QuadratureResult r = SelbergEngine(params, opts).integrate(1);
    const cplx g = gamma(params.p(), params.q(), params.q().value());
    r.value /= g;
    r.est_error /= std::abs(g);
    r.abs_scale /= std::abs(g);
    return r;
}

cplx elliptic_beta_product(const ParameterSet& params) {
    if (params.m() != 0)
        throw DomainError("elliptic beta product needs m = 0");
    const auto& u = params.u();
    cplx v = 1.0;
    for (int r = 0; r < 6; ++r)
        for (int s = r + 1; s < 6; ++s)
            v *= gamma(params.p(), params.q(), u[r] * u[s]);
    return v;
}

cplx tau_renormalized(Nome p, Nome q, int n, const std::vector<cplx>& u, const QuadOptions& opts) {
    if (u.size() != 8)
        throw DomainError("renormalized integral is defined for order m = 1 (8 parameters)");
    const cplx h = std::sqrt(q.value());
    std::vector<cplx> shifted(u);
    for (auto& a : shifted)
        a *= h;
    const ParameterSet params(p, q, 1, n, shifted);
    if (n > 0) {
        const ContourVerdict v = check_contour(params);
        if (!v.ok)
            throw DomainError("shifted parameters leave the contour domain: " + v.reason);
    }
    cplx value = selberg(params, opts).value;
    for (int r = 0; r < 8; ++r)
        for (int s = r + 1; s < 8; ++s)
            value *= gamma_plus(p, q, q, q.value() * u[r] * u[s]);
    return value;
}

namespace {

// x^2 = u_0u_1u_2u_3 / (p q^{2-n}). The fourth root of
// u_0u_1u_2u_3/u_4u_5u_6u_7 only fixes x up to a power of i, and the odd
// powers give a different parameter set.
cplx quarter_ratio(Nome p, Nome q, int n, const std::vector<cplx>& u) {
    return std::sqrt(u[0] * u[1] * u[2] * u[3] / (p.value() * std::pow(q.value(), 2 - n)));
}

std::vector<cplx> apply_quarter_map(const std::vector<cplx>& u, cplx x) {
    std::vector<cplx> out(u);
    for (int r = 0; r < 4; ++r)
        out[r] /= x;
    for (int r = 4; r < 8; ++r)
        out[r] *= x;
    return out;
}

} // namespace

std::vector<cplx> tau_reflect(Nome p, Nome q, int n, const std::vector<cplx>& u) {
    if (u.size() != 8)
        throw DomainError("tau_reflect needs 8 parameters");
    // x is computed for the shifted coordinates q^{1/2} u_r.
    std::vector<cplx> shifted(u);
    for (cplx& ur : shifted)
        ur *= std::sqrt(q.value());
    return apply_quarter_map(u, quarter_ratio(p, q, n, shifted));
}

std::vector<cplx> transform_9_7_image(const ParameterSet& params) {
    if (params.m() != 1)
        throw DomainError("transformation law applies to order m = 1");
    return apply_quarter_map(params.u(), quarter_ratio(params.p(), params.q(), params.n(), params.u()));
}

TransformSides transform_9_7(const ParameterSet& params, const QuadOptions& opts) {
    if (params.m() != 1)
        throw DomainError("transformation law applies to order m = 1");
    if (params.n() > 2)
        throw DomainError("transformation check supports n <= 2");
    const auto& u = params.u();
    const cplx x = quarter_ratio(params.p(), params.q(), params.n(), u);
    std::vector<cplx> up = apply_quarter_map(u, x);
    const ParameterSet image = params.with_u(up);
    if (params.n() == 0)
        return {1.0, 1.0, x, up};
    require_contour(params);
    {
        const ContourVerdict v = check_contour(image);
        if (!v.ok)
            throw DomainError("transformed parameters leave the contour domain: " + v.reason);
    }
    const Nome p = params.p();
    const Nome q = params.q();
    cplx factor = 1.0;
    for (int j = 1; j <= params.n(); ++j) {
        const cplx qs = std::pow(q.value(), params.n() - j);
        for (int r = 0; r < 4; ++r)
            for (int s = r + 1; s < 4; ++s)
                factor *= gamma(p, q, qs * u[r] * u[s]) * gamma(p, q, qs * u[r + 4] * u[s + 4]);
    }
    const cplx lhs = selberg(params, opts).value;
    const cplx rhs = factor * selberg(image, opts).value;
    return {lhs, rhs, x, std::move(up)};
}

} // namespace ellax
