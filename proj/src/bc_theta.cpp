#include "ellax/bc_theta.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace ellax {

BC1Theta::BC1Theta(Nome p, std::vector<cplx> factors, cplx scalar)
    : p_(p), factors_(std::move(factors)), scalar_(scalar) {
    for (const cplx& a : factors_)
        if (a == cplx(0.0, 0.0))
            throw DomainError("BC1Theta factor must be nonzero");
}

cplx BC1Theta::operator()(cplx z) const {
    cplx v = scalar_;
    for (const cplx& a : factors_)
        v *= theta_pm(p_, a, z);
    return v;
}

cplx eval_bc1(const BC1Theta& f, cplx z) { return f(z); }

namespace {

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

Mat evaluation_matrix(const std::vector<BC1Theta>& fs, const std::vector<cplx>& points) {
    Mat m(points.size(), fs.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < fs.size(); ++j)
            m(i, j) = fs[j](points[i]);
    return m;
}

} // namespace

std::vector<cplx> generic_points(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> radius(0.55, 0.95);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    std::vector<cplx> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        // Phases spread over the upper half plane keep z_i^{+-1} pairs distinct.
        const double phase = std::numbers::pi * (i + 0.5 + jitter(rng)) / (count + 0.5);
        pts.push_back(std::polar(radius(rng), phase));
    }
    return pts;
}

double evaluation_condition(const std::vector<BC1Theta>& fs, const std::vector<cplx>& points) {
    const Mat m = evaluation_matrix(fs, points);
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0)
        return 1.0;
    const double smin = s(s.size() - 1);
    return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

std::vector<BC1Theta> basis(Nome p, int n, std::uint64_t seed) {
    if (n < 0)
        throw DomainError("basis degree must be non-negative");
    if (n == 0)
        return {BC1Theta::constant(p, 1.0)};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> modulus(0.3, 0.9);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const auto points = generic_points(n + 1, seed);

    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<BC1Theta> fs;
        fs.reserve(n + 1);
        for (int j = 0; j <= n; ++j) {
            std::vector<cplx> a(n);
            for (auto& ak : a)
                ak = std::polar(modulus(rng), phase(rng));
            fs.emplace_back(p, std::move(a));
        }
        if (evaluation_condition(fs, points) < 1e8)
            return fs;
    }
    throw DegeneracyError("could not draw a well-conditioned BC1 theta basis in 32 attempts");
}

std::vector<cplx> interpolate(const std::vector<BC1Theta>& fs, const std::vector<cplx>& points,
                              const std::vector<cplx>& values) {
    if (values.size() != points.size())
        throw DomainError("interpolate: value/point count mismatch");
    const Mat m = evaluation_matrix(fs, points);
    Vec rhs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        rhs(i) = values[i];
    const Vec c = m.colPivHouseholderQr().solve(rhs);
    return {c.data(), c.data() + c.size()};
}

} // namespace ellax
