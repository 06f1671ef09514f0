#include "ellax/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ellax {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_nodes(int n) {
    if (n < 16 || !is_power_of_two(n)) {
        std::ostringstream os;
        os << "grid size must be a power of two >= 16, got " << n;
        throw DomainError(os.str());
    }
}

void validate_dimension(int d) {
    if (d < 0 || d > kMaxDimension) {
        std::ostringstream os;
        os << "quadrature dimension " << d << " unsupported (maximum " << kMaxDimension << ")";
        throw DomainError(os.str());
    }
}

// Convergence: successive estimates agree to refine * |value|, or the
// difference is at the rounding floor of the summed magnitudes.
bool converged(double diff, cplx value, double scale, double refine) {
    return diff <= refine * std::abs(value) || diff <= 1e-14 * scale;
}

struct Ladder {
    int start;
    int cap;
};

Ladder ladder(int dimension, const QuadOptions& opts) {
    const int cap = opts.max_nodes > 0 ? opts.max_nodes : default_max_nodes(dimension);
    int start = opts.nodes > 0 ? opts.nodes : default_nodes(dimension);
    if (start > cap)
        start = cap;
    validate_nodes(start);
    validate_nodes(cap);
    if (!(opts.refine > 0.0))
        throw DomainError("refine tolerance must be positive");
    return {start, cap};
}

constexpr int kBlock = 256;

} // namespace

CircleGrid::CircleGrid(int nodes, int dimension) : n_(nodes), d_(dimension) {
    validate_nodes(nodes);
    validate_dimension(dimension);
}

cplx CircleGrid::node(int k, int n) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

std::vector<cplx> CircleGrid::points() const {
    std::vector<cplx> z(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k)
        z[static_cast<std::size_t>(k)] = node(k, n_);
    return z;
}

namespace {
thread_local int probe_nodes = 0;
void note_nodes(int N) { probe_nodes = std::max(probe_nodes, N); }
} // namespace

int nodes_probe() { return probe_nodes; }
void reset_nodes_probe() { probe_nodes = 0; }

int default_nodes(int dimension) {
    switch (dimension) {
    case 0:
    case 1: return 512;
    case 2: return 256;
    default: return 128;
    }
}

int default_max_nodes(int dimension) {
    switch (dimension) {
    case 0:
    case 1: return 8192;
    case 2: return 4096;
    default: return 256;
    }
}

TensorSums symmetric_tensor_sum(int n, std::span<const cplx> w, std::span<const cplx> g) {
    validate_dimension(n);
    const int N = static_cast<int>(w.size());
    if (n == 0)
        return {1.0, 1.0, 1.0};
    if (static_cast<int>(g.size()) != N && n > 1)
        throw DomainError("pair table size must match weight size");
    const int mask = N - 1;

    if (n == 1) {
        const int blocks = (N + kBlock - 1) / kBlock;
        std::vector<cplx> full(blocks), even(blocks);
        std::vector<double> mag(blocks);
#pragma omp parallel for schedule(static)
        for (int b = 0; b < blocks; ++b) {
            cplx f = 0.0, e = 0.0;
            double m = 0.0;
            const int hi = std::min(N, (b + 1) * kBlock);
            for (int k = b * kBlock; k < hi; ++k) {
                f += w[k];
                m += std::abs(w[k]);
                if ((k & 1) == 0)
                    e += w[k];
            }
            full[b] = f;
            even[b] = e;
            mag[b] = m;
        }
        TensorSums out{0.0, 0.0, 0.0};
        for (int b = 0; b < blocks; ++b) {
            out.full += full[b];
            out.even += even[b];
            out.abs_full += mag[b];
        }
        return out;
    }

    // One partial per outer index; the final ordered sum fixes the rounding.
    std::vector<cplx> full(N), even(N);
    std::vector<double> mag(N);
    if (n == 2) {
#pragma omp parallel for schedule(static)
        for (int a = 0; a < N; ++a) {
            cplx f = 0.0, e = 0.0;
            double m = 0.0;
            for (int b = 0; b < N; ++b) {
                const cplx t = w[b] * g[(a + b) & mask] * g[(a - b + N) & mask];
                f += t;
                m += std::abs(t);
                if (((a | b) & 1) == 0)
                    e += t;
            }
            full[a] = w[a] * f;
            even[a] = w[a] * e;
            mag[a] = std::abs(w[a]) * m;
        }
    } else {
#pragma omp parallel for schedule(static)
        for (int a = 0; a < N; ++a) {
            cplx f = 0.0, e = 0.0;
            double m = 0.0;
            for (int b = 0; b < N; ++b) {
                const cplx kab = w[b] * g[(a + b) & mask] * g[(a - b + N) & mask];
                if (kab == cplx(0.0, 0.0))
                    continue;
                cplx fb = 0.0, eb = 0.0;
                double mb = 0.0;
                for (int c = 0; c < N; ++c) {
                    const cplx t = w[c] * g[(a + c) & mask] * g[(a - c + N) & mask] *
                                   g[(b + c) & mask] * g[(b - c + N) & mask];
                    fb += t;
                    mb += std::abs(t);
                    if (((a | b | c) & 1) == 0)
                        eb += t;
                }
                f += kab * fb;
                e += kab * eb;
                m += std::abs(kab) * mb;
            }
            full[a] = w[a] * f;
            even[a] = w[a] * e;
            mag[a] = std::abs(w[a]) * m;
        }
    }
    TensorSums out{0.0, 0.0, 0.0};
    for (int a = 0; a < N; ++a) {
        out.full += full[a];
        out.even += even[a];
        out.abs_full += mag[a];
    }
    return out;
}

TensorSums symmetric_tensor_sum_reference(int n, std::span<const cplx> w, std::span<const cplx> g) {
    validate_dimension(n);
    const int N = static_cast<int>(w.size());
    TensorSums out{0.0, 0.0, 0.0};
    if (n == 0)
        return {1.0, 1.0, 1.0};
    auto pair = [&](int a, int b) { return g[((a + b) % N)] * g[((a - b) % N + N) % N]; };
    std::array<int, kMaxDimension> k{};
    const long total = static_cast<long>(std::pow(N, n));
    for (long flat = 0; flat < total; ++flat) {
        long rest = flat;
        for (int i = n - 1; i >= 0; --i) {
            k[i] = static_cast<int>(rest % N);
            rest /= N;
        }
        cplx t = 1.0;
        bool all_even = true;
        for (int i = 0; i < n; ++i) {
            t *= w[k[i]];
            all_even = all_even && (k[i] % 2 == 0);
            for (int j = i + 1; j < n; ++j)
                t *= pair(k[i], k[j]);
        }
        out.full += t;
        out.abs_full += std::abs(t);
        if (all_even)
            out.even += t;
    }
    return out;
}

QuadratureResult integrate_symmetric(int n, const WeightFill& weights, const PairFill& pairs,
                                     const QuadOptions& opts) {
    validate_dimension(n);
    if (n == 0)
        return {1.0, 0.0, 0, 1.0};
    const Ladder lad = ladder(n, opts);
    std::vector<cplx> w, g;
    for (int N = lad.start;; N *= 2) {
        w.assign(static_cast<std::size_t>(N), 0.0);
        weights(N, w);
        if (n > 1) {
            g.assign(static_cast<std::size_t>(N), 0.0);
            pairs(N, g);
        }
        const TensorSums s = symmetric_tensor_sum(n, w, g);
        const double vol = std::pow(static_cast<double>(N), n);
        const double half_vol = std::pow(static_cast<double>(N / 2), n);
        const cplx value = s.full / vol;
        const cplx half = s.even / half_vol;
        const double diff = std::abs(value - half);
        const double scale = s.abs_full / vol;
        if (converged(diff, value, scale, opts.refine)) {
            note_nodes(N);
            return {value, diff, N, scale};
        }
        if (2 * N > lad.cap)
            throw AccuracyError(value, half, N);
    }
}

QuadratureResult integrate_circle(const Integrand& f, int dimension, const QuadOptions& opts) {
    validate_dimension(dimension);
    if (dimension == 0) {
        const cplx v = f(std::span<const cplx>{});
        return {v, 0.0, 0, std::abs(v)};
    }
    const Ladder lad = ladder(dimension, opts);
    for (int N = lad.start;; N *= 2) {
        const std::vector<cplx> z = CircleGrid(N, dimension).points();
        const long inner = static_cast<long>(std::pow(N, dimension - 1));
        std::vector<cplx> full(N), even(N);
        std::vector<double> mag(N);
#pragma omp parallel for schedule(static)
        for (int a = 0; a < N; ++a) {
            std::array<cplx, kMaxDimension> pt{};
            pt[0] = z[a];
            cplx fs = 0.0, es = 0.0;
            double ms = 0.0;
            for (long flat = 0; flat < inner; ++flat) {
                long rest = flat;
                bool all_even = (a % 2 == 0);
                for (int i = dimension - 1; i >= 1; --i) {
                    const int k = static_cast<int>(rest % N);
                    rest /= N;
                    pt[i] = z[k];
                    all_even = all_even && (k % 2 == 0);
                }
                const cplx t = f(std::span<const cplx>(pt.data(), dimension));
                fs += t;
                ms += std::abs(t);
                if (all_even)
                    es += t;
            }
            full[a] = fs;
            even[a] = es;
            mag[a] = ms;
        }
        cplx fsum = 0.0, esum = 0.0;
        double msum = 0.0;
        for (int a = 0; a < N; ++a) {
            fsum += full[a];
            esum += even[a];
            msum += mag[a];
        }
        const double vol = std::pow(static_cast<double>(N), dimension);
        const cplx value = fsum / vol;
        const cplx half = esum / std::pow(static_cast<double>(N / 2), dimension);
        const double diff = std::abs(value - half);
        const double scale = msum / vol;
        if (converged(diff, value, scale, opts.refine)) {
            note_nodes(N);
            return {value, diff, N, scale};
        }
        if (2 * N > lad.cap)
            throw AccuracyError(value, half, N);
    }
}

ContourVerdict check_contour(const ParameterSet& params, std::span<const cplx> extra) {
    const cplx p = params.p().value();
    const cplx q = params.q().value();
    const auto& u = params.u();
    const int R = static_cast<int>(u.size());
    constexpr int kExp = 8;

    for (int r = 0; r < R; ++r) {
        for (int s = r; s < R; ++s) {
            double worst = std::numeric_limits<double>::infinity();
            cplx pi = 1.0;
            for (int i = 0; i < kExp; ++i, pi *= p) {
                cplx pq = pi;
                for (int j = 0; j < kExp; ++j, pq *= q)
                    worst = std::min(worst, std::abs(1.0 - pq * u[r] * u[s]));
            }
            if (worst <= 1e-8) {
                std::ostringstream os;
                os << "near-collision p^i q^j u_" << r << " u_" << s << " = 1 (distance " << worst << ")";
                return {false, os.str(), r, s};
            }
        }
    }
    for (int r = 0; r < R; ++r) {
        if (!(std::abs(u[r]) < 1.0)) {
            std::ostringstream os;
            os << "|u_" << r << "| = " << std::abs(u[r]) << " is not inside the unit circle";
            return {false, os.str(), r, -1};
        }
    }
    const double pa = params.p().abs();
    for (std::size_t k = 0; k < extra.size(); ++k) {
        const double a = std::abs(extra[k]);
        if (!(a > pa && a < 1.0)) {
            std::ostringstream os;
            os << "extra parameter " << k << " has modulus " << a << " outside (|p|, 1)";
            return {false, os.str(), R + static_cast<int>(k), -1};
        }
    }
    return {};
}

} // namespace ellax
