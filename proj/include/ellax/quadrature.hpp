#pragma once

// Trapezoid quadrature on the unit circle and its tensor powers,
//   integral over T^d of f(z) prod_i dz_i / (2 pi i z_i),
// with node-doubling refinement. Reductions are blocked in a fixed order so
// results do not depend on the number of OpenMP threads.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ellax/kernel.hpp"
#include "ellax/params.hpp"

namespace ellax {

inline constexpr int kMaxDimension = 3;

/// N equispaced nodes exp(2 pi i k / N) per axis, d axes.
class CircleGrid {
public:
    CircleGrid(int nodes, int dimension);

    int nodes() const noexcept { return n_; }
    int dimension() const noexcept { return d_; }
    std::vector<cplx> points() const;

    static cplx node(int k, int n);

private:
    int n_;
    int d_;
};

struct QuadratureResult {
    cplx value;
    double est_error = 0.0;  // |I_N - I_{N/2}|
    int n_used = 0;
    double abs_scale = 0.0;  // trapezoid average of |integrand|
};

struct QuadOptions {
    int nodes = 0;        // starting N per axis; 0 = default for the dimension
    double refine = 1e-10;
    int max_nodes = 0;    // cap on N per axis; 0 = default for the dimension
};

int default_nodes(int dimension);
int default_max_nodes(int dimension);

/// Largest N per axis used by any converged quadrature on the calling thread
/// since the last reset_nodes_probe().
int nodes_probe();
void reset_nodes_probe();

using Integrand = std::function<cplx(std::span<const cplx>)>;

/// General integrand over the d-torus, d <= 3. d = 0 returns f() exactly.
QuadratureResult integrate_circle(const Integrand& f, int dimension, const QuadOptions& opts = {});

/// Sums for a BC-symmetric tensor integrand on an N-point grid:
///   full = sum_{k in [0,N)^n} prod_i w[k_i] prod_{i<j} g[(k_i+k_j) mod N] g[(k_i-k_j) mod N]
///   even = the same sum restricted to even indices (the N/2 grid).
struct TensorSums {
    cplx full;
    cplx even;
    double abs_full = 0.0;
};

TensorSums symmetric_tensor_sum(int n, std::span<const cplx> w, std::span<const cplx> g);

/// Straight nested loops; kept as the reference for symmetric_tensor_sum.
TensorSums symmetric_tensor_sum_reference(int n, std::span<const cplx> w, std::span<const cplx> g);

/// Fills per-axis weights on the N-point grid.
using WeightFill = std::function<void(int nodes, std::span<cplx> out)>;
/// Fills the pair table g on the N-point grid.
using PairFill = std::function<void(int nodes, std::span<cplx> out)>;

/// Refining driver around symmetric_tensor_sum; returns the mean over the
/// grid (no prefactor). n = 0 returns 1.
QuadratureResult integrate_symmetric(int n, const WeightFill& weights, const PairFill& pairs,
                                     const QuadOptions& opts = {});

/// Result of the contour admissibility test for the unit circle.
struct ContourVerdict {
    bool ok = true;
    std::string reason;
    int r = -1;  // offending parameter index (extras are numbered after u)
    int s = -1;  // second index for collisions
};

/// Checks that the unit circle is a valid contour: no near-collisions
/// |1 - p^i q^j u_r u_s| <= 1e-8 for small exponents, |u_r| < 1, and
/// |p| < |x| < 1 for every extra (x, p/x) pair.
ContourVerdict check_contour(const ParameterSet& params, std::span<const cplx> extra = {});

} // namespace ellax
