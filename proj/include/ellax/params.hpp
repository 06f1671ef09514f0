#pragma once

#include <span>
#include <vector>

#include "ellax/kernel.hpp"

namespace ellax {

inline constexpr double kBalancingTolerance = 1e-12;

/// Nomes p, q (t = q), order m, dimension n and the 2m+6 density
/// parameters u_0..u_{2m+5}, balanced by q^{2n-2} prod u_r = (pq)^{m+1}.
class ParameterSet {
public:
    ParameterSet(Nome p, Nome q, int m, int n, std::vector<cplx> u, bool require_balanced = true);

    /// Solves the balancing condition for the last parameter given the
    /// first 2m+5.
    static ParameterSet autobalance(Nome p, Nome q, int m, int n, std::vector<cplx> head);

    Nome p() const noexcept { return p_; }
    Nome q() const noexcept { return q_; }
    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    const std::vector<cplx>& u() const noexcept { return u_; }
    cplx u(int r) const { return u_.at(static_cast<std::size_t>(r)); }
    int count() const noexcept { return static_cast<int>(u_.size()); }

    /// |q^{2n-2} prod u - (pq)^{m+1}| / |(pq)^{m+1}|.
    double balancing_residual() const;
    bool balanced(double tol = kBalancingTolerance) const { return balancing_residual() <= tol; }

    ParameterSet with_u(std::vector<cplx> u) const { return {p_, q_, m_, n_, std::move(u)}; }
    ParameterSet with_n_u(int n, std::vector<cplx> u) const { return {p_, q_, m_, n, std::move(u)}; }

private:
    Nome p_;
    Nome q_;
    int m_;
    int n_;
    std::vector<cplx> u_;
};

/// (pq)^{m+1} / q^{2n-2}: the required product of all parameters.
cplx balanced_product(Nome p, Nome q, int m, int n);

} // namespace ellax
