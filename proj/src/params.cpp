#include "ellax/params.hpp"

#include <sstream>

namespace ellax {

cplx balanced_product(Nome p, Nome q, int m, int n) {
    return std::pow(p.value() * q.value(), m + 1) / std::pow(q.value(), 2 * n - 2);
}

ParameterSet::ParameterSet(Nome p, Nome q, int m, int n, std::vector<cplx> u, bool require_balanced)
    : p_(p), q_(q), m_(m), n_(n), u_(std::move(u)) {
    if (m_ < 0)
        throw DomainError("order m must be non-negative");
    if (n_ < 0)
        throw DomainError("dimension n must be non-negative");
    if (u_.size() != static_cast<std::size_t>(2 * m_ + 6)) {
        std::ostringstream os;
        os << "order " << m_ << " needs " << 2 * m_ + 6 << " parameters, got " << u_.size();
        throw DomainError(os.str());
    }
    for (const cplx& ur : u_)
        if (ur == cplx(0.0, 0.0))
            throw DomainError("density parameters must be nonzero");
    if (require_balanced && !balanced()) {
        std::ostringstream os;
        os << "balancing violated: relative residual " << balancing_residual();
        throw DomainError(os.str());
    }
}

ParameterSet ParameterSet::autobalance(Nome p, Nome q, int m, int n, std::vector<cplx> head) {
    if (head.size() != static_cast<std::size_t>(2 * m + 5)) {
        std::ostringstream os;
        os << "autobalance needs " << 2 * m + 5 << " parameters, got " << head.size();
        throw DomainError(os.str());
    }
    cplx prod = 1.0;
    for (const cplx& ur : head)
        prod *= ur;
    if (prod == cplx(0.0, 0.0))
        throw DomainError("autobalance: parameters must be nonzero");
    head.push_back(balanced_product(p, q, m, n) / prod);
    return {p, q, m, n, std::move(head)};
}

double ParameterSet::balancing_residual() const {
    cplx prod = 1.0;
    for (const cplx& ur : u_)
        prod *= ur;
    const cplx target = balanced_product(p_, q_, m_, n_);
    return std::abs(prod - target) / std::abs(target);
}

} // namespace ellax
