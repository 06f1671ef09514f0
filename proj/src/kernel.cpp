#include "ellax/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace ellax {

PoleError::PoleError(int i, int j, std::complex<double> z)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "elliptic gamma pole at z=" << z << " (i=" << i << ", j=" << j << ")";
          return os.str();
      }()),
      i_(i), j_(j), z_(z) {}

AccuracyError::AccuracyError(std::complex<double> last, std::complex<double> previous, int n_used)
    : std::runtime_error([&] {
          std::ostringstream os;
          os.precision(17);
          os << "quadrature did not converge at N=" << n_used << ": last=" << last
             << " previous=" << previous;
          return os.str();
      }()),
      last_(last), previous_(previous), n_used_(n_used) {}

Nome::Nome(cplx value) : value_(value) {
    const double a = std::abs(value);
    if (!(a > 0.0 && a < 1.0)) {
        std::ostringstream os;
        os << "nome must satisfy 0 < |p| < 1, got " << value;
        throw DomainError(os.str());
    }
}

void TruncationPolicy::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("truncation epsilon must lie in (0, 1)");
    if (max_terms < 1)
        throw DomainError("truncation max_terms must be positive");
}

namespace {

// Running product that rescales by powers of two whenever the magnitude
// drifts outside [1e-280, 1e280]; the exponent is reapplied at the end.
class ScaledProduct {
public:
    void mul(cplx f) {
        m_ *= f;
        const double a = std::max(std::abs(m_.real()), std::abs(m_.imag()));
        if (a > 1e280 || (a < 1e-280 && a != 0.0)) {
            int e = 0;
            std::frexp(a, &e);
            m_ = cplx(std::ldexp(m_.real(), -e), std::ldexp(m_.imag(), -e));
            exp2_ += e;
        }
    }

    cplx mantissa() const noexcept { return m_; }
    long exponent() const noexcept { return exp2_; }

    cplx value() const { return scale(m_, exp2_); }

    static cplx scale(cplx m, long e) {
        const int ei = static_cast<int>(std::clamp<long>(e, -100000, 100000));
        return {std::ldexp(m.real(), ei), std::ldexp(m.imag(), ei)};
    }

private:
    cplx m_{1.0, 0.0};
    long exp2_ = 0;
};

cplx ratio(const ScaledProduct& num, const ScaledProduct& den) {
    return ScaledProduct::scale(num.mantissa() / den.mantissa(), num.exponent() - den.exponent());
}

void require_nonzero(cplx z, const char* what) {
    if (z == cplx(0.0, 0.0))
        throw DomainError(std::string(what) + " must be nonzero");
}

} // namespace

cplx theta(Nome p, cplx z, const TruncationPolicy& policy) {
    require_nonzero(z, "theta argument");
    const cplx pv = p.value();
    const double eps2 = policy.epsilon * policy.epsilon;
    ScaledProduct prod;
    cplx a = z;       // p^i z
    cplx b = pv / z;  // p^{i+1} / z
    for (int i = 0; i < policy.max_terms; ++i) {
        if (std::norm(a) < eps2 && std::norm(b) < eps2)
            break;
        prod.mul((1.0 - b) * (1.0 - a));
        a *= pv;
        b *= pv;
    }
    return prod.value();
}

cplx gamma(Nome p, Nome q, cplx z, const TruncationPolicy& policy) {
    require_nonzero(z, "gamma argument");
    const cplx pv = p.value();
    const cplx qv = q.value();
    const double eps2 = policy.epsilon * policy.epsilon;
    ScaledProduct num;
    ScaledProduct den;
    cplx a_row = z;            // p^i z
    cplx b_row = pv * qv / z;  // p^{i+1} q / z
    for (int i = 0; i < policy.max_terms; ++i) {
        if (std::norm(a_row) < eps2 && std::norm(b_row) < eps2)
            break;
        cplx a = a_row;
        cplx b = b_row;
        for (int j = 0; j < policy.max_terms; ++j) {
            if (std::norm(a) < eps2 && std::norm(b) < eps2)
                break;
            const cplx d = 1.0 - a;
            if (std::norm(d) < kPoleTolerance * kPoleTolerance)
                throw PoleError(i, j, z);
            num.mul(1.0 - b);
            den.mul(d);
            a *= qv;
            b *= qv;
        }
        a_row *= pv;
        b_row *= pv;
    }
    return ratio(num, den);
}

cplx gamma_plus(Nome p, Nome q, Nome t, cplx x, const TruncationPolicy& policy) {
    require_nonzero(x, "gamma_plus argument");
    const cplx pv = p.value();
    const cplx qv = q.value();
    const cplx tv = t.value();
    const double eps2 = policy.epsilon * policy.epsilon;
    ScaledProduct prod;
    cplx a_i = x;
    cplx b_i = pv * qv * tv / x;
    for (int i = 0; i < policy.max_terms; ++i) {
        if (std::norm(a_i) < eps2 && std::norm(b_i) < eps2)
            break;
        cplx a_j = a_i;
        cplx b_j = b_i;
        for (int j = 0; j < policy.max_terms; ++j) {
            if (std::norm(a_j) < eps2 && std::norm(b_j) < eps2)
                break;
            cplx a = a_j;
            cplx b = b_j;
            for (int k = 0; k < policy.max_terms; ++k) {
                if (std::norm(a) < eps2 && std::norm(b) < eps2)
                    break;
                prod.mul((1.0 - a) * (1.0 - b));
                a *= tv;
                b *= tv;
            }
            a_j *= qv;
            b_j *= qv;
        }
        a_i *= pv;
        b_i *= pv;
    }
    return prod.value();
}

cplx pochhammer2(cplx x, Nome p, Nome q, const TruncationPolicy& policy) {
    const cplx pv = p.value();
    const cplx qv = q.value();
    const double eps2 = policy.epsilon * policy.epsilon;
    ScaledProduct prod;
    cplx a_row = x;
    for (int i = 0; i < policy.max_terms && std::norm(a_row) >= eps2; ++i) {
        cplx a = a_row;
        for (int j = 0; j < policy.max_terms && std::norm(a) >= eps2; ++j) {
            prod.mul(1.0 - a);
            a *= qv;
        }
        a_row *= pv;
    }
    return prod.value();
}

cplx pochhammer1(cplx a, Nome p, const TruncationPolicy& policy) {
    const cplx pv = p.value();
    ScaledProduct prod;
    for (int k = 0; k < policy.max_terms && std::norm(a) >= policy.epsilon * policy.epsilon; ++k) {
        prod.mul(1.0 - a);
        a *= pv;
    }
    return prod.value();
}

cplx psi(Nome p, cplx x, cplx z, const TruncationPolicy& policy) {
    require_nonzero(x, "psi first argument");
    require_nonzero(z, "psi second argument");
    return theta(p, x * z, policy) * theta(p, x / z, policy) / x;
}

} // namespace ellax
