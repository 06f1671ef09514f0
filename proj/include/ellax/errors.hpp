#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ellax {

// Invalid inputs: nomes outside the unit disc, zero arguments, malformed
// parameter sets, unsupported dimensions.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An elliptic gamma argument sits on (or numerically at) a pole p^{-i} q^{-j}.
class PoleError : public std::runtime_error {
public:
    PoleError(int i, int j, std::complex<double> z);
    int i() const noexcept { return i_; }
    int j() const noexcept { return j_; }
    std::complex<double> argument() const noexcept { return z_; }

private:
    int i_;
    int j_;
    std::complex<double> z_;
};

// Quadrature failed to reach the requested tolerance before the node cap.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(std::complex<double> last, std::complex<double> previous, int n_used);
    std::complex<double> last() const noexcept { return last_; }
    std::complex<double> previous() const noexcept { return previous_; }
    int n_used() const noexcept { return n_used_; }

private:
    std::complex<double> last_;
    std::complex<double> previous_;
    int n_used_;
};

// Random construction kept producing ill-conditioned bases.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ellax
