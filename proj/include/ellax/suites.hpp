#pragma once

// Named verification suites driven by a ConfigDocument.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ellax/report.hpp"

namespace ellax {

/// kernel, beta, selberg, biorth, pluecker, lax-A, lax-B, isomono, transform97.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite, or every suite for "all" (record names are then prefixed
/// with the suite). Numeric failures propagate as exceptions.
Report run_suite(const std::string& suite, const ConfigDocument& doc);

/// Stable 64-bit seed for a (seed, tag) pair (FNV-1a over the tag).
std::uint64_t suite_seed(std::uint64_t seed, std::string_view tag);

/// Uniform [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng);

/// Random balanced parameter set with all |u_r| <= max_modulus and a valid
/// unit-circle contour; `accept` can impose extra conditions.
ParameterSet sample_parameters(Nome p, Nome q, int m, int n, std::mt19937_64& rng, double max_modulus = 0.85,
                               const std::function<bool(const ParameterSet&)>& accept = {});

/// Random point with |p|^{0.7} <= |x| <= |p|^{0.3}.
cplx annulus_point(Nome p, std::mt19937_64& rng);

} // namespace ellax
