#pragma once

// JSON run configurations for the verification driver.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ellax/biorth.hpp"
#include "ellax/params.hpp"
#include "ellax/quadrature.hpp"

namespace ellax {

using json = nlohmann::json;

/// Malformed or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Accepts a JSON number, {"re": x, "im": y}, {"abs": r, "arg": t} or a
/// string such as "0.3", "-2.5e-1+0.4i", "0.2-i", "3i".
cplx parse_complex(const json& j);
cplx parse_complex_string(std::string_view s);
json complex_to_json(cplx z);

/// {"kind": "plain"|"hatted", "value": complex}; a bare complex is plain.
ArgumentPoint parse_argument(const json& j);
json argument_to_json(const ArgumentPoint& a);

struct RunConfig {
    std::string label;
    cplx p{0.05, 0.0};
    cplx q{0.08, 0.0};
    int m = 0;
    int n = 1;
    std::vector<cplx> u;  // 2m+5 entries are completed by autobalance
    std::optional<ArgumentPoint> v, w, vp, wp;
    QuadOptions quad;
    std::map<std::string, double> tolerance;
    std::uint64_t seed = 0;
    int samples = 0;  // suite-specific count; 0 = suite default

    /// Balanced, contour-checked parameter set. Throws ConfigError.
    ParameterSet parameters() const;
    /// tolerance[kind], else tolerance[suite], else fallback.
    double tolerance_for(const std::string& suite, const std::string& kind, double fallback) const;
};

RunConfig parse_run_config(const json& j);

/// A configuration document: top-level run parameters plus optional
/// per-suite overrides under "suites", each of which may list "cases".
class ConfigDocument {
public:
    explicit ConfigDocument(json raw);

    const json& raw() const noexcept { return raw_; }
    RunConfig base() const;
    /// Base merged with suites[suite] (without its "cases").
    RunConfig for_suite(const std::string& suite) const;
    /// One RunConfig per entry of suites[suite].cases merged over
    /// for_suite(suite); a single unlabeled case when there are none.
    std::vector<RunConfig> cases(const std::string& suite) const;
    void set_seed(std::uint64_t seed);

private:
    json suite_json(const std::string& suite) const;

    json raw_;
};

ConfigDocument load_config(const std::string& path);

/// The config with u completed to 2m+6 balanced entries; ConfigError when
/// the solved parameter violates the contour conditions.
json autobalance_config(const json& raw);

} // namespace ellax
