// ellax: evaluate elliptic special functions and Selberg-type integrals, and
// run the identity verification suites.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "ellax/biorth.hpp"
#include "ellax/config.hpp"
#include "ellax/report.hpp"
#include "ellax/selberg.hpp"
#include "ellax/suites.hpp"

#ifndef ELLAX_DEFAULT_CONFIG
#define ELLAX_DEFAULT_CONFIG "configs/default.json"
#endif

namespace {

using namespace ellax;

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kNumeric = 3 };

void apply_thread_cap() {
    const char* env = std::getenv("ELLAX_THREADS");
    if (env == nullptr || *env == '\0')
        return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1)
        throw ConfigError(std::string("ELLAX_THREADS must be a positive integer, got '") + env + "'");
    omp_set_num_threads(static_cast<int>(std::min<long>(n, omp_get_num_procs())));
}

cplx parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        return parse_complex_string(s);
    return {parse_complex_string(s.substr(0, comma)).real(), parse_complex_string(s.substr(comma + 1)).real()};
}

json eval_target(const std::string& target, const ConfigDocument& doc, const std::optional<std::string>& zarg) {
    const RunConfig cfg = doc.base();
    auto need_z = [&] {
        if (!zarg)
            throw ConfigError("eval " + target + " needs --z RE,IM");
        return parse_point(*zarg);
    };
    auto out = [](cplx v, std::optional<double> err) {
        json j = complex_to_json(v);
        j["est_error"] = err ? json(*err) : json(nullptr);
        return j;
    };
    try {
        if (target == "theta")
            return out(theta(Nome(cfg.p), need_z()), 0.0);
        if (target == "gamma")
            return out(gamma(Nome(cfg.p), Nome(cfg.q), need_z()), 0.0);
        if (target == "selberg") {
            const QuadratureResult r = selberg(cfg.parameters(), cfg.quad);
            return out(r.value, r.est_error);
        }
        if (target == "selberg-closed")
            return out(selberg_closed_form_m0(cfg.parameters()), 0.0);
        if (target == "F" || target == "Fplus") {
            if (!cfg.v)
                throw ConfigError("eval " + target + " needs 'v' in the configuration");
            const BiorthContext ctx(cfg.parameters(), cfg.quad);
            const cplx x = need_z();
            const ArgumentPoint v = *cfg.v;
            if (target == "F") {
                const QuadratureResult r = v.is_plain() ? ctx.F_direct(x, v.value) : ctx.Fminus_direct(x, v.value);
                return out(r.value, r.est_error);
            }
            const ArgumentPoint xp = ArgumentPoint::plain(x);
            if (v.is_plain() && ctx.in_annulus(x) && ctx.in_annulus(v.value)) {
                const QuadratureResult r = ctx.Fplus_direct(x, v.value);
                return out(r.value, r.est_error);
            }
            return out(ctx.Fplus(xp, v), std::nullopt);
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown eval target '" + target + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"ellax: elliptic Selberg integrals, biorthogonal functions and Lax matrices"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string config_path = ELLAX_DEFAULT_CONFIG;

    auto* eval = app.add_subcommand("eval", "Evaluate one quantity and print {re, im, est_error}");
    std::string target;
    std::optional<std::string> zarg;
    eval->add_option("target", target, "gamma | theta | selberg | selberg-closed | F | Fplus")->required();
    eval->add_option("--config", config_path, "Configuration file");
    eval->add_option("--z", zarg, "Evaluation point RE,IM");

    auto* verify = app.add_subcommand("verify", "Run a verification suite and print its JSON report");
    std::string suite;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    bool timings = false;
    verify->add_option("suite", suite,
                       "kernel | beta | selberg | biorth | pluecker | lax-A | lax-B | isomono | transform97 | all")
        ->required();
    verify->add_option("--config", config_path, "Configuration file");
    verify->add_option("--out", out_path, "Write the report here instead of stdout");
    verify->add_option("--seed", seed, "Override the configuration seed");
    verify->add_flag("--timings", timings, "Record wall-clock seconds per check (reports then differ run to run)");

    auto* balance = app.add_subcommand("autobalance", "Solve the balancing condition for the last parameter");
    balance->add_option("--config", config_path, "Configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kConfig;
    }

    apply_thread_cap();
    if (*balance) {
        std::ifstream in(config_path);
        if (!in)
            throw ConfigError("cannot open configuration file '" + config_path + "'");
        json raw;
        try {
            raw = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("invalid JSON: ") + e.what());
        }
        std::cout << autobalance_config(raw).dump(2) << "\n";
        return kPass;
    }

    ConfigDocument doc = load_config(config_path);
    if (*eval) {
        std::cout << eval_target(target, doc, zarg).dump() << "\n";
        return kPass;
    }

    if (!is_suite(suite))
        throw ConfigError("unknown suite '" + suite + "'");
    if (seed)
        doc.set_seed(*seed);
    Report report;
    try {
        report = run_suite(suite, doc);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const std::string text = report.to_json(timings).dump(2) + "\n";
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write report to '" + *out_path + "'");
        out << text;
    } else {
        std::cout << text;
    }
    for (const CheckRecord& c : report.checks)
        if (!c.pass)
            std::cerr << "FAIL " << c.name << " residual=" << c.residual << " tolerance=" << c.tolerance
                      << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
    return report.pass() ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "ellax: configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const PoleError& e) {
        std::cerr << "ellax: numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const AccuracyError& e) {
        std::cerr << "ellax: numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const DegeneracyError& e) {
        std::cerr << "ellax: numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const DomainError& e) {
        std::cerr << "ellax: configuration error: " << e.what() << "\n";
        return kConfig;
    }
}
