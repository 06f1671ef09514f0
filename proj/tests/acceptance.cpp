// Acceptance run over the bundled configuration: one line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "ellax/config.hpp"
#include "ellax/report.hpp"
#include "ellax/suites.hpp"

using namespace ellax;

namespace {

struct Timed {
    Report report;
    double seconds = 0.0;
    std::string error;
};

Timed run_timed(const std::string& suite, const ConfigDocument& doc) {
    Timed t;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        t.report = run_suite(suite, doc);
    } catch (const std::exception& e) {
        t.error = e.what();
    }
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

// Records whose name matches `pattern`, each required to pass at or below
// `tol` (at or above for lower bounds). Returns the worst residual.
struct Selection {
    int count = 0;
    int failed = 0;
    double worst = 0.0;
    int max_nodes = 0;
};

Selection select(const Report& r, const std::string& pattern, double tol) {
    const std::regex re(pattern);
    Selection s;
    for (const CheckRecord& c : r.checks) {
        if (!std::regex_match(c.name, re))
            continue;
        ++s.count;
        s.max_nodes = std::max(s.max_nodes, c.n_used);
        const bool ok = c.pass && judge(c.residual, tol, c.lower_bound);
        if (!ok)
            ++s.failed;
        if (!c.lower_bound)
            s.worst = std::isfinite(c.residual) ? std::max(s.worst, c.residual) : INFINITY;
    }
    return s;
}

int failures = 0;

void line(int k, bool ok, const std::string& what) {
    std::printf("criterion %2d: %s  %s\n", k, ok ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool good(const Selection& s, int expected) { return s.count == expected && s.failed == 0; }

} // namespace

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : ELLAX_DEFAULT_CONFIG;
    const ConfigDocument doc = load_config(path);

    {
        const Timed t = run_timed("kernel", doc);
        const Selection s = select(t.report, ".*", 1e-12);
        const int samples = doc.for_suite("kernel").samples;
        line(1, t.error.empty() && good(s, 10) && samples >= 1000 && t.seconds < 10.0,
             fmt("kernel relations at %d seeded points: %d relations, worst %.2e, %.1f s (limit 10 s) %s", samples,
                 s.count, s.worst, t.seconds, t.error.c_str()));
    }
    {
        const Timed t = run_timed("beta", doc);
        const Selection s = select(t.report, R"(beta\[\d+\])", 1e-10);
        line(2, t.error.empty() && good(s, 20) && s.max_nodes <= 2048 && t.seconds < 30.0,
             fmt("elliptic beta, 20 sets: worst %.2e, N <= %d, %.1f s (limit 30 s) %s", s.worst, s.max_nodes,
                 t.seconds, t.error.c_str()));
    }
    {
        const Timed t = run_timed("selberg", doc);
        const Selection s = select(t.report, R"(m0n2/closed_form\[\d+\])", 1e-8);
        line(3, t.error.empty() && good(s, 5) && s.max_nodes == 256 && t.seconds < 120.0,
             fmt("Selberg m=0 n=2 closed form, 5 sets: worst %.2e at N=%d, %.1f s (limit 120 s) %s", s.worst,
                 s.max_nodes, t.seconds, t.error.c_str()));
    }
    {
        const Timed t = run_timed("biorth", doc);
        const Selection s = select(t.report, R"((m0n1|m1n1|m0n2)/biorthogonality)", 1e-8);
        const Selection neg = select(t.report, R"((m0n1|m1n1|m0n2)/biorthogonality\.negative_control)", 1e-3);
        double weakest = INFINITY;
        for (const CheckRecord& c : t.report.checks)
            if (c.lower_bound)
                weakest = std::min(weakest, c.residual);
        line(4, t.error.empty() && good(s, 3) && good(neg, 3),
             fmt("biorthogonality n=1 (m=0,1), n=2 (m=0): worst %.2e; negative control min %.2e (>= 1e-3) %s",
                 s.worst, weakest, t.error.c_str()));
    }
    {
        const Timed t = run_timed("pluecker", doc);
        const Selection s = select(t.report, R"((m1n0|m1n1)/pluecker\[\d+\]:[PH]{4})", 1e-8);
        std::set<std::string> kinds;
        for (const CheckRecord& c : t.report.checks)
            if (c.name.rfind("m1n1/", 0) == 0)
                kinds.insert(c.name.substr(c.name.size() - 4));
        line(5, t.error.empty() && good(s, 40) && kinds.size() == 16,
             fmt("Pluecker, 20 quadruples each at m=1 n=0,1: worst %.2e, %zu of 16 plain/hatted mixtures %s",
                 s.worst, kinds.size(), t.error.c_str()));
    }
    const Timed laxa = run_timed("lax-A", doc);
    {
        const Selection s = select(laxa.report, R"((m1n0|m1n1)/M\.(p_shift|det))", 1e-8);
        line(6, laxa.error.empty() && good(s, 4),
             fmt("M p-shift and det at 8 sample z, m=1 n=0,1: worst %.2e %s", s.worst, laxa.error.c_str()));
    }
    {
        const Selection a = select(laxa.report, R"((m1n0|m1n1)/Atilde\.(det|p_law|symmetry))", 1e-8);
        const Selection rank1 = select(laxa.report, R"((m1n0|m1n1)/special:A\((1/u_\d|u_\d/q)\))", 1e-7);
        const Selection ram = select(laxa.report, R"((m1n0|m1n1)/special:A\(-?(q\^-1/2|\(p/q\)\^1/2)\))", 1e-7);
        line(7, laxa.error.empty() && good(a, 6) && good(rank1, 2 * 2 * 8) && good(ram, 2 * 4) && laxa.seconds < 300.0,
             fmt("A~ det/p-law/symmetry worst %.2e; %d rank-1 values worst %.2e; %d ramification values worst "
                 "%.2e; %.1f s (limit 300 s) %s",
                 a.worst, rank1.count, rank1.worst, ram.count, ram.worst, laxa.seconds, laxa.error.c_str()));
    }
    {
        const Timed t = run_timed("isomono", doc);
        const Selection vw = select(t.report, R"((m1n0|m1n1)/vw\.(generic|swap|identity))", 1e-7);
        const Selection ud = select(t.report, R"((m1n0|m1n1)/ud)", 1e-7);
        const Selection uu = select(t.report, R"(m1n1/uu)", 1e-7);
        const Selection ap = select(t.report, R"((m1n0|m1n1)/Aprime\.elliptic)", 1e-7);
        line(8, t.error.empty() && good(vw, 6) && good(ud, 2) && good(uu, 1) && good(ap, 2),
             fmt("isomonodromy vw %.2e, ud %.2e, uu %.2e; A'(pz)=A'(z) %.2e %s", vw.worst, ud.worst, uu.worst,
                 ap.worst, t.error.c_str()));
    }
    {
        const Timed t = run_timed("lax-B", doc);
        const Selection b = select(t.report, R"((m1n0|m1n1)/Btilde\.(det|p_law))", 1e-7);
        const Selection low = select(t.report, R"((m1n0|m1n1)/special:B\(1/u_\d\))", 1e-7);
        const Selection high = select(t.report, R"((m1n0|m1n1)/special:B\(u_\d/q\))", 1e-7);
        const Selection inv = select(t.report, R"((m1n0|m1n1)/B_inverse_relation)", 1e-7);
        line(9, t.error.empty() && good(b, 4) && good(low, 2 * 4) && good(high, 2 * 4) && good(inv, 2),
             fmt("B~ det/p-law %.2e; special values %d+%d worst %.2e/%.2e; B(1/qz)^-1 B(z) = A(z) %.2e %s", b.worst,
                 low.count, high.count, low.worst, high.worst, inv.worst, t.error.c_str()));
    }
    {
        const Timed t = run_timed("transform97", doc);
        const Selection s = select(t.report, R"(transform97\[\d+\])", 1e-6);
        line(10, t.error.empty() && good(s, 3),
             fmt("transformation law m=1 n=1, 3 branch-safe sets: worst %.2e %s", s.worst, t.error.c_str()));
    }
    std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
