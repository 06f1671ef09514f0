#include "ellax/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>

#include "ellax/bc_theta.hpp"
#include "ellax/biorth.hpp"
#include "ellax/lax.hpp"
#include "ellax/selberg.hpp"

namespace ellax {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Recorder {
public:
    Recorder(Report& report, const RunConfig& cfg, std::string suite, std::string prefix)
        : report_(report), cfg_(cfg), suite_(std::move(suite)), prefix_(std::move(prefix)) {}

    template <class Fn>
    double check(const std::string& name, const std::string& kind, double fallback, Fn&& fn, bool lower = false) {
        reset_nodes_probe();
        const auto t0 = std::chrono::steady_clock::now();
        const double residual = fn();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        add(name, kind, fallback, residual, nodes_probe(), secs, {}, lower);
        return residual;
    }

    void add(const std::string& name, const std::string& kind, double fallback, double residual, int nodes,
             double secs, std::string note, bool lower = false) {
        CheckRecord r;
        r.name = prefix_.empty() ? name : prefix_ + "/" + name;
        r.residual = residual;
        r.tolerance = cfg_.tolerance_for(suite_, kind, fallback);
        r.lower_bound = lower;
        r.pass = judge(residual, r.tolerance, lower);
        r.n_used = nodes;
        r.seconds = secs;
        r.note = std::move(note);
        report_.checks.push_back(std::move(r));
    }

private:
    Report& report_;
    const RunConfig& cfg_;
    std::string suite_;
    std::string prefix_;
};

double rel(cplx a, cplx b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

std::mt19937_64 rng_for(const RunConfig& cfg, const std::string& tag) {
    return std::mt19937_64(suite_seed(cfg.seed, tag));
}

std::string kinds_tag(std::initializer_list<ArgumentPoint> pts) {
    std::string s;
    for (const ArgumentPoint& a : pts)
        s.push_back(a.is_plain() ? 'P' : 'H');
    return s;
}

template <class Fn>
double max_over(const std::vector<cplx>& zs, Fn&& fn) {
    double worst = 0.0;
    for (const cplx& z : zs)
        worst = std::max(worst, fn(z));
    return worst;
}

QuadOptions with_cap(QuadOptions q, int cap) {
    if (q.max_nodes == 0)
        q.max_nodes = cap;
    return q;
}

// ---- kernel ------------------------------------------------------------------

void run_kernel(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    const RunConfig cfg = doc.for_suite("kernel");
    Recorder rec(report, cfg, "kernel", prefix);
    const int count = cfg.samples > 0 ? cfg.samples : 1000;
    std::mt19937_64 rng = rng_for(cfg, "kernel");
    auto nome = [&] {
        const double r = 0.05 * std::pow(8.0, unit_uniform(rng));  // [0.05, 0.4]
        return Nome(std::polar(r, 2.0 * std::numbers::pi * unit_uniform(rng)));
    };
    enum { GP, GQ, GR, GPQ, GSYM, TR, TP, TQ, PT, PR, K };
    double worst[K] = {};
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < count; ++i) {
        const Nome p = nome(), q = nome();
        const cplx pv = p.value(), qv = q.value();
        const cplx z = std::polar(std::exp(std::log(0.5) + std::log(4.0) * unit_uniform(rng)),
                                  2.0 * std::numbers::pi * unit_uniform(rng));
        const cplx g = gamma(p, q, z), gp = gamma(p, q, pv * z), gq = gamma(p, q, qv * z);
        worst[GP] = std::max(worst[GP], rel(gp, theta(q, z) * g));
        worst[GQ] = std::max(worst[GQ], rel(gq, theta(p, z) * g));
        worst[GR] = std::max(worst[GR], rel(gamma(p, q, pv * qv / z) * g, 1.0));
        const cplx lhs = gamma(p, q, pv * qv * z) * g;
        const cplx rhs = -gp * gq / z;
        worst[GPQ] = std::max(worst[GPQ], rel(lhs, rhs));
        worst[GSYM] = std::max(worst[GSYM], rel(g, gamma(q, p, z)));
        const cplx th = theta(p, z);
        worst[TR] = std::max(worst[TR], rel(th, -z * theta(p, 1.0 / z)));
        worst[TP] = std::max(worst[TP], rel(th, theta(p, pv / z)));
        worst[TQ] = std::max(worst[TQ], rel(theta(p, pv * z), -th / z));
        const cplx gpl = gamma_plus(p, q, q, z);
        worst[PT] = std::max(worst[PT], rel(gamma_plus(p, q, q, qv * z), g * gpl));
        worst[PR] = std::max(worst[PR], rel(gamma_plus(p, q, q, pv * qv * qv / z), gpl));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / static_cast<double>(K);
    const char* names[K] = {"gamma.p_shift",        "gamma.q_shift",  "gamma.reflection", "gamma.pq_shift",
                            "gamma.pq_symmetry",    "theta.inversion", "theta.reflection", "theta.p_shift",
                            "gamma_plus.t_shift",   "gamma_plus.reflection"};
    for (int k = 0; k < K; ++k)
        rec.add(names[k], "kernel", 1e-12, worst[k], 0, secs, std::to_string(count) + " seeded points");
}

// ---- beta / selberg ------------------------------------------------------------

void run_beta(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    const RunConfig cfg = doc.for_suite("beta");
    Recorder rec(report, cfg, "beta", prefix);
    const QuadOptions quad = with_cap(cfg.quad, 2048);
    auto one = [&](const std::string& name, const ParameterSet& ps) {
        rec.check(name, "beta", 1e-10, [&] {
            const QuadratureResult r = elliptic_beta_integral(ps, quad);
            return rel(r.value, elliptic_beta_product(ps));
        });
    };
    if (cfg.m == 0 && cfg.n == 1 && !cfg.u.empty())
        one("beta[config]", cfg.parameters());
    const int count = cfg.samples > 0 ? cfg.samples : 20;
    std::mt19937_64 rng = rng_for(cfg, "beta");
    const Nome p(cfg.p), q(cfg.q);
    for (int k = 0; k < count; ++k)
        one("beta[" + std::to_string(k) + "]", sample_parameters(p, q, 0, 1, rng));
}

void run_selberg(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    for (const RunConfig& cfg : doc.cases("selberg")) {
        Recorder rec(report, cfg, "selberg", prefix.empty() ? cfg.label : prefix + "/" + cfg.label);
        const Nome p(cfg.p), q(cfg.q);
        const double tol = cfg.n >= 2 ? 1e-8 : 1e-10;
        auto closed = [&](const std::string& name, const ParameterSet& ps) {
            rec.check(name, "closed_form", tol,
                      [&] { return rel(selberg(ps, cfg.quad).value, selberg_closed_form_m0(ps)); });
        };
        std::optional<ParameterSet> base;
        if (!cfg.u.empty())
            base = cfg.parameters();
        if (cfg.m == 0) {
            if (base)
                closed("closed_form[config]", *base);
            const int count = cfg.samples > 0 ? cfg.samples : 5;
            std::mt19937_64 rng = rng_for(cfg, "selberg/" + cfg.label);
            for (int k = 0; k < count; ++k)
                closed("closed_form[" + std::to_string(k) + "]", sample_parameters(p, q, 0, cfg.n, rng, cfg.n >= 2 ? 0.75 : 0.85));
        }
        if (base && base->n() >= 1) {
            rec.check("permutation", "permutation", 1e-12, [&] {
                std::vector<cplx> u = base->u();
                std::reverse(u.begin(), u.end());
                return rel(selberg(*base, cfg.quad).value, selberg(base->with_u(u), cfg.quad).value);
            });
            rec.check("order_reduction", "order_reduction", 1e-9, [&] {
                // A pair with product pq drops out of the density.
                std::vector<cplx> u = base->u();
                const cplx a = std::polar(0.5, 0.3);
                u.push_back(a);
                u.push_back(p.value() * q.value() / a);
                const ParameterSet up(p, q, base->m() + 1, base->n(), u);
                return rel(selberg(up, cfg.quad).value, selberg(*base, cfg.quad).value);
            });
        }
    }
}

// ---- biorthogonal family -----------------------------------------------------------

struct Points {
    ArgumentPoint v, w;
    cplx x, y;
};

Points pick_points(const RunConfig& cfg, std::mt19937_64& rng) {
    const Nome p(cfg.p);
    Points pts;
    pts.x = annulus_point(p, rng);
    pts.y = annulus_point(p, rng);
    pts.v = cfg.v ? *cfg.v : ArgumentPoint::plain(annulus_point(p, rng));
    pts.w = cfg.w ? *cfg.w : ArgumentPoint::hatted(annulus_point(p, rng));
    return pts;
}

void run_biorth(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    for (const RunConfig& cfg : doc.cases("biorth")) {
        Recorder rec(report, cfg, "biorth", prefix.empty() ? cfg.label : prefix + "/" + cfg.label);
        const ParameterSet ps = cfg.parameters();
        const BiorthContext ctx(ps, cfg.quad);
        const Nome p = ps.p();
        const int n = ps.n();
        std::mt19937_64 rng = rng_for(cfg, "biorth/" + cfg.label);
        const Points pts = pick_points(cfg, rng);
        const cplx v = pts.v.value, w = pts.w.value, x = pts.x, y = pts.y;
        const ArgumentPoint vP = ArgumentPoint::plain(v), vH = ArgumentPoint::hatted(v);
        const ArgumentPoint wP = ArgumentPoint::plain(w), wH = ArgumentPoint::hatted(w);
        const std::uint64_t bseed = suite_seed(cfg.seed, "basis/" + cfg.label);

        if (n >= 1) {
            const std::vector<BC1Theta> lower = basis(p, n - 1, bseed);
            rec.check("biorthogonality", "biorthogonality", 1e-8, [&] {
                double worst = 0.0;
                for (const BC1Theta& H : lower)
                    worst = std::max(worst, check_biorthogonality(ctx, vP, H).value);
                return worst;
            });
            const BC1Theta wrong = basis(p, n, bseed + 1).front();
            rec.check("biorthogonality.negative_control", "negative_control", 1e-3,
                      [&] { return check_biorthogonality(ctx, vP, wrong).value; }, true);
        }
        const BC1Theta G = basis(p, n, bseed + 2).front();
        rec.check("cauchy", "cauchy", 1e-8, [&] { return check_cauchy_identity(ctx, x, v, G).value; });
        if (n >= 1) {
            std::vector<cplx> f = G.factors();
            f.front() = x;
            const BC1Theta G0(p, f);
            rec.check("cauchy.vanishing", "cauchy", 1e-8, [&] { return check_cauchy_identity(ctx, x, v, G0).value; });
        }
        for (const auto& [a, b] : {std::pair{vP, wP}, std::pair{vH, wP}, std::pair{vP, wH}, std::pair{vH, wH}})
            rec.check("three_term[" + kinds_tag({a, b}) + "]", "three_term", 1e-8,
                      [&] { return check_three_term(ctx, x, a, b).value; });
        rec.check("fminus_cauchy", "fminus_cauchy", 1e-8, [&] { return check_fminus_cauchy(ctx, x, y, v, G).value; });
        if (n >= 2) {
            const std::vector<BC1Theta> low2 = basis(p, n - 2, bseed + 3);
            rec.check("fminus_orthogonality", "fminus_orthogonality", 1e-8, [&] {
                double worst = 0.0;
                for (const BC1Theta& H : low2)
                    worst = std::max(worst, check_fminus_orthogonality(ctx, v, H).value);
                return worst;
            });
        }
        for (const auto& [a, b] : {std::pair{vP, wP}, std::pair{vH, wP}, std::pair{vP, wH}, std::pair{vH, wH}})
            rec.check("antisymmetry[" + kinds_tag({a, b}) + "]", "antisymmetry", 1e-10,
                      [&] { return check_antisymmetry(ctx, a, b).value; });
        {
            std::pair<Residual, Residual> sym;
            rec.check("F.reflection", "F_symmetry", 1e-8, [&] {
                sym = check_F_symmetry(ctx, x, vP);
                return sym.first.value;
            });
            rec.add("F.p_shift", "F_symmetry", 1e-8, sym.second.value, 0, 0.0, {});
        }
        for (const ArgumentPoint& a : {vP, vH}) {
            std::pair<Residual, Residual> mono;
            const std::string tag = kinds_tag({a});
            rec.check("monodromy.reflection[" + tag + "]", "monodromy", 1e-8, [&] {
                mono = check_monodromy_action(ctx, x, a);
                return mono.first.value;
            });
            rec.add("monodromy.p_shift[" + tag + "]", "monodromy", 1e-8, mono.second.value, 0, 0.0, {});
        }
    }
}

void run_pluecker(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    for (const RunConfig& cfg : doc.cases("pluecker")) {
        Recorder rec(report, cfg, "pluecker", prefix.empty() ? cfg.label : prefix + "/" + cfg.label);
        const ParameterSet ps = cfg.parameters();
        const BiorthContext ctx(ps, cfg.quad);
        std::mt19937_64 rng = rng_for(cfg, "pluecker/" + cfg.label);
        const int count = cfg.samples > 0 ? cfg.samples : 20;
        for (int k = 0; k < count; ++k) {
            const unsigned mask = k < 16 ? static_cast<unsigned>(k) : static_cast<unsigned>(rng() >> 60);
            ArgumentPoint a[4];
            for (int i = 0; i < 4; ++i) {
                const cplx val = annulus_point(ps.p(), rng);
                a[i] = ((mask >> i) & 1u) ? ArgumentPoint::hatted(val) : ArgumentPoint::plain(val);
            }
            rec.check("pluecker[" + std::to_string(k) + "]:" + kinds_tag({a[0], a[1], a[2], a[3]}), "pluecker", 1e-8,
                      [&] { return check_pluecker(ctx, a[0], a[1], a[2], a[3]).value; });
        }
    }
}

// ---- lax system -------------------------------------------------------------------------

struct LaxSetup {
    std::shared_ptr<const BiorthContext> ctx;
    std::optional<LaxContext> lc;
    std::vector<cplx> zs;
    std::mt19937_64 rng;
    ArgumentPoint vp, wp;
};

LaxSetup make_lax(const RunConfig& cfg, const std::string& tag) {
    LaxSetup s;
    const ParameterSet ps = cfg.parameters();
    s.ctx = std::make_shared<const BiorthContext>(ps, cfg.quad);
    s.rng = rng_for(cfg, tag + "/" + cfg.label);
    const Points pts = pick_points(cfg, s.rng);
    s.lc.emplace(s.ctx, pts.v, pts.w);
    s.zs = sample_points(ps.p(), ps.q(), 8, suite_seed(cfg.seed, "z/" + cfg.label));
    s.vp = cfg.vp ? *cfg.vp : ArgumentPoint::plain(annulus_point(ps.p(), s.rng));
    s.wp = cfg.wp ? *cfg.wp : ArgumentPoint::hatted(annulus_point(ps.p(), s.rng));
    return s;
}

void record_special(Recorder& rec, const std::vector<SpecialValue>& svs, bool rank_for_low) {
    for (const SpecialValue& sv : svs) {
        if (sv.skipped) {
            rec.add("special:" + sv.label, "special_value", 1e-7, kNaN, 0, 0.0, "skipped: " + sv.note);
            continue;
        }
        rec.add("special:" + sv.label, "special_value", 1e-7, sv.residual, 0, 0.0, {});
        const bool parameter_point = sv.label.find("u_") != std::string::npos;
        if (parameter_point && (rank_for_low || sv.label.find("/q") != std::string::npos))
            rec.add("rank:" + sv.label, "rank", 1e-7, rank_defect(sv.computed), 0, 0.0, {});
    }
}

void run_lax_A(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    for (const RunConfig& cfg : doc.cases("lax-A")) {
        Recorder rec(report, cfg, "lax-A", prefix.empty() ? cfg.label : prefix + "/" + cfg.label);
        LaxSetup s = make_lax(cfg, "lax-A");
        const LaxContext& lc = *s.lc;
        const auto& zs = s.zs;
        rec.check("M.det", "M_det", 1e-9, [&] { return max_over(zs, [&](cplx z) { return check_det_M(lc, z); }); });
        rec.check("M.reflection", "M_reflection", 1e-9,
                  [&] { return max_over(zs, [&](cplx z) { return check_M_reflection(lc, z); }); });
        rec.check("M.p_shift", "M_p_shift", 1e-8,
                  [&] { return max_over(zs, [&](cplx z) { return check_p_shift_of_M(lc, z); }); });
        if (lc.biorth().n() == 0 && lc.w().is_hatted())
            rec.check("M.triangular", "M_triangular", 1e-12, [&] {
                return max_over(zs, [&](cplx z) {
                    const Matrix2C m = build_M(lc, z);
                    return std::abs(m.a21) / m.max_abs();
                });
            });
        rec.check("Atilde.definition", "Atilde", 1e-8,
                  [&] { return max_over(zs, [&](cplx z) { return check_Atilde_definition(lc, z); }); });
        rec.check("Atilde.det", "Atilde", 1e-8,
                  [&] { return max_over(zs, [&](cplx z) { return check_Atilde_det(lc, z); }); });
        rec.check("Atilde.p_law", "Atilde", 1e-8,
                  [&] { return max_over(zs, [&](cplx z) { return check_Atilde_p_law(lc, z); }); });
        rec.check("Atilde.symmetry", "Atilde", 1e-8,
                  [&] { return max_over(zs, [&](cplx z) { return check_Atilde_symmetry(lc, z); }); });
        rec.check("Atilde.inverse", "Atilde", 1e-8,
                  [&] { return max_over(zs, [&](cplx z) { return check_Atilde_inverse(lc, z); }); });
        record_special(rec, special_values_A(lc), false);
        const std::vector<cplx> poles = candidate_poles(lc.biorth());
        for (std::size_t k = 0; k < poles.size(); ++k)
            rec.check("holomorphy[" + std::to_string(k) + "]", "holomorphy", 3.0,
                      [&] { return holomorphy_ratio(lc, poles[k]); });
    }
}

void run_isomono(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    for (const RunConfig& cfg : doc.cases("isomono")) {
        Recorder rec(report, cfg, "isomono", prefix.empty() ? cfg.label : prefix + "/" + cfg.label);
        LaxSetup s = make_lax(cfg, "isomono");
        const LaxContext& lc = *s.lc;
        const BiorthContext& ctx = lc.biorth();
        const auto& zs = s.zs;
        rec.check("vw.generic", "vw", 1e-8, [&] { return apply_isomono_vw(lc, s.vp, s.wp, zs).residual; });
        rec.check("vw.swap", "vw", 1e-8, [&] { return apply_isomono_vw(lc, lc.w(), lc.v(), zs).residual; });
        rec.check("vw.identity", "vw", 1e-12, [&] {
            return relative_difference(apply_isomono_vw(lc, lc.v(), lc.w(), zs).transform, Matrix2C::identity());
        });
        rec.check("ud", "ud", 1e-7, [&] { return apply_isomono_integer(ctx, IntegerShift::UD, zs); });
        if (ctx.n() >= 1)
            rec.check("uu", "uu", 1e-7, [&] { return apply_isomono_integer(ctx, IntegerShift::UU, zs); });
        {
            // A changing basis multiplies M on the left by T, so A~ is conjugated by T.
            const LaxContext other(lc.biorth_ptr(), s.vp, s.wp);
            const Matrix2C t = apply_isomono_vw(lc, s.vp, s.wp, {}).transform;
            rec.check("Atilde.basis_conjugation", "basis_independence", 1e-8, [&] {
                return max_over(zs, [&](cplx z) {
                    return relative_difference(build_Atilde(other, z), t * build_Atilde(lc, z) * t.inverse());
                });
            });
            rec.check("Atilde.basis_invariants", "basis_independence", 1e-8, [&] {
                return max_over(zs, [&](cplx z) {
                    const Matrix2C a = build_Atilde(lc, z), b = build_Atilde(other, z);
                    const double tr = std::abs((a.a11 + a.a22) - (b.a11 + b.a22)) / (a.max_abs() + b.max_abs());
                    const double dt = std::abs(a.det() - b.det()) / max_term({a.a11 * a.a22, a.a12 * a.a21});
                    return std::max(tr, dt);
                });
            });
        }
        const cplx x = annulus_point(ctx.p(), s.rng);
        rec.check("Aprime.definition", "Aprime", 1e-7,
                  [&] { return max_over(zs, [&](cplx z) { return check_Aprime_definition(lc, x, z); }); });
        rec.check("Aprime.elliptic", "Aprime", 1e-7,
                  [&] { return max_over(zs, [&](cplx z) { return check_Aprime_elliptic(lc, x, z); }); });
        rec.check("Mprime.reflection", "Mprime", 1e-9,
                  [&] { return max_over(zs, [&](cplx z) { return check_Mprime_reflection(lc, x, z); }); });
    }
}

void run_lax_B(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    for (const RunConfig& cfg : doc.cases("lax-B")) {
        Recorder rec(report, cfg, "lax-B", prefix.empty() ? cfg.label : prefix + "/" + cfg.label);
        LaxSetup s = make_lax(cfg, "lax-B");
        const LaxContext& lc = *s.lc;
        const BiorthContext& ctx = lc.biorth();
        const auto& zs = s.zs;
        const BContext bc = make_B_context(lc, s.vp, s.wp, cfg.quad);
        rec.check("Btilde.definition", "Btilde", 1e-7,
                  [&] { return max_over(zs, [&](cplx z) { return check_Btilde_definition(bc, z); }); });
        rec.check("Btilde.det", "Btilde", 1e-7, [&] { return max_over(zs, [&](cplx z) { return check_Btilde_det(bc, z); }); });
        rec.check("Btilde.p_law", "Btilde", 1e-7,
                  [&] { return max_over(zs, [&](cplx z) { return check_Btilde_p_law(bc, z); }); });
        rec.check("AB_relation", "AB_relation", 1e-7,
                  [&] { return max_over(zs, [&](cplx z) { return check_AB_relation(bc, z); }); });
        rec.check("B_inverse_relation", "AB_relation", 1e-7,
                  [&] { return max_over(zs, [&](cplx z) { return check_B_inverse_relation(bc, z); }); });
        record_special(rec, special_values_B(bc), true);
        const cplx x = annulus_point(ctx.p(), s.rng);
        rec.check("Bprime", "Bprime", 1e-7, [&] { return max_over(zs, [&](cplx z) { return check_Bprime(bc, x, z); }); });
        if (ctx.params().m() != 1)
            continue;
        const double fay_tol = ctx.n() == 0 ? 1e-8 : 1e-7;
        const ParameterSet& ps = ctx.params();
        const cplx q = ps.q().value();
        auto fay = [&](const std::string& name, std::shared_ptr<const BiorthContext> c) {
            FayResult fr;
            rec.check(name, "fay", fay_tol, [&] {
                const LaxContext lf(c, lc.v(), ArgumentPoint::hatted(c->params().u(1)));
                const BContext bf = make_B_context(lf, ArgumentPoint::plain(c->params().u(0) / q), s.wp, cfg.quad);
                fr = fay_from_B(bf);
                return fr.residual;
            });
            report.checks.back().note = std::to_string(fr.terms) + " nonvanishing terms";
        };
        fay("fay", s.ctx);
        {
            // u_3 = p/u_1 kills the s = 3 term; u_2 absorbs the change so the
            // balanced last parameter stays where it was.
            std::vector<cplx> head(ps.u().begin(), ps.u().end() - 1);
            head[3] = ps.p().value() / ps.u(1);
            head[2] *= ps.u(3) / head[3];
            const ParameterSet degenerate = ParameterSet::autobalance(ps.p(), ps.q(), ps.m(), ps.n(), head);
            const ContourVerdict verdict = check_contour(degenerate);
            if (!verdict.ok)
                rec.add("fay.degenerate", "fay", fay_tol, kNaN, 0, 0.0, "skipped: " + verdict.reason);
            else
                fay("fay.degenerate", std::make_shared<const BiorthContext>(degenerate, cfg.quad));
        }
    }
}

void run_transform97(Report& report, const ConfigDocument& doc, const std::string& prefix) {
    const RunConfig cfg = doc.for_suite("transform97");
    Recorder rec(report, cfg, "transform97", prefix);
    const Nome p(cfg.p), q(cfg.q);
    auto one = [&](const std::string& name, const ParameterSet& ps) {
        rec.check(name, "transform97", 1e-6, [&] {
            const TransformSides t = transform_9_7(ps, cfg.quad);
            return rel(t.lhs, t.rhs);
        });
    };
    if (cfg.m == 1 && !cfg.u.empty())
        one("transform97[config]", cfg.parameters());
    const int count = cfg.samples > 0 ? cfg.samples : 3;
    const int n = cfg.m == 1 ? cfg.n : 1;
    std::mt19937_64 rng = rng_for(cfg, "transform97");
    // The sign of x only flips every u'_r, which the integral does not see.
    auto branch_safe = [&](const ParameterSet& ps) {
        const std::vector<cplx> up = transform_9_7_image(ps);
        return check_contour(ps.with_u(up)).ok &&
               std::all_of(up.begin(), up.end(), [](cplx a) { return std::abs(a) <= 0.85; });
    };
    for (int k = 0; k < count; ++k)
        one("transform97[" + std::to_string(k) + "]", sample_parameters(p, q, 1, n, rng, 0.85, branch_safe));
}

using SuiteFn = void (*)(Report&, const ConfigDocument&, const std::string&);

struct SuiteEntry {
    const char* name;
    SuiteFn fn;
};

const SuiteEntry kSuites[] = {{"kernel", run_kernel},     {"beta", run_beta},       {"selberg", run_selberg},
                              {"biorth", run_biorth},     {"pluecker", run_pluecker}, {"lax-A", run_lax_A},
                              {"lax-B", run_lax_B},       {"isomono", run_isomono}, {"transform97", run_transform97}};

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const SuiteEntry& s : kSuites)
            out.emplace_back(s.name);
        return out;
    }();
    return names;
}

bool is_suite(const std::string& name) {
    return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

Report run_suite(const std::string& suite, const ConfigDocument& doc) {
    if (!is_suite(suite))
        throw ConfigError("unknown suite '" + suite + "'");
    Report report;
    report.suite = suite;
    report.config = doc.raw();
    report.seed = doc.base().seed;
    for (const SuiteEntry& s : kSuites) {
        if (suite == "all")
            s.fn(report, doc, s.name);
        else if (suite == s.name)
            s.fn(report, doc, "");
    }
    return report;
}

std::uint64_t suite_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ull ^ (seed * 0x9E3779B97F4A7C15ull);
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ParameterSet sample_parameters(Nome p, Nome q, int m, int n, std::mt19937_64& rng, double max_modulus,
                               const std::function<bool(const ParameterSet&)>& accept) {
    const int count = 2 * m + 6;
    const double g = std::pow(std::abs(balanced_product(p, q, m, n)), 1.0 / count);
    const double lo = std::min(0.7 * g, 0.5 * max_modulus);
    const double hi = std::min(1.4 * g, max_modulus);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        std::vector<cplx> head;
        for (int r = 0; r + 1 < count; ++r) {
            const double mod = lo * std::pow(hi / lo, unit_uniform(rng));
            head.push_back(std::polar(mod, 2.0 * std::numbers::pi * unit_uniform(rng)));
        }
        const ParameterSet ps = ParameterSet::autobalance(p, q, m, n, head);
        const double last = std::abs(ps.u().back());
        if (last > max_modulus || last < 0.25 * lo)
            continue;
        if (!check_contour(ps).ok)
            continue;
        if (accept && !accept(ps))
            continue;
        return ps;
    }
    throw DegeneracyError("could not sample a valid balanced parameter set");
}

cplx annulus_point(Nome p, std::mt19937_64& rng) {
    const double t = 0.3 + 0.4 * unit_uniform(rng);
    return std::polar(std::exp(t * std::log(p.abs())), 2.0 * std::numbers::pi * unit_uniform(rng));
}

} // namespace ellax
