#include "ellax/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ellax {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

double parse_real(std::string_view s, std::string_view whole) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail("cannot parse complex number '" + std::string(whole) + "'");
    return v;
}

const std::set<std::string> kKnownKeys = {"label", "description", "p",       "q",         "m",     "n",
                                          "u",     "v",           "w",       "v'",        "w'",    "vp",
                                          "wp",    "quadrature",  "tolerance", "seed",    "samples", "suites",
                                          "cases"};

int parse_int(const json& j, const char* key) {
    if (!j.is_number_integer())
        fail(std::string("'") + key + "' must be an integer");
    return j.get<int>();
}

} // namespace

cplx parse_complex_string(std::string_view s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(c);
    if (t.empty())
        fail("empty complex number");
    if (t.back() != 'i' && t.back() != 'j')
        return {parse_real(t, s), 0.0};
    t.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](std::string_view im) {
        if (im.empty() || im == "+")
            return 1.0;
        if (im == "-")
            return -1.0;
        if (im.front() == '+')
            im.remove_prefix(1);
        return parse_real(im, s);
    };
    if (split == std::string::npos)
        return {0.0, imag_part(t)};
    const std::string_view view(t);
    return {parse_real(view.substr(0, split), s), imag_part(view.substr(split))};
}

cplx parse_complex(const json& j) {
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_string())
        return parse_complex_string(j.get<std::string>());
    if (j.is_object()) {
        if (j.contains("abs") || j.contains("arg")) {
            if (!j.contains("abs") || !j.contains("arg") || !j["abs"].is_number() || !j["arg"].is_number())
                fail("polar complex numbers need numeric 'abs' and 'arg'");
            return std::polar(j["abs"].get<double>(), j["arg"].get<double>());
        }
        const double re = j.contains("re") ? j["re"].get<double>() : 0.0;
        const double im = j.contains("im") ? j["im"].get<double>() : 0.0;
        if (!j.contains("re") && !j.contains("im"))
            fail("complex object needs 're' and/or 'im'");
        return {re, im};
    }
    fail("expected a complex number, got " + j.dump());
}

json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

ArgumentPoint parse_argument(const json& j) {
    if (j.is_object() && j.contains("kind")) {
        const std::string kind = j["kind"].get<std::string>();
        if (!j.contains("value"))
            fail("argument point needs a 'value'");
        const cplx value = parse_complex(j["value"]);
        if (value == cplx(0.0, 0.0))
            fail("argument points must be nonzero");
        if (kind == "plain")
            return ArgumentPoint::plain(value);
        if (kind == "hatted")
            return ArgumentPoint::hatted(value);
        fail("argument kind must be 'plain' or 'hatted', got '" + kind + "'");
    }
    return ArgumentPoint::plain(parse_complex(j));
}

json argument_to_json(const ArgumentPoint& a) {
    return json{{"kind", a.is_plain() ? "plain" : "hatted"}, {"value", complex_to_json(a.value)}};
}

RunConfig parse_run_config(const json& j) {
    if (!j.is_object())
        fail("configuration must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kKnownKeys.count(key))
            fail("unknown configuration key '" + key + "'");
    RunConfig c;
    if (j.contains("label"))
        c.label = j["label"].get<std::string>();
    if (j.contains("p"))
        c.p = parse_complex(j["p"]);
    if (j.contains("q"))
        c.q = parse_complex(j["q"]);
    if (j.contains("m"))
        c.m = parse_int(j["m"], "m");
    if (j.contains("n"))
        c.n = parse_int(j["n"], "n");
    if (j.contains("u")) {
        if (!j["u"].is_array())
            fail("'u' must be an array");
        for (const json& x : j["u"])
            c.u.push_back(parse_complex(x));
    }
    if (j.contains("v"))
        c.v = parse_argument(j["v"]);
    if (j.contains("w"))
        c.w = parse_argument(j["w"]);
    for (const char* key : {"v'", "vp"})
        if (j.contains(key))
            c.vp = parse_argument(j[key]);
    for (const char* key : {"w'", "wp"})
        if (j.contains(key))
            c.wp = parse_argument(j[key]);
    if (j.contains("quadrature")) {
        const json& qd = j["quadrature"];
        for (const auto& [key, value] : qd.items()) {
            if (key == "N")
                c.quad.nodes = parse_int(value, "quadrature.N");
            else if (key == "max_N")
                c.quad.max_nodes = parse_int(value, "quadrature.max_N");
            else if (key == "refine") {
                if (!value.is_number() || !(value.get<double>() > 0.0))
                    fail("'quadrature.refine' must be a positive number");
                c.quad.refine = value.get<double>();
            } else
                fail("unknown quadrature key '" + key + "'");
        }
    }
    if (j.contains("tolerance")) {
        for (const auto& [key, value] : j["tolerance"].items()) {
            if (!value.is_number() || !(value.get<double>() > 0.0))
                fail("tolerance '" + key + "' must be a positive number");
            c.tolerance[key] = value.get<double>();
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
            fail("'seed' must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("samples"))
        c.samples = parse_int(j["samples"], "samples");
    return c;
}

ParameterSet RunConfig::parameters() const {
    try {
        const Nome pn(p), qn(q);
        const std::size_t full = static_cast<std::size_t>(2 * m + 6);
        if (m < 0 || n < 0)
            fail("m and n must be non-negative");
        std::optional<ParameterSet> ps;
        if (u.size() + 1 == full)
            ps = ParameterSet::autobalance(pn, qn, m, n, u);
        else if (u.size() == full)
            ps = ParameterSet(pn, qn, m, n, u);
        else {
            std::ostringstream os;
            os << "order m=" << m << " needs " << full - 1 << " or " << full << " parameters, got " << u.size();
            fail(os.str());
        }
        const ContourVerdict verdict = check_contour(*ps);
        if (!verdict.ok)
            fail("unit circle is not a valid contour: " + verdict.reason);
        return *ps;
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

double RunConfig::tolerance_for(const std::string& suite, const std::string& kind, double fallback) const {
    if (auto it = tolerance.find(kind); it != tolerance.end())
        return it->second;
    if (auto it = tolerance.find(suite); it != tolerance.end())
        return it->second;
    return fallback;
}

ConfigDocument::ConfigDocument(json raw) : raw_(std::move(raw)) {
    if (!raw_.is_object())
        fail("configuration must be a JSON object");
    if (raw_.contains("suites") && !raw_["suites"].is_object())
        fail("'suites' must be an object keyed by suite name");
    parse_run_config(raw_).parameters();
}

RunConfig ConfigDocument::base() const {
    json top = raw_;
    top.erase("suites");
    top.erase("cases");
    return parse_run_config(top);
}

json ConfigDocument::suite_json(const std::string& suite) const {
    json top = raw_;
    top.erase("suites");
    top.erase("cases");
    if (raw_.contains("suites") && raw_["suites"].contains(suite)) {
        json over = raw_["suites"][suite];
        if (!over.is_object())
            fail("suite override '" + suite + "' must be an object");
        over.erase("cases");
        if (over.contains("suites"))
            fail("nested 'suites' are not allowed");
        top.merge_patch(over);
    }
    return top;
}

RunConfig ConfigDocument::for_suite(const std::string& suite) const { return parse_run_config(suite_json(suite)); }

std::vector<RunConfig> ConfigDocument::cases(const std::string& suite) const {
    const json merged = suite_json(suite);
    std::vector<RunConfig> out;
    const json* list = nullptr;
    if (raw_.contains("suites") && raw_["suites"].contains(suite) && raw_["suites"][suite].contains("cases"))
        list = &raw_["suites"][suite]["cases"];
    if (list == nullptr || list->empty()) {
        out.push_back(parse_run_config(merged));
        return out;
    }
    if (!list->is_array())
        fail("'cases' must be an array");
    int k = 0;
    for (const json& c : *list) {
        if (!c.is_object())
            fail("each case must be an object");
        json one = merged;
        one.merge_patch(c);
        RunConfig rc = parse_run_config(one);
        if (rc.label.empty() || !c.contains("label"))
            rc.label = "case" + std::to_string(k);
        out.push_back(std::move(rc));
        ++k;
    }
    return out;
}

void ConfigDocument::set_seed(std::uint64_t seed) { raw_["seed"] = seed; }

ConfigDocument load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail("cannot open configuration file '" + path + "'");
    json raw;
    try {
        raw = json::parse(in);
    } catch (const json::exception& e) {
        fail("invalid JSON in '" + path + "': " + e.what());
    }
    return ConfigDocument(std::move(raw));
}

json autobalance_config(const json& raw) {
    json top = raw;
    top.erase("suites");
    RunConfig c = parse_run_config(top);
    const std::size_t head = static_cast<std::size_t>(2 * c.m + 5);
    if (c.u.size() != head && c.u.size() != head + 1) {
        std::ostringstream os;
        os << "autobalance needs " << head << " parameters, got " << c.u.size();
        fail(os.str());
    }
    c.u.resize(head);
    const ParameterSet ps = c.parameters();
    json out = raw;
    json u = json::array();
    for (const cplx& x : ps.u())
        u.push_back(complex_to_json(x));
    out["u"] = u;
    return out;
}

} // namespace ellax
