#include "ellax/report.hpp"

#include <algorithm>
#include <cmath>

namespace ellax {

bool judge(double residual, double tolerance, bool lower_bound) {
    if (!std::isfinite(residual))
        return false;
    return lower_bound ? residual >= tolerance : residual <= tolerance;
}

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

json Report::to_json(bool timings) const {
    std::vector<const CheckRecord*> sorted;
    sorted.reserve(checks.size());
    for (const CheckRecord& c : checks)
        sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CheckRecord* a, const CheckRecord* b) { return a->name < b->name; });
    json list = json::array();
    for (const CheckRecord* c : sorted) {
        json r;
        r["name"] = c->name;
        r["residual"] = std::isfinite(c->residual) ? json(c->residual) : json(nullptr);
        r["tolerance"] = c->tolerance;
        if (c->lower_bound)
            r["bound"] = "lower";
        r["pass"] = c->pass;
        r["N_used"] = c->n_used;
        r["seconds"] = timings ? json(c->seconds) : json(nullptr);
        if (!c->note.empty())
            r["note"] = c->note;
        list.push_back(std::move(r));
    }
    json out;
    out["schema"] = kReportSchema;
    out["tool"] = {{"name", "ellax"}, {"version", kToolVersion}};
    out["suite"] = suite;
    out["seed"] = seed;
    out["pass"] = pass();
    out["checks"] = std::move(list);
    out["config"] = config;
    return out;
}

} // namespace ellax
