#include "qpoly/hrep.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qpoly/errors.hpp"
#include "qpoly/lp.hpp"

namespace qpoly {

std::size_t HPolytope::index(const std::string& label) const {
    for (std::size_t i = 0; i < facets.size(); ++i)
        if (facets[i].label == label) return i;
    throw InputError("no facet labeled \"" + label + "\"");
}

bool HPolytope::has(const std::string& label) const {
    for (const auto& f : facets)
        if (f.label == label) return true;
    return false;
}

std::vector<std::string> HPolytope::labels() const {
    std::vector<std::string> out;
    out.reserve(facets.size());
    for (const auto& f : facets) out.push_back(f.label);
    return out;
}

Rational facet_dot(const Facet& f, const std::vector<Rational>& v) {
    if (f.normal.size() != v.size()) throw Error("facet_dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (f.normal[i] != 0 && v[i] != 0) s += f.normal[i] * v[i];
    return s;
}

namespace {

// Feasibility rows over the d free coordinates: n0 + n(1..d) . x >= 0.
std::vector<LpRow> body_rows(const HPolytope& p) {
    std::vector<LpRow> rows;
    rows.reserve(p.facets.size());
    for (const auto& f : p.facets) {
        LpRow r;
        r.a.assign(f.normal.begin() + 1, f.normal.end());
        r.rel = '>';
        r.rhs = -f.normal[0];
        rows.push_back(std::move(r));
    }
    return rows;
}

bool body_feasible(const HPolytope& p) {
    const std::vector<Rational> zero(p.dim, 0);
    return lp_maximize(p.dim, body_rows(p), zero).status == LpStatus::Optimal;
}

// The recession cone {r : n(1..d) . r >= 0 for all facets} must be {0}.
// Each coordinate is probed in both directions inside a unit box; a
// nonzero optimum exhibits an unbounded ray.
bool body_bounded(const HPolytope& p) {
    std::vector<LpRow> rows;
    for (const auto& f : p.facets) {
        LpRow r;
        r.a.assign(f.normal.begin() + 1, f.normal.end());
        r.rel = '>';
        r.rhs = 0;
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < p.dim; ++j) {
        LpRow lo, hi;
        lo.a.assign(p.dim, 0);
        lo.a[j] = 1;
        lo.rel = '>';
        lo.rhs = -1;
        hi.a.assign(p.dim, 0);
        hi.a[j] = 1;
        hi.rel = '<';
        hi.rhs = 1;
        rows.push_back(lo);
        rows.push_back(hi);
    }
    for (std::size_t j = 0; j < p.dim; ++j) {
        for (int sign : {1, -1}) {
            std::vector<Rational> obj(p.dim, 0);
            obj[j] = sign;
            LpResult res = lp_maximize(p.dim, rows, obj);
            if (res.status != LpStatus::Optimal) throw Error("boundedness probe failed");
            if (res.objective > 0) return false;
        }
    }
    return true;
}

}  // namespace

ValidationReport validate_polytope(const HPolytope& p) {
    if (p.dim == 0) throw InputError("dim must be positive");
    if (p.facets.empty()) throw InputError("facet list is empty");
    std::set<std::string> seen;
    for (const auto& f : p.facets) {
        if (f.label.empty()) throw InputError("empty facet label");
        if (!seen.insert(f.label).second)
            throw InputError("duplicate facet label \"" + f.label + "\"");
        if (f.normal.size() != p.dim + 1)
            throw InputError("facet \"" + f.label + "\": normal has " +
                             std::to_string(f.normal.size()) + " entries, expected " +
                             std::to_string(p.dim + 1));
    }
    if (!body_feasible(p)) throw InputError("polytope is infeasible (empty body)");
    if (!body_bounded(p)) throw InputError("polytope is unbounded");

    ValidationReport report;
    // A real facet supports the body with equality somewhere; rows that are
    // never tight are permitted but flagged.
    auto rows = body_rows(p);
    for (std::size_t i = 0; i < p.facets.size(); ++i) {
        std::vector<Rational> obj(p.dim, 0);
        for (std::size_t j = 0; j < p.dim; ++j) obj[j] = -p.facets[i].normal[j + 1];
        LpResult res = lp_maximize(p.dim, rows, obj);
        if (res.status != LpStatus::Optimal) throw Error("tightness probe failed");
        // min of normal.v equals n0 - max of obj.
        if (p.facets[i].normal[0] - res.objective > 0)
            report.warnings.push_back("facet \"" + p.facets[i].label +
                                      "\" is never tight (redundant row)");
    }
    return report;
}

HPolytope parse_polytope(std::istream& in, ValidationReport* report) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("polytope document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("facets"))
        throw InputError("polytope document must be an object with dim and facets");
    if (!doc["dim"].is_number_unsigned())
        throw InputError("dim must be a nonnegative integer");
    HPolytope p;
    p.dim = doc["dim"].get<std::size_t>();
    if (!doc["facets"].is_array())
        throw InputError("facets must be a list");
    for (const auto& fj : doc["facets"]) {
        if (!fj.is_object() || !fj.contains("label") || !fj.contains("normal") ||
            !fj["label"].is_string() || !fj["normal"].is_array())
            throw InputError("each facet needs a label string and a normal list");
        Facet f;
        f.label = fj["label"].get<std::string>();
        for (const auto& s : fj["normal"]) {
            if (!s.is_string())
                throw InputError("facet \"" + f.label + "\": normal entries must be rational strings");
            f.normal.push_back(parse_rational(s.get<std::string>()));
        }
        p.facets.push_back(std::move(f));
    }
    ValidationReport rep = validate_polytope(p);
    if (report) *report = std::move(rep);
    return p;
}

HPolytope load_polytope(const std::string& path, ValidationReport* report) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_polytope(in, report);
}

void serialize_polytope(const HPolytope& p, std::ostream& out) {
    nlohmann::json doc;
    doc["dim"] = p.dim;
    doc["facets"] = nlohmann::json::array();
    for (const auto& f : p.facets) {
        nlohmann::json fj;
        fj["label"] = f.label;
        fj["normal"] = nlohmann::json::array();
        for (const auto& q : f.normal) fj["normal"].push_back(to_string(q));
        doc["facets"].push_back(std::move(fj));
    }
    out << doc.dump(2) << "\n";
}

}  // namespace qpoly
