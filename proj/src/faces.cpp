#include "qpoly/faces.hpp"

#include <algorithm>
#include <set>

#include "qpoly/errors.hpp"
#include "qpoly/lp.hpp"
#include "qpoly/matrix.hpp"

namespace qpoly {

namespace {

QMatrix support_rows(const HPolytope& p, const std::vector<std::size_t>& support) {
    QMatrix m(0, p.dim + 1);
    for (std::size_t idx : support) {
        if (idx >= p.facets.size()) throw InputError("facet index out of range");
        m.append_row(p.facets[idx].normal);
    }
    return m;
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

RelIntResult relative_interior_point(const HPolytope& p, const std::vector<std::size_t>& support) {
    const std::size_t d = p.dim;
    std::vector<char> tight(p.facets.size(), 0);
    for (std::size_t idx : support) {
        if (idx >= p.facets.size()) throw InputError("facet index out of range");
        tight[idx] = 1;
    }
    // Variables (x_1..x_d, s): tight rows at zero, others at least s, s <= 1.
    std::vector<LpRow> rows;
    rows.reserve(p.facets.size() + 1);
    for (std::size_t g = 0; g < p.facets.size(); ++g) {
        const auto& nrm = p.facets[g].normal;
        LpRow r;
        r.a.assign(d + 1, Rational(0));
        for (std::size_t j = 0; j < d; ++j) r.a[j] = nrm[j + 1];
        r.rhs = -nrm[0];
        if (tight[g]) {
            r.rel = '=';
        } else {
            r.rel = '>';
            r.a[d] = -1;
        }
        rows.push_back(std::move(r));
    }
    {
        LpRow cap;
        cap.a.assign(d + 1, Rational(0));
        cap.a[d] = 1;
        cap.rel = '<';
        cap.rhs = 1;
        rows.push_back(std::move(cap));
    }
    std::vector<Rational> obj(d + 1, Rational(0));
    obj[d] = 1;
    LpResult res = lp_maximize(d + 1, rows, obj);
    RelIntResult out;
    if (res.status == LpStatus::Infeasible) {
        out.empty = true;
        return out;
    }
    if (res.status != LpStatus::Optimal) throw Error("slack program cannot be unbounded");
    out.margin = res.objective;
    out.point.resize(d + 1);
    out.point[0] = 1;
    for (std::size_t j = 0; j < d; ++j) out.point[j + 1] = res.x[j];
    return out;
}

long face_dimension(const HPolytope& p, const std::vector<std::size_t>& support) {
    std::size_t r = rank(support_rows(p, support));
    return static_cast<long>(p.dim) - static_cast<long>(r);
}

std::vector<std::size_t> support_closure(const HPolytope& p, const std::vector<std::size_t>& support) {
    std::vector<std::size_t> s = sorted_unique(support);
    QMatrix base = support_rows(p, s);
    std::size_t r0 = rank(base);
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < p.facets.size(); ++g) {
        if (std::binary_search(s.begin(), s.end(), g)) {
            out.push_back(g);
            continue;
        }
        QMatrix ext = base;
        ext.append_row(p.facets[g].normal);
        if (rank(ext) == r0) out.push_back(g);
    }
    return out;
}

AffineSupportResult affine_support_check(const HPolytope& p, const std::vector<std::size_t>& support) {
    const std::size_t m = support.size();
    QMatrix t(0, m);
    for (std::size_t j = 0; j <= p.dim; ++j) {
        std::vector<Rational> row(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (support[i] >= p.facets.size()) throw InputError("facet index out of range");
            row[i] = p.facets[support[i]].normal[j];
        }
        t.append_row(row);
    }
    AffineSupportResult out;
    std::vector<std::vector<Rational>> deps = nullspace(t);
    out.excess = deps.size();
    if (out.excess == 0) {
        out.holds = true;
        return out;
    }
    for (std::size_t i = 0; i < m; ++i) {
        bool in_some = false;
        for (const auto& l : deps)
            if (l[i] != 0) {
                in_some = true;
                break;
            }
        if (!in_some) out.essential.push_back(support[i]);
    }
    out.holds = out.essential.empty();
    return out;
}

FaceRecord make_face_record(const HPolytope& p, const std::vector<std::size_t>& support) {
    FaceRecord rec;
    rec.support = support_closure(p, sorted_unique(support));
    rec.m = rec.support.size();
    std::size_t r = rank(support_rows(p, rec.support));
    RelIntResult ri = relative_interior_point(p, rec.support);
    if (ri.empty) throw VerifyError("support cuts the empty face");
    if (ri.margin == 0) throw VerifyError("support is not the exact tight set of any point");
    rec.k = p.dim - r;
    rec.excess = rec.m - r;
    rec.witness = ri.point;
    rec.labels.reserve(rec.m);
    for (std::size_t idx : rec.support) rec.labels.push_back(p.facets[idx].label);
    return rec;
}

void verify_nonsimplicity(const HPolytope& p, const FaceRecord& rec) {
    const std::size_t d = p.dim;
    if (rec.support.empty()) throw VerifyError("record has empty support");
    if (!std::is_sorted(rec.support.begin(), rec.support.end()) ||
        std::adjacent_find(rec.support.begin(), rec.support.end()) != rec.support.end())
        throw VerifyError("record support is not strictly ascending");
    if (rec.support.back() >= p.facets.size()) throw VerifyError("record support out of range");
    if (rec.labels.size() != rec.support.size()) throw VerifyError("record labels mismatch");
    for (std::size_t i = 0; i < rec.support.size(); ++i)
        if (p.facets[rec.support[i]].label != rec.labels[i])
            throw VerifyError("record label does not match facet index");
    if (rec.m != rec.support.size()) throw VerifyError("record m differs from support size");
    // The witness certifies nonemptiness and maximality: a body point whose
    // tight set is exactly the support.
    if (rec.witness.size() != d + 1 || rec.witness[0] != 1)
        throw VerifyError("record witness is not a homogeneous point");
    std::size_t si = 0;
    for (std::size_t g = 0; g < p.facets.size(); ++g) {
        Rational dot = facet_dot(p.facets[g], rec.witness);
        bool in_support = si < rec.support.size() && rec.support[si] == g;
        if (in_support) ++si;
        if (dot < 0) throw VerifyError("record witness lies outside the body");
        if (in_support && dot != 0) throw VerifyError("record witness misses a support facet");
        if (!in_support && dot == 0) throw VerifyError("record support is not maximal at the witness");
    }
    std::size_t r = rank(support_rows(p, rec.support));
    if (rec.k != d - r) throw VerifyError("record k differs from support rank");
    if (rec.excess != rec.m - r) throw VerifyError("record excess differs from m - (dim - k)");
}

std::vector<FaceRecord> find_nonsimplicities(const HPolytope& p, const std::vector<VertexRecord>& verts) {
    std::set<std::vector<std::size_t>> visited;
    std::set<std::vector<std::size_t>> recorded;
    std::vector<FaceRecord> out;
    std::vector<std::vector<std::size_t>> stack;
    for (const auto& v : verts) {
        if (v.inc.size() <= p.dim) continue;
        std::vector<std::size_t> s(v.inc.begin(), v.inc.end());
        stack.push_back(support_closure(p, s));
    }
    while (!stack.empty()) {
        std::vector<std::size_t> s = std::move(stack.back());
        stack.pop_back();
        if (!visited.insert(s).second) continue;
        std::size_t r = rank(support_rows(p, s));
        if (s.size() <= r) continue;  // simple here, nothing to split
        AffineSupportResult aff = affine_support_check(p, s);
        if (aff.holds) {
            if (recorded.insert(s).second) {
                RelIntResult ri = relative_interior_point(p, s);
                if (!ri.empty && ri.margin > 0) {
                    FaceRecord rec = make_face_record(p, s);
                    out.push_back(std::move(rec));
                }
            }
            continue;
        }
        for (std::size_t h : aff.essential) {
            std::vector<std::size_t> reduced;
            reduced.reserve(s.size() - 1);
            for (std::size_t g : s)
                if (g != h) reduced.push_back(g);
            stack.push_back(support_closure(p, reduced));
        }
    }
    std::sort(out.begin(), out.end(), [](const FaceRecord& a, const FaceRecord& b) {
        if (a.k != b.k) return a.k < b.k;
        return a.support < b.support;
    });
    return out;
}

std::string support_to_string(const FaceRecord& rec) {
    std::string s;
    for (std::size_t i = 0; i < rec.labels.size(); ++i) {
        if (i) s += ' ';
        s += rec.labels[i];
    }
    return s;
}

}  // namespace qpoly
