#include "qpoly/construct.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qpoly/errors.hpp"
#include "qpoly/matrix.hpp"
#include "qpoly/paths.hpp"

namespace qpoly {

HPolytope wedge(const HPolytope& p, const std::string& foot, const Rational& C, const std::string& top_label) {
    if (C <= 0) throw InputError("wedge parameter C must be positive");
    if (p.has(top_label)) throw InputError("top label " + top_label + " already names a facet");
    std::size_t fi = p.index(foot);
    HPolytope w;
    w.dim = p.dim + 1;
    w.facets = p.facets;
    for (std::size_t i = 0; i < w.facets.size(); ++i)
        w.facets[i].normal.push_back(i == fi ? C : Rational(0));
    Facet top;
    top.label = top_label;
    top.normal = p.facets[fi].normal;
    top.normal.push_back(-C);
    w.facets.push_back(std::move(top));
    return w;
}

HPolytope perturb(const HPolytope& p, const std::vector<std::pair<std::string, Rational>>& deltas) {
    HPolytope q = p;
    for (const auto& [label, eps] : deltas) q.facets[q.index(label)].normal.back() += eps;
    return q;
}

std::vector<std::vector<Rational>> natural_images(const HPolytope& p, const std::string& foot,
                                                  const Rational& C, const std::vector<Rational>& point) {
    if (C <= 0) throw InputError("wedge parameter C must be positive");
    Rational val = facet_dot(p.facets[p.index(foot)], point);
    std::vector<std::vector<Rational>> out;
    if (val == 0) {
        std::vector<Rational> img = point;
        img.push_back(0);
        out.push_back(std::move(img));
        return out;
    }
    std::vector<Rational> base = point, top = point;
    base.push_back(-val / C);
    top.push_back(val / C);
    out.push_back(std::move(base));
    out.push_back(std::move(top));
    return out;
}

std::vector<BadFoot> detect_bad_feet(const HPolytope& p, const std::vector<VertexRecord>& verts,
                                     const std::vector<std::vector<std::uint32_t>>& adj,
                                     std::size_t special, const std::string& g_label) {
    std::size_t gi = p.index(g_label);
    const VertexRecord& y = verts[special];
    if (!((y.inc_mask >> gi) & 1)) throw InputError("facet " + g_label + " is not incident to the special vertex");
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> hits;  // foot -> witness edge
    for (std::uint32_t w : adj[special]) {
        std::uint64_t common = y.inc_mask & verts[w].inc_mask;
        if (!((common >> gi) & 1)) continue;  // the edge must run inside G
        std::size_t edge_support = static_cast<std::size_t>(__builtin_popcountll(common));
        if (edge_support <= p.dim - 1) continue;  // simple edge, no obstruction
        std::uint64_t escape = verts[w].inc_mask & ~y.inc_mask;
        for (std::size_t f = 0; f < p.facets.size(); ++f) {
            if (!((escape >> f) & 1)) continue;
            auto it = hits.find(f);
            if (it == hits.end() || w < it->second.second) hits[f] = {special, w};
        }
    }
    std::vector<BadFoot> out;
    for (const auto& [f, edge] : hits) out.push_back(BadFoot{p.facets[f].label, edge});
    return out;
}

namespace {

[[noreturn]] void script_error(std::size_t line, const std::string& msg) {
    throw InputError("script line " + std::to_string(line) + ": " + msg);
}

ScriptOp::Delta parse_delta(std::size_t line, const std::string& tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) script_error(line, "expected <label>=<value>, got \"" + tok + "\"");
    ScriptOp::Delta d;
    d.label = tok.substr(0, eq);
    std::string val = tok.substr(eq + 1);
    if (val == "eps" || val == "+eps") {
        d.symbolic = true;
        d.value = 1;
    } else if (val == "-eps") {
        d.symbolic = true;
        d.value = -1;
    } else {
        try {
            d.value = parse_rational(val);
        } catch (const InputError& e) {
            script_error(line, e.what());
        }
    }
    return d;
}

}  // namespace

std::vector<ScriptOp> parse_script(std::istream& in) {
    std::vector<ScriptOp> ops;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        ScriptOp op;
        op.line = lineno;
        if (toks[0] == "wedge") {
            op.kind = ScriptOp::Kind::Wedge;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto eq = toks[i].find('=');
                if (eq == std::string::npos) script_error(lineno, "expected key=value, got \"" + toks[i] + "\"");
                std::string key = toks[i].substr(0, eq), val = toks[i].substr(eq + 1);
                if (key == "foot") {
                    op.foot = val;
                } else if (key == "top") {
                    op.top = val;
                } else if (key == "C") {
                    try {
                        op.c = parse_rational(val);
                    } catch (const InputError& e) {
                        script_error(lineno, e.what());
                    }
                } else {
                    script_error(lineno, "unknown wedge key \"" + key + "\"");
                }
            }
            if (op.foot.empty() || op.top.empty()) script_error(lineno, "wedge needs foot= and top=");
        } else if (toks[0] == "perturb") {
            op.kind = ScriptOp::Kind::Perturb;
            for (std::size_t i = 1; i < toks.size(); ++i) op.deltas.push_back(parse_delta(lineno, toks[i]));
            if (op.deltas.empty()) script_error(lineno, "perturb needs at least one <label>=<value>");
        } else {
            script_error(lineno, "unknown operation \"" + toks[0] + "\"");
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

std::vector<ScriptOp> load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open script " + path);
    return parse_script(in);
}

SpindleInfo analyze_spindle(const HPolytope& p, const EnumOptions& opt) {
    std::vector<VertexRecord> verts = enumerate_vertices(p, opt);
    auto [x, y] = spindle_check(p, verts);
    SpindleInfo info;
    info.x = x;
    info.y = y;
    for (std::uint32_t g : verts[x].inc) info.x_facets.push_back(p.facets[g].label);
    for (std::uint32_t g : verts[y].inc) info.y_facets.push_back(p.facets[g].label);
    std::vector<std::size_t> xs(verts[x].inc.begin(), verts[x].inc.end());
    std::vector<std::size_t> ys(verts[y].inc.begin(), verts[y].inc.end());
    for (const FaceRecord& rec : find_nonsimplicities(p, verts)) {
        if (rec.support == xs) info.excess_x = rec.excess;
        if (rec.support == ys) info.excess_y = rec.excess;
    }
    return info;
}

ConstructionTrace run_script(const HPolytope& p, const std::vector<ScriptOp>& ops, const Rational& C,
                             const Rational& eps, const SpindleInfo* base) {
    ConstructionTrace tr;
    tr.input = p;
    tr.c = C;
    tr.eps = eps;
    for (const auto& f : p.facets) tr.facet_side[f.label] = '?';
    if (base) {
        for (const auto& l : base->x_facets) tr.facet_side[l] = 'X';
        for (const auto& l : base->y_facets) tr.facet_side[l] = 'Y';
        tr.required_rank_x = base->excess_x;
        tr.required_rank_y = base->excess_y;
    }
    HPolytope cur = p;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const ScriptOp& op = ops[i];
        std::string desc;
        try {
            if (op.kind == ScriptOp::Kind::Wedge) {
                Rational cw = op.c.value_or(C);
                cur = wedge(cur, op.foot, cw, op.top);
                tr.facet_side[op.top] = tr.facet_side.at(op.foot);
                tr.col_side.push_back(tr.facet_side.at(op.foot));
                desc = "wedge foot=" + op.foot + " top=" + op.top + " C=" + to_string(cw);
            } else {
                std::vector<std::pair<std::string, Rational>> deltas;
                desc = "perturb";
                for (const auto& d : op.deltas) {
                    Rational v = d.symbolic ? Rational(d.value * eps) : d.value;
                    deltas.emplace_back(d.label, v);
                    desc += " " + d.label + "=" + to_string(v);
                }
                cur = perturb(cur, deltas);
            }
        } catch (const InputError& e) {
            script_error(op.line, e.what());
        }
        tr.steps.push_back(TraceStep{i + 1, desc, cur});
    }
    return tr;
}

namespace {

std::string wedge_phase(const std::string& foot_fmt, const std::vector<std::string>& tops,
                        const std::vector<std::vector<std::string>>& perturbs, std::size_t& foot_idx,
                        const std::vector<std::string>& feet) {
    std::string s;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        const std::string& foot = feet.empty() ? foot_fmt : feet[foot_idx++];
        s += "wedge foot=" + foot + " top=" + tops[i] + "\n";
        s += "perturb";
        for (const auto& t : perturbs[i]) s += " " + t;
        s += "\n";
    }
    return s;
}

std::vector<std::string> seq_labels(int lo, int hi) {
    std::vector<std::string> v;
    for (int i = lo; i <= hi; ++i) v.push_back("h" + std::to_string(i));
    return v;
}

}  // namespace

std::string santos_weibel_script() {
    std::size_t unused = 0;
    std::string s = "# eight wedges at the x apex, then seven at the y apex\n";
    s += wedge_phase("h12", seq_labels(13, 20),
                     {{"h32=eps"},
                      {"h31=eps"},
                      {"h21=eps", "h30=eps"},
                      {"h21=eps", "h22=eps"},
                      {"h22=eps", "h23=eps"},
                      {"h23=eps", "h24=eps"},
                      {"h24=eps", "h25=eps"},
                      {"h25=eps", "h26=eps"}},
                     unused, {});
    std::vector<std::string> nine;
    for (int i = 12; i <= 20; ++i) nine.push_back("h" + std::to_string(i) + "=eps");
    s += wedge_phase("h33", seq_labels(34, 39),
                     {nine,
                      {"h11=eps"},
                      {"h1=eps"},
                      {"h1=eps", "h2=eps"},
                      {"h2=eps", "h3=eps"},
                      {"h3=eps", "h4=eps"}},
                     unused, {});
    s += "# the last pair skips h5 on purpose\n";
    s += "wedge foot=h33 top=h40\nperturb h4=eps h6=eps\n";
    return s;
}

std::string singly_perturbed_script() {
    std::size_t fi = 0;
    std::string s = "# one facet perturbed per wedge, fifteen distinct feet\n";
    std::vector<std::string> x_feet = seq_labels(1, 8), y_feet = seq_labels(21, 27);
    s += wedge_phase("", seq_labels(13, 20),
                     {{"h28=eps"},
                      {"h21=eps"},
                      {"h22=eps"},
                      {"h23=eps"},
                      {"h24=eps"},
                      {"h25=eps"},
                      {"h26=eps"},
                      {"h27=eps"}},
                     fi, x_feet);
    fi = 0;
    s += wedge_phase("", seq_labels(34, 40),
                     {{"h1=eps"},
                      {"h2=eps"},
                      {"h3=eps"},
                      {"h4=eps"},
                      {"h5=eps"},
                      {"h6=eps"},
                      {"h7=eps"}},
                     fi, y_feet);
    return s;
}

std::string pinched_script() {
    std::size_t fi = 0;
    std::string s = "# each step perturbs one facet up and one down\n";
    std::vector<std::string> x_feet = seq_labels(1, 8), y_feet = seq_labels(21, 27);
    s += wedge_phase("", seq_labels(13, 20),
                     {{"h33=eps", "h32=-eps"},
                      {"h21=eps", "h33=-eps"},
                      {"h22=eps", "h21=-eps"},
                      {"h23=eps", "h22=-eps"},
                      {"h24=eps", "h23=-eps"},
                      {"h25=eps", "h24=-eps"},
                      {"h26=eps", "h25=-eps"},
                      {"h27=eps", "h26=-eps"}},
                     fi, x_feet);
    fi = 0;
    s += wedge_phase("", seq_labels(34, 40),
                     {{"h1=eps", "h2=-eps"},
                      {"h2=eps", "h3=-eps"},
                      {"h3=eps", "h4=-eps"},
                      {"h4=eps", "h5=-eps"},
                      {"h5=eps", "h6=-eps"},
                      {"h6=eps", "h7=-eps"},
                      {"h7=eps", "h8=-eps"}},
                     fi, y_feet);
    return s;
}

namespace {

ConstructionTrace build_from_text(const HPolytope& p5, const std::string& text, const Rational& C,
                                  const Rational& eps) {
    SpindleInfo info = analyze_spindle(p5);
    std::istringstream in(text);
    std::vector<ScriptOp> ops = parse_script(in);
    return run_script(p5, ops, C, eps, &info);
}

}  // namespace

ConstructionTrace build_santos_weibel(const HPolytope& p5, const Rational& C, const Rational& eps) {
    return build_from_text(p5, santos_weibel_script(), C, eps);
}

ConstructionTrace build_singly_perturbed(const HPolytope& p5, const Rational& C, const Rational& eps) {
    return build_from_text(p5, singly_perturbed_script(), C, eps);
}

ConstructionTrace build_pinched(const HPolytope& p5, const Rational& C, const Rational& eps) {
    return build_from_text(p5, pinched_script(), C, eps);
}

EpsilonRankReport epsilon_rank_report(const ConstructionTrace& trace) {
    bool sided = false;
    for (const auto& [label, s] : trace.facet_side)
        if (s == 'X' || s == 'Y') sided = true;
    if (!sided) throw Error("epsilon rank report needs apex side information for the base polytope");
    const HPolytope& fin = trace.steps.empty() ? trace.input : trace.steps.back().after;
    const std::size_t base_cols = trace.input.dim + 1;
    std::vector<std::size_t> x_cols, y_cols;
    for (std::size_t i = 0; i < trace.col_side.size(); ++i) {
        if (trace.col_side[i] == 'X') x_cols.push_back(base_cols + i);
        if (trace.col_side[i] == 'Y') y_cols.push_back(base_cols + i);
    }
    auto block_rank = [&](char row_side, const std::vector<std::size_t>& cols) {
        QMatrix m(0, cols.size());
        for (const auto& f : fin.facets) {
            auto it = trace.facet_side.find(f.label);
            if (it == trace.facet_side.end() || it->second != row_side) continue;
            std::vector<Rational> row(cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j) row[j] = f.normal[cols[j]];
            m.append_row(row);
        }
        return rank(m);
    };
    EpsilonRankReport rep;
    rep.rank_x = block_rank('X', y_cols);
    rep.rank_y = block_rank('Y', x_cols);
    rep.required_x = trace.required_rank_x;
    rep.required_y = trace.required_rank_y;
    rep.ok = rep.rank_x == rep.required_x && rep.rank_y == rep.required_y;
    return rep;
}

Expectations load_expectations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open expectations file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("expectations file " + path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("checkpoints") || !j["checkpoints"].is_array())
        throw InputError("expectations file needs a checkpoints array");
    Expectations exp;
    for (const auto& jc : j["checkpoints"]) {
        Checkpoint c;
        if (!jc.contains("after_op") || !jc["after_op"].is_number_unsigned())
            throw InputError("checkpoint needs an unsigned after_op");
        c.after_op = jc["after_op"].get<std::size_t>();
        if (!jc.contains("polytope") || !jc["polytope"].is_string())
            throw InputError("checkpoint needs a polytope name");
        c.polytope = jc["polytope"].get<std::string>();
        if (!jc.contains("dim") || !jc["dim"].is_number_unsigned())
            throw InputError("checkpoint needs an unsigned dim");
        c.dim = jc["dim"].get<std::size_t>();
        if (!jc.contains("faces") || !jc["faces"].is_array())
            throw InputError("checkpoint needs a faces array");
        for (const auto& jf : jc["faces"]) {
            ExpectedFace f;
            if (!jf.contains("face") || !jf["face"].is_string()) throw InputError("face entry needs a name");
            f.face = jf["face"].get<std::string>();
            if (!jf.contains("support") || !jf["support"].is_array())
                throw InputError("face entry needs a support array");
            for (const auto& js : jf["support"]) {
                if (!js.is_string()) throw InputError("support entries must be labels");
                f.support.push_back(js.get<std::string>());
            }
            for (const char* key : {"k", "m", "excess"})
                if (!jf.contains(key) || !jf[key].is_number_unsigned())
                    throw InputError(std::string("face entry needs unsigned ") + key);
            f.k = jf["k"].get<std::size_t>();
            f.m = jf["m"].get<std::size_t>();
            f.excess = jf["excess"].get<std::size_t>();
            c.faces.push_back(std::move(f));
        }
        exp.checkpoints.push_back(std::move(c));
    }
    return exp;
}

std::vector<StepAnalysis> analyze_trace(const ConstructionTrace& trace, const Expectations& exp,
                                        std::uint64_t budget, unsigned workers) {
    std::vector<StepAnalysis> out;
    for (const Checkpoint& cp : exp.checkpoints) {
        const HPolytope* poly = nullptr;
        if (cp.after_op == 0) {
            poly = &trace.input;
        } else {
            for (const auto& st : trace.steps)
                if (st.op_index == cp.after_op) poly = &st.after;
        }
        if (!poly) throw InputError("expectations name op " + std::to_string(cp.after_op) +
                                    " but the trace has no such step");
        const HPolytope& p = *poly;
        if (p.dim != cp.dim)
            throw VerifyError("checkpoint " + cp.polytope + ": dim " + std::to_string(p.dim) +
                              " differs from expected " + std::to_string(cp.dim));
        StepAnalysis sa;
        sa.after_op = cp.after_op;
        sa.polytope = cp.polytope;
        sa.dim = p.dim;
        sa.nfacets = p.facets.size();

        std::vector<VertexRecord> verts;
        if (subset_bound(p.facets.size(), p.dim) <= budget) {
            EnumOptions eo;
            eo.max_candidates = budget;
            eo.workers = workers;
            try {
                verts = enumerate_vertices(p, eo);
                sa.enumerated = true;
                sa.vertex_count = verts.size();
                sa.walk_records = find_nonsimplicities(p, verts);
            } catch (const BudgetError&) {
                sa.enumerated = false;
            }
        }

        for (const ExpectedFace& ef : cp.faces) {
            std::vector<std::size_t> support;
            for (const auto& l : ef.support) support.push_back(p.index(l));
            std::sort(support.begin(), support.end());
            FaceRecord rec;
            try {
                rec = make_face_record(p, support);
            } catch (const VerifyError& e) {
                throw VerifyError(cp.polytope + " face " + ef.face + ": " + e.what());
            }
            if (rec.support != support)
                throw VerifyError(cp.polytope + " face " + ef.face + ": listed support is not closed");
            if (rec.k != ef.k || rec.m != ef.m || rec.excess != ef.excess)
                throw VerifyError(cp.polytope + " face " + ef.face + ": computed (k=" + std::to_string(rec.k) +
                                  ", m=" + std::to_string(rec.m) + ", excess=" + std::to_string(rec.excess) +
                                  ") differs from expected (" + std::to_string(ef.k) + ", " +
                                  std::to_string(ef.m) + ", " + std::to_string(ef.excess) + ")");
            AnalyzedFace af;
            af.face = ef.face;
            af.rec = std::move(rec);
            if (sa.enumerated) {
                // Independent route: the support must be the exact common
                // tight set of its vertices, spanning a k-dimensional face.
                std::uint64_t smask = 0;
                for (std::size_t g : support) smask |= std::uint64_t{1} << g;
                QMatrix span(0, p.dim + 1);
                std::uint64_t common = ~std::uint64_t{0};
                std::size_t count = 0;
                for (const auto& v : verts) {
                    if ((v.inc_mask & smask) != smask) continue;
                    ++count;
                    common &= v.inc_mask;
                    span.append_row(v.coords);
                }
                if (count == 0)
                    throw VerifyError(cp.polytope + " face " + ef.face + ": no vertex covers the support");
                if (common != smask)
                    throw VerifyError(cp.polytope + " face " + ef.face +
                                      ": enumerated tight set differs from the listed support");
                if (rank(span) != ef.k + 1)
                    throw VerifyError(cp.polytope + " face " + ef.face +
                                      ": enumerated face dimension differs from k");
                af.enumeration_checked = true;
            }
            sa.faces.push_back(std::move(af));
        }
        out.push_back(std::move(sa));
    }
    return out;
}

}  // namespace qpoly
