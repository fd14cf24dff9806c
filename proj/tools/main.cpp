#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qpoly/construct.hpp"
#include "qpoly/enumerate.hpp"
#include "qpoly/errors.hpp"
#include "qpoly/faces.hpp"
#include "qpoly/hrep.hpp"
#include "qpoly/paths.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qpoly;

namespace {

std::string label_set(const HPolytope& p, const std::vector<std::uint32_t>& inc) {
    std::string s = "{";
    for (std::size_t i = 0; i < inc.size(); ++i) {
        if (i) s += ' ';
        s += p.facets[inc[i]].label;
    }
    return s + "}";
}

std::vector<std::string> split_labels(const std::string& arg) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : arg) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    if (out.empty()) throw InputError("empty facet label set");
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void print_warnings(const ValidationReport& rep) {
    for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
}

int cmd_verify(const std::string& file, std::uint64_t budget) {
    ValidationReport rep;
    HPolytope p = load_polytope(file, &rep);
    std::cout << "polytope: dim " << p.dim << ", " << p.facets.size() << " facets\n";
    print_warnings(rep);
    EnumOptions eo;
    eo.max_candidates = budget;
    std::vector<VertexRecord> verts = enumerate_vertices(p, eo);
    std::cout << "vertices: " << verts.size() << "\n";
    bool pass = true;

    std::size_t x = 0, y = 0;
    try {
        std::tie(x, y) = spindle_check(p, verts);
        std::cout << "spindle: PASS x=" << label_set(p, verts[x].inc) << " y=" << label_set(p, verts[y].inc)
                  << "\n";
    } catch (const VerifyError& e) {
        std::cout << "spindle: FAIL (" << e.what() << ")\n";
        pass = false;
    }

    if (pass) {
        if (all_but_simple_check(p, verts, x, y)) {
            std::cout << "all-but-simple: PASS\n";
        } else {
            std::cout << "all-but-simple: FAIL\n";
            pass = false;
        }

        auto adj = adjacency_graph(verts);
        std::size_t delta = distance(adj, x, y);
        std::cout << "distance(x,y): " << delta << "\n";
        std::cout << "hirsch gap: " << hirsch_gap(p.facets.size(), p.dim, delta) << " (bound "
                  << p.facets.size() - p.dim << ")\n";
        auto path = nonrevisiting_path(p, verts, adj, x, y);
        if (path) {
            std::cout << "nonrevisiting path x to y: FOUND (length " << path->size() - 1 << ")\n";
            pass = false;
        } else {
            std::cout << "nonrevisiting path x to y: none (PASS)\n";
        }
    }

    std::cout << "nonsimplicities:\n";
    for (const FaceRecord& rec : find_nonsimplicities(p, verts))
        std::cout << "  {" << support_to_string(rec) << "} k=" << rec.k << " m=" << rec.m
                  << " excess=" << rec.excess << "\n";

    std::cout << "verification: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_vertices(const std::string& file, std::uint64_t budget) {
    HPolytope p = load_polytope(file);
    EnumOptions eo;
    eo.max_candidates = budget;
    std::vector<VertexRecord> verts = enumerate_vertices(p, eo);
    std::cout << verts.size() << "\n";
    for (const auto& v : verts) std::cout << to_string(v.coords) << " inc " << label_set(p, v.inc) << "\n";
    return 0;
}

int cmd_graph(const std::string& file, std::uint64_t budget) {
    HPolytope p = load_polytope(file);
    EnumOptions eo;
    eo.max_candidates = budget;
    std::vector<VertexRecord> verts = enumerate_vertices(p, eo);
    auto adj = adjacency_graph(verts);
    std::size_t edges = 0;
    for (const auto& nb : adj) edges += nb.size();
    std::cout << verts.size() << " vertices, " << edges / 2 << " edges\n";
    for (std::size_t i = 0; i < adj.size(); ++i) {
        std::cout << i << ":";
        for (auto w : adj[i]) std::cout << ' ' << w;
        std::cout << "\n";
    }
    return 0;
}

int cmd_distance(const std::string& file, const std::string& a, const std::string& b, std::uint64_t budget) {
    HPolytope p = load_polytope(file);
    EnumOptions eo;
    eo.max_candidates = budget;
    std::vector<VertexRecord> verts = enumerate_vertices(p, eo);
    std::size_t va = find_vertex_by_incidence(p, verts, split_labels(a));
    std::size_t vb = find_vertex_by_incidence(p, verts, split_labels(b));
    std::cout << "a: " << to_string(verts[va].coords) << "\n";
    std::cout << "b: " << to_string(verts[vb].coords) << "\n";
    auto adj = adjacency_graph(verts);
    std::size_t delta = distance(adj, va, vb);
    std::cout << "distance: " << delta << "\n";
    std::cout << "hirsch gap: " << hirsch_gap(p.facets.size(), p.dim, delta) << " (bound "
              << p.facets.size() - p.dim << ")\n";
    return 0;
}

int cmd_nonrevisit(const std::string& file, std::uint64_t budget) {
    HPolytope p = load_polytope(file);
    EnumOptions eo;
    eo.max_candidates = budget;
    std::vector<VertexRecord> verts = enumerate_vertices(p, eo);
    auto [x, y] = spindle_check(p, verts);
    auto adj = adjacency_graph(verts);
    auto path = nonrevisiting_path(p, verts, adj, x, y);
    if (!path) {
        std::cout << "nonrevisiting path: none\n";
        return 0;
    }
    std::cout << "nonrevisiting path: length " << path->size() - 1 << "\n";
    for (std::size_t i = 0; i < path->size(); ++i) {
        const auto& v = verts[(*path)[i]];
        std::cout << to_string(v.coords) << " inc " << label_set(p, v.inc) << "\n";
        if (i + 1 < path->size()) {
            const auto& w = verts[(*path)[i + 1]];
            std::uint64_t dep = v.inc_mask & ~w.inc_mask, arr = w.inc_mask & ~v.inc_mask;
            std::cout << "  depart {";
            bool first = true;
            for (std::size_t g = 0; g < p.facets.size(); ++g)
                if ((dep >> g) & 1) {
                    if (!first) std::cout << ' ';
                    std::cout << p.facets[g].label;
                    first = false;
                }
            std::cout << "} arrive {";
            first = true;
            for (std::size_t g = 0; g < p.facets.size(); ++g)
                if ((arr >> g) & 1) {
                    if (!first) std::cout << ' ';
                    std::cout << p.facets[g].label;
                    first = false;
                }
            std::cout << "}\n";
        }
    }
    return 0;
}

json analysis_to_json(const std::vector<StepAnalysis>& analysis) {
    json out = json::array();
    for (const auto& sa : analysis) {
        json jc;
        jc["after_op"] = sa.after_op;
        jc["polytope"] = sa.polytope;
        jc["dim"] = sa.dim;
        jc["nfacets"] = sa.nfacets;
        jc["mode"] = sa.enumerated ? "enumeration" : "targeted";
        if (sa.enumerated) jc["vertices"] = sa.vertex_count;
        json rows = json::array();
        for (const auto& af : sa.faces) {
            json r;
            r["face"] = af.face;
            r["k"] = af.rec.k;
            r["m"] = af.rec.m;
            r["excess"] = af.rec.excess;
            r["support"] = af.rec.labels;
            r["enumeration_checked"] = af.enumeration_checked;
            rows.push_back(std::move(r));
        }
        jc["rows"] = std::move(rows);
        json extras = json::array();
        if (sa.enumerated) {
            for (const auto& rec : sa.walk_records) {
                bool listed = false;
                for (const auto& af : sa.faces)
                    if (af.rec.support == rec.support) listed = true;
                if (listed) continue;
                json r;
                r["face"] = "{" + support_to_string(rec) + "}";
                r["k"] = rec.k;
                r["m"] = rec.m;
                r["excess"] = rec.excess;
                r["support"] = rec.labels;
                extras.push_back(std::move(r));
            }
        }
        jc["extra_rows"] = std::move(extras);
        out.push_back(std::move(jc));
    }
    return out;
}

void write_tables_csv(std::ostream& os, const json& checkpoints) {
    os << "polytope,dim,face,k,m,excess\n";
    for (const auto& jc : checkpoints) {
        auto emit = [&](const json& r) {
            os << csv_field(jc["polytope"].get<std::string>()) << ',' << jc["dim"].get<std::size_t>() << ','
               << csv_field(r["face"].get<std::string>()) << ',' << r["k"].get<std::size_t>() << ','
               << r["m"].get<std::size_t>() << ',' << r["excess"].get<std::size_t>() << "\n";
        };
        for (const auto& r : jc["rows"]) emit(r);
        for (const auto& r : jc["extra_rows"]) emit(r);
    }
}

int cmd_build(const std::string& file, const std::string& script_path, const std::string& c_str,
              const std::string& eps_str, std::uint64_t budget, const std::string& out_dir,
              std::string expect_path) {
    ValidationReport rep;
    HPolytope p = load_polytope(file, &rep);
    print_warnings(rep);
    Rational C = parse_rational(c_str), eps = parse_rational(eps_str);
    if (C <= 0) throw InputError("C must be positive");
    std::vector<ScriptOp> ops = load_script(script_path);

    EnumOptions eo;
    eo.max_candidates = budget;
    SpindleInfo info;
    const SpindleInfo* infop = nullptr;
    try {
        info = analyze_spindle(p, eo);
        infop = &info;
    } catch (const VerifyError&) {
        // not a spindle: build proceeds, epsilon blocks are unavailable
    }
    ConstructionTrace trace = run_script(p, ops, C, eps, infop);
    for (const auto& st : trace.steps)
        std::cout << "op " << st.op_index << ": " << st.description << " -> dim " << st.after.dim << ", "
                  << st.after.facets.size() << " facets\n";

    if (expect_path.empty()) {
        std::string guess = script_path + ".expect";
        if (fs::exists(guess)) expect_path = guess;
    }
    Expectations exp;
    if (!expect_path.empty()) {
        exp = load_expectations(expect_path);
        std::cout << "expectations: " << expect_path << " (" << exp.checkpoints.size() << " checkpoints)\n";
    } else {
        // no sidecar: analyze after each perturb group, reporting scan output
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            bool group_end = i + 1 == trace.steps.size() ||
                             ops[i + 1].kind == ScriptOp::Kind::Wedge;
            if (!group_end) continue;
            Checkpoint cp;
            cp.after_op = trace.steps[i].op_index;
            cp.polytope = "step" + std::to_string(trace.steps[i].op_index);
            cp.dim = trace.steps[i].after.dim;
            exp.checkpoints.push_back(std::move(cp));
        }
    }

    std::vector<StepAnalysis> analysis = analyze_trace(trace, exp, budget);
    for (const auto& sa : analysis) {
        std::cout << sa.polytope << " (dim " << sa.dim << ", " << sa.nfacets << " facets): "
                  << (sa.enumerated ? "enumeration" : "targeted (subset bound exceeds budget)");
        if (sa.enumerated) std::cout << ", " << sa.vertex_count << " vertices";
        std::cout << "\n";
        for (const auto& af : sa.faces)
            std::cout << "  " << af.face << " k=" << af.rec.k << " m=" << af.rec.m
                      << " excess=" << af.rec.excess << (af.enumeration_checked ? " [enum-checked]" : "")
                      << "\n";
        if (sa.enumerated)
            for (const auto& rec : sa.walk_records) {
                bool listed = false;
                for (const auto& af : sa.faces)
                    if (af.rec.support == rec.support) listed = true;
                if (!listed)
                    std::cout << "  scan extra {" << support_to_string(rec) << "} k=" << rec.k
                              << " m=" << rec.m << " excess=" << rec.excess << "\n";
            }
    }

    json jeps;
    try {
        EpsilonRankReport er = epsilon_rank_report(trace);
        std::cout << "epsilon ranks: X " << er.rank_x << "/" << er.required_x << ", Y " << er.rank_y << "/"
                  << er.required_y << (er.ok ? " (ok)" : " (MISMATCH)") << "\n";
        jeps = {{"rank_x", er.rank_x},
                {"required_x", er.required_x},
                {"rank_y", er.rank_y},
                {"required_y", er.required_y},
                {"ok", er.ok}};
    } catch (const Error&) {
        std::cout << "epsilon ranks: unavailable (input is not a spindle)\n";
        jeps = nullptr;
    }

    fs::create_directories(out_dir);
    {
        std::ofstream os(out_dir + "/step_00.json");
        serialize_polytope(trace.input, os);
    }
    for (const auto& st : trace.steps) {
        char name[32];
        std::snprintf(name, sizeof name, "step_%02zu.json", st.op_index);
        std::ofstream os(out_dir + "/" + name);
        serialize_polytope(st.after, os);
    }
    json jtrace;
    jtrace["script"] = script_path;
    jtrace["C"] = to_string(C);
    jtrace["eps"] = to_string(eps);
    jtrace["input"] = {{"dim", trace.input.dim}, {"nfacets", trace.input.facets.size()}};
    json jops = json::array();
    for (const auto& st : trace.steps)
        jops.push_back({{"index", st.op_index},
                        {"description", st.description},
                        {"dim", st.after.dim},
                        {"nfacets", st.after.facets.size()}});
    jtrace["ops"] = std::move(jops);
    jtrace["epsilon"] = std::move(jeps);
    jtrace["checkpoints"] = analysis_to_json(analysis);
    {
        std::ofstream os(out_dir + "/trace.json");
        os << jtrace.dump(2) << "\n";
    }
    {
        std::ofstream os(out_dir + "/tables.csv");
        write_tables_csv(os, jtrace["checkpoints"]);
    }
    std::cout << "trace written to " << out_dir << "\n";
    return 0;
}

int cmd_tables(const std::string& dir) {
    std::ifstream in(dir + "/trace.json");
    if (!in) throw InputError("no trace.json under " + dir);
    json jtrace;
    try {
        in >> jtrace;
    } catch (const json::exception& e) {
        throw InputError(std::string("trace.json: ") + e.what());
    }
    write_tables_csv(std::cout, jtrace.at("checkpoints"));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact wedge and perturbation toolkit for H-polytopes"};
    app.require_subcommand(1);
    std::uint64_t budget = 10'000'000;
    app.add_option("--budget", budget, "candidate-subset budget for enumeration")->capture_default_str();

    std::string file, script_path, out_dir = "trace_out", expect_path, arg_a, arg_b, dir;
    std::string c_str = "10000000", eps_str = "1";

    auto* verify = app.add_subcommand("verify", "spindle battery on one polytope file");
    verify->add_option("file", file)->required();

    auto* build = app.add_subcommand("build", "replay a construction script");
    build->add_option("file", file)->required();
    build->add_option("--script", script_path)->required();
    build->add_option("--C", c_str);
    build->add_option("--eps", eps_str);
    build->add_option("--out", out_dir);
    build->add_option("--expect", expect_path);

    auto* tables = app.add_subcommand("tables", "emit the nonsimplicity table of a trace as CSV");
    tables->add_option("dir", dir)->required();

    auto* vertices = app.add_subcommand("vertices", "enumerate vertices");
    vertices->add_option("file", file)->required();

    auto* graph = app.add_subcommand("graph", "vertex adjacency");
    graph->add_option("file", file)->required();

    auto* dist = app.add_subcommand("distance", "graph distance between two vertices given by facet sets");
    dist->add_option("file", file)->required();
    dist->add_option("a", arg_a)->required();
    dist->add_option("b", arg_b)->required();

    auto* nonrev = app.add_subcommand("nonrevisit", "search a nonrevisiting path between the apexes");
    nonrev->add_option("file", file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(file, budget);
        if (build->parsed()) return cmd_build(file, script_path, c_str, eps_str, budget, out_dir, expect_path);
        if (tables->parsed()) return cmd_tables(dir);
        if (vertices->parsed()) return cmd_vertices(file, budget);
        if (graph->parsed()) return cmd_graph(file, budget);
        if (dist->parsed()) return cmd_distance(file, arg_a, arg_b, budget);
        if (nonrev->parsed()) return cmd_nonrevisit(file, budget);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const VerifyError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
