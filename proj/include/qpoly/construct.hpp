#ifndef QPOLY_CONSTRUCT_HPP
#define QPOLY_CONSTRUCT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpoly/enumerate.hpp"
#include "qpoly/faces.hpp"
#include "qpoly/hrep.hpp"
#include "qpoly/rational.hpp"

namespace qpoly {

// One dimension up: every facet g != foot becomes [g | 0]; the foot becomes
// the base [foot | C] keeping its label and position; the top [foot | -C] is
// appended under top_label.
HPolytope wedge(const HPolytope& p, const std::string& foot, const Rational& C, const std::string& top_label);

// Adds each delta to the last normal entry of the named facet.
HPolytope perturb(const HPolytope& p, const std::vector<std::pair<std::string, Rational>>& deltas);

// Lifts of a point of p into the unperturbed wedge over foot: a single
// vertical image [v | 0] when v lies on the foot, else the base/top pair
// with last coordinate -(foot.v)/C and +(foot.v)/C.
std::vector<std::vector<Rational>> natural_images(const HPolytope& p, const std::string& foot,
                                                  const Rational& C, const std::vector<Rational>& point);

struct BadFoot {
    std::string foot;                     // facet missing the special vertex
    std::pair<std::size_t, std::size_t> edge;  // special vertex, witness endpoint
};

// Feet that cannot lengthen the path when the next perturbation acts on G:
// facets F not at the special vertex reached by a nonsimple edge inside G.
std::vector<BadFoot> detect_bad_feet(const HPolytope& p, const std::vector<VertexRecord>& verts,
                                     const std::vector<std::vector<std::uint32_t>>& adj,
                                     std::size_t special, const std::string& g_label);

struct ScriptOp {
    enum class Kind { Wedge, Perturb };
    struct Delta {
        std::string label;
        bool symbolic = false;  // value is a multiple of the run's eps
        Rational value;
    };
    Kind kind = Kind::Wedge;
    std::string foot, top;
    std::optional<Rational> c;  // wedge only; empty = run default
    std::vector<Delta> deltas;  // perturb only
    std::size_t line = 0;
};

// Line-oriented script: `wedge foot=<label> top=<label> [C=<rational>]`,
// `perturb <label>=<value> ...` where a value is a rational or eps/-eps,
// `#` comments. Errors carry line numbers.
std::vector<ScriptOp> parse_script(std::istream& in);
std::vector<ScriptOp> load_script(const std::string& path);

struct SpindleInfo {
    std::size_t x = 0, y = 0;                  // vertex indices in the base polytope
    std::vector<std::string> x_facets, y_facets;
    std::size_t excess_x = 0, excess_y = 0;    // base nonsimplicity excesses
};

// Enumerates the base polytope and derives the apex pair and its records.
SpindleInfo analyze_spindle(const HPolytope& p, const EnumOptions& opt = {});

struct TraceStep {
    std::size_t op_index = 0;  // 1-based position in the script
    std::string description;
    HPolytope after;
};

struct ConstructionTrace {
    HPolytope input;
    Rational c, eps;
    std::vector<TraceStep> steps;
    // Side bookkeeping for the epsilon blocks; tops inherit the foot's side.
    std::map<std::string, char> facet_side;  // 'X', 'Y', or '?'
    std::vector<char> col_side;              // one entry per wedge coordinate
    std::size_t required_rank_x = 0, required_rank_y = 0;
};

ConstructionTrace run_script(const HPolytope& p, const std::vector<ScriptOp>& ops, const Rational& C,
                             const Rational& eps, const SpindleInfo* base = nullptr);

// Canonical scripts for the three constructions (also bundled under scripts/).
std::string santos_weibel_script();
std::string singly_perturbed_script();
std::string pinched_script();

ConstructionTrace build_santos_weibel(const HPolytope& p5, const Rational& C, const Rational& eps);
ConstructionTrace build_singly_perturbed(const HPolytope& p5, const Rational& C, const Rational& eps);
ConstructionTrace build_pinched(const HPolytope& p5, const Rational& C, const Rational& eps);

struct EpsilonRankReport {
    std::size_t rank_x = 0, required_x = 0;
    std::size_t rank_y = 0, required_y = 0;
    bool ok = false;
};

// Ranks of the perturbation blocks of the final matrix: X-side rows against
// Y-wedge columns and Y-side rows against X-wedge columns.
EpsilonRankReport epsilon_rank_report(const ConstructionTrace& trace);

struct ExpectedFace {
    std::string face;
    std::vector<std::string> support;
    std::size_t k = 0, m = 0, excess = 0;
};

struct Checkpoint {
    std::size_t after_op = 0;
    std::string polytope;
    std::size_t dim = 0;
    std::vector<ExpectedFace> faces;
};

struct Expectations {
    std::vector<Checkpoint> checkpoints;
};

Expectations load_expectations(const std::string& path);

struct AnalyzedFace {
    std::string face;
    FaceRecord rec;
    bool enumeration_checked = false;  // tight vertex set confirmed the record
};

struct StepAnalysis {
    std::size_t after_op = 0;
    std::string polytope;
    std::size_t dim = 0, nfacets = 0;
    bool enumerated = false;
    std::size_t vertex_count = 0;
    std::vector<AnalyzedFace> faces;       // checkpoint rows, sidecar order
    std::vector<FaceRecord> walk_records;  // full scan output when enumerated
};

// Verifies every checkpoint of the trace: targeted record construction always,
// plus full enumeration (vertex scan and tight-set cross-check) when the
// subset bound fits the budget. Throws VerifyError on any mismatch.
std::vector<StepAnalysis> analyze_trace(const ConstructionTrace& trace, const Expectations& exp,
                                        std::uint64_t budget, unsigned workers = 0);

}  // namespace qpoly

#endif
