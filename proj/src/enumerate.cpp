#include "qpoly/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>

#include "qpoly/errors.hpp"

namespace qpoly {

namespace {

using ZRow = std::vector<Integer>;

// Facet normals with denominators cleared, same order and orientation.
std::vector<ZRow> integer_rows(const HPolytope& p) {
    std::vector<ZRow> out;
    out.reserve(p.facets.size());
    for (const auto& f : p.facets) {
        Integer l = 1;
        for (const auto& q : f.normal) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        ZRow r(f.normal.size());
        for (std::size_t j = 0; j < f.normal.size(); ++j) {
            Rational s = f.normal[j] * l;
            r[j] = s.get_num();
        }
        out.push_back(std::move(r));
    }
    return out;
}

void strip_content(ZRow& r) {
    Integer g = 0;
    for (const auto& z : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g <= 1) return;
    for (auto& z : r) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
}

// Row basis kept fully reduced: every row is zero at every other row's pivot
// column. That makes one ascending pass enough to reduce a new row, and the
// nullspace at full rank falls out per row.
class Reducer {
   public:
    explicit Reducer(std::size_t width) : width_(width) {}

    std::size_t size() const { return rows_.size(); }

    // Inserts row r if independent of the basis; returns false (no change)
    // when r is dependent. push/pop must nest.
    bool push(ZRow r) {
        reduce(r);
        std::size_t p = pivot_of(r);
        if (p == width_) return false;
        strip_content(r);
        Frame fr;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i][p] == 0) continue;
            fr.saved.emplace_back(i, rows_[i]);
            ZRow& b = rows_[i];
            Integer bp = b[p];
            for (std::size_t j = 0; j < width_; ++j) b[j] = b[j] * r[p] - r[j] * bp;
            strip_content(b);
        }
        std::size_t at = 0;
        while (at < rows_.size() && pivots_[at] < p) ++at;
        fr.inserted_at = at;
        rows_.insert(rows_.begin() + at, std::move(r));
        pivots_.insert(pivots_.begin() + at, p);
        undo_.push_back(std::move(fr));
        return true;
    }

    void pop() {
        Frame fr = std::move(undo_.back());
        undo_.pop_back();
        rows_.erase(rows_.begin() + fr.inserted_at);
        pivots_.erase(pivots_.begin() + fr.inserted_at);
        for (auto& [i, row] : fr.saved) rows_[i] = std::move(row);
    }

    // Nullspace generator when the basis has width-1 rows (one free column).
    // Scaled to integers; not canonicalized.
    ZRow kernel() const {
        std::vector<char> is_pivot(width_, 0);
        for (std::size_t p : pivots_) is_pivot[p] = 1;
        std::size_t free_col = width_;
        for (std::size_t j = 0; j < width_; ++j)
            if (!is_pivot[j]) free_col = j;
        ZRow w(width_, 0);
        Integer l = 1;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rows_[i][pivots_[i]].get_mpz_t());
        w[free_col] = l;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Integer f;
            mpz_divexact(f.get_mpz_t(), l.get_mpz_t(), rows_[i][pivots_[i]].get_mpz_t());
            w[pivots_[i]] = -rows_[i][free_col] * f;
        }
        return w;
    }

   private:
    struct Frame {
        std::size_t inserted_at = 0;
        std::vector<std::pair<std::size_t, ZRow>> saved;
    };

    void reduce(ZRow& r) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::size_t p = pivots_[i];
            if (r[p] == 0) continue;
            const ZRow& b = rows_[i];
            Integer rp = r[p];
            for (std::size_t j = 0; j < width_; ++j) r[j] = r[j] * b[p] - b[j] * rp;
        }
        strip_content(r);
    }

    std::size_t pivot_of(const ZRow& r) const {
        for (std::size_t j = 0; j < width_; ++j)
            if (r[j] != 0) return j;
        return width_;
    }

    std::size_t width_;
    std::vector<ZRow> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Frame> undo_;
};

struct Shared {
    const std::vector<ZRow>* rows = nullptr;
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint64_t budget = 0;
    std::atomic<std::uint64_t> candidates{0};
    std::atomic<bool> over_budget{false};
};

// Canonical homogeneous vertex vector: integer, content 1, leading entry > 0.
// Returns empty when the intersection point is infeasible or at infinity.
ZRow leaf_vertex(const Shared& sh, const Reducer& red, const std::vector<std::size_t>& subset) {
    ZRow w = red.kernel();
    if (w[0] == 0) return {};
    strip_content(w);
    if (w[0] < 0)
        for (auto& z : w) z = -z;
    std::size_t si = 0;
    Integer dot;
    for (std::size_t g = 0; g < sh.n; ++g) {
        if (si < subset.size() && subset[si] == g) {
            ++si;  // tight by construction
            continue;
        }
        const ZRow& row = (*sh.rows)[g];
        dot = 0;
        for (std::size_t j = 0; j <= sh.d; ++j) dot += row[j] * w[j];
        if (dot < 0) return {};
    }
    return w;
}

struct Walker {
    Shared* sh;
    Reducer red;
    std::vector<std::size_t> subset;
    std::vector<ZRow> found;

    explicit Walker(Shared* s) : sh(s), red(s->d + 1) {}

    bool charge_candidate() {
        std::uint64_t c = sh->candidates.fetch_add(1, std::memory_order_relaxed) + 1;
        if (c > sh->budget) {
            sh->over_budget.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }

    // Extends the current independent prefix from row index `start`.
    void scan(std::size_t start) {
        if (sh->over_budget.load(std::memory_order_relaxed)) return;
        std::size_t depth = subset.size();
        std::size_t need = sh->d - depth;
        for (std::size_t i = start; i + need <= sh->n; ++i) {
            if (need == 1) {
                if (!charge_candidate()) return;
            } else if (sh->over_budget.load(std::memory_order_relaxed)) {
                return;
            }
            if (!red.push((*sh->rows)[i])) continue;
            subset.push_back(i);
            if (need == 1) {
                ZRow w = leaf_vertex(*sh, red, subset);
                if (!w.empty()) found.push_back(std::move(w));
            } else {
                scan(i + 1);
            }
            subset.pop_back();
            red.pop();
        }
    }
};

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QPOLY_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace

std::uint64_t subset_bound(std::size_t nfacets, std::size_t dim) {
    if (dim > nfacets) return 0;
    const std::uint64_t cap = std::uint64_t{1} << 63;
    std::uint64_t c = 1;
    std::size_t k = std::min(dim, nfacets - dim);
    for (std::size_t i = 1; i <= k; ++i) {
        Integer t = Integer(static_cast<unsigned long>(c)) * static_cast<unsigned long>(nfacets - k + i);
        t /= static_cast<unsigned long>(i);
        if (t > cap) return cap;
        c = static_cast<std::uint64_t>(t.get_ui());
    }
    return c;
}

std::vector<VertexRecord> enumerate_vertices(const HPolytope& p, const EnumOptions& opt) {
    const std::size_t n = p.facets.size();
    const std::size_t d = p.dim;
    if (n > 64) throw InputError("enumeration supports at most 64 facets");
    if (n < d) return {};

    std::vector<ZRow> rows = integer_rows(p);
    Shared sh;
    sh.rows = &rows;
    sh.n = n;
    sh.d = d;
    sh.budget = opt.max_candidates;

    std::vector<std::vector<ZRow>> buckets;

    if (d <= 2) {
        Walker w(&sh);
        w.scan(0);
        buckets.push_back(std::move(w.found));
    } else {
        // Independent 2-prefixes become tasks; merging by task index keeps
        // the result identical for any worker count.
        struct Task {
            std::size_t a, b;
            std::vector<ZRow> found;
        };
        std::vector<Task> tasks;
        {
            Reducer red(d + 1);
            for (std::size_t a = 0; a + d <= n; ++a) {
                if (!red.push(rows[a])) continue;
                for (std::size_t b = a + 1; b + d - 1 <= n; ++b) {
                    if (!red.push(rows[b])) continue;
                    tasks.push_back(Task{a, b, {}});
                    red.pop();
                }
                red.pop();
            }
        }
        unsigned nw = std::min<std::size_t>(resolve_workers(opt.workers), std::max<std::size_t>(tasks.size(), 1));
        std::atomic<std::size_t> next{0};
        auto run = [&]() {
            Walker w(&sh);
            for (;;) {
                std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
                if (t >= tasks.size()) return;
                if (sh.over_budget.load(std::memory_order_relaxed)) return;
                w.found.clear();
                w.red.push(rows[tasks[t].a]);
                w.red.push(rows[tasks[t].b]);
                w.subset = {tasks[t].a, tasks[t].b};
                w.scan(tasks[t].b + 1);
                w.subset.clear();
                w.red.pop();
                w.red.pop();
                tasks[t].found = std::move(w.found);
            }
        };
        if (nw <= 1) {
            run();
        } else {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < nw; ++i) pool.emplace_back(run);
            for (auto& th : pool) th.join();
        }
        for (auto& t : tasks) buckets.push_back(std::move(t.found));
    }

    if (sh.over_budget.load())
        throw BudgetError("vertex enumeration exceeded the candidate budget of " +
                          std::to_string(opt.max_candidates) + " subsets");

    std::set<ZRow> unique;
    for (auto& b : buckets)
        for (auto& w : b) unique.insert(std::move(w));

    std::vector<VertexRecord> out;
    out.reserve(unique.size());
    for (const ZRow& w : unique) {
        VertexRecord v;
        v.coords.resize(d + 1);
        Rational w0(w[0]);
        v.coords[0] = 1;
        for (std::size_t j = 1; j <= d; ++j) {
            v.coords[j] = Rational(w[j]) / w0;
            v.coords[j].canonicalize();
        }
        Integer dot;
        for (std::size_t g = 0; g < n; ++g) {
            dot = 0;
            for (std::size_t j = 0; j <= d; ++j) dot += rows[g][j] * w[j];
            if (dot == 0) {
                v.inc_mask |= std::uint64_t{1} << g;
                v.inc.push_back(static_cast<std::uint32_t>(g));
            }
        }
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(),
              [](const VertexRecord& a, const VertexRecord& b) { return a.coords < b.coords; });
    return out;
}

std::vector<std::vector<std::uint32_t>> adjacency_graph(const std::vector<VertexRecord>& verts) {
    const std::size_t nv = verts.size();
    std::vector<std::vector<std::uint32_t>> adj(nv);
    for (std::size_t u = 0; u < nv; ++u) {
        for (std::size_t v = u + 1; v < nv; ++v) {
            std::uint64_t common = verts[u].inc_mask & verts[v].inc_mask;
            bool edge = true;
            for (std::size_t w = 0; w < nv && edge; ++w) {
                if (w == u || w == v) continue;
                if ((verts[w].inc_mask & common) == common) edge = false;
            }
            if (edge) {
                adj[u].push_back(static_cast<std::uint32_t>(v));
                adj[v].push_back(static_cast<std::uint32_t>(u));
            }
        }
    }
    return adj;
}

bool is_simple_vertex(const HPolytope& p, const VertexRecord& v) {
    return v.inc.size() == p.dim;
}

}  // namespace qpoly
