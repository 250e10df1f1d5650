#pragma once

// Graph states: the quadratic <-> simple-graph dictionary, local
// complementation, GF(2) rank machinery, canonical forms, isomorph-free
// generation of connected graphs, and LC-orbit classification.

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ihn/boolfun.hpp"
#include "ihn/util.hpp"

namespace ihn {

struct GraphState {
    int n = 1;
    std::array<std::uint16_t, 16> adj{};  // bit j of adj[i] = edge {i,j}

    bool edge(int i, int j) const { return (adj[static_cast<std::size_t>(i)] >> j) & 1; }
    void set_edge(int i, int j, bool on) {
        if (i == j) throw std::invalid_argument("graphs here have no loops");
        auto bi = static_cast<std::uint16_t>(1u << i), bj = static_cast<std::uint16_t>(1u << j);
        if (on) {
            adj[static_cast<std::size_t>(i)] |= bj;
            adj[static_cast<std::size_t>(j)] |= bi;
        } else {
            adj[static_cast<std::size_t>(i)] &= static_cast<std::uint16_t>(~bj);
            adj[static_cast<std::size_t>(j)] &= static_cast<std::uint16_t>(~bi);
        }
    }

    int degree(int i) const { return popcount32(adj[static_cast<std::size_t>(i)]); }
    int edge_count() const {
        int s = 0;
        for (int i = 0; i < n; ++i) s += degree(i);
        return s / 2;
    }

    bool is_connected() const {
        std::uint32_t seen = 1, frontier = 1;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint32_t nb = adj[static_cast<std::size_t>(v)] & ~seen;
            seen |= nb;
            frontier |= nb;
        }
        return seen == (std::uint32_t{1} << n) - 1;
    }

    friend bool operator==(const GraphState&, const GraphState&) = default;
};

// quadratic part of f as a simple graph; linear and constant terms are ignored
inline GraphState from_quadratic(const BooleanFunction& f) {
    if (f.degree() > 2) throw std::invalid_argument("from_quadratic requires degree <= 2");
    GraphState g;
    g.n = f.n();
    for (Monomial m : f.anf())
        if (popcount32(m) == 2) {
            int i = std::countr_zero(m);
            int j = std::countr_zero(m & (m - 1));
            g.set_edge(i, j, true);
        }
    return g;
}

inline bool has_affine_part(const BooleanFunction& f) {
    for (Monomial m : f.anf())
        if (popcount32(m) < 2) return true;
    return false;
}

inline BooleanFunction to_quadratic(const GraphState& g) {
    std::vector<Monomial> ms;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.edge(i, j)) ms.push_back((std::uint32_t{1} << i) | (std::uint32_t{1} << j));
    return BooleanFunction(g.n, std::move(ms));
}

// Gamma_v(i,j) = Gamma(i,j) + Gamma(v,i)*Gamma(v,j) for i != j, diagonal re-zeroed
inline GraphState local_complement(const GraphState& g, int v) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("local_complement: bad vertex");
    GraphState out = g;
    std::uint16_t nb = g.adj[static_cast<std::size_t>(v)];
    std::uint16_t rest = nb;
    while (rest) {
        int i = std::countr_zero(rest);
        rest = static_cast<std::uint16_t>(rest & (rest - 1));
        out.adj[static_cast<std::size_t>(i)] ^= nb;
        out.adj[static_cast<std::size_t>(i)] &= static_cast<std::uint16_t>(~(1u << i));
    }
    return out;
}

// edges in compact pair notation, e.g. "04,15,25,34,45"
inline std::string to_compact_string(const GraphState& g) {
    if (g.n > 10) throw std::invalid_argument("compact pair notation requires n <= 10");
    std::string out;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.edge(i, j)) {
                if (!out.empty()) out += ',';
                out += static_cast<char>('0' + i);
                out += static_cast<char>('0' + j);
            }
    return out;
}

// ---------------------------------------------------------------------------
// GF(2) matrices

struct BitMatrix {
    int n = 0;
    std::array<std::uint32_t, 32> rows{};

    static BitMatrix from_graph(const GraphState& g) {
        BitMatrix m;
        m.n = g.n;
        for (int i = 0; i < g.n; ++i) m.rows[static_cast<std::size_t>(i)] = g.adj[static_cast<std::size_t>(i)];
        return m;
    }
    bool get(int i, int j) const { return (rows[static_cast<std::size_t>(i)] >> j) & 1; }
    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
};

inline int gf2_rank(const BitMatrix& m) {
    std::array<std::uint32_t, 32> r = m.rows;
    int rank = 0;
    for (int col = 0; col < m.n; ++col) {
        std::uint32_t bit = std::uint32_t{1} << col;
        int pivot = -1;
        for (int i = rank; i < m.n; ++i)
            if (r[static_cast<std::size_t>(i)] & bit) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(r[static_cast<std::size_t>(pivot)], r[static_cast<std::size_t>(rank)]);
        for (int i = 0; i < m.n; ++i)
            if (i != rank && (r[static_cast<std::size_t>(i)] & bit))
                r[static_cast<std::size_t>(i)] ^= r[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank;
}

inline int gf2_rank(const GraphState& g) { return gf2_rank(BitMatrix::from_graph(g)); }

// Gamma with diagonal set to v (variable mask)
inline BitMatrix modified_diagonal(const GraphState& g, std::uint32_t v) {
    BitMatrix m = BitMatrix::from_graph(g);
    for (int i = 0; i < g.n; ++i)
        if (v & (std::uint32_t{1} << i)) m.rows[static_cast<std::size_t>(i)] |= std::uint32_t{1} << i;
    return m;
}

// rows/columns with indices in `drop` removed, remaining order preserved
inline BitMatrix principal_submatrix(const BitMatrix& m, std::uint32_t drop) {
    BitMatrix out;
    out.n = m.n - popcount32(drop & ((std::uint32_t{1} << m.n) - 1));
    int oi = 0;
    for (int i = 0; i < m.n; ++i) {
        if (drop & (std::uint32_t{1} << i)) continue;
        std::uint32_t packed = 0;
        int oj = 0;
        for (int j = 0; j < m.n; ++j) {
            if (drop & (std::uint32_t{1} << j)) continue;
            packed |= static_cast<std::uint32_t>((m.rows[static_cast<std::size_t>(i)] >> j) & 1) << oj;
            ++oj;
        }
        out.rows[static_cast<std::size_t>(oi++)] = packed;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical forms (n <= 10)

inline constexpr int kCanonicalCapVars = 10;

// Upper-triangle bit packing, column by column: for k = 1..n-1 the bits
// edge(0,k), edge(1,k), ..., edge(k-1,k) are appended MSB-first.  Used both
// for labeled keys and for canonical keys.
inline std::uint64_t labeled_key(const GraphState& g) {
    std::uint64_t key = 0;
    for (int k = 1; k < g.n; ++k)
        for (int t = 0; t < k; ++t) key = (key << 1) | static_cast<std::uint64_t>(g.edge(t, k));
    return key;
}

inline GraphState graph_from_key(int n, std::uint64_t key) {
    GraphState g;
    g.n = n;
    int total = n * (n - 1) / 2;
    int b = 0;  // append order; bit b sits at position total-1-b
    for (int k = 1; k < n; ++k)
        for (int t = 0; t < k; ++t, ++b)
            if ((key >> (total - 1 - b)) & 1) g.set_edge(t, k, true);
    return g;
}

struct CanonicalResult {
    GraphState graph;                 // relabeled representative
    std::array<std::uint8_t, 16> perm{};  // perm[pos] = original vertex
    std::uint64_t key = 0;            // labeled_key(graph)
};

namespace detail_canon {

// Iterated neighbor-color refinement.  Colors are dense ranks of sorted
// signatures, so equal colors across isomorphic graphs correspond.
inline int wl_refine(const GraphState& g, std::array<std::uint8_t, 16>& color) {
    int n = g.n;
    for (int i = 0; i < n; ++i) color[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(g.degree(i));
    // densify initial degrees
    for (;;) {
        std::array<std::uint64_t, 16> sig{};
        for (int i = 0; i < n; ++i) {
            std::uint64_t counts = 0;
            std::uint16_t nb = g.adj[static_cast<std::size_t>(i)];
            while (nb) {
                int j = std::countr_zero(nb);
                nb = static_cast<std::uint16_t>(nb & (nb - 1));
                counts += std::uint64_t{1} << (4 * color[static_cast<std::size_t>(j)]);
            }
            sig[static_cast<std::size_t>(i)] =
                (static_cast<std::uint64_t>(color[static_cast<std::size_t>(i)]) << 44) | counts;
        }
        std::array<std::uint64_t, 16> sorted = sig;
        std::sort(sorted.begin(), sorted.begin() + n);
        int classes = 0;
        std::array<std::uint64_t, 16> uniq{};
        for (int i = 0; i < n; ++i)
            if (i == 0 || sorted[static_cast<std::size_t>(i)] != sorted[static_cast<std::size_t>(i - 1)])
                uniq[static_cast<std::size_t>(classes++)] = sorted[static_cast<std::size_t>(i)];
        std::array<std::uint8_t, 16> next{};
        for (int i = 0; i < n; ++i) {
            int lo = 0, hi = classes - 1;
            while (lo < hi) {
                int mid = (lo + hi) / 2;
                if (uniq[static_cast<std::size_t>(mid)] < sig[static_cast<std::size_t>(i)])
                    lo = mid + 1;
                else
                    hi = mid;
            }
            next[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(lo);
        }
        bool same = true;
        for (int i = 0; i < n && same; ++i)
            same = next[static_cast<std::size_t>(i)] == color[static_cast<std::size_t>(i)];
        color = next;
        if (same || classes == n) return classes;
    }
}

struct Searcher {
    const GraphState* g = nullptr;
    int n = 0;
    std::array<std::uint8_t, 16> block_color{};  // color required at each position
    std::array<std::uint8_t, 16> placed{};
    std::array<std::uint8_t, 16> color{};
    std::array<std::uint32_t, 16> cur_col{}, best_col{};
    std::array<std::uint8_t, 16> best_perm{};
    std::uint32_t used = 0;
    bool have_best = false;

    // swap of u and w is an automorphism iff their rows agree off {u,w}
    bool twins(int u, int w) const {
        std::uint16_t mask = static_cast<std::uint16_t>(~((1u << u) | (1u << w)));
        return ((g->adj[static_cast<std::size_t>(u)] ^ g->adj[static_cast<std::size_t>(w)]) & mask) == 0;
    }

    // Returns whether the incumbent was replaced somewhere in this subtree.
    // `tight` means the current column prefix equals the incumbent's prefix;
    // a replacement deeper down runs through this node, so the prefix is
    // tight against the new incumbent afterwards as well.
    bool dfs(int p, bool tight) {
        if (p == n) {
            if (have_best && tight) return false;  // identical string
            best_col = cur_col;
            best_perm = placed;
            have_best = true;
            return true;
        }
        std::array<std::uint8_t, 16> cand{};
        std::array<std::uint32_t, 16> col{};
        int cn = 0;
        for (int v = 0; v < n; ++v) {
            if (used & (std::uint32_t{1} << v)) continue;
            if (color[static_cast<std::size_t>(v)] != block_color[static_cast<std::size_t>(p)]) continue;
            std::uint32_t c = 0;
            for (int t = 0; t < p; ++t)
                c |= static_cast<std::uint32_t>(g->edge(placed[static_cast<std::size_t>(t)], v))
                     << (p - 1 - t);
            cand[static_cast<std::size_t>(cn)] = static_cast<std::uint8_t>(v);
            col[static_cast<std::size_t>(cn)] = c;
            ++cn;
        }
        // insertion sort by column value (cn <= 10)
        for (int i = 1; i < cn; ++i)
            for (int j = i; j > 0 && col[static_cast<std::size_t>(j - 1)] > col[static_cast<std::size_t>(j)]; --j) {
                std::swap(col[static_cast<std::size_t>(j - 1)], col[static_cast<std::size_t>(j)]);
                std::swap(cand[static_cast<std::size_t>(j - 1)], cand[static_cast<std::size_t>(j)]);
            }
        bool updated = false;
        for (int i = 0; i < cn; ++i) {
            int v = cand[static_cast<std::size_t>(i)];
            std::uint32_t c = col[static_cast<std::size_t>(i)];
            bool dup = false;
            for (int j = 0; j < i && !dup; ++j)
                dup = col[static_cast<std::size_t>(j)] == c && twins(cand[static_cast<std::size_t>(j)], v);
            if (dup) continue;
            bool child_tight = false;
            if (have_best && tight) {
                if (c > best_col[static_cast<std::size_t>(p)]) break;  // sorted: the rest only grow
                child_tight = c == best_col[static_cast<std::size_t>(p)];
            }
            placed[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(v);
            cur_col[static_cast<std::size_t>(p)] = c;
            used |= std::uint32_t{1} << v;
            bool child_updated = dfs(p + 1, child_tight);
            used &= ~(std::uint32_t{1} << v);
            if (child_updated) {
                updated = true;
                tight = true;  // the new incumbent passes through cur_col[0..p]
            }
        }
        return updated;
    }
};

}  // namespace detail_canon

// Isomorphism-invariant representative: the minimal adjacency bit string over
// all vertex orders compatible with the refined color classes.  The class
// structure prunes the permutation search; the twin test collapses cliques
// and stars without a full automorphism engine.
inline CanonicalResult canonical_form(const GraphState& g) {
    if (g.n > kCanonicalCapVars)
        throw cap_exceeded("canonical form capped at n <= 10, got n=" + std::to_string(g.n));
    detail_canon::Searcher s;
    s.g = &g;
    s.n = g.n;
    detail_canon::wl_refine(g, s.color);
    {
        std::array<std::uint8_t, 16> sorted = s.color;
        std::sort(sorted.begin(), sorted.begin() + g.n);
        s.block_color = sorted;
    }
    s.dfs(0, true);
    CanonicalResult res;
    res.perm = s.best_perm;
    res.graph.n = g.n;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.edge(s.best_perm[static_cast<std::size_t>(i)], s.best_perm[static_cast<std::size_t>(j)]))
                res.graph.set_edge(i, j, true);
    res.key = labeled_key(res.graph);
    return res;
}

inline std::uint64_t canonical_key(const GraphState& g) { return canonical_form(g).key; }

// ---------------------------------------------------------------------------
// LC orbits

// Closure of {g} under local complementation.  With up_to_iso the closure is
// taken over canonical representatives; otherwise over labeled graphs.
// Either way the result is sorted by key, so it is deterministic.
inline std::vector<GraphState> lc_orbit(const GraphState& g, bool up_to_iso) {
    if (up_to_iso && g.n > kCanonicalCapVars)
        throw cap_exceeded("lc_orbit up to isomorphism capped at n <= 10");
    auto key_of = [&](const GraphState& x) {
        return up_to_iso ? canonical_key(x) : labeled_key(x);
    };
    auto rep_of = [&](const GraphState& x) {
        return up_to_iso ? canonical_form(x).graph : x;
    };
    std::unordered_set<std::uint64_t> seen;
    std::vector<GraphState> frontier{rep_of(g)}, members;
    seen.insert(key_of(frontier[0]));
    members.push_back(frontier[0]);
    while (!frontier.empty()) {
        std::vector<GraphState> next;
        for (const GraphState& cur : frontier) {
            for (int v = 0; v < g.n; ++v) {
                GraphState img = rep_of(local_complement(cur, v));
                if (seen.insert(key_of(img)).second) {
                    members.push_back(img);
                    next.push_back(img);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(members.begin(), members.end(), [&](const GraphState& a, const GraphState& b) {
        return labeled_key(a) < labeled_key(b);
    });
    return members;
}

inline constexpr int kEnumerateCapVars = 9;  // n = 10 behind the long-run flag

// One canonical representative per isomorphism class of connected graphs,
// grown level by level: every connected graph on k+1 vertices arises from a
// connected graph on k vertices by attaching the new vertex to a nonempty
// neighbor set, and canonical keys dedupe the extensions.
inline std::vector<std::uint64_t> enumerate_connected_graph_keys(int n, bool long_run = false,
                                                                 unsigned threads = 1) {
    if (n < 1 || n > kCanonicalCapVars)
        throw cap_exceeded("connected graph enumeration supports 1 <= n <= 10");
    if (n > kEnumerateCapVars && !long_run)
        throw cap_exceeded("n = 10 graph enumeration requires the long-run flag");
    std::vector<std::uint64_t> level{0};  // K1
    for (int k = 1; k < n; ++k) {
        std::unordered_set<std::uint64_t> next;
        std::mutex merge_mutex;
        std::uint64_t nsub = std::uint64_t{1} << k;
        parallel_chunks(level.size(), threads > 1 ? threads * 8 : 1, threads,
                        [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::uint64_t> local;
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                GraphState g = graph_from_key(k, level[idx]);
                g.n = k + 1;
                for (std::uint64_t sub = 1; sub < nsub; ++sub) {
                    GraphState child = g;
                    child.adj[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(sub);
                    for (int t = 0; t < k; ++t)
                        if (sub & (std::uint64_t{1} << t))
                            child.adj[static_cast<std::size_t>(t)] |= static_cast<std::uint16_t>(1u << k);
                    local.push_back(canonical_key(child));
                }
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            next.insert(local.begin(), local.end());
        });
        level.assign(next.begin(), next.end());
        std::sort(level.begin(), level.end());
    }
    return level;
}

// A symmetric zero-diagonal matrix has even GF(2) rank, so the best any graph
// on n vertices can do is 2*floor(n/2).  An orbit is LC-bent when some member
// attains that ceiling; for even n this is exactly "contains a bent member".
inline int max_achievable_rank(int n) { return n - (n & 1); }

struct OrbitRecord {
    GraphState representative;       // canonical member with the smallest key
    std::uint64_t rep_key = 0;
    std::uint64_t class_count = 0;   // isomorphism classes in the orbit
    std::uint64_t orbit_size = 0;    // labeled graphs in the orbit
    int max_rank = 0;                // max GF(2) rank of Gamma over the orbit
    bool lc_bent = false;            // max_rank == max_achievable_rank(n)
};

struct LcOrbitPartition {
    int n = 0;
    std::vector<std::uint64_t> class_keys;  // sorted canonical keys, one per class
    std::vector<std::uint32_t> orbit_id;    // per class
    std::uint64_t orbit_count = 0;
};

namespace detail_orbits {
struct DSU {
    std::vector<std::uint32_t> parent;
    explicit DSU(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};
}  // namespace detail_orbits

// Partition the connected isomorphism classes on n vertices into LC orbits.
inline LcOrbitPartition compute_lc_orbits(int n, bool long_run = false, unsigned threads = 1) {
    LcOrbitPartition part;
    part.n = n;
    part.class_keys = enumerate_connected_graph_keys(n, long_run, threads);
    const auto& keys = part.class_keys;
    auto index_of = [&](std::uint64_t key) {
        auto it = std::lower_bound(keys.begin(), keys.end(), key);
        if (it == keys.end() || *it != key)
            throw std::logic_error("LC image left the connected-class table");
        return static_cast<std::uint32_t>(it - keys.begin());
    };
    std::vector<std::uint32_t> link(keys.size() * static_cast<std::size_t>(n));
    parallel_chunks(keys.size(), threads > 1 ? threads * 8 : 1, threads,
                    [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            GraphState g = graph_from_key(n, keys[i]);
            for (int v = 0; v < n; ++v)
                link[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)] =
                    index_of(canonical_key(local_complement(g, v)));
        }
    });
    detail_orbits::DSU dsu(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (int v = 0; v < n; ++v)
            dsu.unite(static_cast<std::uint32_t>(i), link[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)]);
    part.orbit_id.assign(keys.size(), 0);
    std::vector<std::uint32_t> root_to_id(keys.size(), UINT32_MAX);
    std::uint32_t next_id = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        std::uint32_t r = dsu.find(static_cast<std::uint32_t>(i));
        if (root_to_id[r] == UINT32_MAX) root_to_id[r] = next_id++;
        part.orbit_id[i] = root_to_id[r];
    }
    part.orbit_count = next_id;
    return part;
}

inline std::uint64_t count_lc_orbits(int n, bool long_run = false, unsigned threads = 1) {
    return compute_lc_orbits(n, long_run, threads).orbit_count;
}

inline std::uint64_t labeled_orbit_size(const GraphState& g) {
    std::unordered_set<std::uint64_t> seen{labeled_key(g)};
    std::vector<GraphState> frontier{g};
    while (!frontier.empty()) {
        std::vector<GraphState> next;
        for (const GraphState& cur : frontier)
            for (int v = 0; v < g.n; ++v) {
                GraphState img = local_complement(cur, v);
                if (seen.insert(labeled_key(img)).second) next.push_back(img);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

// Orbit records for every orbit of connected graphs on n vertices, ordered by
// representative key.  `only_non_lc_bent` keeps the orbits whose maximal rank
// falls short of n (the Table-style output).
inline std::vector<OrbitRecord> lc_orbit_records(int n, bool only_non_lc_bent,
                                                 bool long_run = false, unsigned threads = 1,
                                                 bool with_orbit_sizes = true) {
    LcOrbitPartition part = compute_lc_orbits(n, long_run, threads);
    std::vector<OrbitRecord> recs(part.orbit_count);
    std::vector<bool> seeded(part.orbit_count, false);
    for (std::size_t i = 0; i < part.class_keys.size(); ++i) {
        OrbitRecord& rec = recs[part.orbit_id[i]];
        GraphState g = graph_from_key(n, part.class_keys[i]);
        int rank = gf2_rank(g);
        if (!seeded[part.orbit_id[i]]) {
            rec.representative = g;  // keys ascend, so the first member is minimal
            rec.rep_key = part.class_keys[i];
            seeded[part.orbit_id[i]] = true;
        }
        rec.class_count++;
        rec.max_rank = std::max(rec.max_rank, rank);
    }
    for (auto& rec : recs) rec.lc_bent = rec.max_rank == max_achievable_rank(n);
    if (only_non_lc_bent) {
        std::vector<OrbitRecord> keep;
        for (auto& rec : recs)
            if (!rec.lc_bent) keep.push_back(rec);
        recs = std::move(keep);
    }
    if (with_orbit_sizes)
        for (auto& rec : recs) rec.orbit_size = labeled_orbit_size(rec.representative);
    return recs;
}

}  // namespace ihn
