#pragma once

// The generalised bent hierarchy: spectral decision procedures, the rank
// shortcuts for quadratics, witnesses, and exhaustive family censuses.
//
// Witness searches run in lexicographic order over bit vectors read as
// (c_0, c_1, ..., c_{n-1}), i.e. ascending order of the truth-table index
// mask, so reported witnesses are reproducible.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ihn/boolfun.hpp"
#include "ihn/graph.hpp"
#include "ihn/transform.hpp"
#include "ihn/util.hpp"

namespace ihn {

enum class DecisionPath { automatic, spectral, rank };

namespace detail_criteria {

// offset the bipolar vector by the Z4-linear phase i^{c.x mod 4} and
// Hadamard every position; identical to the {H,N} spec with R_N = support(c)
inline bool flat_offset_wht(const SpectralVector& base, std::uint32_t c_idx) {
    SpectralVector s = base;
    for (std::size_t x = 0; x < s.size(); ++x)
        s[x] = s[x].times_i_pow(popcount32(static_cast<std::uint32_t>(x) & c_idx));
    apply_transform_inplace(s, TransformSpec::all_h(s.n()));
    return is_flat(s);
}

// apply the (R_I, R_H, R_N) spec given variable masks
inline bool flat_spec(const SpectralVector& base, std::uint32_t h_vars, std::uint32_t n_vars) {
    SpectralVector s = base;
    for (int j = 0; j < s.n(); ++j) {
        std::uint32_t bit = std::uint32_t{1} << j;
        if (h_vars & bit)
            apply_kernel_inplace(s, j, kernels::H);
        else if (n_vars & bit)
            apply_kernel_inplace(s, j, kernels::N);
    }
    return is_flat(s);
}

// expand the t-th compressed pattern over the free variables (ascending,
// earliest variable most significant) into a variable mask
inline std::uint32_t expand_lex(std::uint32_t pattern, const std::vector<int>& free_vars) {
    std::uint32_t out = 0;
    std::size_t m = free_vars.size();
    for (std::size_t b = 0; b < m; ++b)
        if (pattern & (std::uint32_t{1} << (m - 1 - b))) out |= std::uint32_t{1} << free_vars[b];
    return out;
}

}  // namespace detail_criteria

inline bool is_bent_spectral(const BooleanFunction& f) { return is_flat(wht(f)); }

inline bool is_bent_rank(const BooleanFunction& f) {
    return gf2_rank(from_quadratic(f)) == f.n();
}

inline bool is_bent(const BooleanFunction& f, DecisionPath path = DecisionPath::automatic) {
    if (path == DecisionPath::rank || (path == DecisionPath::automatic && f.degree() <= 2))
        return is_bent_rank(f);
    return is_bent_spectral(f);
}

struct WitnessedBool {
    bool value = false;
    std::uint32_t witness = 0;  // variable mask, valid when value is true
};

inline WitnessedBool is_bent4_spectral(const BooleanFunction& f) {
    SpectralVector base = bipolar(f);
    std::uint32_t size = std::uint32_t{1} << f.n();
    for (std::uint32_t ci = 0; ci < size; ++ci)
        if (detail_criteria::flat_offset_wht(base, ci)) return {true, index_to_var_mask(ci, f.n())};
    return {false, 0};
}

inline WitnessedBool is_bent4_rank(const BooleanFunction& f) {
    GraphState g = from_quadratic(f);
    std::uint32_t size = std::uint32_t{1} << f.n();
    for (std::uint32_t vi = 0; vi < size; ++vi) {
        std::uint32_t v = index_to_var_mask(vi, f.n());
        if (gf2_rank(modified_diagonal(g, v)) == f.n()) return {true, v};
    }
    return {false, 0};
}

inline WitnessedBool is_bent4(const BooleanFunction& f, DecisionPath path = DecisionPath::automatic) {
    if (path == DecisionPath::rank || (path == DecisionPath::automatic && f.degree() <= 2))
        return is_bent4_rank(f);
    return is_bent4_spectral(f);
}

// every Z4-linear offset flat; proven empty, but decided honestly
inline bool is_z4_bent(const BooleanFunction& f) {
    SpectralVector base = bipolar(f);
    std::uint32_t size = std::uint32_t{1} << f.n();
    for (std::uint32_t ci = 0; ci < size; ++ci)
        if (!detail_criteria::flat_offset_wht(base, ci)) return false;
    return true;
}

inline WitnessedBool is_ibent_spectral(const BooleanFunction& f) {
    SpectralVector base = bipolar(f);
    int n = f.n();
    std::uint32_t size = std::uint32_t{1} << n;
    std::uint32_t all = size - 1;
    for (std::uint32_t ti = 0; ti < size; ++ti) {
        std::uint32_t theta = index_to_var_mask(ti, n);
        int wt = popcount32(theta);
        if (wt >= n) continue;
        // an all-H spectrum over an odd number of free variables is integer
        // valued, and an integer square never equals 2^odd: skip those specs
        if ((n - wt) & 1) continue;
        if (detail_criteria::flat_spec(base, all & ~theta, 0)) return {true, theta};
    }
    return {false, 0};
}

inline WitnessedBool is_ibent_rank(const BooleanFunction& f) {
    GraphState g = from_quadratic(f);
    BitMatrix full = BitMatrix::from_graph(g);
    int n = f.n();
    std::uint32_t size = std::uint32_t{1} << n;
    for (std::uint32_t ti = 0; ti < size; ++ti) {
        std::uint32_t theta = index_to_var_mask(ti, n);
        int wt = popcount32(theta);
        if (wt >= n) continue;
        if (gf2_rank(principal_submatrix(full, theta)) == n - wt) return {true, theta};
    }
    return {false, 0};
}

inline WitnessedBool is_ibent(const BooleanFunction& f, DecisionPath path = DecisionPath::automatic) {
    if (path == DecisionPath::rank || (path == DecisionPath::automatic && f.degree() <= 2))
        return is_ibent_rank(f);
    return is_ibent_spectral(f);
}

inline bool is_completely_ibent(const BooleanFunction& f) {
    SpectralVector base = bipolar(f);
    int n = f.n();
    std::uint32_t size = std::uint32_t{1} << n;
    std::uint32_t all = size - 1;
    // wt(theta) = n is excluded: the all-fixed spectrum is trivially flat and
    // would never change a verdict
    for (std::uint32_t ti = 0; ti < size; ++ti) {
        std::uint32_t theta = index_to_var_mask(ti, n);
        if (popcount32(theta) >= n) continue;
        if (!detail_criteria::flat_spec(base, all & ~theta, 0)) return false;
    }
    return true;
}

struct PartitionWitness {
    bool value = false;
    std::uint32_t theta = 0;  // R_I as a variable mask
    std::uint32_t c = 0;      // R_N as a variable mask, c covered by ~theta
};

inline PartitionWitness is_ibent4_spectral(const BooleanFunction& f) {
    SpectralVector base = bipolar(f);
    int n = f.n();
    std::uint32_t size = std::uint32_t{1} << n;
    std::uint32_t all = size - 1;
    for (std::uint32_t ti = 0; ti < size; ++ti) {
        std::uint32_t theta = index_to_var_mask(ti, n);
        int wt = popcount32(theta);
        if (wt >= n) continue;
        std::vector<int> free_vars;
        for (int j = 0; j < n; ++j)
            if (!(theta & (std::uint32_t{1} << j))) free_vars.push_back(j);
        for (std::uint32_t cc = 0; cc < (std::uint32_t{1} << (n - wt)); ++cc) {
            std::uint32_t c = detail_criteria::expand_lex(cc, free_vars);
            if (detail_criteria::flat_spec(base, all & ~(theta | c), c)) return {true, theta, c};
        }
    }
    return {false, 0, 0};
}

inline PartitionWitness is_ibent4_rank(const BooleanFunction& f) {
    GraphState g = from_quadratic(f);
    int n = f.n();
    std::uint32_t size = std::uint32_t{1} << n;
    for (std::uint32_t ti = 0; ti < size; ++ti) {
        std::uint32_t theta = index_to_var_mask(ti, n);
        int wt = popcount32(theta);
        if (wt >= n) continue;
        std::vector<int> free_vars;
        for (int j = 0; j < n; ++j)
            if (!(theta & (std::uint32_t{1} << j))) free_vars.push_back(j);
        for (std::uint32_t cc = 0; cc < (std::uint32_t{1} << (n - wt)); ++cc) {
            std::uint32_t v = detail_criteria::expand_lex(cc, free_vars);
            if (gf2_rank(principal_submatrix(modified_diagonal(g, v), theta)) == n - wt)
                return {true, theta, v};
        }
    }
    return {false, 0, 0};
}

inline PartitionWitness is_ibent4(const BooleanFunction& f,
                                  DecisionPath path = DecisionPath::automatic) {
    if (path == DecisionPath::rank || (path == DecisionPath::automatic && f.degree() <= 2))
        return is_ibent4_rank(f);
    return is_ibent4_spectral(f);
}

inline bool is_completely_ibent4(const BooleanFunction& f) {
    SpectralVector base = bipolar(f);
    int n = f.n();
    std::uint32_t size = std::uint32_t{1} << n;
    std::uint32_t all = size - 1;
    for (std::uint32_t ti = 0; ti < size; ++ti) {
        std::uint32_t theta = index_to_var_mask(ti, n);
        int wt = popcount32(theta);
        if (wt >= n) continue;
        std::vector<int> free_vars;
        for (int j = 0; j < n; ++j)
            if (!(theta & (std::uint32_t{1} << j))) free_vars.push_back(j);
        for (std::uint32_t cc = 0; cc < (std::uint32_t{1} << (n - wt)); ++cc) {
            std::uint32_t c = detail_criteria::expand_lex(cc, free_vars);
            if (!detail_criteria::flat_spec(base, all & ~(theta | c), c)) return false;
        }
    }
    return true;
}

struct LcBentResult {
    bool value = false;
    std::optional<GraphState> witness;  // an orbit member of maximal rank
};

// Ranks of zero-diagonal symmetric matrices are even, so the orbit is judged
// against the ceiling 2*floor(n/2); for even n this is "contains a bent
// member".
inline LcBentResult is_lc_bent(const GraphState& g) {
    for (const GraphState& member : lc_orbit(g, /*up_to_iso=*/true))
        if (gf2_rank(member) == max_achievable_rank(g.n)) return {true, member};
    return {false, std::nullopt};
}

// ---------------------------------------------------------------------------
// Reports

struct CriteriaReport {
    int n = 0;
    bool bent = false, bent4 = false, z4_bent = false;
    bool ibent = false, completely_ibent = false;
    bool ibent4 = false, completely_ibent4 = false;
    std::optional<bool> lc_bent;  // quadratics only
    std::uint32_t bent4_c = 0, ibent_theta = 0, ibent4_theta = 0, ibent4_c = 0;
    std::optional<BooleanFunction> lc_bent_witness;
    bool affine_ignored_for_graph = false;
};

inline CriteriaReport classify(const BooleanFunction& f,
                               DecisionPath path = DecisionPath::automatic) {
    CriteriaReport r;
    r.n = f.n();
    r.bent = is_bent(f, path);
    auto b4 = is_bent4(f, path);
    r.bent4 = b4.value;
    r.bent4_c = b4.witness;
    r.z4_bent = is_z4_bent(f);
    auto ib = is_ibent(f, path);
    r.ibent = ib.value;
    r.ibent_theta = ib.witness;
    r.completely_ibent = is_completely_ibent(f);
    auto ib4 = is_ibent4(f, path);
    r.ibent4 = ib4.value;
    r.ibent4_theta = ib4.theta;
    r.ibent4_c = ib4.c;
    r.completely_ibent4 = is_completely_ibent4(f);
    if (f.degree() <= 2 && f.n() <= kCanonicalCapVars) {
        r.affine_ignored_for_graph = has_affine_part(f);
        auto lb = is_lc_bent(from_quadratic(f));
        r.lc_bent = lb.value;
        if (lb.witness) r.lc_bent_witness = to_quadratic(*lb.witness);
    }
    // the hierarchy is checked, not assumed
    bool hierarchy_ok = (!r.bent || (r.bent4 && r.ibent)) && (!(r.bent4 || r.ibent) || r.ibent4);
    if (!hierarchy_ok) throw std::logic_error("bent hierarchy violated for " + f.to_string());
    return r;
}

// ---------------------------------------------------------------------------
// Family censuses

// Functions with a nonzero degree-d part, all parts of degree 2..d-1 free,
// and no affine part.
struct FamilySpec {
    int n = 1;
    int degree = 2;
    std::vector<Monomial> top;    // monomials of degree exactly d, ascending
    std::vector<Monomial> lower;  // degrees 2..d-1, ascending

    FamilySpec(int n_, int d) : n(n_), degree(d) {
        if (n < 2 || n > kMaxVars || d < 2 || d > n)
            throw std::invalid_argument("family requires 2 <= degree <= n <= 16");
        for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
            int pc = popcount32(m);
            if (pc == d)
                top.push_back(m);
            else if (pc >= 2 && pc < d)
                lower.push_back(m);
        }
    }

    std::uint64_t size() const {
        int bits = static_cast<int>(top.size() + lower.size());
        if (bits > 62) throw cap_exceeded("family index space exceeds 2^62");
        return ((std::uint64_t{1} << top.size()) - 1) << lower.size();
    }

    BooleanFunction member(std::uint64_t idx) const {
        std::uint64_t top_bits = (idx >> lower.size()) + 1;  // nonzero degree-d part
        std::uint64_t low_bits = idx & ((std::uint64_t{1} << lower.size()) - 1);
        std::vector<Monomial> ms;
        for (std::size_t i = 0; i < top.size(); ++i)
            if (top_bits & (std::uint64_t{1} << i)) ms.push_back(top[i]);
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (low_bits & (std::uint64_t{1} << i)) ms.push_back(lower[i]);
        return BooleanFunction(n, std::move(ms));
    }
};

enum class Criterion {
    bent,
    bent4,
    z4bent,
    ibent,
    completely_ibent,
    ibent4,
    completely_ibent4,
};

inline const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::bent: return "bent";
        case Criterion::bent4: return "bent4";
        case Criterion::z4bent: return "z4bent";
        case Criterion::ibent: return "ibent";
        case Criterion::completely_ibent: return "completely-ibent";
        case Criterion::ibent4: return "ibent4";
        case Criterion::completely_ibent4: return "completely-ibent4";
    }
    return "?";
}

inline std::optional<Criterion> criterion_from_name(const std::string& s) {
    for (Criterion c : {Criterion::bent, Criterion::bent4, Criterion::z4bent, Criterion::ibent,
                        Criterion::completely_ibent, Criterion::ibent4, Criterion::completely_ibent4})
        if (s == criterion_name(c)) return c;
    return std::nullopt;
}

inline bool satisfies(const BooleanFunction& f, Criterion c,
                      DecisionPath path = DecisionPath::automatic) {
    switch (c) {
        case Criterion::bent: return is_bent(f, path);
        case Criterion::bent4: return is_bent4(f, path).value;
        case Criterion::z4bent: return is_z4_bent(f);
        case Criterion::ibent: return is_ibent(f, path).value;
        case Criterion::completely_ibent: return is_completely_ibent(f);
        case Criterion::ibent4: return is_ibent4(f, path).value;
        case Criterion::completely_ibent4: return is_completely_ibent4(f);
    }
    return false;
}

inline constexpr std::uint64_t kCensusCap = std::uint64_t{1} << 26;

inline std::uint64_t census_shard(const FamilySpec& family, Criterion crit, std::uint64_t lo,
                                  std::uint64_t hi, DecisionPath path = DecisionPath::automatic) {
    std::uint64_t count = 0;
    for (std::uint64_t idx = lo; idx < hi; ++idx)
        if (satisfies(family.member(idx), crit, path)) ++count;
    return count;
}

struct CensusOptions {
    bool long_run = false;
    unsigned threads = 1;
    std::uint64_t shards = 0;  // 0: one shard per thread (min 1)
};

// Deterministic regardless of thread count: shard boundaries depend only on
// the shard count and the merge is addition over the shard index order.
inline std::uint64_t census(const FamilySpec& family, Criterion crit,
                            const CensusOptions& opt = {},
                            std::vector<std::uint64_t>* shard_counts = nullptr) {
    std::uint64_t size = family.size();
    if (size > kCensusCap && !opt.long_run)
        throw cap_exceeded("census of " + std::to_string(size) +
                           " functions exceeds the 2^26 cap; pass the long-run flag");
    std::uint64_t shards = opt.shards ? opt.shards : std::max<unsigned>(opt.threads, 1);
    std::vector<std::uint64_t> partial(shards, 0);
    parallel_chunks(size, shards, opt.threads,
                    [&](std::uint64_t shard, std::uint64_t lo, std::uint64_t hi) {
                        partial[shard] = census_shard(family, crit, lo, hi);
                    });
    if (shard_counts) *shard_counts = partial;
    std::uint64_t total = 0;
    for (std::uint64_t c : partial) total += c;
    return total;
}

}  // namespace ihn
