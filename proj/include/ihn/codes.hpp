#pragma once

// Additive-code views of graph states: the GF(4) generator Gamma + w*I, the
// Z4 generator 2*Gamma + I, their weight distributions, and the binary linear
// code hiding in the {I,H} spectrum of a bipartite quadratic.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ihn/boolfun.hpp"
#include "ihn/graph.hpp"
#include "ihn/transform.hpp"
#include "ihn/util.hpp"

namespace ihn {

// GF(4) = {0, 1, w, wbar} with w^2 = w + 1; entries are stored as the pair
// (a, b) meaning a*w + b*wbar, so 1 = w + wbar = (1,1) and weight just tests
// (a,b) != (0,0).  Rows are bit planes over the n coordinates.
struct GF4Matrix {
    int n = 0;
    std::array<std::uint16_t, 16> row_a{};
    std::array<std::uint16_t, 16> row_b{};
};

inline GF4Matrix gf4_generator(const GraphState& g) {
    GF4Matrix m;
    m.n = g.n;
    for (int i = 0; i < g.n; ++i) {
        m.row_a[static_cast<std::size_t>(i)] =
            static_cast<std::uint16_t>(g.adj[static_cast<std::size_t>(i)] | (1u << i));  // w on the diagonal
        m.row_b[static_cast<std::size_t>(i)] = g.adj[static_cast<std::size_t>(i)];       // edges are 1 = w + wbar
    }
    return m;
}

struct Z4Matrix {
    int n = 0;
    std::array<std::array<std::uint8_t, 16>, 16> v{};  // entries mod 4
};

inline Z4Matrix z4_generator(const GraphState& g) {
    Z4Matrix m;
    m.n = g.n;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            m.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<std::uint8_t>((i == j) ? 1 : 2 * g.edge(i, j));
    return m;
}

struct WeightDistribution {
    std::vector<std::uint64_t> counts;  // counts[w], w = 0..n

    friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t w = 0; w < counts.size(); ++w) {
            if (w) s += ", ";
            s += std::to_string(w) + ":" + std::to_string(counts[w]);
        }
        return s + "}";
    }
};

inline constexpr int kWeightCapVars = 16;

// The additive code is the set of GF(2)-linear combinations of the rows; Gray
// code order means one row toggle per step.
inline WeightDistribution weight_distribution(const GF4Matrix& m) {
    if (m.n > kWeightCapVars) throw cap_exceeded("weight distribution capped at n <= 16");
    WeightDistribution wd;
    wd.counts.assign(static_cast<std::size_t>(m.n) + 1, 0);
    std::uint16_t wa = 0, wb = 0;
    std::uint32_t prev = 0;
    wd.counts[0]++;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << m.n); ++s) {
        std::uint32_t gray = s ^ (s >> 1);
        int row = std::countr_zero(gray ^ prev);
        prev = gray;
        wa ^= m.row_a[static_cast<std::size_t>(row)];
        wb ^= m.row_b[static_cast<std::size_t>(row)];
        wd.counts[static_cast<std::size_t>(popcount32(static_cast<std::uint32_t>(wa | wb)))]++;
    }
    return wd;
}

inline WeightDistribution weight_distribution(const Z4Matrix& m) {
    if (m.n > kWeightCapVars) throw cap_exceeded("weight distribution capped at n <= 16");
    WeightDistribution wd;
    wd.counts.assign(static_cast<std::size_t>(m.n) + 1, 0);
    std::array<std::uint8_t, 16> word{};
    std::uint32_t prev = 0;
    wd.counts[0]++;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << m.n); ++s) {
        std::uint32_t gray = s ^ (s >> 1);
        int row = std::countr_zero(gray ^ prev);
        bool removing = !(gray & (std::uint32_t{1} << row));
        prev = gray;
        int w = 0;
        for (int j = 0; j < m.n; ++j) {
            auto& cell = word[static_cast<std::size_t>(j)];
            std::uint8_t rj = m.v[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
            cell = static_cast<std::uint8_t>((cell + (removing ? 4 - rj : rj)) & 3);
            if (cell) ++w;
        }
        wd.counts[static_cast<std::size_t>(w)]++;
    }
    return wd;
}

struct BipartiteCodeResult {
    int dimension = 0;
    std::vector<std::uint32_t> support;  // codewords as index-space masks
};

// Hadamard every position of `part` (one side of a bipartition) and demand
// that the exact spectrum is, up to one global constant, a 0/1 indicator
// whose support is GF(2)-closed.  The support is then an [n, n-|part|] code.
inline BipartiteCodeResult bipartite_code_check(const BooleanFunction& f, std::uint32_t part) {
    if (f.degree() > 2) throw std::invalid_argument("bipartite_code_check requires degree <= 2");
    GraphState g = from_quadratic(f);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.edge(i, j)) {
                bool ii = part & (std::uint32_t{1} << i), jj = part & (std::uint32_t{1} << j);
                if (ii == jj)
                    throw std::invalid_argument(
                        "graph is not bipartite with the given part: edge " + std::to_string(i) +
                        "-" + std::to_string(j));
            }
    SpectralVector s = bipolar(f);
    for (int j = 0; j < f.n(); ++j)
        if (part & (std::uint32_t{1} << j)) apply_kernel_inplace(s, j, kernels::H);
    CyclotomicInt scale_value;
    std::vector<std::uint32_t> support;
    for (std::size_t x = 0; x < s.size(); ++x) {
        if (s[x].is_zero()) continue;
        if (support.empty())
            scale_value = s[x];
        else if (!(s[x] == scale_value))
            throw std::runtime_error("spectrum is not an indicator vector, entries differ");
        support.push_back(static_cast<std::uint32_t>(x));
    }
    int dim = f.n() - popcount32(part & ((std::uint32_t{1} << f.n()) - 1));
    if (support.size() != (std::size_t{1} << dim))
        throw std::runtime_error("indicator support has the wrong cardinality");
    // GF(2)-closure; the support is sorted, so search is binary
    for (std::uint32_t a : support)
        for (std::uint32_t b : support) {
            std::uint32_t cxor = a ^ b;
            if (!std::binary_search(support.begin(), support.end(), cxor))
                throw std::runtime_error("indicator support is not closed under GF(2) addition");
        }
    return {dim, support};
}

}  // namespace ihn
