#pragma once

// The spectral route to local complementation: the mod-4 exponent produced by
// a single Negahadamard kernel, its reduction to the combinatorial LC move on
// quadratics, and the recovery of LC orbits from {I,H,N}^n spectra.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ihn/boolfun.hpp"
#include "ihn/graph.hpp"
#include "ihn/transform.hpp"

namespace ihn {

// c0 + sum_i c_i [x_i]  (mod 4)
struct Z4AffinePart {
    int n = 1;
    std::uint8_t c0 = 0;
    std::array<std::uint8_t, 16> coeffs{};

    std::string to_string() const {
        std::string s = std::to_string(c0);
        for (int j = 0; j < n; ++j)
            if (coeffs[static_cast<std::size_t>(j)])
                s += " + " + std::to_string(coeffs[static_cast<std::size_t>(j)]) + "[x" +
                     std::to_string(j) + "]";
        return s;
    }
};

// p'(x) = 2[p(x) + sum_{j<k} m_j m_k] + 3 N'_v(x) + 3[x_v]  (mod 4), where the
// m_i are the monomials of the neighbor part N_v and N'_v = sum_i [m_i] mod 4.
// Square brackets are mod 2 and everything is evaluated pointwise, so with t =
// #monomials true at x the cross term is C(t,2) mod 2 and N'_v is t mod 4.
inline Z4Function single_nega_exponent(const BooleanFunction& f, int v) {
    auto [nv, q] = f.neighbor_decomposition(v);
    (void)q;
    std::size_t size = std::size_t{1} << f.n();
    std::vector<std::uint8_t> monomial_count(size, 0);
    for (Monomial m : nv.anf()) {
        std::uint32_t m_idx = var_to_index_mask(m, f.n());
        for (std::size_t x = 0; x < size; ++x)
            if ((x & m_idx) == m_idx) monomial_count[x]++;
    }
    auto tt = f.to_truth_table();
    std::uint32_t v_idx = index_bit(f.n(), v);
    std::vector<std::uint8_t> out(size);
    for (std::size_t x = 0; x < size; ++x) {
        int t = monomial_count[x];
        int cross = (t * (t - 1) / 2) & 1;
        int val = 2 * ((tt[x] + cross) & 1) + 3 * t + 3 * ((x & v_idx) ? 1 : 0);
        out[x] = static_cast<std::uint8_t>(val & 3);
    }
    return Z4Function(f.n(), std::move(out));
}

struct SingleNegaCheck {
    bool ok = true;
    std::uint32_t first_fail_index = 0;
};

// Exact check that U_v (-1)^{p(x)} = w * i^{p'(x)} with p' from single_nega_exponent.
// The global phase of a single N application is exactly w, so the expected
// unnormalised entry is sqrt2 * w * i^{p'} = (1+i) * w^{2 p'}.
inline SingleNegaCheck verify_single_nega_identity(const BooleanFunction& f, int v) {
    SpectralVector s = bipolar(f);
    apply_kernel_inplace(s, v, kernels::N);
    Z4Function pprime = single_nega_exponent(f, v);
    const CyclotomicInt one_plus_i{1, 0, 1, 0};
    for (std::size_t x = 0; x < s.size(); ++x) {
        CyclotomicInt want = one_plus_i * omega_power(2 * pprime.values[x]);
        if (!(s[x] == want)) return {false, static_cast<std::uint32_t>(x)};
    }
    return {true, 0};
}

// Succeeds iff pz4(x) - 2 f2(x) is Z4-affine in the bits of x; the witness is
// the affine part that a D-element sweep strips after an N application.
inline std::optional<Z4AffinePart> z4_affine_difference(const Z4Function& pz4,
                                                        const BooleanFunction& f2) {
    if (pz4.n != f2.n()) throw std::invalid_argument("z4_affine_difference: mismatched n");
    int n = pz4.n;
    auto tt = f2.to_truth_table();
    std::size_t size = tt.size();
    std::vector<std::uint8_t> diff(size);
    for (std::size_t x = 0; x < size; ++x)
        diff[x] = static_cast<std::uint8_t>((pz4.values[x] + 4 - 2 * tt[x]) & 3);
    Z4AffinePart part;
    part.n = n;
    part.c0 = diff[0];
    for (int j = 0; j < n; ++j)
        part.coeffs[static_cast<std::size_t>(j)] =
            static_cast<std::uint8_t>((diff[index_bit(n, j)] + 4 - part.c0) & 3);
    for (std::size_t x = 0; x < size; ++x) {
        int acc = part.c0;
        for (int j = 0; j < n; ++j)
            if (x & index_bit(n, j)) acc += part.coeffs[static_cast<std::size_t>(j)];
        if ((acc & 3) != diff[x]) return std::nullopt;
    }
    return part;
}

// If a flat spectrum is, up to a tensor product of diagonal/anti-diagonal
// unitaries, the bipolar vector of a quadratic, extract that quadratic.  With
// phases e(x) in Z8 this means e(x) = e0 + sum_j a_j [x_j] + 4 [q(x)] for a
// purely quadratic q; input flips fold into the affine part, so the graph is
// recovered exactly.
inline std::optional<BooleanFunction> quadratic_from_spectrum(const SpectralVector& s) {
    if (!is_flat(s)) return std::nullopt;
    auto phases_opt = spectrum_phases(s);
    if (!phases_opt) return std::nullopt;
    const auto& e = *phases_opt;
    int n = s.n();
    std::size_t size = e.size();
    std::array<int, 16> lin{};
    for (int j = 0; j < n; ++j)
        lin[static_cast<std::size_t>(j)] = (e[index_bit(n, j)] + 8 - e[0]) & 7;
    std::vector<std::uint8_t> q(size);
    for (std::size_t x = 0; x < size; ++x) {
        int acc = (e[x] + 8 - e[0]) & 7;
        for (int j = 0; j < n; ++j)
            if (x & index_bit(n, j)) acc -= lin[static_cast<std::size_t>(j)];
        acc = ((acc % 8) + 8) & 7;
        if (acc != 0 && acc != 4) return std::nullopt;
        q[x] = acc ? 1 : 0;
    }
    BooleanFunction qf = BooleanFunction::from_truth_table(n, q);
    if (qf.degree() > 2) return std::nullopt;
    // constant and linear parts vanish by construction; keep the pure quadratic
    std::vector<Monomial> quad;
    for (Monomial m : qf.anf())
        if (popcount32(m) == 2) quad.push_back(m);
    return BooleanFunction(n, std::move(quad));
}

struct ExhaustiveCheck {
    std::uint64_t checks = 0;
    bool ok = true;
    std::string counterexample;  // empty when ok
};

inline constexpr int kSingleNegaExhaustiveCapVars = 4;

// Run verify_single_nega_identity over every function of exactly n variables and every
// vertex; 2^(2^n) * n checks, so n <= 4.
inline ExhaustiveCheck single_nega_identity_exhaustive(int n) {
    if (n < 1 || n > kSingleNegaExhaustiveCapVars)
        throw cap_exceeded("exhaustive single-N identity sweep capped at n <= 4");
    ExhaustiveCheck res;
    std::size_t table = std::size_t{1} << n;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << table); ++code) {
        std::vector<std::uint8_t> tt(table);
        for (std::size_t i = 0; i < table; ++i) tt[i] = (code >> i) & 1;
        BooleanFunction f = BooleanFunction::from_truth_table(n, tt);
        for (int v = 0; v < n; ++v) {
            ++res.checks;
            auto chk = verify_single_nega_identity(f, v);
            if (!chk.ok) {
                res.ok = false;
                res.counterexample = "f=" + f.to_string() + " v=" + std::to_string(v) +
                                     " index=" + std::to_string(chk.first_fail_index);
                return res;
            }
        }
    }
    return res;
}

// For every pure quadratic on n variables and every vertex, the spectral
// exponent of one N application must differ from twice the combinatorial LC
// image by a Z4-affine part only.
inline ExhaustiveCheck lc_reduction_exhaustive(int n) {
    if (n < 2 || n > 6) throw cap_exceeded("exhaustive LC-reduction sweep capped at 2 <= n <= 6");
    ExhaustiveCheck res;
    int edges = n * (n - 1) / 2;
    for (std::uint64_t key = 0; key < (std::uint64_t{1} << edges); ++key) {
        GraphState g = graph_from_key(n, key);
        BooleanFunction f = to_quadratic(g);
        for (int v = 0; v < n; ++v) {
            ++res.checks;
            BooleanFunction lc_img = to_quadratic(local_complement(g, v));
            if (!z4_affine_difference(single_nega_exponent(f, v), lc_img)) {
                res.ok = false;
                res.counterexample = "f=" + f.to_string() + " v=" + std::to_string(v);
                return res;
            }
        }
    }
    return res;
}

inline constexpr int kOrbitViaSpectraCapVars = 10;

// Sweep all 3^n spectra of (-1)^p and collect every quadratic that appears up
// to D-equivalence.  For quadratic p the labeled LC orbit is contained in the
// result.
inline std::set<BooleanFunction> orbit_via_spectra(const BooleanFunction& f) {
    if (f.degree() > 2) throw std::invalid_argument("orbit_via_spectra requires degree <= 2");
    if (f.n() > kOrbitViaSpectraCapVars)
        throw cap_exceeded("orbit_via_spectra capped at n <= 10, got n=" + std::to_string(f.n()));
    std::set<BooleanFunction> out;
    for_each_ihn_spectrum(f, [&](const TransformSpec&, const SpectralVector& s) {
        if (auto q = quadratic_from_spectrum(s)) out.insert(*q);
    });
    return out;
}

}  // namespace ihn
