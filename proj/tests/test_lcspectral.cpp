#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ihn/lcspectral.hpp"

using namespace ihn;

namespace {
BooleanFunction random_function(std::mt19937_64& rng, int n) {
    std::size_t size = std::size_t{1} << n;
    std::vector<std::uint8_t> t(size);
    for (auto& b : t) b = static_cast<std::uint8_t>(rng() & 1);
    return BooleanFunction::from_truth_table(n, t);
}
}  // namespace

TEST_CASE("mod-2 against mod-4 sums of bits") {
    // sum_i [A_i] mod 4 = [sum A_i] + 2 [sum_{i<j} A_i A_j] for bit tuples
    for (int len = 1; len <= 10; ++len) {
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            int t = popcount32(bits);
            int lhs = t & 3;
            int rhs = ((t & 1) + 2 * ((t * (t - 1) / 2) & 1)) & 3;
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("single-N exponent") {
    // isolated vertex: p' = 2[p] + 3[x_v]
    BooleanFunction f = BooleanFunction::parse("1.2", 3);
    Z4Function p = single_nega_exponent(f, 0);
    auto tt = f.to_truth_table();
    for (std::size_t x = 0; x < 8; ++x) {
        int xv = (x >> 2) & 1;  // variable 0 is the index MSB
        REQUIRE(p.values[x] == ((2 * tt[x] + 3 * xv) & 3));
    }

    // f = x0x1, v = 0: p' = 2[x0x1] + 3[x1] + 3[x0]
    BooleanFunction g = BooleanFunction::parse("0.1", 2);
    Z4Function q = single_nega_exponent(g, 0);
    for (std::size_t x = 0; x < 4; ++x) {
        int x0 = (x >> 1) & 1, x1 = x & 1;
        REQUIRE(q.values[x] == ((2 * (x0 & x1) + 3 * x1 + 3 * x0) & 3));
    }
}

TEST_CASE("single-N exponent identity, exhaustive small n") {
    for (int n = 1; n <= 4; ++n) {
        auto res = single_nega_identity_exhaustive(n);
        INFO(res.counterexample);
        REQUIRE(res.ok);
        REQUIRE(res.checks == (std::uint64_t{1} << (std::size_t{1} << n)) * static_cast<unsigned>(n));
    }
    CHECK(single_nega_identity_exhaustive(3).checks == 768);
    CHECK_THROWS_AS(single_nega_identity_exhaustive(5), cap_exceeded);
}

TEST_CASE("single-N exponent identity, spot and random checks") {
    CHECK(verify_single_nega_identity(BooleanFunction::parse("0.1.2", 3), 0).ok);
    CHECK(verify_single_nega_identity(BooleanFunction::parse("", 2), 0).ok);
    CHECK(verify_single_nega_identity(BooleanFunction::parse("", 2), 1).ok);

    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 2000; ++trial) {
        int n = 5 + static_cast<int>(rng() % 2);
        BooleanFunction f = random_function(rng, n);
        int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        auto chk = verify_single_nega_identity(f, v);
        INFO("f=" << f.to_string() << " v=" << v << " at " << chk.first_fail_index);
        REQUIRE(chk.ok);
    }
}

TEST_CASE("z4 affine differences") {
    BooleanFunction f2 = BooleanFunction::parse("0.1", 2);
    Z4Function twice = Z4Function::from_boolean_doubled(f2);
    auto part = z4_affine_difference(twice, f2);
    REQUIRE(part.has_value());
    CHECK(part->c0 == 0);
    CHECK(part->coeffs[0] == 0);
    CHECK(part->coeffs[1] == 0);

    // 2 (f2 + x0x1) against f2 is not affine
    BooleanFunction g = BooleanFunction::parse("0.1+1.2", 3);
    Z4Function bad = Z4Function::from_boolean_doubled(g.add_affine(0, 0));
    CHECK(!z4_affine_difference(bad, BooleanFunction::parse("1.2", 3)).has_value());

    // spectral vs combinatorial LC, exhaustive n <= 4
    for (int n = 2; n <= 4; ++n) {
        auto res = lc_reduction_exhaustive(n);
        INFO(res.counterexample);
        REQUIRE(res.ok);
    }

    // quadratics with affine parts also reduce
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);
        GraphState gs = from_quadratic(to_quadratic(graph_from_key(
            n, rng() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1))));
        BooleanFunction fq = to_quadratic(gs).add_affine(
            static_cast<std::uint32_t>(rng()) & ((1u << n) - 1), static_cast<int>(rng() & 1));
        int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        BooleanFunction lc_img = to_quadratic(local_complement(gs, v));
        REQUIRE(z4_affine_difference(single_nega_exponent(fq, v), lc_img).has_value());
    }
}

TEST_CASE("orbit recovery from spectra") {
    // x0x1: the recovered set contains the labeled orbit
    BooleanFunction f = BooleanFunction::parse("0.1", 2);
    auto rec = orbit_via_spectra(f);
    for (const GraphState& m : lc_orbit(from_quadratic(f), false))
        REQUIRE(rec.count(to_quadratic(m)) == 1);

    // star n=4 recovers the complete graph
    BooleanFunction star = BooleanFunction::parse("01,02,03", 4);
    auto rec4 = orbit_via_spectra(star);
    CHECK(rec4.count(BooleanFunction::parse("01,02,03,12,13,23", 4)) == 1);

    // every recovered member lies in the same LC orbit (same canonical orbit key)
    std::uint64_t orbit_key = labeled_key(lc_orbit(from_quadratic(star), true).front());
    for (const BooleanFunction& q : rec4) {
        auto member_orbit = lc_orbit(from_quadratic(q), true);
        REQUIRE(labeled_key(member_orbit.front()) == orbit_key);
    }

    CHECK_THROWS_AS(orbit_via_spectra(BooleanFunction::parse("0.1.2", 3)), std::invalid_argument);
}

TEST_CASE("labeled orbit is contained in the spectral recovery, all connected n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        int edges = n * (n - 1) / 2;
        for (std::uint64_t key = 0; key < (std::uint64_t{1} << edges); ++key) {
            GraphState g = graph_from_key(n, key);
            if (!g.is_connected()) continue;
            BooleanFunction f = to_quadratic(g);
            auto rec = orbit_via_spectra(f);
            for (const GraphState& m : lc_orbit(g, false)) REQUIRE(rec.count(to_quadratic(m)) == 1);
        }
    }
}
