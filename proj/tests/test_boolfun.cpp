#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ihn/boolfun.hpp"

using namespace ihn;

namespace {
// pointwise ANF evaluation, an independent route to the truth table
std::vector<std::uint8_t> eval_table(const BooleanFunction& f) {
    std::size_t size = std::size_t{1} << f.n();
    std::vector<std::uint8_t> t(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::uint32_t x_vars = index_to_var_mask(static_cast<std::uint32_t>(idx), f.n());
        t[idx] = static_cast<std::uint8_t>(f.evaluate(x_vars));
    }
    return t;
}

BooleanFunction random_function(std::mt19937_64& rng, int n) {
    std::size_t size = std::size_t{1} << n;
    std::vector<std::uint8_t> t(size);
    for (auto& b : t) b = static_cast<std::uint8_t>(rng() & 1);
    return BooleanFunction::from_truth_table(n, t);
}
}  // namespace

TEST_CASE("parse compact pairs") {
    BooleanFunction f = BooleanFunction::parse("04,15,25,34,45", 6);
    std::vector<Monomial> want = {0b010001, 0b100010, 0b100100, 0b011000, 0b110000};
    std::sort(want.begin(), want.end());
    CHECK(f.anf() == want);
    CHECK(f.degree() == 2);
}

TEST_CASE("parse general format and zero function") {
    CHECK(BooleanFunction::parse("", 3).anf().empty());
    BooleanFunction f = BooleanFunction::parse("0.1+1.2", 3);
    CHECK(f.anf() == std::vector<Monomial>{0b011, 0b110});
    BooleanFunction g = BooleanFunction::parse("0.1.2+3+1c", 4);
    CHECK(g.contains(0b0111));
    CHECK(g.contains(0b1000));
    CHECK(g.contains(0));
    // multi-digit indices in the general format
    BooleanFunction h = BooleanFunction::parse("10.11", 12);
    CHECK(h.anf() == std::vector<Monomial>{0b110000000000});
}

TEST_CASE("parse rejects bad input") {
    CHECK_THROWS_AS(BooleanFunction::parse("04,15", 4), std::invalid_argument);   // index 5 >= 4
    CHECK_THROWS_AS(BooleanFunction::parse("3", 3), std::invalid_argument);       // index 3 >= 3
    CHECK_THROWS_AS(BooleanFunction::parse("0a", 4), std::invalid_argument);
    CHECK_THROWS_AS(BooleanFunction::parse("0..1", 4), std::invalid_argument);
    CHECK_THROWS_AS(BooleanFunction::parse("0.1+0.1", 4), std::invalid_argument); // GF(2) coeffs
    CHECK_THROWS_AS(BooleanFunction::parse("00", 4), std::invalid_argument);      // repeated variable
    CHECK_THROWS_AS(BooleanFunction::parse("01,23", 11), std::invalid_argument);  // compact needs n <= 10
    CHECK_THROWS_AS(BooleanFunction::parse("0.1", 0), std::invalid_argument);
    CHECK_THROWS_AS(BooleanFunction::parse("0.1", 17), std::invalid_argument);
}

TEST_CASE("truth tables under the MSB-first index order") {
    CHECK(BooleanFunction::parse("0.1", 2).to_truth_table() == std::vector<std::uint8_t>{0, 0, 0, 1});
    CHECK(BooleanFunction::parse("1c", 1).to_truth_table() == std::vector<std::uint8_t>{1, 1});
    auto t = BooleanFunction::parse("0.1.2", 3).to_truth_table();
    for (std::size_t i = 0; i < 8; ++i) CHECK(t[i] == (i == 7 ? 1 : 0));
    // x0 alone: the MSB of the index
    CHECK(BooleanFunction::parse("0", 2).to_truth_table() == std::vector<std::uint8_t>{0, 0, 1, 1});
}

TEST_CASE("moebius transform is an involution") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10000; ++trial) {
        int n = 1 + static_cast<int>(rng() % 10);
        BooleanFunction f = random_function(rng, n);
        auto tt = f.to_truth_table();
        REQUIRE(tt == eval_table(f));  // table route vs pointwise route
        REQUIRE(BooleanFunction::from_truth_table(n, tt) == f);
    }
}

TEST_CASE("restriction") {
    BooleanFunction f = BooleanFunction::parse("0.1+2", 3);
    BooleanFunction r = f.restrict_vars(0b100, 0b100);  // x2 := 1
    CHECK(r == BooleanFunction::parse("0.1+1c", 2));
    CHECK(BooleanFunction::parse("0.1", 2).restrict_vars(0b01, 0).anf().empty());  // x0 := 0
    // substitute x0 := 1 in x0x1 + x0x2 + x1x2 and reduce mod 2
    BooleanFunction g = BooleanFunction::parse("0.1+0.2+1.2", 3).restrict_vars(0b001, 0b001);
    CHECK(g == BooleanFunction::parse("0+1+0.1", 2));
    // cross-check against the truth-table route on random functions
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        BooleanFunction h = random_function(rng, n);
        std::uint32_t fixed = static_cast<std::uint32_t>(rng()) & ((1u << n) - 1);
        if (popcount32(fixed) == n) fixed &= fixed - 1;
        std::uint32_t r_bits = static_cast<std::uint32_t>(rng()) & fixed;
        BooleanFunction got = h.restrict_vars(fixed, r_bits);
        // evaluate both sides at every remaining point
        int m = n - popcount32(fixed);
        for (std::uint32_t y = 0; y < (1u << m); ++y) {
            std::uint32_t x = r_bits;
            int pos = 0;
            for (int j = 0; j < n; ++j) {
                if (fixed & (1u << j)) continue;
                if (y & (1u << pos)) x |= 1u << j;
                ++pos;
            }
            REQUIRE(got.evaluate(y) == h.evaluate(x));
        }
    }
}

TEST_CASE("neighbor decomposition") {
    auto [nv, q] = BooleanFunction::parse("0.1+1.2", 3).neighbor_decomposition(0);
    CHECK(nv == BooleanFunction::parse("1", 3));
    CHECK(q == BooleanFunction::parse("1.2", 3));
    auto [nv2, q2] = BooleanFunction::parse("1.2", 3).neighbor_decomposition(0);
    CHECK(nv2.anf().empty());
    CHECK(q2 == BooleanFunction::parse("1.2", 3));
    auto [nv3, q3] = BooleanFunction::parse("0.1.2+0.3+1", 4).neighbor_decomposition(0);
    CHECK(nv3 == BooleanFunction::parse("1.2+3", 4));
    CHECK(q3 == BooleanFunction::parse("1", 4));

    // x_v * Nv + q reproduces f on all points
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        BooleanFunction f = random_function(rng, n);
        int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        auto [nv_r, q_r] = f.neighbor_decomposition(v);
        for (std::uint32_t x = 0; x < (1u << n); ++x) {
            int xv = (x >> v) & 1;
            REQUIRE(((xv & nv_r.evaluate(x)) ^ q_r.evaluate(x)) == f.evaluate(x));
            // both parts ignore x_v
            REQUIRE(nv_r.evaluate(x) == nv_r.evaluate(x ^ (1u << v)));
            REQUIRE(q_r.evaluate(x) == q_r.evaluate(x ^ (1u << v)));
        }
    }
}

TEST_CASE("affine offset and input shift") {
    CHECK(BooleanFunction::parse("0.1", 2).add_affine(0b01, 1) ==
          BooleanFunction::parse("0.1+0+1c", 2));
    CHECK(BooleanFunction::parse("0.1", 2).shift_input(0) == BooleanFunction::parse("0.1", 2));
    // (x0+1) x1 = x0 x1 + x1
    CHECK(BooleanFunction::parse("0.1", 2).shift_input(0b01) == BooleanFunction::parse("0.1+1", 2));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        BooleanFunction f = random_function(rng, n);
        std::uint32_t a = static_cast<std::uint32_t>(rng()) & ((1u << n) - 1);
        BooleanFunction g = f.shift_input(a);
        REQUIRE(g.shift_input(a) == f);  // involution
        if (f.degree() >= 1) REQUIRE(g.degree() == f.degree());
        for (std::uint32_t x = 0; x < (1u << n); ++x) REQUIRE(g.evaluate(x) == f.evaluate(x ^ a));
    }
}

TEST_CASE("canonical serialization round-trips") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        BooleanFunction f = random_function(rng, n);
        REQUIRE(BooleanFunction::parse(f.to_string(), n) == f);
    }
    CHECK(BooleanFunction::parse("3+0.1.2+1c", 4).to_string() == "0.1.2+3+1c");
}

TEST_CASE("z4 tables") {
    BooleanFunction f = BooleanFunction::parse("0.1", 2);
    Z4Function z = Z4Function::from_boolean_doubled(f);
    CHECK(z.values == std::vector<std::uint8_t>{0, 0, 0, 2});
    CHECK(z.halves_to_boolean());
    CHECK(z.half() == f);
    Z4Function odd(1, {1, 2});
    CHECK(!odd.halves_to_boolean());
    CHECK_THROWS_AS(odd.half(), std::invalid_argument);
}
