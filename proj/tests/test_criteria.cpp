#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ihn/criteria.hpp"
#include "ihn/lcspectral.hpp"

using namespace ihn;

namespace {
BooleanFunction random_function(std::mt19937_64& rng, int n) {
    std::size_t size = std::size_t{1} << n;
    std::vector<std::uint8_t> t(size);
    for (auto& b : t) b = static_cast<std::uint8_t>(rng() & 1);
    return BooleanFunction::from_truth_table(n, t);
}

std::vector<BooleanFunction> all_functions(int n) {
    std::size_t table = std::size_t{1} << n;
    std::vector<BooleanFunction> fs;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << table); ++code) {
        std::vector<std::uint8_t> tt(table);
        for (std::size_t i = 0; i < table; ++i) tt[i] = (code >> i) & 1;
        fs.push_back(BooleanFunction::from_truth_table(n, tt));
    }
    return fs;
}
}  // namespace

TEST_CASE("bent basics") {
    CHECK(is_bent(BooleanFunction::parse("0.1", 2)));
    CHECK(is_bent(BooleanFunction::parse("0.1+2.3", 4)));
    CHECK(!is_bent(BooleanFunction::parse("0.1+1.2", 3)));
    for (int n = 3; n <= 5; n += 2) {
        std::mt19937_64 rng(static_cast<unsigned>(n));
        for (int trial = 0; trial < 50; ++trial)
            CHECK(!is_bent_spectral(random_function(rng, n)));  // odd n is never bent
    }
}

TEST_CASE("bent4 on quadratics and the cubic counterexamples") {
    // every quadratic with n <= 4 is bent4, and rank/spectral paths agree
    for (int n = 2; n <= 4; ++n) {
        int edges = n * (n - 1) / 2;
        for (std::uint64_t key = 0; key < (std::uint64_t{1} << edges); ++key) {
            BooleanFunction f = to_quadratic(graph_from_key(n, key));
            auto spec = is_bent4_spectral(f);
            auto rank = is_bent4_rank(f);
            REQUIRE(spec.value);
            REQUIRE(rank.value);
            REQUIRE(spec.witness == rank.witness);  // same lexicographic witness
        }
    }
    CHECK(!is_bent4(BooleanFunction::parse("0.1.2", 3)).value);
}

TEST_CASE("z4-bent and completely-I-bent nonexistence, exhaustive n <= 3") {
    for (int n = 1; n <= 3; ++n)
        for (const BooleanFunction& f : all_functions(n)) {
            REQUIRE(!is_z4_bent(f));
            REQUIRE(!is_completely_ibent(f));
            REQUIRE(!is_completely_ibent4(f));
        }
    // the n-1 fixing already breaks x0x1
    CHECK(!is_completely_ibent(BooleanFunction::parse("0.1", 2)));
}

TEST_CASE("ibent universality for quadratics and the rank path") {
    // every function of degree exactly 2 is I-bent; the degenerate empty
    // graph is not (no principal submatrix can reach full rank), and both
    // decision paths agree on everything
    for (int n = 2; n <= 5; ++n) {
        int edges = n * (n - 1) / 2;
        for (std::uint64_t key = 0; key < (std::uint64_t{1} << edges); ++key) {
            GraphState g = graph_from_key(n, key);
            BooleanFunction f = to_quadratic(g);
            auto spec = is_ibent_spectral(f);
            auto rank = is_ibent_rank(f);
            REQUIRE(spec.value == (g.edge_count() > 0));
            REQUIRE(rank.value == spec.value);
            if (spec.value) REQUIRE(spec.witness == rank.witness);
        }
    }
}

TEST_CASE("ibent4 universality") {
    for (int n = 1; n <= 3; ++n)
        for (const BooleanFunction& f : all_functions(n)) {
            auto got = is_ibent4_spectral(f);
            REQUIRE(got.value);
        }
    // single-N witness: R_I all but v, R_N = {v} is always flat
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 8;
        BooleanFunction f = random_function(rng, n);
        int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        SpectralVector s = bipolar(f);
        apply_kernel_inplace(s, v, kernels::N);
        REQUIRE(is_flat(s));
    }
}

TEST_CASE("spectral flatness equals modified-rank, all quadratics and partitions, n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        int edges = n * (n - 1) / 2;
        std::uint32_t all = (1u << n) - 1;
        for (std::uint64_t key = 0; key < (std::uint64_t{1} << edges); ++key) {
            GraphState g = graph_from_key(n, key);
            BooleanFunction f = to_quadratic(g);
            SpectralVector base = bipolar(f);
            for (std::uint32_t theta = 0; theta < (1u << n); ++theta) {
                std::uint32_t rest = all & ~theta;
                for (std::uint32_t v = rest;; v = (v - 1) & rest) {
                    bool flat = is_flat(apply_transform(base, TransformSpec(n, rest & ~v, v)));
                    BitMatrix m = principal_submatrix(modified_diagonal(g, v), theta);
                    REQUIRE(flat == (gf2_rank(m) == m.n));
                    if (v == 0) break;
                }
            }
        }
    }
}

TEST_CASE("lc-bent decisions") {
    auto star = is_lc_bent(from_quadratic(BooleanFunction::parse("01,02,03", 4)));
    CHECK(star.value);
    REQUIRE(star.witness.has_value());
    CHECK(gf2_rank(*star.witness) == 4);

    auto t6 = is_lc_bent(from_quadratic(BooleanFunction::parse("04,15,25,34,45", 6)));
    CHECK(!t6.value);

    // all connected quadratics with n <= 5 are LC-bent
    for (int n = 2; n <= 5; ++n) {
        int edges = n * (n - 1) / 2;
        for (std::uint64_t key = 0; key < (std::uint64_t{1} << edges); ++key) {
            GraphState g = graph_from_key(n, key);
            if (!g.is_connected()) continue;
            REQUIRE(is_lc_bent(g).value);
        }
    }
}

TEST_CASE("classify reports the hierarchy") {
    CriteriaReport r = classify(BooleanFunction::parse("0.1", 2));
    CHECK(r.bent);
    CHECK(r.bent4);
    CHECK(r.ibent);
    CHECK(r.ibent4);
    CHECK(!r.z4_bent);
    CHECK(!r.completely_ibent);
    CHECK(!r.completely_ibent4);
    REQUIRE(r.lc_bent.has_value());
    CHECK(*r.lc_bent);
    CHECK(r.bent4_c == 0);

    CriteriaReport c = classify(BooleanFunction::parse("0.1.2", 3));
    CHECK(!c.bent);
    CHECK(!c.bent4);
    CHECK(!c.ibent);
    CHECK(c.ibent4);
    CHECK(!c.lc_bent.has_value());

    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        CriteriaReport rep = classify(random_function(rng, n));
        if (rep.bent) {
            REQUIRE(rep.bent4);
            REQUIRE(rep.ibent);
        }
        if (rep.bent4 || rep.ibent) REQUIRE(rep.ibent4);
        REQUIRE(!rep.z4_bent);
        REQUIRE(!rep.completely_ibent);
        REQUIRE(!rep.completely_ibent4);
    }
}

TEST_CASE("family index space") {
    FamilySpec f53(5, 3);
    CHECK(f53.top.size() == 10);
    CHECK(f53.lower.size() == 10);
    CHECK(f53.size() == (std::uint64_t{1} << 20) - (std::uint64_t{1} << 10));

    FamilySpec f33(3, 3);
    CHECK(f33.size() == 8);
    for (std::uint64_t i = 0; i < f33.size(); ++i) {
        BooleanFunction f = f33.member(i);
        REQUIRE(f.degree() == 3);
        for (Monomial m : f.anf()) REQUIRE(popcount32(m) >= 2);
    }

    // members enumerate without repetition
    FamilySpec f43(4, 3);
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < f43.size(); ++i) seen.insert(f43.member(i).to_string());
    CHECK(seen.size() == f43.size());
    CHECK(f43.size() == 15 * 64);

    CHECK_THROWS_AS(FamilySpec(4, 5), std::invalid_argument);
}

TEST_CASE("census counts and caps") {
    CHECK(census(FamilySpec(3, 3), Criterion::bent4) == 0);
    CHECK(census(FamilySpec(4, 3), Criterion::ibent) == 416);
    CHECK(census(FamilySpec(4, 3), Criterion::bent4) == 0);
    CHECK(census(FamilySpec(4, 4), Criterion::ibent) == 0);

    // deterministic under any shard/thread mix
    CensusOptions one;
    one.threads = 1;
    CensusOptions sharded;
    sharded.threads = 3;
    sharded.shards = 7;
    std::vector<std::uint64_t> partial;
    CHECK(census(FamilySpec(4, 3), Criterion::ibent, one) ==
          census(FamilySpec(4, 3), Criterion::ibent, sharded, &partial));
    CHECK(partial.size() == 7);
    std::uint64_t sum = 0;
    for (auto c : partial) sum += c;
    CHECK(sum == 416);

    CHECK_THROWS_AS(census(FamilySpec(6, 3), Criterion::bent4), cap_exceeded);
}

TEST_CASE("criterion names round-trip") {
    for (Criterion c : {Criterion::bent, Criterion::bent4, Criterion::z4bent, Criterion::ibent,
                        Criterion::completely_ibent, Criterion::ibent4, Criterion::completely_ibent4})
        CHECK(criterion_from_name(criterion_name(c)) == c);
    CHECK(!criterion_from_name("nope").has_value());
}
