#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ihn/cyclo.hpp"

using namespace ihn;

TEST_CASE("omega powers reduce into the basis") {
    CHECK(omega_power(0) == CyclotomicInt{1, 0, 0, 0});
    CHECK(omega_power(2) == CyclotomicInt{0, 0, 1, 0});  // i
    CHECK(omega_power(4) == CyclotomicInt{-1, 0, 0, 0});
    CHECK(omega_power(7) == CyclotomicInt{0, 0, 0, -1});  // w^7 = -w^3
    CHECK(omega_power(-1) == omega_power(7));
    for (int e = 0; e < 8; ++e) CHECK(omega_power(e) * omega_power(8 - e) == CyclotomicInt{1, 0, 0, 0});
}

TEST_CASE("ring basics") {
    CHECK(omega_power(1) * omega_power(3) == CyclotomicInt{-1, 0, 0, 0});
    CHECK(kImag * kImag == CyclotomicInt{-1, 0, 0, 0});
    CHECK(omega_power(1).conj() == CyclotomicInt{0, 0, 0, -1});
    CHECK(kSqrt2 * kSqrt2 == CyclotomicInt{2, 0, 0, 0});

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> coeff(-100, 100);
    auto rand_cyclo = [&] { return CyclotomicInt{coeff(rng), coeff(rng), coeff(rng), coeff(rng)}; };
    for (int trial = 0; trial < 2000; ++trial) {
        CyclotomicInt x = rand_cyclo(), y = rand_cyclo(), z = rand_cyclo();
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x.conj().conj() == x);
        CHECK((x * y).conj() == x.conj() * y.conj());
    }
}

TEST_CASE("norm_sq matches x * conj(x)") {
    CHECK((CyclotomicInt{1, 1, 0, 0}).norm_sq() == RootTwoInt{2, 1});  // |1+w|^2 = 2 + sqrt2
    CHECK((CyclotomicInt{0, 0, 0, 0}).norm_sq() == RootTwoInt{0, 0});
    for (int e = 0; e < 8; ++e) CHECK(omega_power(e).norm_sq() == RootTwoInt{1, 0});

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coeff(-100, 100);
    for (int trial = 0; trial < 100000; ++trial) {
        CyclotomicInt x{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
        CyclotomicInt y{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
        // the closed form against the ring route
        CyclotomicInt prod = x * x.conj();
        RootTwoInt nx = x.norm_sq();
        REQUIRE(prod == CyclotomicInt{nx.p, nx.q, 0, -nx.q});  // p + q(w - w^3)
        // multiplicativity
        REQUIRE((x * y).norm_sq() == nx * y.norm_sq());
        REQUIRE(nx.is_nonnegative());
    }
}

TEST_CASE("root-two sign is exact") {
    CHECK(RootTwoInt{0, 0}.sign() == 0);
    CHECK(RootTwoInt{1, -1}.sign() == -1);   // 1 - sqrt2 < 0
    CHECK(RootTwoInt{3, -2}.sign() == 1);    // 3 - 2 sqrt2 > 0
    CHECK(RootTwoInt{-3, 2}.sign() == -1);
    CHECK(RootTwoInt{-1, 1}.sign() == 1);    // sqrt2 - 1 > 0
    CHECK(RootTwoInt{7, -5}.sign() == -1);   // 7 < 5 sqrt2
}

TEST_CASE("overflow is detected, never wrapped") {
    CyclotomicInt big{std::int64_t{1} << 62, 0, 0, 0};
    CHECK_THROWS_AS(big + big, std::overflow_error);
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK_THROWS_AS(big.norm_sq(), std::overflow_error);
}

TEST_CASE("rendering") {
    CHECK(CyclotomicInt{1, -2, 0, 3}.to_string() == "1 - 2*w + 0*w^2 + 3*w^3");
    CHECK(RootTwoInt{2, 1}.to_string() == "2+1*sqrt2");
}
