#pragma once

// Exact arithmetic in Z[w], w = e^{2*pi*i/8}, and in Z[sqrt(2)].  Every
// flatness decision in this library reduces to integer equality here; there
// is no floating point anywhere on a decision path.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ihn {

namespace detail {
inline std::int64_t add_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclo: integer overflow in add");
    return r;
}
inline std::int64_t sub_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("cyclo: integer overflow in sub");
    return r;
}
inline std::int64_t mul_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclo: integer overflow in mul");
    return r;
}
}  // namespace detail

// p + q*sqrt(2) with integer p, q.  Equality is componentwise (sqrt(2) is
// irrational, so the representation is unique).
struct RootTwoInt {
    std::int64_t p = 0;
    std::int64_t q = 0;

    friend bool operator==(const RootTwoInt&, const RootTwoInt&) = default;

    RootTwoInt operator+(const RootTwoInt& o) const {
        return {detail::add_ck(p, o.p), detail::add_ck(q, o.q)};
    }
    RootTwoInt operator-(const RootTwoInt& o) const {
        return {detail::sub_ck(p, o.p), detail::sub_ck(q, o.q)};
    }
    // (p + q*sqrt2)(p' + q'*sqrt2) = (pp' + 2qq') + (pq' + qp')*sqrt2
    RootTwoInt operator*(const RootTwoInt& o) const {
        using namespace detail;
        return {add_ck(mul_ck(p, o.p), mul_ck(2, mul_ck(q, o.q))),
                add_ck(mul_ck(p, o.q), mul_ck(q, o.p))};
    }

    bool is_zero() const { return p == 0 && q == 0; }

    // Exact sign of p + q*sqrt(2): -1, 0 or +1.
    int sign() const {
        if (p == 0 && q == 0) return 0;
        if (p >= 0 && q >= 0) return 1;
        if (p <= 0 && q <= 0) return -1;
        // opposite signs: compare p^2 against 2 q^2 in 128 bits
        __int128 p2 = static_cast<__int128>(p) * p;
        __int128 q2 = static_cast<__int128>(q) * q * 2;
        if (p > 0) return p2 > q2 ? 1 : (p2 == q2 ? 0 : -1);  // p2 == q2 impossible for q != 0
        return p2 < q2 ? 1 : -1;
    }
    bool is_nonnegative() const { return sign() >= 0; }

    std::string to_string() const {
        std::string s = std::to_string(p);
        if (q >= 0)
            s += "+" + std::to_string(q) + "*sqrt2";
        else
            s += std::to_string(q) + "*sqrt2";
        return s;
    }
};

// a0 + a1*w + a2*w^2 + a3*w^3 in the degree-<=3 basis; w^4 = -1 is applied
// eagerly so the representation is unique.  Coefficients are checked 64-bit
// integers: spectral entries for n <= 16 stay far below the limit, the check
// is there so an overflow can never wrap silently.
struct CyclotomicInt {
    std::array<std::int64_t, 4> c{0, 0, 0, 0};

    constexpr CyclotomicInt() = default;
    constexpr CyclotomicInt(std::int64_t a0, std::int64_t a1, std::int64_t a2, std::int64_t a3)
        : c{a0, a1, a2, a3} {}
    static constexpr CyclotomicInt from_int(std::int64_t v) { return {v, 0, 0, 0}; }

    friend bool operator==(const CyclotomicInt&, const CyclotomicInt&) = default;

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

    CyclotomicInt operator+(const CyclotomicInt& o) const {
        using detail::add_ck;
        return {add_ck(c[0], o.c[0]), add_ck(c[1], o.c[1]), add_ck(c[2], o.c[2]), add_ck(c[3], o.c[3])};
    }
    CyclotomicInt operator-(const CyclotomicInt& o) const {
        using detail::sub_ck;
        return {sub_ck(c[0], o.c[0]), sub_ck(c[1], o.c[1]), sub_ck(c[2], o.c[2]), sub_ck(c[3], o.c[3])};
    }
    CyclotomicInt operator-() const {
        using detail::sub_ck;
        return {sub_ck(0, c[0]), sub_ck(0, c[1]), sub_ck(0, c[2]), sub_ck(0, c[3])};
    }

    // negacyclic convolution of length 4 (w^4 = -1)
    CyclotomicInt operator*(const CyclotomicInt& o) const {
        using namespace detail;
        const auto& a = c;
        const auto& b = o.c;
        CyclotomicInt r;
        r.c[0] = sub_ck(mul_ck(a[0], b[0]),
                        add_ck(mul_ck(a[1], b[3]), add_ck(mul_ck(a[2], b[2]), mul_ck(a[3], b[1]))));
        r.c[1] = sub_ck(add_ck(mul_ck(a[0], b[1]), mul_ck(a[1], b[0])),
                        add_ck(mul_ck(a[2], b[3]), mul_ck(a[3], b[2])));
        r.c[2] = sub_ck(add_ck(mul_ck(a[0], b[2]), add_ck(mul_ck(a[1], b[1]), mul_ck(a[2], b[0]))),
                        mul_ck(a[3], b[3]));
        r.c[3] = add_ck(add_ck(mul_ck(a[0], b[3]), mul_ck(a[1], b[2])),
                        add_ck(mul_ck(a[2], b[1]), mul_ck(a[3], b[0])));
        return r;
    }

    CyclotomicInt scaled(std::int64_t k) const {
        using detail::mul_ck;
        return {mul_ck(c[0], k), mul_ck(c[1], k), mul_ck(c[2], k), mul_ck(c[3], k)};
    }

    // complex conjugation: w -> w^7 = -w^3
    CyclotomicInt conj() const {
        using detail::sub_ck;
        return {c[0], sub_ck(0, c[3]), sub_ck(0, c[2]), sub_ck(0, c[1])};
    }

    // multiplication by i = w^2 (coefficient rotation), cheaper than operator*
    CyclotomicInt times_i() const {
        using detail::sub_ck;
        return {sub_ck(0, c[2]), sub_ck(0, c[3]), c[0], c[1]};
    }

    CyclotomicInt times_i_pow(int m) const {
        switch (m & 3) {
            case 1: return times_i();
            case 2: return -*this;
            case 3: return -times_i();
            default: return *this;
        }
    }

    // x * conj(x) = (sum a_i^2) + (a0a1 + a1a2 + a2a3 - a0a3) * sqrt2
    RootTwoInt norm_sq() const {
        using namespace detail;
        std::int64_t p = add_ck(add_ck(mul_ck(c[0], c[0]), mul_ck(c[1], c[1])),
                                add_ck(mul_ck(c[2], c[2]), mul_ck(c[3], c[3])));
        std::int64_t q = sub_ck(add_ck(mul_ck(c[0], c[1]),
                                       add_ck(mul_ck(c[1], c[2]), mul_ck(c[2], c[3]))),
                                mul_ck(c[0], c[3]));
        return {p, q};
    }

    std::string to_string() const {
        std::string s = std::to_string(c[0]);
        s += (c[1] < 0 ? " - " : " + ") + std::to_string(c[1] < 0 ? -c[1] : c[1]) + "*w";
        s += (c[2] < 0 ? " - " : " + ") + std::to_string(c[2] < 0 ? -c[2] : c[2]) + "*w^2";
        s += (c[3] < 0 ? " - " : " + ") + std::to_string(c[3] < 0 ? -c[3] : c[3]) + "*w^3";
        return s;
    }
};

// w^e reduced into the basis, any integer exponent
inline CyclotomicInt omega_power(int e) {
    int k = ((e % 8) + 8) % 8;
    CyclotomicInt r;
    if (k < 4)
        r.c[static_cast<std::size_t>(k)] = 1;
    else
        r.c[static_cast<std::size_t>(k - 4)] = -1;
    return r;
}

inline const CyclotomicInt kOne = CyclotomicInt::from_int(1);
inline const CyclotomicInt kImag = omega_power(2);
inline const CyclotomicInt kSqrt2 = CyclotomicInt{0, 1, 0, -1};  // w - w^3

}  // namespace ihn
