#pragma once

// Tensor-product kernel application over exact cyclotomic entries, flatness,
// the full {I,H,N}^n sweep, Z4-offset Walsh-Hadamard transforms, and the
// periodic/negaperiodic autocorrelation tables.
//
// A SpectralVector never stores 2^(-e/2) numerically: entries stay in Z[w]
// and the scale exponent rides along symbolically, so the true amplitude at
// index k is entries[k] * 2^(-scale_e/2).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihn/boolfun.hpp"
#include "ihn/cyclo.hpp"
#include "ihn/util.hpp"

namespace ihn {

// One element of {I,H,N}^n as the partition (R_I, R_H, R_N); masks are
// variable masks (bit j = variable j), R_I is implied.
struct TransformSpec {
    int n = 1;
    std::uint32_t h_mask = 0;
    std::uint32_t n_mask = 0;

    TransformSpec() = default;
    TransformSpec(int n_, std::uint32_t h, std::uint32_t nm) : n(n_), h_mask(h), n_mask(nm) {
        std::uint32_t all = (std::uint32_t{1} << n) - 1;
        if ((h & nm) != 0 || (h | nm) & ~all)
            throw std::invalid_argument("transform spec masks must be disjoint subsets of {0..n-1}");
    }

    std::uint32_t i_mask() const { return ((std::uint32_t{1} << n) - 1) & ~(h_mask | n_mask); }

    static TransformSpec all_h(int n) { return TransformSpec(n, (std::uint32_t{1} << n) - 1, 0); }

    static TransformSpec from_string(const std::string& s) {
        if (s.empty() || s.size() > kMaxVars)
            throw std::invalid_argument("spec string must have length 1..16");
        std::uint32_t h = 0, nm = 0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            switch (s[j]) {
                case 'I': break;
                case 'H': h |= std::uint32_t{1} << j; break;
                case 'N': nm |= std::uint32_t{1} << j; break;
                default: throw std::invalid_argument("spec string may only contain I, H, N: " + s);
            }
        }
        return TransformSpec(static_cast<int>(s.size()), h, nm);
    }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(n), 'I');
        for (int j = 0; j < n; ++j) {
            if (h_mask & (std::uint32_t{1} << j)) s[static_cast<std::size_t>(j)] = 'H';
            if (n_mask & (std::uint32_t{1} << j)) s[static_cast<std::size_t>(j)] = 'N';
        }
        return s;
    }

    friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

// 2x2 kernel with entries in Z[w]; `scale` is 1 when the kernel carries a
// 1/sqrt2 factor.  The tag selects a butterfly fast path.
struct Kernel {
    enum class Tag { generic, identity, hadamard, nega };
    CyclotomicInt m00, m01, m10, m11;
    int scale = 0;
    Tag tag = Tag::generic;
    const char* name = "?";
};

namespace kernels {
inline const CyclotomicInt c0 = CyclotomicInt::from_int(0);
inline const CyclotomicInt c1 = CyclotomicInt::from_int(1);
inline const CyclotomicInt cm1 = CyclotomicInt::from_int(-1);
inline const CyclotomicInt ci = omega_power(2);
inline const CyclotomicInt cmi = omega_power(6);

inline const Kernel I{c1, c0, c0, c1, 0, Kernel::Tag::identity, "I"};
inline const Kernel H{c1, c1, c1, cm1, 1, Kernel::Tag::hadamard, "H"};
inline const Kernel N{c1, ci, c1, cmi, 1, Kernel::Tag::nega, "N"};
inline const Kernel SigmaX{c0, c1, c1, c0, 0, Kernel::Tag::generic, "sx"};
inline const Kernel SigmaZ{c1, c0, c0, cm1, 0, Kernel::Tag::generic, "sz"};
inline const Kernel SigmaY{c0, cmi, ci, c0, 0, Kernel::Tag::generic, "sy"};
// x = (-i sigma_x)^(1/2), z = (i sigma_z)^(1/2)
inline const Kernel X{cm1, ci, ci, cm1, 1, Kernel::Tag::generic, "x"};
inline const Kernel Z{omega_power(1), c0, c0, omega_power(3), 0, Kernel::Tag::generic, "z"};
inline const Kernel XZ{-omega_power(1), -omega_power(1), omega_power(3), -omega_power(3), 1,
                       Kernel::Tag::generic, "xz"};
}  // namespace kernels

class SpectralVector {
public:
    SpectralVector() = default;
    SpectralVector(int n, std::vector<CyclotomicInt> entries, int scale_e)
        : n_(n), scale_e_(scale_e), e_(std::move(entries)) {
        if (e_.size() != (std::size_t{1} << n_))
            throw std::invalid_argument("spectral vector must have 2^n entries");
    }

    int n() const { return n_; }
    int scale_e() const { return scale_e_; }
    std::size_t size() const { return e_.size(); }
    const CyclotomicInt& operator[](std::size_t i) const { return e_[i]; }
    CyclotomicInt& operator[](std::size_t i) { return e_[i]; }
    const std::vector<CyclotomicInt>& entries() const { return e_; }

    void bump_scale(int by) { scale_e_ += by; }

    // Parseval: sum of |entry|^2 must equal 2^(n + scale_e) for any vector
    // reached from a bipolar vector by unitary kernels.
    bool parseval_holds() const {
        RootTwoInt sum;
        for (const auto& z : e_) sum = sum + z.norm_sq();
        return sum == RootTwoInt{std::int64_t{1} << (n_ + scale_e_), 0};
    }

private:
    int n_ = 1;
    int scale_e_ = 0;
    std::vector<CyclotomicInt> e_;
};

// s_i = (-1)^{p(i)}
inline SpectralVector bipolar(const BooleanFunction& f) {
    auto tt = f.to_truth_table();
    std::vector<CyclotomicInt> e(tt.size());
    for (std::size_t i = 0; i < tt.size(); ++i) e[i] = CyclotomicInt::from_int(tt[i] ? -1 : 1);
    return SpectralVector(f.n(), std::move(e), 0);
}

inline void apply_kernel_inplace(SpectralVector& s, int pos, const Kernel& k) {
    if (pos < 0 || pos >= s.n()) throw std::invalid_argument("kernel position out of range");
    if (k.tag == Kernel::Tag::identity) return;
    const std::size_t size = s.size();
    const std::size_t stride = std::size_t{1} << (s.n() - 1 - pos);
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            CyclotomicInt a = s[base + off];
            CyclotomicInt b = s[base + off + stride];
            switch (k.tag) {
                case Kernel::Tag::hadamard:
                    s[base + off] = a + b;
                    s[base + off + stride] = a - b;
                    break;
                case Kernel::Tag::nega:
                    s[base + off] = a + b.times_i();
                    s[base + off + stride] = a - b.times_i();
                    break;
                default:
                    s[base + off] = k.m00 * a + k.m01 * b;
                    s[base + off + stride] = k.m10 * a + k.m11 * b;
                    break;
            }
        }
    }
    s.bump_scale(k.scale);
}

inline SpectralVector apply_kernel(const SpectralVector& s, int pos, const Kernel& k) {
    SpectralVector out = s;
    apply_kernel_inplace(out, pos, k);
    return out;
}

// one kernel per variable position
inline void apply_tensor_inplace(SpectralVector& s, const std::vector<const Kernel*>& per_pos) {
    if (static_cast<int>(per_pos.size()) != s.n())
        throw std::invalid_argument("apply_tensor: need one kernel per position");
    for (int j = 0; j < s.n(); ++j) apply_kernel_inplace(s, j, *per_pos[static_cast<std::size_t>(j)]);
}

inline void apply_transform_inplace(SpectralVector& s, const TransformSpec& spec) {
    if (spec.n != s.n()) throw std::invalid_argument("spec size does not match vector");
    for (int j = 0; j < s.n(); ++j) {
        std::uint32_t bit = std::uint32_t{1} << j;
        if (spec.h_mask & bit)
            apply_kernel_inplace(s, j, kernels::H);
        else if (spec.n_mask & bit)
            apply_kernel_inplace(s, j, kernels::N);
    }
}

inline SpectralVector apply_transform(const SpectralVector& s, const TransformSpec& spec) {
    SpectralVector out = s;
    apply_transform_inplace(out, spec);
    return out;
}

inline bool is_flat(const SpectralVector& s) {
    RootTwoInt want{std::int64_t{1} << s.scale_e(), 0};
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!(s[i].norm_sq() == want)) return false;
    return true;
}

inline SpectralVector wht(const BooleanFunction& f) {
    SpectralVector s = bipolar(f);
    apply_transform_inplace(s, TransformSpec::all_h(f.n()));
    return s;
}

// Multiply entry at x by the Z4-linear phase i^{c.x mod 4} (integer dot
// product of bit vectors) before the all-H transform.  This is exactly the
// {H,N} spec with R_N = support(c): N = H * diag(1, i), so peeling one
// diag(1, i) off every N position leaves the i^{sum of those bits} prefactor.
// A mod-2 reduction of the exponent would be a different transform and breaks
// the partition correspondence.
inline SpectralVector wht_z4_offset(const BooleanFunction& f, std::uint32_t c) {
    SpectralVector s = bipolar(f);
    std::uint32_t c_idx = var_to_index_mask(c, f.n());
    for (std::size_t x = 0; x < s.size(); ++x)
        s[x] = s[x].times_i_pow(popcount32(static_cast<std::uint32_t>(x) & c_idx));
    apply_transform_inplace(s, TransformSpec::all_h(f.n()));
    return s;
}

inline constexpr int kAllSpectraCapVars = 12;

// All 3^n spectra in lexicographic I < H < N order (position 0 is the most
// significant digit).  Prefix transforms are shared across the sweep.
inline void for_each_ihn_spectrum(
    const BooleanFunction& f,
    const std::function<void(const TransformSpec&, const SpectralVector&)>& fn) {
    int n = f.n();
    if (n > kAllSpectraCapVars)
        throw cap_exceeded("all-spectra sweep capped at n <= 12, got n=" + std::to_string(n));
    std::vector<SpectralVector> level(static_cast<std::size_t>(n) + 1);
    level[0] = bipolar(f);
    std::uint32_t h = 0, nm = 0;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            fn(TransformSpec(n, h, nm), level[static_cast<std::size_t>(depth)]);
            return;
        }
        std::uint32_t bit = std::uint32_t{1} << depth;
        auto& cur = level[static_cast<std::size_t>(depth)];
        auto& next = level[static_cast<std::size_t>(depth) + 1];
        next = cur;
        self(self, depth + 1);
        next = cur;
        apply_kernel_inplace(next, depth, kernels::H);
        h |= bit;
        self(self, depth + 1);
        h &= ~bit;
        next = cur;
        apply_kernel_inplace(next, depth, kernels::N);
        nm |= bit;
        self(self, depth + 1);
        nm &= ~bit;
    };
    rec(rec, 0);
}

inline constexpr int kPowerMultisetCapVars = 10;

struct RootTwoLess {
    bool operator()(const RootTwoInt& a, const RootTwoInt& b) const {
        return a.p != b.p ? a.p < b.p : a.q < b.q;
    }
};

// The complete multiset of 3^n * 2^n power-spectral values.  Powers are
// normalised exactly by scaling every |entry|^2 to the common denominator
// 2^n, i.e. the stored value is norm_sq * 2^(n - scale_e).
using PowerMultiset = std::map<RootTwoInt, std::uint64_t, RootTwoLess>;

inline PowerMultiset power_multiset(const BooleanFunction& f) {
    if (f.n() > kPowerMultisetCapVars)
        throw cap_exceeded("power multiset capped at n <= 10, got n=" + std::to_string(f.n()));
    PowerMultiset out;
    for_each_ihn_spectrum(f, [&](const TransformSpec&, const SpectralVector& s) {
        std::int64_t up = std::int64_t{1} << (f.n() - s.scale_e());
        for (std::size_t k = 0; k < s.size(); ++k) {
            RootTwoInt nrm = s[k].norm_sq();
            out[RootTwoInt{detail::mul_ck(nrm.p, up), detail::mul_ck(nrm.q, up)}]++;
        }
    });
    return out;
}

// A_k = sum_x (-1)^{p(x)+p(x+k)+sum_i chi_RN(i) k_i (x_i+1)}, k in index order
inline std::vector<std::int64_t> autocorrelation(const BooleanFunction& f, std::uint32_t h_mask,
                                                 std::uint32_t n_mask) {
    TransformSpec check(f.n(), h_mask, n_mask);  // validates masks
    if (check.i_mask() != 0)
        throw std::invalid_argument("autocorrelation: R_H and R_N must partition {0..n-1}");
    auto tt = f.to_truth_table();
    std::size_t size = tt.size();
    std::uint32_t n_idx = var_to_index_mask(n_mask, f.n());
    std::vector<std::int64_t> out(size, 0);
    for (std::uint32_t k = 0; k < size; ++k) {
        std::int64_t acc = 0;
        for (std::uint32_t x = 0; x < size; ++x) {
            int sgn = tt[x] ^ tt[x ^ k] ^ (popcount32(k & n_idx & ~x) & 1);
            acc += sgn ? -1 : 1;
        }
        out[k] = acc;
    }
    return out;
}

// Per-coset variant: the R_I bits of k choose the coset r (x_j = k_j for j in
// R_I), the remaining bits of k are the shift, which stays inside the coset.
// The spectrum of the (R_I, R_H, R_N) spec is flat iff every entry whose
// shift part is nonzero vanishes; entries with zero shift are the in-phase
// values 2^(n - wt(theta)) of each coset.
inline std::vector<std::int64_t> fixed_autocorrelation(const BooleanFunction& f, std::uint32_t i_mask,
                                                       std::uint32_t h_mask, std::uint32_t n_mask) {
    TransformSpec check(f.n(), h_mask, n_mask);
    if (check.i_mask() != i_mask)
        throw std::invalid_argument("fixed_autocorrelation: masks must partition {0..n-1}");
    auto tt = f.to_truth_table();
    std::size_t size = tt.size();
    std::uint32_t i_idx = var_to_index_mask(i_mask, f.n());
    std::uint32_t n_idx = var_to_index_mask(n_mask, f.n());
    std::vector<std::int64_t> out(size, 0);
    for (std::uint32_t k = 0; k < size; ++k) {
        std::uint32_t shift = k & ~i_idx;
        std::int64_t acc = 0;
        for (std::uint32_t x = 0; x < size; ++x) {
            if ((x & i_idx) != (k & i_idx)) continue;
            int sgn = tt[x] ^ tt[x ^ shift] ^ (popcount32(shift & n_idx & ~x) & 1);
            acc += sgn ? -1 : 1;
        }
        out[k] = acc;
    }
    return out;
}

// For a flat vector, every entry is sqrt2^scale_e * w^e; recover the phase
// exponents e(x) in Z8.  Returns nothing if the vector is not of that shape.
inline std::optional<std::vector<std::uint8_t>> spectrum_phases(const SpectralVector& s) {
    CyclotomicInt unit = CyclotomicInt::from_int(1);
    for (int i = 0; i < s.scale_e(); ++i) unit = unit * kSqrt2;
    std::array<CyclotomicInt, 8> ref;
    for (int e = 0; e < 8; ++e) ref[static_cast<std::size_t>(e)] = unit * omega_power(e);
    std::vector<std::uint8_t> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        bool found = false;
        for (int e = 0; e < 8 && !found; ++e) {
            if (s[k] == ref[static_cast<std::size_t>(e)]) {
                out[k] = static_cast<std::uint8_t>(e);
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact 2x2 matrix identities for the Clifford-style reduction rules.

struct Mat2 {
    CyclotomicInt a, b, c, d;  // [[a,b],[c,d]]
    int scale = 0;             // true matrix = M * 2^(-scale/2)

    static Mat2 from_kernel(const Kernel& k) { return {k.m00, k.m01, k.m10, k.m11, k.scale}; }
    static Mat2 identity() {
        return {CyclotomicInt::from_int(1), {}, {}, CyclotomicInt::from_int(1), 0};
    }
    static Mat2 diag(const CyclotomicInt& x, const CyclotomicInt& y) { return {x, {}, {}, y, 0}; }
    static Mat2 antidiag(const CyclotomicInt& x, const CyclotomicInt& y) { return {{}, x, y, {}, 0}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d,
                scale + o.scale};
    }
    Mat2 scaled(const CyclotomicInt& k) const { return {a * k, b * k, c * k, d * k, scale}; }
    Mat2 adjoint() const { return {a.conj(), c.conj(), b.conj(), d.conj(), scale}; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

// true(A) == true(B), bridging different scales with exact sqrt2 factors
inline bool equal_true(Mat2 a, Mat2 b) {
    if (a.scale < b.scale) std::swap(a, b);
    CyclotomicInt fac = CyclotomicInt::from_int(1);
    for (int i = b.scale; i < a.scale; ++i) fac = fac * kSqrt2;
    b = b.scaled(fac);
    b.scale = a.scale;
    return a == b;
}

// u ~ v  <=>  u = d v for some diagonal or anti-diagonal unitary d
inline bool equivalent_mod_d(const Mat2& u, const Mat2& v) {
    Mat2 w = u * v.adjoint();  // = d * 2^((su+sv)/2) when u ~ v
    RootTwoInt want{std::int64_t{1} << w.scale, 0};
    bool diag = w.b.is_zero() && w.c.is_zero() && w.a.norm_sq() == want && w.d.norm_sq() == want;
    bool anti = w.a.is_zero() && w.d.is_zero() && w.b.norm_sq() == want && w.c.norm_sq() == want;
    return diag || anti;
}

struct ReductionReport {
    struct Item {
        std::string name;
        bool ok;
    };
    std::vector<Item> items;
    bool all_ok = true;

    void add(const std::string& name, bool ok) {
        items.push_back({name, ok});
        all_ok = all_ok && ok;
    }
};

// Checks every claimed kernel relation as an exact matrix identity: the
// reduction table for products of x and z, N ~ x and H ~ xz, the N-power
// pattern N^{3t} ~ I / N^{3t+1} ~ N / N^{3t+2} ~ H with N^24 = I exactly, and
// the D-move identities that push D1/D2 factors through N and H.
inline ReductionReport verify_reduction_rules() {
    using namespace kernels;
    ReductionReport rep;
    Mat2 mI = Mat2::from_kernel(I), mH = Mat2::from_kernel(H), mN = Mat2::from_kernel(N);
    Mat2 mX = Mat2::from_kernel(X), mZ = Mat2::from_kernel(Z), mXZ = Mat2::from_kernel(XZ);
    Mat2 mSX = Mat2::from_kernel(SigmaX), mSZ = Mat2::from_kernel(SigmaZ),
         mSY = Mat2::from_kernel(SigmaY);

    // every catalog kernel is unitary up to its declared scale: K K^dag = 2^s I
    for (const Kernel* k : {&I, &H, &N, &SigmaX, &SigmaZ, &SigmaY, &X, &Z, &XZ}) {
        Mat2 m = Mat2::from_kernel(*k);
        Mat2 prod = m * m.adjoint();
        Mat2 want = Mat2::identity().scaled(CyclotomicInt::from_int(std::int64_t{1} << k->scale));
        want.scale = prod.scale;
        rep.add(std::string(k->name) + " unitary", prod == want);
    }

    // kernel bookkeeping: x^2 = -i sigma_x, z^2 = i sigma_z, sigma_y = i sigma_x sigma_z, xz = x*z
    rep.add("x^2 = -i*sx", equal_true(mX * mX, mSX.scaled(cmi)));
    rep.add("z^2 = i*sz", equal_true(mZ * mZ, mSZ.scaled(ci)));
    rep.add("sy = i*sx*sz", equal_true(mSY, (mSX * mSZ).scaled(ci)));
    rep.add("xz kernel = x*z", mXZ == mX * mZ);
    rep.add("x^2 ~ I", equivalent_mod_d(mX * mX, mI));

    // reduction table for words in x, z
    rep.add("zx ~ x", equivalent_mod_d(mZ * mX, mX));
    rep.add("zxx ~ I", equivalent_mod_d(mZ * mX * mX, mI));
    rep.add("xzx ~ zxz", equivalent_mod_d(mX * mZ * mX, mZ * mX * mZ));
    rep.add("xxx ~ x", equivalent_mod_d(mX * mX * mX, mX));
    rep.add("xxz ~ I", equivalent_mod_d(mX * mX * mZ, mI));
    rep.add("zxz ~ xz", equivalent_mod_d(mZ * mX * mZ, mXZ));
    rep.add("xzx ~ xz", equivalent_mod_d(mX * mZ * mX, mXZ));
    rep.add("xzz ~ x", equivalent_mod_d(mX * mZ * mZ, mX));
    rep.add("zxzz ~ x", equivalent_mod_d(mZ * mX * mZ * mZ, mX));
    rep.add("xzxz ~ x", equivalent_mod_d(mX * mZ * mX * mZ, mX));
    rep.add("xxzx ~ x", equivalent_mod_d(mX * mX * mZ * mX, mX));
    rep.add("zzx ~ x", equivalent_mod_d(mZ * mZ * mX, mX));
    rep.add("zzz ~ I", equivalent_mod_d(mZ * mZ * mZ, mI));

    // basis change between the two generator pairs
    rep.add("N ~ x", equivalent_mod_d(mN, mX));
    rep.add("H ~ xz", equivalent_mod_d(mH, mXZ));

    // N as a generator of {I,H,N}: N^{3t} ~ I, N^{3t+1} ~ N, N^{3t+2} ~ H
    {
        Mat2 p = mN;
        bool ok = true;
        for (int k = 1; k <= 24; ++k) {
            int r = k % 3;
            const Mat2& target = (r == 0) ? mI : (r == 1 ? mN : mH);
            ok = ok && equivalent_mod_d(p, target);
            if (k < 24) p = p * mN;
        }
        rep.add("N^k ~ {I,N,H} cycle, k<=24", ok);
        rep.add("N^24 = I exactly",
                p.scale == 24 && equal_true(p, Mat2::identity()));
    }

    // D-move identities: for every D1/D2 element a witness pair (c, delta') exists
    {
        std::vector<Mat2> d1, d2;
        for (int sgn : {1, -1}) {
            d1.push_back(Mat2::diag(c1, CyclotomicInt::from_int(sgn)));
            d1.push_back(Mat2::antidiag(c1, CyclotomicInt::from_int(sgn)));
            CyclotomicInt si = sgn == 1 ? ci : cmi;
            d2.push_back(Mat2::diag(c1, si));
            d2.push_back(Mat2::antidiag(c1, si));
        }
        auto has_witness = [&](const Mat2& lhs, const std::vector<Mat2>& pool, const Mat2& right) {
            for (const Mat2& cand : pool)
                for (int e = 0; e < 8; e += 2)
                    if (lhs == (cand * right).scaled(omega_power(e))) return true;
            return false;
        };
        bool ok = true;
        for (const Mat2& del : d1) {
            ok = ok && has_witness(mN * del, d1, mN);
            ok = ok && has_witness(mH * del, d1, mH);
        }
        for (const Mat2& del : d2) {
            ok = ok && has_witness(mN * del, d1, mH);
            ok = ok && has_witness(mH * del, d1, mN);
        }
        rep.add("D-move identities (N,H vs D1,D2)", ok);
    }
    return rep;
}

}  // namespace ihn
