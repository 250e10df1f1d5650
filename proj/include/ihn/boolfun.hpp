#pragma once

// Boolean functions in algebraic normal form over GF(2), their truth tables,
// and the Z4-valued tables that turn up when a Negahadamard kernel acts on a
// bipolar vector.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ihn/util.hpp"

namespace ihn {

// A monomial is a set of variable indices packed as a bitmask (bit j = x_j);
// the empty mask is the constant 1.
using Monomial = std::uint32_t;

inline constexpr int kMaxVars = 16;

class BooleanFunction {
public:
    BooleanFunction() : n_(1) {}

    BooleanFunction(int n, std::vector<Monomial> monomials) : n_(n) {
        if (n < 1 || n > kMaxVars)
            throw std::invalid_argument("variable count must be in [1,16], got " + std::to_string(n));
        std::sort(monomials.begin(), monomials.end());
        for (std::size_t i = 0; i < monomials.size(); ++i) {
            if (monomials[i] >> n)
                throw std::invalid_argument("monomial uses a variable index >= n");
            if (i > 0 && monomials[i] == monomials[i - 1])
                throw std::invalid_argument("duplicate monomial in ANF");
        }
        anf_ = std::move(monomials);
    }

    int n() const { return n_; }
    const std::vector<Monomial>& anf() const { return anf_; }

    int degree() const {
        int d = 0;
        for (Monomial m : anf_) d = std::max(d, popcount32(m));
        return d;
    }

    bool contains(Monomial m) const { return std::binary_search(anf_.begin(), anf_.end(), m); }

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;
    friend bool operator<(const BooleanFunction& a, const BooleanFunction& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.anf_ < b.anf_;
    }

    // Evaluate at a point given as a variable mask (bit j = x_j).
    int evaluate(std::uint32_t x_vars) const {
        int v = 0;
        for (Monomial m : anf_) v ^= ((m & x_vars) == m);
        return v;
    }

    // Truth table under the global index order idx = sum x_j 2^(n-1-j).
    std::vector<std::uint8_t> to_truth_table() const {
        std::size_t size = std::size_t{1} << n_;
        std::vector<std::uint8_t> t(size, 0);
        for (Monomial m : anf_) t[var_to_index_mask(m, n_)] ^= 1;
        binary_moebius(t);
        return t;
    }

    static BooleanFunction from_truth_table(int n, const std::vector<std::uint8_t>& table) {
        if (n < 1 || n > kMaxVars || table.size() != (std::size_t{1} << n))
            throw std::invalid_argument("truth table must have length 2^n");
        std::vector<std::uint8_t> t = table;
        binary_moebius(t);
        std::vector<Monomial> ms;
        for (std::size_t idx = 0; idx < t.size(); ++idx)
            if (t[idx] & 1) ms.push_back(index_to_var_mask(static_cast<std::uint32_t>(idx), n));
        return BooleanFunction(n, std::move(ms));
    }

    // p with x_j := r_j substituted for each j in `fixed`, re-indexed over the
    // remaining variables in increasing order.
    BooleanFunction restrict_vars(std::uint32_t fixed, std::uint32_t r) const {
        if (fixed >> n_) throw std::invalid_argument("restrict: fixed set out of range");
        r &= fixed;
        int n_rest = n_ - popcount32(fixed);
        if (n_rest < 1) {
            // fully fixed: n must stay >= 1; callers that need the scalar use evaluate()
            throw std::invalid_argument("restrict: at least one free variable required");
        }
        std::vector<Monomial> acc;
        for (Monomial m : anf_) {
            std::uint32_t hit = m & fixed;
            if ((hit & r) != hit) continue;  // some fixed factor is 0
            Monomial rest = m & ~fixed, packed = 0;
            while (rest) {
                int j = std::countr_zero(rest);
                rest &= rest - 1;
                int nj = j - popcount32(fixed & ((std::uint32_t{1} << j) - 1));
                packed |= std::uint32_t{1} << nj;
            }
            toggle(acc, packed);
        }
        return BooleanFunction(n_rest, std::move(acc));
    }

    // p = x_v * Nv + q with Nv, q independent of x_v
    std::pair<BooleanFunction, BooleanFunction> neighbor_decomposition(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("neighbor_decomposition: bad vertex");
        std::uint32_t vb = std::uint32_t{1} << v;
        std::vector<Monomial> nv, q;
        for (Monomial m : anf_)
            (m & vb) ? nv.push_back(m & ~vb) : q.push_back(m);
        return {BooleanFunction(n_, std::move(nv)), BooleanFunction(n_, std::move(q))};
    }

    // p(x) + c.x + d
    BooleanFunction add_affine(std::uint32_t c, int d) const {
        std::vector<Monomial> acc = anf_;
        std::uint32_t rest = c & ((std::uint32_t{1} << n_) - 1);
        while (rest) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            toggle_sorted(acc, std::uint32_t{1} << j);
        }
        if (d & 1) toggle_sorted(acc, 0);
        return BooleanFunction(n_, std::move(acc));
    }

    // p(x + a); each monomial expands as prod_{j in m} (x_j + a_j)
    BooleanFunction shift_input(std::uint32_t a) const {
        a &= (std::uint32_t{1} << n_) - 1;
        std::vector<Monomial> acc;
        for (Monomial m : anf_) {
            std::uint32_t sub = m & a;
            std::uint32_t keep = m & ~a;
            std::uint32_t s = sub;
            for (;;) {  // all subsets of sub
                toggle(acc, keep | s);
                if (s == 0) break;
                s = (s - 1) & sub;
            }
        }
        return BooleanFunction(n_, std::move(acc));
    }

    std::string to_string() const;
    static BooleanFunction parse(const std::string& text, int n);

private:
    static void binary_moebius(std::vector<std::uint8_t>& t) {
        for (std::size_t bit = 1; bit < t.size(); bit <<= 1)
            for (std::size_t idx = 0; idx < t.size(); ++idx)
                if (idx & bit) t[idx] ^= t[idx ^ bit];
    }

    // XOR a monomial into an unsorted accumulation (GF(2) coefficients)
    static void toggle(std::vector<Monomial>& acc, Monomial m) {
        auto it = std::find(acc.begin(), acc.end(), m);
        if (it != acc.end())
            acc.erase(it);
        else
            acc.push_back(m);
    }
    static void toggle_sorted(std::vector<Monomial>& acc, Monomial m) { toggle(acc, m); }

    int n_;
    std::vector<Monomial> anf_;  // sorted by mask value
};

namespace detail {

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace detail

// Accepts two text formats:
//   compact pairs   "04,15,25,34,45"  (single-digit indices, n <= 10)
//   general         "0.1.2+3+1c"      (variables joined by '.', monomials by
//                                      '+', "1c" is the constant 1)
// The empty string is the zero function.
inline BooleanFunction BooleanFunction::parse(const std::string& text, int n) {
    if (n < 1 || n > kMaxVars)
        throw std::invalid_argument("variable count must be in [1,16], got " + std::to_string(n));
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) return BooleanFunction(n, {});

    auto add_monomial = [&](std::vector<Monomial>& ms, Monomial m) {
        if (std::find(ms.begin(), ms.end(), m) != ms.end())
            throw std::invalid_argument("duplicate monomial in ANF text: " + text);
        ms.push_back(m);
    };

    bool general = s.find('.') != std::string::npos || s.find('+') != std::string::npos ||
                   s.find('c') != std::string::npos;
    // digits-only input: compact for n <= 10, a single general token otherwise
    if (!general && n > 10 && s.find(',') == std::string::npos) general = true;

    std::vector<Monomial> ms;
    if (!general) {
        if (n > 10) throw std::invalid_argument("compact pair format requires n <= 10");
        for (const std::string& tok : detail::split(s, ',')) {
            if (!detail::all_digits(tok))
                throw std::invalid_argument("malformed compact token: '" + tok + "'");
            Monomial m = 0;
            for (char ch : tok) {
                int j = ch - '0';
                if (j >= n) throw std::invalid_argument("variable index " + std::to_string(j) +
                                                        " out of range for n=" + std::to_string(n));
                std::uint32_t bit = std::uint32_t{1} << j;
                if (m & bit) throw std::invalid_argument("repeated variable in monomial: '" + tok + "'");
                m |= bit;
            }
            add_monomial(ms, m);
        }
    } else {
        for (const std::string& tok : detail::split(s, '+')) {
            if (tok == "1c") {
                add_monomial(ms, 0);
                continue;
            }
            if (tok.empty()) throw std::invalid_argument("empty monomial token in: " + text);
            Monomial m = 0;
            for (const std::string& vs : detail::split(tok, '.')) {
                if (!detail::all_digits(vs))
                    throw std::invalid_argument("malformed variable token: '" + vs + "'");
                long j = std::strtol(vs.c_str(), nullptr, 10);
                if (j >= n) throw std::invalid_argument("variable index " + std::to_string(j) +
                                                        " out of range for n=" + std::to_string(n));
                std::uint32_t bit = std::uint32_t{1} << j;
                if (m & bit) throw std::invalid_argument("repeated variable in monomial: '" + tok + "'");
                m |= bit;
            }
            add_monomial(ms, m);
        }
    }
    return BooleanFunction(n, std::move(ms));
}

// Canonical serialization: general format, monomials ordered by their index
// sequences (constant term last), variables joined by '.'.
inline std::string BooleanFunction::to_string() const {
    std::vector<std::vector<int>> seqs;
    bool constant = false;
    for (Monomial m : anf_) {
        if (m == 0) {
            constant = true;
            continue;
        }
        std::vector<int> seq;
        std::uint32_t rest = m;
        while (rest) {
            seq.push_back(std::countr_zero(rest));
            rest &= rest - 1;
        }
        seqs.push_back(std::move(seq));
    }
    std::sort(seqs.begin(), seqs.end());
    std::string out;
    for (const auto& seq : seqs) {
        if (!out.empty()) out += '+';
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (i) out += '.';
            out += std::to_string(seq[i]);
        }
    }
    if (constant) {
        if (!out.empty()) out += '+';
        out += "1c";
    }
    return out;
}

// A function GF(2)^n -> Z4 stored as a value table; the square-bracket
// mod-2-inside-mod-4 conventions are evaluated pointwise, never symbolically.
struct Z4Function {
    int n = 1;
    std::vector<std::uint8_t> values;  // length 2^n, entries 0..3

    Z4Function() = default;
    Z4Function(int n_, std::vector<std::uint8_t> v) : n(n_), values(std::move(v)) {
        if (n < 1 || n > kMaxVars || values.size() != (std::size_t{1} << n))
            throw std::invalid_argument("Z4Function table must have length 2^n");
        for (auto& x : values) x &= 3;
    }

    static Z4Function from_boolean_doubled(const BooleanFunction& f) {
        auto tt = f.to_truth_table();
        std::vector<std::uint8_t> v(tt.size());
        for (std::size_t i = 0; i < tt.size(); ++i) v[i] = static_cast<std::uint8_t>(2 * tt[i]);
        return Z4Function(f.n(), std::move(v));
    }

    // all values in {0,2}  =>  the boolean function with table value/2
    bool halves_to_boolean() const {
        for (auto v : values)
            if (v & 1) return false;
        return true;
    }
    BooleanFunction half() const {
        std::vector<std::uint8_t> t(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] & 1) throw std::invalid_argument("Z4Function does not halve to a boolean function");
            t[i] = values[i] >> 1;
        }
        return BooleanFunction::from_truth_table(n, t);
    }

    friend bool operator==(const Z4Function&, const Z4Function&) = default;
};

}  // namespace ihn
