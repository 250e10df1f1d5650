#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ihn {

// Thrown when an operation would exceed its documented size cap.  The CLI
// maps this to exit code 2; it is a refusal, never a silent truncation.
class cap_exceeded : public std::runtime_error {
public:
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

inline int popcount32(std::uint32_t x) { return std::popcount(x); }

// Truth-table index convention: idx = sum_j x_j * 2^(n-1-j), i.e. variable 0
// is the most significant bit and the last variable varies fastest.
inline std::uint32_t index_bit(int n, int j) {
    return std::uint32_t{1} << (n - 1 - j);
}

// Convert a variable mask (bit j = variable j) into an index-space mask and
// back.  Both are involutions of the same bit reversal.
inline std::uint32_t var_to_index_mask(std::uint32_t varmask, int n) {
    std::uint32_t out = 0;
    while (varmask) {
        int j = std::countr_zero(varmask);
        varmask &= varmask - 1;
        out |= index_bit(n, j);
    }
    return out;
}

inline std::uint32_t index_to_var_mask(std::uint32_t idxmask, int n) {
    return var_to_index_mask(idxmask, n);  // bit reversal is self-inverse
}

// Render a bit vector (bit j = variable j) as the string b_0 b_1 ... b_{n-1}.
inline std::string bits_to_string(std::uint32_t varmask, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j)
        if (varmask & (std::uint32_t{1} << j)) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

inline std::uint32_t bits_from_string(const std::string& s) {
    std::uint32_t m = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] == '1')
            m |= std::uint32_t{1} << j;
        else if (s[j] != '0')
            throw std::invalid_argument("bit string must consist of 0/1: " + s);
    }
    return m;
}

inline unsigned default_thread_count() {
    if (const char* env = std::getenv("IHN_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Splits [0,total) into contiguous chunks and runs fn(chunk_id, begin, end)
// on a pool of threads.  Chunk boundaries depend only on `chunks`, so callers
// that merge per-chunk results in chunk order are deterministic regardless of
// the number of worker threads.
inline void parallel_chunks(std::uint64_t total, std::uint64_t chunks, unsigned threads,
                            const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
    if (chunks == 0) chunks = 1;
    if (total == 0) return;
    auto bound = [&](std::uint64_t c) { return total * c / chunks; };
    if (threads <= 1 || chunks == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c)
            if (bound(c) < bound(c + 1)) fn(c, bound(c), bound(c + 1));
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::uint64_t> next{0};
    unsigned nworkers = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
    std::vector<std::exception_ptr> errors(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    std::uint64_t c = next.fetch_add(1);
                    if (c >= chunks) break;
                    if (bound(c) < bound(c + 1)) fn(c, bound(c), bound(c + 1));
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ihn
