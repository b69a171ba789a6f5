#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace awkernel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Dataset files missing or unreadable.
struct LoadError : Error {
    using Error::Error;
};
// File present but contents violate the format.
struct FormatError : Error {
    using Error::Error;
};
// Caller passed an out-of-range parameter.
struct ParamError : Error {
    using Error::Error;
};
// Exhaustive walk enumeration would exceed the configured cap;
// caller should fall back to sampling.
struct EnumerationOverflow : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Logging: warnings go to stderr unless a sink is installed (tests do this).

inline std::function<void(const std::string&)>& warn_sink() {
    static std::function<void(const std::string&)> sink;
    return sink;
}

inline void warn(const std::string& msg) {
    if (warn_sink()) {
        warn_sink()(msg);
    } else {
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        std::cerr << "[awkernel] warning: " << msg << "\n";
    }
}

// ---------------------------------------------------------------------------
// Seed derivation. Every stochastic op draws from an mt19937_64 seeded through
// splitmix64 so that streams for (graph, node) pairs are independent of worker
// scheduling and of each other.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t salt = 0) {
    std::uint64_t s = splitmix64(base ^ 0xa5a5a5a5a5a5a5a5ULL);
    s = splitmix64(s ^ splitmix64(a));
    s = splitmix64(s ^ splitmix64(b ^ 0x517cc1b727220a95ULL));
    s = splitmix64(s ^ splitmix64(salt ^ 0x2545f4914f6cdd1dULL));
    return s;
}

inline std::mt19937_64 make_rng(std::uint64_t base, std::uint64_t a = 0,
                                std::uint64_t b = 0, std::uint64_t salt = 0) {
    return std::mt19937_64(derive_seed(base, a, b, salt));
}

// ---------------------------------------------------------------------------
// parallel_for: runs fn(i) for i in [0, n). Each index owns its output slot,
// so results do not depend on the thread count.

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
    int nt = resolve_threads(threads);
    if (nt <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nt));
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace awkernel
