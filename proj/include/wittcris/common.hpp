#pragma once

// Shared small utilities: error hierarchy, checked wide arithmetic and the
// deterministic RNG streams used by every sampler in the library.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wittcris {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands belong to different rings / profiles.
struct MismatchError : Error {
    using Error::Error;
};

// A computation needed monomials or denominator depth beyond the active
// truncation profile; the message names the offending exponent.
struct TruncationError : Error {
    using Error::Error;
};

// Result not determined at the working p-adic precision.
struct PrecisionError : Error {
    using Error::Error;
};

// The requested solution exists only over a larger residue field
// (algebraically closed base); refused over the finite coefficient field.
struct ClosednessError : Error {
    using Error::Error;
};

// Structured invalid-argument error (bad descriptor, malformed fixture, ...).
struct InvalidError : Error {
    using Error::Error;
};

// Work exceeded the configured budget; callers must report inconclusive.
struct BudgetError : Error {
    using Error::Error;
};

inline i128 checked_mul(i128 a, i128 b) {
    if (a == 0 || b == 0) return 0;
    i128 r = a * b;
    if (r / b != a) throw Error("integer overflow in exact arithmetic");
    return r;
}

inline i128 checked_add(i128 a, i128 b) {
    i128 r = a + b;
    if ((b > 0 && r < a) || (b < 0 && r > a)) throw Error("integer overflow in exact arithmetic");
    return r;
}

inline u64 pow_u64(u64 b, u64 e) {
    u64 r = 1;
    while (e) {
        if (e & 1) {
            u128 t = (u128)r * b;
            if (t > ~(u64)0) throw Error("pow_u64 overflow");
            r = (u64)t;
        }
        e >>= 1;
        if (e) {
            u128 t = (u128)b * b;
            if (t > ~(u64)0) throw Error("pow_u64 overflow");
            b = (u64)t;
        }
    }
    return r;
}

inline std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 x = neg ? (u128)(-v) : (u128)v;
    std::string s;
    while (x) {
        s.push_back(char('0' + (int)(x % 10)));
        x /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

// splitmix64: tiny, portable, and reproducible across platforms; the stdlib
// distributions are not byte-stable so everything random goes through this.
struct Rng {
    u64 state;

    explicit Rng(u64 seed) : state(seed) {}

    u64 next() {
        state += 0x9e3779b97f4a7c15ull;
        u64 z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound) by rejection; bound >= 1
    u64 below(u64 bound) {
        if (bound == 0) throw InvalidError("Rng::below(0)");
        u64 threshold = (~bound + 1) % bound; // 2^64 mod bound
        for (;;) {
            u64 r = next();
            if (r >= threshold) return r % bound;
        }
    }

    i64 range(i64 lo, i64 hi) { // inclusive
        return lo + (i64)below((u64)(hi - lo + 1));
    }
};

inline u64 fnv1a(const std::string& s) {
    u64 h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Named deterministic stream: independent of call order between streams.
inline Rng stream_for(u64 seed, const std::string& name, u64 index = 0) {
    Rng mix(seed ^ fnv1a(name));
    u64 a = mix.next();
    Rng mix2(a ^ (0x9e3779b97f4a7c15ull * (index + 1)));
    return Rng(mix2.next());
}

} // namespace wittcris
