#pragma once

#include <cstdint>
#include <string_view>

#include "gnevi/linalg.hpp"

namespace gnevi {

// Deterministic splitmix64 stream. A single 64-bit root seed expands into
// independent per-stage streams through fixed string labels, so parallel
// stages draw from stable, order-independent sources.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng labeled(std::uint64_t root, std::string_view label) {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return Rng(root ^ h);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Vec point_in(const Box& box) {
        Vec p(box.lo.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = uniform(box.lo[i], box.hi[i]);
        return p;
    }

private:
    std::uint64_t state_;
};

}  // namespace gnevi
