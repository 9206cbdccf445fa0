#pragma once

#include <cstdint>

namespace setpoint {

// Counter-mode splitmix64. Substreams are derived by key mixing, so any
// (seed, stream, counter) triple yields the same value on every platform
// and under any parallel schedule.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    CounterRng stream(std::uint64_t s) const { return CounterRng(mix(key_ ^ mix(s + 0x9e3779b97f4a7c15ull))); }

    std::uint64_t next() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    bool chance(double p) { return uniform() < p; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace setpoint
