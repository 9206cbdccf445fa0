#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setpoint/multimap.hpp"
#include "setpoint/rng.hpp"

namespace setpoint {

struct Instance {
    SpacePtr space;
    std::optional<MultiMap> map;
    std::uint64_t seed = 0;
    std::string family;
};

// Seeded sampler over several instance families:
//   cloud2d          random plane cloud under a random norm, random values
//   matrix_repair    shortest-path closure of a random symmetric matrix
//   line_contraction 1-d grid with a singleton map built edge by edge so the
//                    slope bound telescopes to a global Lipschitz constant
//   line_sparse     short 1-d grids with sparse value sets (counterexample
//                    rich territory)
//   constant         one shared value set
// Instances are deterministic in (seed, trial).
class InstanceGenerator {
public:
    struct Options {
        int min_points = 3;
        int max_points = 12;
        int max_value_card = 3;
        std::vector<std::string> families;  // empty = all, with default weights
    };

    InstanceGenerator(std::uint64_t seed, Options options);
    explicit InstanceGenerator(std::uint64_t seed) : InstanceGenerator(seed, Options{}) {}

    Instance sample(std::uint64_t trial) const;
    std::uint64_t seed() const { return seed_; }
    const Options& options() const { return options_; }

private:
    std::uint64_t seed_;
    Options options_;

    Instance cloud2d(CounterRng& rng, std::uint64_t trial) const;
    Instance matrix_repair(CounterRng& rng, std::uint64_t trial) const;
    Instance line_contraction(CounterRng& rng, std::uint64_t trial) const;
    Instance line_sparse(CounterRng& rng, std::uint64_t trial) const;
    Instance constant(CounterRng& rng, std::uint64_t trial) const;
};

// Random nonempty subset of {0..n-1} with at most max_card elements.
std::vector<int> random_subset(CounterRng& rng, int n, int max_card);

}  // namespace setpoint
