#include "setpoint/instance_gen.hpp"

#include <algorithm>
#include <cmath>

namespace setpoint {

std::vector<int> random_subset(CounterRng& rng, int n, int max_card) {
    const int card = rng.uniform_int(1, std::min(n, max_card));
    std::vector<int> out;
    while (static_cast<int>(out.size()) < card) {
        const int pick = rng.uniform_int(0, n - 1);
        if (std::find(out.begin(), out.end(), pick) == out.end()) out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, Options options)
    : seed_(seed), options_(std::move(options)) {
    if (options_.families.empty()) {
        options_.families = {"cloud2d", "matrix_repair", "line_contraction", "line_sparse",
                             "constant"};
    }
    if (options_.min_points < 2) options_.min_points = 2;
    if (options_.max_points < options_.min_points) options_.max_points = options_.min_points;
}

Instance InstanceGenerator::sample(std::uint64_t trial) const {
    CounterRng rng = CounterRng(seed_).stream(trial);
    const std::string& family =
        options_.families[static_cast<std::size_t>(rng.uniform_int(
            0, static_cast<int>(options_.families.size()) - 1))];
    if (family == "cloud2d") return cloud2d(rng, trial);
    if (family == "matrix_repair") return matrix_repair(rng, trial);
    if (family == "line_contraction") return line_contraction(rng, trial);
    if (family == "line_sparse") return line_sparse(rng, trial);
    if (family == "constant") return constant(rng, trial);
    throw ValidationError("unknown instance family: " + family);
}

namespace {

MultiMap random_values_map(SpacePtr space, CounterRng& rng, int max_card) {
    const int n = space->size();
    PointSet domain = PointSet::all(n);
    std::vector<PointSet> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        values.emplace_back(random_subset(rng, n, max_card), n);
    }
    return MultiMap(std::move(space), std::move(domain), std::move(values));
}

std::vector<double> random_line_coords(CounterRng& rng, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = acc;
        acc += rng.uniform(0.2, 1.0);
    }
    return xs;
}

}  // namespace

Instance InstanceGenerator::cloud2d(CounterRng& rng, std::uint64_t trial) const {
    const int n = rng.uniform_int(options_.min_points, options_.max_points);
    std::vector<std::vector<double>> pts;
    while (static_cast<int>(pts.size()) < n) {
        std::vector<double> p{rng.uniform(), rng.uniform()};
        bool clash = false;
        for (const auto& q : pts) {
            if (std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]) < 1e-3) {
                clash = true;
                break;
            }
        }
        if (!clash) pts.push_back(std::move(p));
    }
    const int pick = rng.uniform_int(0, 3);
    Norm norm = Norm::L2;
    double p = 2.0;
    if (pick == 0) norm = Norm::L1;
    if (pick == 1) norm = Norm::LInf;
    if (pick == 3) {
        norm = Norm::Lp;
        p = rng.chance(0.5) ? 1.5 : 3.0;
    }
    auto space = std::make_shared<const MetricSpace>(MetricSpace::from_points(pts, norm, p));
    Instance inst{space, random_values_map(space, rng, options_.max_value_card), trial,
                  "cloud2d"};
    return inst;
}

Instance InstanceGenerator::matrix_repair(CounterRng& rng, std::uint64_t trial) const {
    const int n = rng.uniform_int(options_.min_points, options_.max_points);
    std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            d[i][j] = d[j][i] = rng.uniform(0.1, 2.0);
        }
    }
    // shortest-path closure makes the triangle inequality hold
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    auto space = std::make_shared<const MetricSpace>(MetricSpace::from_matrix(std::move(d)));
    Instance inst{space, random_values_map(space, rng, options_.max_value_card), trial,
                  "matrix_repair"};
    return inst;
}

Instance InstanceGenerator::line_contraction(CounterRng& rng, std::uint64_t trial) const {
    const int n = rng.uniform_int(options_.min_points, options_.max_points);
    const std::vector<double> xs = random_line_coords(rng, n);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (double x : xs) pts.push_back({x});
    auto space = std::make_shared<const MetricSpace>(MetricSpace::from_points(pts, Norm::L2));

    // Slope bound per consecutive edge telescopes to a global bound on the
    // line, so the singleton map is a genuine alpha-contraction.
    const double alpha = rng.chance(0.5) ? rng.uniform(0.1, 0.45) : rng.uniform(0.1, 0.8);
    std::vector<int> f(static_cast<std::size_t>(n));
    f[0] = rng.uniform_int(0, n - 1);
    for (int i = 1; i < n; ++i) {
        const double reach = alpha * (xs[static_cast<std::size_t>(i)] -
                                      xs[static_cast<std::size_t>(i - 1)]);
        const double center = xs[static_cast<std::size_t>(f[static_cast<std::size_t>(i - 1)])];
        std::vector<int> eligible;
        for (int j = 0; j < n; ++j) {
            if (std::abs(xs[static_cast<std::size_t>(j)] - center) <= reach) eligible.push_back(j);
        }
        f[static_cast<std::size_t>(i)] =
            eligible[static_cast<std::size_t>(rng.uniform_int(
                0, static_cast<int>(eligible.size()) - 1))];
    }
    PointSet domain = PointSet::all(n);
    std::vector<PointSet> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) values.push_back(PointSet::single(f[static_cast<std::size_t>(x)], n));
    Instance inst{space, MultiMap(space, std::move(domain), std::move(values)), trial,
                  "line_contraction"};
    return inst;
}

Instance InstanceGenerator::line_sparse(CounterRng& rng, std::uint64_t trial) const {
    const int n = rng.uniform_int(3, 5);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back({static_cast<double>(i)});
    auto space = std::make_shared<const MetricSpace>(MetricSpace::from_points(pts, Norm::L2));
    PointSet domain = PointSet::all(n);
    std::vector<PointSet> values;
    for (int x = 0; x < n; ++x) {
        std::vector<int> v = random_subset(rng, n, 2);
        // bias toward value sets straddling the extremes
        if (rng.chance(0.35)) {
            v = {0};
            if (rng.chance(0.5) && x != 0) v.push_back(x);
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        values.emplace_back(std::move(v), n);
    }
    Instance inst{space, MultiMap(space, std::move(domain), std::move(values)), trial,
                  "line_sparse"};
    return inst;
}

Instance InstanceGenerator::constant(CounterRng& rng, std::uint64_t trial) const {
    const int n = rng.uniform_int(options_.min_points, options_.max_points);
    const std::vector<double> xs = random_line_coords(rng, n);
    std::vector<std::vector<double>> pts;
    for (double x : xs) pts.push_back({x});
    auto space = std::make_shared<const MetricSpace>(MetricSpace::from_points(pts, Norm::L2));
    const std::vector<int> shared = random_subset(rng, n, options_.max_value_card);
    PointSet domain = PointSet::all(n);
    std::vector<PointSet> values(static_cast<std::size_t>(n), PointSet(shared, n));
    Instance inst{space, MultiMap(space, std::move(domain), std::move(values)), trial,
                  "constant"};
    return inst;
}

}  // namespace setpoint
