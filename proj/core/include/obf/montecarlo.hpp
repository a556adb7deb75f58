#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "obf/model_test.hpp"
#include "obf/rng.hpp"

namespace obf {

struct ExponentialGen {
    double rate;
};
struct PoissonGen {
    double lambda;
};
// Failures before the first success.
struct GeometricGen {
    double prob;
};
struct NormalGen {
    double mean;
    double sd;
};

using Generator = std::variant<ExponentialGen, PoissonGen, GeometricGen, NormalGen>;

void validate(const Generator& g);
std::string describe(const Generator& g);

class ObservationStream {
public:
    ObservationStream(Generator g, std::uint64_t seed);
    double next();

private:
    Generator gen_;
    Rng rng_;
};

enum class Averaging { Log, Raw };

struct SimulationPlan {
    std::string scenario;
    std::vector<Generator> generators;
    ModelTest test;
    std::size_t n_max = 100;
    std::size_t n_reps = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> statistics;
    Averaging averaging = Averaging::Log;
    unsigned workers = 1;
};

struct ScenarioInfo {
    std::string name;
    std::string description;
};

std::vector<ScenarioInfo> scenarios();

// Plan with the scenario's registered generators, test, statistics and averaging.
SimulationPlan make_plan(const std::string& scenario, std::size_t n_max, std::size_t n_reps, std::uint64_t seed,
                         unsigned workers = 1);

struct SimulationResult {
    SimulationPlan plan;
    // Natural-log values, [rep][n-1][statistic]; NaN marks an undefined statistic.
    std::vector<double> per_rep;
    // [n-1][statistic]
    std::vector<double> averages;
    double wall_seconds = 0.0;

    std::size_t stat_count() const { return plan.statistics.size(); }
    double at(std::size_t rep, std::size_t n, std::size_t stat) const;
    double average(std::size_t n, std::size_t stat) const;
    std::size_t stat_index(const std::string& name) const;
};

SimulationResult run(const SimulationPlan& plan);

void write_csv(const SimulationResult& result, std::ostream& os);

// %.12g rendering; NaN becomes NA.
std::string format_sig(double v);

}  // namespace obf
