#include "obf/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "obf/calibration.hpp"
#include "obf/discrete.hpp"
#include "obf/exponential.hpp"
#include "obf/specialfn.hpp"

namespace obf {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

using Kernel = std::function<void(const SimulationPlan&, std::uint64_t rep, double* out)>;

struct Scenario {
    ScenarioInfo info;
    std::vector<Generator> generators;
    ModelTest test;
    std::vector<std::string> statistics;
    Averaging averaging;
    Kernel kernel;
};

double lambda0_of(const SimulationPlan& plan) {
    if (const auto* e = std::get_if<Exponential>(&plan.test)) return e->lambda0;
    fail(ErrorKind::DomainViolation, "scenario expects an exponential test");
}

ObservationStream stream_for(const SimulationPlan& plan, std::uint64_t rep, std::size_t g) {
    return ObservationStream(plan.generators.at(g), substream(plan.seed, rep, g));
}

// Exponential scenarios share the prefix loop; `emit` writes one row per n.
template <class Emit>
void exp_prefix_loop(const SimulationPlan& plan, std::uint64_t rep, double* out, Emit&& emit) {
    auto stream = stream_for(plan, rep, 0);
    const double lambda0 = lambda0_of(plan);
    std::vector<double> ys;
    ys.reserve(plan.n_max);
    double s = 0.0;
    const std::size_t S = plan.statistics.size();
    for (std::size_t n = 1; n <= plan.n_max; ++n) {
        double y = stream.next();
        ys.push_back(y);
        s += y;
        emit(ys, ExpStats{n, s}, lambda0, out + (n - 1) * S);
    }
}

double exp_log_b01_full(const ExpStats& st, double lambda0) {
    if (st.n < 2 || !(st.s > 0.0)) return nan;
    return exp_bf01_full(st, lambda0).log();
}

void kernel_sp_vs_bound(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    exp_prefix_loop(plan, rep, out, [](const std::vector<double>&, const ExpStats& st, double l0, double* row) {
        row[0] = exp_sp_bf10(st, l0).log();
        double b01 = exp_log_b01_full(st, l0);
        row[1] = std::isnan(b01) ? nan : -b01 - 1.0;
    });
}

void kernel_ep_sp(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    exp_prefix_loop(plan, rep, out, [](const std::vector<double>& ys, const ExpStats& st, double l0, double* row) {
        row[0] = st.s > 0.0 ? exp_ep_bf10(Sample{ys, ""}, l0).log() : nan;
        row[1] = exp_sp_bf10(st, l0).log();
    });
}

void kernel_eplogp(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    exp_prefix_loop(plan, rep, out, [](const std::vector<double>& ys, const ExpStats& st, double l0, double* row) {
        double robust = robust_lower_bound(exp_wilks_pvalue(Sample{ys, ""}, l0));
        row[0] = std::log(robust);
        double b01 = exp_log_b01_full(st, l0);
        row[1] = std::isnan(b01) ? nan : b01 + 1.0;
        row[2] = std::isnan(b01) ? nan : row[0] - row[1];
    });
}

void kernel_sup_convergence(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    double best = neg_inf;
    exp_prefix_loop(plan, rep, out, [&best](const std::vector<double>& ys, const ExpStats&, double l0, double* row) {
        best = std::max(best, exp_mts_bf01(ys.back(), l0).log());
        double gap = std::exp(-1.0) - std::exp(best);
        row[0] = std::log(std::max(gap, 0.0));
    });
}

const std::vector<double>& prior_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int i = 1; i <= 20; ++i) g.push_back(0.1 * i);
        return g;
    }();
    return grid;
}

void kernel_priors(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    exp_prefix_loop(plan, rep, out, [](const std::vector<double>& ys, const ExpStats&, double l0, double* row) {
        const auto& grid = prior_grid();
        auto sp = exp_sp_prior(l0);
        Sample data{ys, ""};
        for (std::size_t j = 0; j < grid.size(); ++j) {
            row[j] = std::log(sp(grid[j]));
            double ep = exp_ep_prior(data, grid[j]);
            row[grid.size() + j] = ep > 0.0 ? std::log(ep) : nan;
        }
    });
}

// Running summaries of a growing count sample for the Poisson-vs-Geometric statistics.
struct CountAccumulator {
    std::size_t n = 0;
    double s = 0.0;
    double lpf = 0.0;
    double y_min = 0.0;
    double lse_mts = neg_inf;

    void push(double y) {
        y_min = n == 0 ? y : std::min(y_min, y);
        ++n;
        s += y;
        lpf += ln_gamma(y + 1.0);
        lse_mts = log_add(lse_mts, pg_mts_bf01(y).log());
    }
    double log_b01() const {
        CountStats st;
        st.n = n;
        st.s = s;
        st.log_prod_fact = lpf;
        return pg_bf01_full(st).log();
    }
    double log_mean_mts() const { return lse_mts - std::log(static_cast<double>(n)); }
};

template <class Emit>
void pg_two_stream_loop(const SimulationPlan& plan, std::uint64_t rep, double* out, Emit&& emit) {
    auto a = stream_for(plan, rep, 0);
    auto b = stream_for(plan, rep, 1);
    CountAccumulator ca, cb;
    const std::size_t S = plan.statistics.size();
    for (std::size_t n = 1; n <= plan.n_max; ++n) {
        ca.push(a.next());
        cb.push(b.next());
        emit(ca, cb, out + (n - 1) * S);
    }
}

void kernel_pg_bound(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    const double theo = pg_mts_bf01(0.0).log();
    pg_two_stream_loop(plan, rep, out, [theo](const CountAccumulator& a, const CountAccumulator& b, double* row) {
        row[0] = -a.log_b01() + theo;
        row[1] = -b.log_b01() + theo;
    });
}

void kernel_pg_emp_vs_theo(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    const double theo = pg_mts_bf01(0.0).log();
    pg_two_stream_loop(plan, rep, out, [theo](const CountAccumulator& a, const CountAccumulator& b, double* row) {
        row[0] = -a.log_b01() + pg_mts_bf01(a.y_min).log();
        row[1] = -a.log_b01() + theo;
        row[2] = -b.log_b01() + pg_mts_bf01(b.y_min).log();
        row[3] = -b.log_b01() + theo;
    });
}

void kernel_pg_aibf(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    pg_two_stream_loop(plan, rep, out, [](const CountAccumulator& a, const CountAccumulator& b, double* row) {
        row[0] = a.log_b01() - pg_mts_bf01(a.y_min).log();
        row[1] = a.log_b01() - a.log_mean_mts();
        row[2] = b.log_b01() - pg_mts_bf01(b.y_min).log();
        row[3] = b.log_b01() - b.log_mean_mts();
    });
}

void kernel_pnb(const SimulationPlan& plan, std::uint64_t rep, double* out) {
    const int r = std::get<PoissonVsNegBinomial>(plan.test).r;
    auto stream = stream_for(plan, rep, 0);
    Sample data;
    const std::size_t S = plan.statistics.size();
    for (std::size_t n = 1; n <= plan.n_max; ++n) {
        data.values.push_back(stream.next());
        double* row = out + (n - 1) * S;
        try {
            auto b = pnb_bounds(data, r);
            row[0] = b.theoretical_lower01.value.log();
            row[1] = b.empirical.lower01.value.log();
        } catch (const EvidenceError& e) {
            if (e.kind() != ErrorKind::ImproperTrainingSample) throw;
            row[0] = nan;
            row[1] = nan;
        }
    }
}

std::vector<std::string> prior_stat_names() {
    std::vector<std::string> names;
    for (const char* kind : {"sp_prior", "ep_prior"}) {
        for (double l : prior_grid()) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s@%.1f", kind, l);
            names.emplace_back(buf);
        }
    }
    return names;
}

const std::vector<Scenario>& registry() {
    static const std::vector<Scenario> reg = {
        {{"exp-sp-vs-bound", "exponential data lambda=1, lambda0=1: SP Bayes factor against the theoretical upper bound"},
         {ExponentialGen{1.0}}, Exponential{1.0}, {"sp_bf10", "theoretical_upper10"}, Averaging::Log, kernel_sp_vs_bound},
        {{"exp-ep-sp-h0", "exponential data lambda=1, lambda0=1: EP and SP Bayes factors (null true)"},
         {ExponentialGen{1.0}}, Exponential{1.0}, {"ep_bf10", "sp_bf10"}, Averaging::Log, kernel_ep_sp},
        {{"exp-ep-sp-h1", "exponential data lambda=1, lambda0=0.3: EP and SP Bayes factors (null false)"},
         {ExponentialGen{1.0}}, Exponential{0.3}, {"ep_bf10", "sp_bf10"}, Averaging::Log, kernel_ep_sp},
        {{"eplogp-vs-ibf", "exponential data lambda=1, lambda0=1: robust bound -e p log p against the theoretical lower bound"},
         {ExponentialGen{1.0}}, Exponential{1.0}, {"robust_bound", "theoretical_lower01", "ratio"}, Averaging::Raw, kernel_eplogp},
        {{"eplogp-vs-ibf-h1", "exponential data lambda=5, lambda0=1: robust bound against the theoretical lower bound"},
         {ExponentialGen{5.0}}, Exponential{1.0}, {"robust_bound", "theoretical_lower01", "ratio"}, Averaging::Raw, kernel_eplogp},
        {{"exp-sup-convergence", "exponential data lambda=1, lambda0=1: gap between 1/e and the empirical training-point sup"},
         {ExponentialGen{1.0}}, Exponential{1.0}, {"sup_gap"}, Averaging::Raw, kernel_sup_convergence},
        {{"exp-priors", "exponential data lambda=1, lambda0=1: SP and EP prior densities on the grid 0.1..2"},
         {ExponentialGen{1.0}}, Exponential{1.0}, prior_stat_names(), Averaging::Raw, kernel_priors},
        {{"pg-bound", "Poisson(1) and Geometric(0.5) data: theoretical upper bound of B10"},
         {PoissonGen{1.0}, GeometricGen{0.5}}, PoissonVsGeometric{}, {"upper10_poisson_data", "upper10_geometric_data"},
         Averaging::Raw, kernel_pg_bound},
        {{"pg-emp-vs-theo", "Poisson(0.5) and Geometric(0.8) data: empirical and theoretical upper bounds of B10"},
         {PoissonGen{0.5}, GeometricGen{0.8}}, PoissonVsGeometric{},
         {"empirical_upper10_poisson_data", "theoretical_upper10_poisson_data", "empirical_upper10_geometric_data",
          "theoretical_upper10_geometric_data"},
         Averaging::Raw, kernel_pg_emp_vs_theo},
        {{"pg-aibf", "Poisson(1) and Geometric(0.5) data: empirical lower bound of B01 against AIBF01"},
         {PoissonGen{1.0}, GeometricGen{0.5}}, PoissonVsGeometric{},
         {"lower01_poisson_data", "aibf01_poisson_data", "lower01_geometric_data", "aibf01_geometric_data"},
         Averaging::Raw, kernel_pg_aibf},
        {{"pnb-bound", "Poisson(1) data, negative binomial r=1: theoretical and empirical lower bounds of B01"},
         {PoissonGen{1.0}}, PoissonVsNegBinomial{1}, {"theoretical_lower01", "empirical_lower01"}, Averaging::Log, kernel_pnb},
    };
    return reg;
}

const Scenario& find_scenario(const std::string& name) {
    for (const auto& s : registry()) {
        if (s.info.name == name) return s;
    }
    fail(ErrorKind::DomainViolation, "unknown scenario '" + name + "'");
}

}  // namespace

void validate(const Generator& g) {
    std::visit(
        [](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ExponentialGen>) {
                if (!(x.rate > 0.0)) fail(ErrorKind::DomainViolation, "exponential rate must be positive");
            } else if constexpr (std::is_same_v<T, PoissonGen>) {
                if (!(x.lambda > 0.0)) fail(ErrorKind::DomainViolation, "Poisson mean must be positive");
            } else if constexpr (std::is_same_v<T, GeometricGen>) {
                if (!(x.prob > 0.0 && x.prob <= 1.0)) fail(ErrorKind::DomainViolation, "geometric probability must be in (0,1]");
            } else {
                if (!(x.sd > 0.0)) fail(ErrorKind::DomainViolation, "normal sd must be positive");
            }
        },
        g);
}

std::string describe(const Generator& g) {
    std::ostringstream os;
    std::visit(
        [&os](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ExponentialGen>) os << "Exponential(rate=" << x.rate << ")";
            else if constexpr (std::is_same_v<T, PoissonGen>) os << "Poisson(lambda=" << x.lambda << ")";
            else if constexpr (std::is_same_v<T, GeometricGen>) os << "Geometric(prob=" << x.prob << ")";
            else os << "Normal(mean=" << x.mean << ", sd=" << x.sd << ")";
        },
        g);
    return os.str();
}

ObservationStream::ObservationStream(Generator g, std::uint64_t seed) : gen_(g), rng_(seed) { validate(gen_); }

double ObservationStream::next() {
    return std::visit(
        [this](const auto& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ExponentialGen>) return rng_.exponential(x.rate);
            else if constexpr (std::is_same_v<T, PoissonGen>) return static_cast<double>(rng_.poisson(x.lambda));
            else if constexpr (std::is_same_v<T, GeometricGen>) return static_cast<double>(rng_.geometric(x.prob));
            else return rng_.normal(x.mean, x.sd);
        },
        gen_);
}

std::vector<ScenarioInfo> scenarios() {
    std::vector<ScenarioInfo> out;
    for (const auto& s : registry()) out.push_back(s.info);
    return out;
}

SimulationPlan make_plan(const std::string& scenario, std::size_t n_max, std::size_t n_reps, std::uint64_t seed,
                         unsigned workers) {
    const auto& s = find_scenario(scenario);
    SimulationPlan p;
    p.scenario = scenario;
    p.generators = s.generators;
    p.test = s.test;
    p.n_max = n_max;
    p.n_reps = n_reps;
    p.seed = seed;
    p.statistics = s.statistics;
    p.averaging = s.averaging;
    p.workers = workers;
    return p;
}

double SimulationResult::at(std::size_t rep, std::size_t n, std::size_t stat) const {
    return per_rep.at((rep * plan.n_max + (n - 1)) * stat_count() + stat);
}

double SimulationResult::average(std::size_t n, std::size_t stat) const {
    return averages.at((n - 1) * stat_count() + stat);
}

std::size_t SimulationResult::stat_index(const std::string& name) const {
    for (std::size_t i = 0; i < plan.statistics.size(); ++i) {
        if (plan.statistics[i] == name) return i;
    }
    fail(ErrorKind::DomainViolation, "unknown statistic '" + name + "'");
}

SimulationResult run(const SimulationPlan& plan) {
    const auto& scenario = find_scenario(plan.scenario);
    if (plan.n_reps < 1) fail(ErrorKind::DomainViolation, "need at least one replication");
    if (plan.n_max < 2) fail(ErrorKind::DomainViolation, "need n_max >= 2");
    if (plan.statistics != scenario.statistics) fail(ErrorKind::DomainViolation, "statistics do not match the scenario");
    if (plan.generators.size() != scenario.generators.size()) fail(ErrorKind::DomainViolation, "generator count does not match the scenario");
    for (const auto& g : plan.generators) validate(g);
    validate(plan.test);

    const auto start = std::chrono::steady_clock::now();
    SimulationResult res;
    res.plan = plan;
    const std::size_t S = plan.statistics.size();
    const std::size_t row = plan.n_max * S;
    res.per_rep.assign(plan.n_reps * row, nan);

    const unsigned workers = std::max(1u, std::min<unsigned>(plan.workers, static_cast<unsigned>(plan.n_reps)));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t r = next++; r < plan.n_reps; r = next++) scenario.kernel(plan, r, res.per_rep.data() + r * row);
        } catch (...) {
            errors[w] = std::current_exception();
            next = plan.n_reps;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    // Reduction in replication-index order.
    res.averages.assign(row, nan);
    std::vector<double> vals;
    for (std::size_t i = 0; i < row; ++i) {
        vals.clear();
        for (std::size_t r = 0; r < plan.n_reps; ++r) {
            double v = res.per_rep[r * row + i];
            if (!std::isnan(v)) vals.push_back(v);
        }
        if (vals.empty()) continue;
        if (plan.averaging == Averaging::Raw) {
            res.averages[i] = log_mean_exp(vals);
        } else {
            double acc = 0.0;
            for (double v : vals) acc += v;
            res.averages[i] = acc / static_cast<double>(vals.size());
        }
    }
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::string format_sig(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(const SimulationResult& res, std::ostream& os) {
    const double ln10 = std::numbers::ln10;
    const std::size_t S = res.stat_count();
    os << "scenario,rep,n,statistic,log10_value\n";
    for (std::size_t r = 0; r < res.plan.n_reps; ++r) {
        for (std::size_t n = 1; n <= res.plan.n_max; ++n) {
            for (std::size_t s = 0; s < S; ++s) {
                os << res.plan.scenario << ',' << r << ',' << n << ',' << res.plan.statistics[s] << ','
                   << format_sig(res.at(r, n, s) / ln10) << '\n';
            }
        }
    }
    for (std::size_t n = 1; n <= res.plan.n_max; ++n) {
        for (std::size_t s = 0; s < S; ++s) {
            os << res.plan.scenario << ",avg," << n << ',' << res.plan.statistics[s] << ',' << format_sig(res.average(n, s) / ln10)
               << '\n';
        }
    }
}

}  // namespace obf
