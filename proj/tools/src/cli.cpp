#include "obf_cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "obf/calibration.hpp"
#include "obf/discrete.hpp"
#include "obf/exponential.hpp"
#include "obf/linear.hpp"
#include "obf/montecarlo.hpp"
#include "obf/mts.hpp"
#include "obf/normal.hpp"
#include "obf_cli/input.hpp"

namespace obf::cli {

namespace {

std::string render_attainer(const Attainer& a) {
    if (const auto* t = std::get_if<TrainingIndex>(&a)) {
        std::string s;
        for (std::size_t i : t->indices) {
            if (!s.empty()) s += ' ';
            s += std::to_string(i + 1);
        }
        return s;
    }
    if (const auto* d = std::get_if<double>(&a)) return format_sig(*d);
    return "";
}

class ReportWriter {
public:
    ReportWriter(std::ostream& out, std::ostream& err, bool explain) : out_(out), err_(err), explain_(explain) {
        out_ << "variant,log10_value,attainer\n";
    }
    void add(const BoundReport& r) {
        out_ << to_string(r.variant) << ',' << format_sig(r.value.log10()) << ',' << render_attainer(r.attainer) << '\n';
        if (explain_ && !r.notes.empty()) err_ << to_string(r.variant) << ": " << r.notes << '\n';
    }
    void add(const BoundPair& p) {
        add(p.upper10);
        add(p.lower01);
    }
    void note(const std::string& text) {
        if (explain_) err_ << text << '\n';
    }

private:
    std::ostream& out_;
    std::ostream& err_;
    bool explain_;
};

std::uint64_t default_seed() {
    const char* env = std::getenv("OBF_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t pos = 0;
        auto v = std::stoull(env, &pos, 10);
        if (pos != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("OBF_SEED is not an unsigned integer: '") + env + "'");
    }
}

struct BoundsArgs {
    std::string test;
    std::string data;
    double lambda0 = 1.0;
    double h0 = 1.0;
    double mu0 = 0.0;
    double sigma0 = 1.0;
    int r = 1;
    bool explain = false;
};

void run_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err) {
    Sample y = read_sample(a.data);
    ReportWriter w(out, err, a.explain);
    if (a.test == "exponential") {
        validate(ModelTest{Exponential{a.lambda0}});
        w.note("formula: B10(y) * sup B01(y_l); single-observation B01 = lambda0 y e^(-lambda0 y), peak 1/e at y = 1/lambda0");
        w.note("empirical bound: training point maximizing the single-observation B01 (argmax); the argmin reading bounds the other direction");
        auto b = exp_bounds(y, a.lambda0);
        w.add(b.theoretical);
        w.add(b.empirical);
        w.add(b.aibf10);
        w.add(BoundReport{Variant::SPBF10, exp_sp_bf10(ExpStats::from(y), a.lambda0), {}, "prior: posterior given y = 1/lambda0"});
        w.add(BoundReport{Variant::EPBF10, exp_ep_bf10(y, a.lambda0), {}, "prior: average of single-observation posteriors"});
    } else if (a.test == "poisson-vs-geometric") {
        w.note("formula: B10(y) * sup kernel 1/Gamma(y_l + 3/2), sup 2/sqrt(pi) at y_l = 0");
        w.note("empirical bound: smallest observed count y_(1), where the decreasing kernel is largest; a y_(n) reading gives the smallest value instead");
        auto b = pg_bounds(y);
        w.add(b.theoretical);
        w.add(b.empirical);
        w.add(b.aibf10);
    } else if (a.test == "poisson-vs-negbinomial") {
        validate(ModelTest{PoissonVsNegBinomial{a.r}});
        w.note("negative binomial prior r^1/2 theta^-1/2 (1-theta)^-1; a training point y_l = 0 is improper");
        w.note("TheoreticalLower01 is the closed form B01 * sqrt(r/pi); the single-observation B01 is unbounded in y_l, so it is not an infimum");
        w.note("empirical bound: largest observed count y_(n), where the single-observation B01 is largest");
        auto b = pnb_bounds(y, a.r);
        w.add(b.theoretical_lower01);
        w.add(b.empirical);
        w.add(b.aibf10);
    } else if (a.test == "normal-scale") {
        w.note("pair B01 = sqrt(h0) |d| e^(-h0 d^2/4) / (2 sqrt(pi)), sup at |d| = sqrt(2/h0)");
        w.note("the correction sqrt(h0/pi) |d| e^(-h0 d^2/4) = 0.484 at h0 = 1 is twice the pair supremum; bounds use the exact pair value");
        auto b = scale_bounds(y, a.h0);
        w.add(b.theoretical);
        w.add(b.empirical);
        w.add(b.aibf10);
    } else if (a.test == "normal-mean-known") {
        w.note("single-observation B01 = e^(-(y - mu0)^2 / (2 sigma0^2)) / (sqrt(2 pi) sigma0)");
        auto b = mean_known_bounds(y, a.mu0, a.sigma0);
        w.add(b.upper10);
        w.add(b.lower01);
        w.add(b.eibf10);
        w.add(b.empirical);
        w.add(b.aibf10);
    } else if (a.test == "normal-mean-unknown") {
        w.note("priors 1/sigma under the null and 1/sigma^2 under the alternative; pair sup 1/sqrt(pi)");
        auto b = mean_unknown_bounds(y, a.mu0);
        w.add(b.upper10);
        w.add(b.lower01);
        w.add(b.empirical);
        w.add(b.aibf10);
    } else {
        w.note("N(0,1) against N(mu,1); c = 1/sqrt(2 pi) from the null training marginal at y0 = 0");
        w.add(simple_mean_upper10(y));
        w.add(gs_bayes_factor(SimpleNormalMean{}, y));
    }
}

void run_priors(double h0, const std::string& grid, std::ostream& out) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream gs(grid);
    if (!(gs >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !gs.eof()) {
        throw InputError("--grid must look like a:b:step, got '" + grid + "'");
    }
    if (!(lo > 0.0) || !(hi >= lo) || !(step > 0.0)) throw InputError("--grid needs 0 < a <= b and step > 0");
    auto sp = scale_sp_prior(h0);
    auto ip = scale_intrinsic_prior(h0);
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    out << "h,sp_prior,intrinsic_prior\n";
    for (std::size_t i = 0; i < count; ++i) {
        double h = lo + static_cast<double>(i) * step;
        out << format_sig(h) << ',' << format_sig(sp(h)) << ',' << format_sig(ip(h)) << '\n';
    }
}

void print_tuple(std::ostream& out, const std::vector<std::size_t>& idx) {
    for (std::size_t j = 0; j < idx.size(); ++j) out << (j ? "," : "") << idx[j] + 1;
    out << '\n';
}

void run_mts(std::size_t n, std::size_t k, std::optional<std::uint64_t> limit, std::uint64_t seed, std::ostream& out) {
    if (k < 1) throw InputError("--k must be at least 1");
    if (k > n) fail(ErrorKind::InsufficientData, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    const std::uint64_t total = binomial(n, k);
    if (limit && total > *limit) {
        for (const auto& t : random_subsample(n, k, static_cast<std::size_t>(*limit), seed)) print_tuple(out, t.indices);
        return;
    }
    if (total > default_enumeration_cap) {
        fail(ErrorKind::DomainViolation, "C(n,k) exceeds the enumeration cap; pass --limit to subsample");
    }
    for (Combinations c(n, k); !c.done(); c.next()) print_tuple(out, c.current());
}

AnovaPrior parse_anova_prior(const std::string& s) {
    if (s == "full-jeffreys") return AnovaPrior::FullJeffreys;
    if (s == "modified-jeffreys") return AnovaPrior::ModifiedJeffreys;
    return AnovaPrior::ReferencePrior;
}

void run_anova(const std::string& path, const std::string& prior, std::uint64_t seed, bool explain, std::ostream& out,
               std::ostream& err) {
    auto g = read_grouped(path);
    AnovaSpec spec{g.sizes, parse_anova_prior(prior)};
    LinearScan scan;
    scan.seed = seed;
    auto b = anova_bounds(spec, g.values, scan);
    ReportWriter w(out, err, explain);
    w.note("groups: " + std::to_string(spec.m()) + ", n = " + std::to_string(spec.n()) + ", F = " + format_sig(b.fit.F));
    w.add(BoundReport{Variant::Plain01, anova_ss_bf01(spec, b.fit), {}, "full-data B01 from R0/R1"});
    w.add(b.theoretical);
    if (b.empirical) w.add(*b.empirical);
    else w.note("no proper stratified training sample in the data; empirical bound omitted");
}

void run_lm(const std::string& a0, const std::string& a1, const std::string& yfile, int q0, int q1,
            const std::string& prior, std::uint64_t seed, bool explain, std::ostream& out, std::ostream& err) {
    DesignPair d;
    d.A0 = read_matrix(a0);
    d.A1 = read_matrix(a1);
    Sample y = read_sample(yfile);
    if (static_cast<std::size_t>(d.A0.rows()) != y.size() || static_cast<std::size_t>(d.A1.rows()) != y.size()) {
        throw InputError("design row counts must equal the number of responses");
    }
    d.q0 = q0;
    d.q1 = q1;
    if (!prior.empty()) {
        QPreset p = prior == "reference" ? QPreset::Reference
                    : prior == "full-jeffreys" ? QPreset::FullJeffreys
                                               : QPreset::ModifiedJeffreys;
        std::tie(d.q0, d.q1) = preset_q(p, d.p0(), d.p1());
    }
    validate_design(d);
    LinearScan scan;
    scan.seed = seed;
    ReportWriter w(out, err, explain);
    w.note("prior sigma^-(1+q) with q0 = " + std::to_string(d.q0) + ", q1 = " + std::to_string(d.q1));
    w.add(BoundReport{Variant::Plain01, gl_bf01_full(d, y), {}, "full-data B01 from the exact marginals"});
    w.add(make_pair_from_upper10(gl_empirical_bound(d, y, BoundMode::Upper10, scan)));
}

void run_calibrate(std::optional<double> p, const std::string& test, double lambda0, const std::string& data,
                   std::ostream& out) {
    if (p) {
        double rb = robust_lower_bound(*p);
        out << "p,robust_bound,log10_robust_bound\n";
        out << format_sig(*p) << ',' << format_sig(rb) << ',' << format_sig(std::log10(rb)) << '\n';
        return;
    }
    if (test != "exponential") throw InputError("calibrate needs --p or --test exponential");
    if (data.empty()) throw InputError("calibrate --test exponential needs --data");
    Sample y = read_sample(data);
    auto pv = exp_wilks_pvalue(y, lambda0);
    double rb = robust_lower_bound(pv);
    auto b = exp_bounds(y, lambda0);
    out << "p_wilks,robust_bound,log10_robust_bound,log10_ibf_lower01\n";
    out << format_sig(pv.p) << ',' << format_sig(rb) << ',' << format_sig(std::log10(rb)) << ','
        << format_sig(b.theoretical.lower01.value.log10()) << '\n';
}

void run_simulate(const std::string& scenario, std::uint64_t seed, std::size_t reps, std::size_t n, unsigned workers,
                  const std::string& out_path, bool list, bool verbose, std::ostream& out, std::ostream& err) {
    if (list) {
        for (const auto& s : scenarios()) out << s.name << '\t' << s.description << '\n';
        return;
    }
    if (scenario.empty()) throw InputError("--scenario is required (use --list to see the names)");
    auto plan = make_plan(scenario, n, reps, seed, workers);
    auto res = run(plan);
    if (out_path.empty() || out_path == "-") {
        write_csv(res, out);
    } else {
        std::ofstream f(out_path);
        if (!f) throw InputError(out_path + ": cannot open for writing");
        write_csv(res, f);
        if (!f) throw InputError(out_path + ": write failed");
    }
    if (verbose) err << "simulate: " << scenario << " reps=" << reps << " n=" << n << " wall=" << res.wall_seconds << "s\n";
}

void run_cox(const std::string& data, std::optional<std::uint64_t> shuffle, std::ostream& out) {
    Sample y = data.empty() ? cox_dataset() : read_sample(data);
    auto reports = cox_sequential(y, shuffle);
    out << "prefix_n,log10_upper10,log10_lower01\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out << i + 1 << ',' << format_sig(reports[i].value.log10()) << ',' << format_sig(-reports[i].value.log10()) << '\n';
    }
}

}  // namespace

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonExistentBound: return NonExistent;
    case ErrorKind::ImproperTrainingSample: return ImproperTraining;
    case ErrorKind::RankDeficientDesign: return RankDeficient;
    case ErrorKind::InsufficientData: return Insufficient;
    case ErrorKind::DomainViolation: return InputFailure;
    }
    return InputFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Objective Bayes factor bounds"};
    app.name("obf");
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Report timing on stderr");

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Bayes factor bounds for one dataset");
    bounds->add_option("--test", ba.test, "Model pair")
        ->required()
        ->check(CLI::IsMember({"exponential", "poisson-vs-geometric", "poisson-vs-negbinomial", "normal-scale",
                               "normal-mean-known", "normal-mean-unknown", "simple-normal-mean"}));
    bounds->add_option("--data", ba.data, "Observations file")->required();
    bounds->add_option("--lambda0", ba.lambda0, "Null exponential rate");
    bounds->add_option("--r", ba.r, "Negative binomial size");
    bounds->add_option("--h0", ba.h0, "Null precision");
    bounds->add_option("--mu0", ba.mu0, "Null mean");
    bounds->add_option("--sigma0", ba.sigma0, "Known standard deviation");
    bounds->add_flag("--explain", ba.explain, "Print formula notes on stderr");

    std::string ptest = "normal-scale", pgrid = "0.05:3:0.05";
    double ph0 = 1.0;
    auto* priors = app.add_subcommand("priors", "Prior densities on a grid");
    priors->add_option("--test", ptest, "Model pair")->check(CLI::IsMember({"normal-scale"}));
    priors->add_option("--h0", ph0, "Null precision");
    priors->add_option("--grid", pgrid, "a:b:step");

    std::size_t mn = 0, mk = 0;
    std::optional<std::uint64_t> mlimit;
    std::optional<std::uint64_t> mseed;
    auto* mts = app.add_subcommand("mts", "List minimal training samples (1-based)");
    mts->add_option("--n", mn, "Sample size")->required();
    mts->add_option("--k", mk, "Training sample size")->required();
    mts->add_option("--limit", mlimit, "Draw this many at random when C(n,k) is larger")->check(CLI::PositiveNumber);
    mts->add_option("--seed", mseed, "Seed for --limit");

    std::string agroups, aprior = "full-jeffreys";
    std::optional<std::uint64_t> aseed;
    bool aexplain = false;
    auto* anova = app.add_subcommand("anova", "One-way ANOVA bounds");
    anova->add_option("--groups", agroups, "CSV rows group_label,value")->required();
    anova->add_option("--prior", aprior, "Prior")->check(CLI::IsMember({"full-jeffreys", "modified-jeffreys", "reference"}));
    anova->add_option("--seed", aseed, "Seed for subsampling stratified training samples");
    anova->add_flag("--explain", aexplain, "Print notes on stderr");

    std::string la0, la1, ly, lprior;
    int lq0 = 0, lq1 = 0;
    std::optional<std::uint64_t> lseed;
    bool lexplain = false;
    auto* lm = app.add_subcommand("lm", "Nested linear model bounds");
    lm->add_option("--a0", la0, "Null design matrix file")->required();
    lm->add_option("--a1", la1, "Alternative design matrix file")->required();
    lm->add_option("--y", ly, "Response file")->required();
    lm->add_option("--q0", lq0, "Null prior exponent")->check(CLI::NonNegativeNumber);
    lm->add_option("--q1", lq1, "Alternative prior exponent")->check(CLI::NonNegativeNumber);
    lm->add_option("--prior", lprior, "Preset overriding --q0/--q1")
        ->check(CLI::IsMember({"reference", "full-jeffreys", "modified-jeffreys"}));
    lm->add_option("--seed", lseed, "Seed for subsampling training samples");
    lm->add_flag("--explain", lexplain, "Print notes on stderr");

    std::optional<double> cp;
    std::string ctest, cdata;
    double clambda0 = 1.0;
    auto* calibrate = app.add_subcommand("calibrate", "Robust lower bound -e p log p");
    auto* cp_opt = calibrate->add_option("--p", cp, "p-value")->check(CLI::Range(0.0, 1.0));
    calibrate->add_option("--test", ctest, "Model pair")->check(CLI::IsMember({"exponential"}))->excludes(cp_opt);
    calibrate->add_option("--lambda0", clambda0, "Null exponential rate");
    calibrate->add_option("--data", cdata, "Observations file");

    std::string sscenario, sout;
    std::optional<std::uint64_t> sseed;
    std::size_t sreps = 100, sn = 100;
    unsigned sworkers = 1;
    bool slist = false;
    auto* simulate = app.add_subcommand("simulate", "Run a registered simulation scenario");
    simulate->add_option("--scenario", sscenario, "Scenario name");
    simulate->add_option("--seed", sseed, "Master seed (default OBF_SEED or 0)");
    simulate->add_option("--reps", sreps, "Replications")->check(CLI::PositiveNumber);
    simulate->add_option("--n", sn, "Largest sample size")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    simulate->add_option("--workers", sworkers, "Worker threads")->check(CLI::Range(1u, 256u));
    simulate->add_option("--out", sout, "Output CSV (default stdout)");
    simulate->add_flag("--list", slist, "List scenarios");

    std::string xdata;
    std::optional<std::uint64_t> xshuffle;
    auto* cox = app.add_subcommand("cox", "Sequential Poisson-vs-Geometric bounds on the Cox data");
    cox->add_option("--data", xdata, "Counts file (default: the built-in Cox data)");
    cox->add_option("--shuffle-seed", xshuffle, "Shuffle the data before the prefix scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return InputFailure;
    }

    // Buffered so a failing command leaves stdout empty.
    std::ostringstream buf;
    try {
        if (bounds->parsed()) run_bounds(ba, buf, err);
        else if (priors->parsed()) run_priors(ph0, pgrid, buf);
        else if (mts->parsed()) run_mts(mn, mk, mlimit, mseed ? *mseed : default_seed(), buf);
        else if (anova->parsed()) run_anova(agroups, aprior, aseed ? *aseed : default_seed(), aexplain, buf, err);
        else if (lm->parsed()) run_lm(la0, la1, ly, lq0, lq1, lprior, lseed ? *lseed : default_seed(), lexplain, buf, err);
        else if (calibrate->parsed()) run_calibrate(cp, ctest, clambda0, cdata, buf);
        else if (simulate->parsed())
            run_simulate(sscenario, sseed ? *sseed : default_seed(), sreps, sn, sworkers, sout, slist, verbose, buf, err);
        else if (cox->parsed()) run_cox(xdata, xshuffle, buf);
    } catch (const EvidenceError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return InputFailure;
    }
    out << buf.str();
    return Ok;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("obf");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace obf::cli
