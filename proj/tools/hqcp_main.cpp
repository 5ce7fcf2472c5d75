#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hqcp/bench.hpp"
#include "hqcp/oracle.hpp"
#include "hqcp/parser.hpp"
#include "hqcp/planner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPlanningFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int traceFromEnv() {
    const char* v = std::getenv("HQCP_LOG");
    return v ? std::atoi(v) : 0;
}

hqcp::Problem loadProblem(const std::string& domainFile,
                          const std::string& problemFile) {
    hqcp::Domain dom =
        hqcp::parse_domain(readFile(domainFile), domainFile);
    return hqcp::parse_problem(readFile(problemFile), dom, problemFile);
}

int cmdPlan(const std::string& domainFile, const std::string& problemFile,
            bool jsonOut, bool stats, bool allowNull, int maxDepth) {
    hqcp::Problem problem = loadProblem(domainFile, problemFile);
    hqcp::PlannerConfig cfg;
    cfg.allowNullBranches = allowNull;
    cfg.maxDepth = maxDepth;
    cfg.trace = traceFromEnv();
    hqcp::PlanResult result = hqcp::plan(problem, cfg);
    if (stats) {
        std::cerr << "nodes=" << result.stats.nodes
                  << " backtracks=" << result.stats.backtracks
                  << " updates=" << result.stats.updates
                  << " cost=" << (result.ok() ? result.cost.str() : "-");
        if (result.ok()) {
            std::cerr << " paths={";
            bool first = true;
            for (const auto& [path, p] : result.pathProbabilities) {
                if (!first) std::cerr << " ";
                std::cerr << path << ":" << p;
                first = false;
            }
            std::cerr << "}";
        }
        std::cerr << "\n";
    }
    if (!result.ok()) {
        std::cout << "failure\n";
        std::cerr << result.failureReason << "\n";
        return kExitPlanningFailure;
    }
    std::cout << hqcp::serialize_plan(
        *result.plan,
        jsonOut ? hqcp::PlanFormat::Json : hqcp::PlanFormat::Tree);
    return kExitOk;
}

int cmdValidate(const std::string& domainFile, const std::string& problemFile,
                const std::string& planFile, long long samples,
                uint64_t seed) {
    hqcp::Problem problem = loadProblem(domainFile, problemFile);
    hqcp::ConditionalPlan pi;
    try {
        pi = hqcp::parse_plan_json(readFile(planFile));
    } catch (const std::exception& e) {
        std::cerr << "plan schema error: " << e.what() << "\n";
        return kExitInputError;
    }
    auto issues = hqcp::check_executability(pi, problem);
    hqcp::SimulationReport report =
        hqcp::simulate(pi, problem, samples, seed);
    std::cout << report.toJson();
    if (!issues.empty()) {
        for (const auto& i : issues) std::cerr << "executability: " << i << "\n";
        return kExitPlanningFailure;
    }
    return kExitOk;
}

int cmdBench(const std::string& domain, const std::string& range,
             const std::string& scenarios, int reps, const std::string& outDir,
             int jobs) {
    hqcp::BenchSpec spec;
    spec.domain = domain;
    spec.repetitions = reps;
    if (domain == "medicate") {
        size_t dots = range.find("..");
        int lo, hi;
        if (dots == std::string::npos) {
            lo = hi = std::stoi(range);
        } else {
            lo = std::stoi(range.substr(0, dots));
            hi = std::stoi(range.substr(dots + 2));
        }
        if (lo < 1 || hi < lo) {
            std::cerr << "invalid --n range " << range << "\n";
            return kExitInputError;
        }
        for (int n = lo; n <= hi; ++n) spec.scales.push_back(n);
    } else if (domain == "zenotravel") {
        std::stringstream ss(scenarios);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok == "late")
                spec.scenarios.push_back(hqcp::ZenoScenario::Late);
            else if (tok == "tight")
                spec.scenarios.push_back(hqcp::ZenoScenario::Tight);
            else {
                std::cerr << "unknown scenario " << tok << "\n";
                return kExitInputError;
            }
        }
        if (spec.scenarios.empty()) {
            std::cerr << "no scenarios given\n";
            return kExitInputError;
        }
    } else {
        std::cerr << "unknown benchmark domain " << domain << "\n";
        return kExitInputError;
    }
    auto rows = hqcp::run_bench(spec, jobs);
    std::string csv = hqcp::to_csv(rows);
    if (!outDir.empty()) {
        std::filesystem::create_directories(outDir);
        std::string path = outDir + "/" + domain + ".csv";
        std::ofstream out(path, std::ios::binary);
        out << csv;
        std::cerr << "wrote " << path << "\n";
    }
    std::cout << csv;
    return kExitOk;
}

int cmdCheck(const std::string& domainFile, const std::string& problemFile,
             long long budget, bool allowNull) {
    hqcp::Problem problem = loadProblem(domainFile, problemFile);
    hqcp::PlannerConfig cfg;
    cfg.allowNullBranches = allowNull;
    hqcp::OracleLimits limits;
    limits.nodeBudget = budget;
    limits.allowNullBranches = allowNull;
    try {
        hqcp::PlanResult result = hqcp::plan(problem, cfg);
        hqcp::OracleResult oracle = hqcp::oracle_plan(problem, limits);
        hqcp::Cost planCost =
            result.ok() ? result.cost : hqcp::Cost::infinite();
        auto violations = hqcp::check_admissibility(problem, limits, cfg);
        std::cout << "hqcp=" << planCost.str()
                  << " oracle=" << oracle.bestCost.str()
                  << " plans_enumerated=" << oracle.plansEnumerated
                  << " admissibility_violations=" << violations.size() << "\n";
        for (const auto& v : violations)
            std::cout << "violation: " << v.task << " heuristic=" << v.heuristic
                      << " optimal=" << v.optimal << "\n";
        bool agree = planCost == oracle.bestCost;
        if (agree && violations.empty()) {
            std::cout << "HQCP=oracle\n";
            return kExitOk;
        }
        return kExitPlanningFailure;
    } catch (const hqcp::BudgetExceeded& e) {
        std::cerr << e.what()
                  << "; raise --budget or shrink the instance\n";
        return kExitInputError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HQCP: HTN planner for minimum-cost conditional plans under "
                 "partial observability"};
    app.require_subcommand(1);

    std::string domainFile, problemFile, planFile;
    bool jsonOut = false, stats = false, allowNull = false;
    int maxDepth = 10000;
    long long samples = 10000;
    uint64_t seed = 0;
    std::string benchDomain, range = "1..6", scenarios = "late,tight", outDir;
    int reps = 5, jobs = 1;
    long long budget = 1'000'000;

    auto* planCmd = app.add_subcommand("plan", "Search for a plan");
    planCmd->add_option("domain", domainFile, "Domain file")->required();
    planCmd->add_option("problem", problemFile, "Problem file")->required();
    planCmd->add_flag("--json", jsonOut, "Emit the JSON plan format");
    planCmd->add_flag("--stats", stats, "Print search statistics to stderr");
    planCmd->add_flag("--allow-null-branches", allowNull,
                      "Permit NULL branches on unachievable observations");
    planCmd->add_option("--max-depth", maxDepth, "Recursion depth limit");

    auto* valCmd = app.add_subcommand("validate", "Simulate and check a plan");
    valCmd->add_option("domain", domainFile, "Domain file")->required();
    valCmd->add_option("problem", problemFile, "Problem file")->required();
    valCmd->add_option("plan", planFile, "Plan JSON file")->required();
    valCmd->add_option("--samples", samples, "Monte-Carlo sample count");
    valCmd->add_option("--seed", seed, "RNG seed (mt19937_64)");

    auto* benchCmd = app.add_subcommand("bench", "Run benchmark campaigns");
    benchCmd->add_option("--domain", benchDomain, "medicate|zenotravel")
        ->required();
    benchCmd->add_option("--n", range, "Medicate scale, e.g. 1..6");
    benchCmd->add_option("--scenario", scenarios,
                         "ZenoTravel scenarios, e.g. late,tight");
    benchCmd->add_option("--reps", reps, "Repetitions per instance");
    benchCmd->add_option("--out", outDir, "Directory for CSV output");
    benchCmd->add_option("--jobs", jobs, "Parallel instances");

    auto* checkCmd =
        app.add_subcommand("check", "Compare against the brute-force oracle");
    checkCmd->add_option("domain", domainFile, "Domain file")->required();
    checkCmd->add_option("problem", problemFile, "Problem file")->required();
    checkCmd->add_option("--budget", budget, "Oracle node budget");
    checkCmd->add_flag("--allow-null-branches", allowNull,
                       "Permit NULL branches on unachievable observations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (planCmd->parsed())
            return cmdPlan(domainFile, problemFile, jsonOut, stats, allowNull,
                           maxDepth);
        if (valCmd->parsed())
            return cmdValidate(domainFile, problemFile, planFile, samples,
                               seed);
        if (benchCmd->parsed())
            return cmdBench(benchDomain, range, scenarios, reps, outDir, jobs);
        if (checkCmd->parsed())
            return cmdCheck(domainFile, problemFile, budget, allowNull);
    } catch (const hqcp::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const hqcp::NoMatchingBelief& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const hqcp::InvalidDistribution& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
    return kExitInternalError;
}
