#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hqcp/plan.hpp"
#include "hqcp/planner.hpp"

namespace hqcp {

struct OracleLimits {
    long long nodeBudget = 1'000'000;
    bool allowNullBranches = false;
};

struct OracleResult {
    Cost bestCost = Cost::infinite();
    std::optional<ConditionalPlan> bestPlan;
    long long plansEnumerated = 0;
    long long nodes = 0;
};

// Exhaustive enumeration of every decomposition (no cost ordering, no
// pruning beyond applicability). Ground truth for optimality checks.
// Throws BudgetExceeded when the node budget runs out.
OracleResult oracle_plan(const Problem& problem, const OracleLimits& limits = {});

struct SimulationReport {
    double successRate = 0.0;
    double meanCost = 0.0;
    long long samples = 0;
    uint64_t seed = 0;
    std::map<std::string, long long> branchHits;  // path key -> count

    std::string toJson() const;
};

// Monte-Carlo walk of the plan: worlds drawn from the belief distributions,
// action outcomes from prob(a). Deterministic given the seed. Throws
// BranchMissing when a drawn world has no matching branch.
SimulationReport simulate(const ConditionalPlan& pi, const Problem& problem,
                          long long samples, uint64_t seed);

// Deterministic walk through every world consistent with the belief
// states; returns human-readable violations (empty = executable).
std::vector<std::string> check_executability(const ConditionalPlan& pi,
                                             const Problem& problem);

struct AdmissibilityViolation {
    std::string task;
    std::string heuristic;
    std::string optimal;
};

// Compares the pre-expansion heuristic of every compound task the planner
// visits against the oracle's exact minimum for that task.
std::vector<AdmissibilityViolation> check_admissibility(
    const Problem& problem, const OracleLimits& limits = {},
    const PlannerConfig& config = {});

}  // namespace hqcp
