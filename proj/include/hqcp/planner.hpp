#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "hqcp/heuristic.hpp"
#include "hqcp/plan.hpp"
#include "hqcp/task.hpp"

namespace hqcp {

struct PlannerConfig {
    int maxDepth = 10000;
    bool allowNullBranches = false;
    uint64_t tieSeed = 0;  // reserved; tie-breaking is lexicographic
    int trace = 0;         // 0 silent, 1 summary, 2 per-expansion lines
};

struct PlannerStats {
    long long nodes = 0;
    long long backtracks = 0;
    long long updates = 0;
    long long inconsistencies = 0;
};

struct PlanResult {
    std::optional<ConditionalPlan> plan;
    Cost cost;
    std::map<std::string, double> pathProbabilities;
    std::string failureReason;
    PlannerStats stats;

    bool ok() const { return plan.has_value(); }
};

// Mutable search position: deterministic state, pending belief states,
// task forest and the totally ordered agenda. Copy = full snapshot;
// backtracking restores a snapshot exactly.
struct SearchContext {
    State state;
    std::vector<BeliefState> pending;
    TaskArena tasks;
    std::deque<int> agenda;

    static SearchContext initial(const Problem& problem,
                                 const Grounder& grounder);
    std::string canonical() const;
};

// Computes and sorts the task's applicable ground instantiations once;
// returns the candidate count.
int ensureCandidates(SearchContext& ctx, const Grounder& grounder, int taskId);

// Commits candidate `candIdx` of the front task: records the choice, sets
// Delta(t), splices method subtasks / applies actuation effects.
void instantiate(SearchContext& ctx, const Grounder& grounder, int taskId,
                 int candIdx);

// Sensing variant used by search walks: commits the sensing candidate and
// extends the state with one belief alternative, consuming the belief.
void instantiateSensingAlternative(SearchContext& ctx, const Grounder& grounder,
                                   int taskId, int candIdx, int altIdx);

// Called once per compound-task expansion with the pre-expansion heuristic
// value (min candidate estimate); used for admissibility auditing.
using ExpansionHook = std::function<void(
    const State&, const std::vector<BeliefState>&, const TaskHead&, Cost)>;

// Minimum worst-case-cost conditional plan fully decomposing the problem's
// task network, or failure. Deterministic. Throws DepthExceeded and
// NoMatchingBelief.
PlanResult plan(const Problem& problem, const PlannerConfig& config = {},
                const ExpansionHook& hook = nullptr);

}  // namespace hqcp
