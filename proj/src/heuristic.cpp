#include "hqcp/heuristic.hpp"

namespace hqcp {

Cost heuristic_cost(const TaskArena& arena, int id) {
    const TaskNode& t = arena[id];
    if (!t.instantiated) {
        if (!t.candidatesComputed) return Cost(0);
        if (t.candidates.empty()) return Cost::infinite();
        Cost best = Cost::infinite();
        for (const auto& c : t.candidates) best = std::min(best, c.estimate);
        return best;
    }
    Cost base = t.candidates[static_cast<size_t>(t.chosen)].estimate;
    if (t.kind != TaskKind::Compound) return base;
    Cost sum = base;
    for (int c : t.children) sum += arena[c].cost;
    return sum;
}

bool is_consistent(const TaskArena& arena, int id) {
    const TaskNode& t = arena[id];
    if (!t.instantiated) return true;
    Cost bestAlternative = Cost::infinite();
    for (size_t i = static_cast<size_t>(t.chosen) + 1; i < t.candidates.size();
         ++i)
        bestAlternative = std::min(bestAlternative, t.candidates[i].estimate);
    return t.cost <= bestAlternative;
}

CostUpdateResult update_costs(TaskArena& arena, int justInstantiated) {
    CostUpdateResult result;
    if (!is_consistent(arena, justInstantiated)) {
        result.consistent = false;
        result.inconsistentAt = justInstantiated;
        return result;
    }
    int p = arena[justInstantiated].parent;
    while (p >= 0) {
        arena[p].cost = heuristic_cost(arena, p);
        ++result.recomputed;
        if (!is_consistent(arena, p)) {
            result.consistent = false;
            result.inconsistentAt = p;
            return result;
        }
        p = arena[p].parent;
    }
    return result;
}

}  // namespace hqcp
