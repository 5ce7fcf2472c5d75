#pragma once

#include "hqcp/task.hpp"

namespace hqcp {

struct CostUpdateResult {
    bool consistent = true;
    int inconsistentAt = -1;  // task id, deepest-first
    int recomputed = 0;       // ancestor recomputations performed
};

// Current heuristic value of a task:
//  - uninstantiated with no candidate set computed: 0
//  - computed but empty candidate set: infinite
//  - uninstantiated with candidates: min candidate estimate
//  - instantiated primitive: its action's cost
//  - instantiated compound: chosen method cost + sum of children values
Cost heuristic_cost(const TaskArena& arena, int id);

// Chosen instantiation stays no costlier than every untried alternative's
// estimate; ties keep the incumbent. Untried = candidates after `chosen`.
bool is_consistent(const TaskArena& arena, int id);

// Bottom-up recomputation along the parent chain of a just-instantiated
// task; stops at the first inconsistent ancestor.
CostUpdateResult update_costs(TaskArena& arena, int justInstantiated);

}  // namespace hqcp
