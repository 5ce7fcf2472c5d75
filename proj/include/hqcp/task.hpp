#pragma once

#include <deque>
#include <string>
#include <variant>
#include <vector>

#include "hqcp/grounding.hpp"

namespace hqcp {

// One applicable instantiation of a task, with the heuristic estimate used
// for ordering and consistency (uninstantiated subtasks count 0).
struct Candidate {
    Cost estimate;
    std::variant<GroundMethod, GroundAction, GroundSense> inst;

    std::string sortKey() const;
};

struct TaskNode {
    TaskKind kind = TaskKind::Compound;
    TaskHead head;
    int parent = -1;
    std::vector<int> children;

    Cost cost;  // Delta(t); 0 while uninstantiated
    bool instantiated = false;
    bool candidatesComputed = false;
    std::vector<Candidate> candidates;  // sorted ascending (estimate, key)
    int chosen = -1;                    // index into candidates
};

// Value-type task forest; copies snapshot the whole decomposition state.
struct TaskArena {
    std::vector<TaskNode> nodes;

    int add(TaskKind kind, TaskHead head, int parent);
    TaskNode& operator[](int id) { return nodes[static_cast<size_t>(id)]; }
    const TaskNode& operator[](int id) const {
        return nodes[static_cast<size_t>(id)];
    }

    std::string canonical(const std::deque<int>& agenda) const;
};

void sortCandidates(std::vector<Candidate>& cands);

}  // namespace hqcp
