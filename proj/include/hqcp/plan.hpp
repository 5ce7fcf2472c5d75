#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hqcp/cost.hpp"
#include "hqcp/literal.hpp"

namespace hqcp {

struct PlanAction {
    std::string name;
    std::vector<std::string> args;
    double prob = 1.0;
    double cost = 0.0;
    bool sensing = false;

    std::string str() const;
    bool operator==(const PlanAction&) const = default;
};

struct BranchNode;

// Tree of actuation actions with at most one branch point per level,
// always last: everything after a sensing action lives in its branches.
struct ConditionalPlan {
    std::vector<PlanAction> actions;
    std::shared_ptr<const BranchNode> branch;  // null for linear plans

    bool empty() const { return actions.empty() && !branch; }
    bool operator==(const ConditionalPlan& other) const;
};

struct Branch {
    std::vector<Literal> observation;  // ground fragment revealed by sensing
    double prob = 0.0;                 // b(s_o)
    bool infeasible = false;           // NULL branch (no achievable subplan)
    ConditionalPlan subplan;

    bool operator==(const Branch& other) const;
};

struct BranchNode {
    PlanAction sensor;
    std::vector<Branch> branches;

    bool operator==(const BranchNode& other) const;
};

// Worst-case path cost plus the per-branch breakdown keyed by the path of
// observation labels (root path is "-").
struct PlanCostReport {
    Cost worstCase;
    std::map<std::string, double> perPath;
};

PlanCostReport plan_cost(const ConditionalPlan& pi);

// Probability of each root-to-leaf path: product of action probs along the
// path times the branch probs taken.
std::map<std::string, double> plan_probability(const ConditionalPlan& pi);

std::string pathKey(const std::vector<std::string>& observations);
std::string observationLabel(const std::vector<Literal>& observation);

}  // namespace hqcp
