#include "hqcp/plan.hpp"

#include <algorithm>
#include <sstream>

namespace hqcp {

std::string PlanAction::str() const {
    std::ostringstream os;
    os << "(" << name;
    for (const auto& a : args) os << " " << a;
    os << ")";
    return os.str();
}

bool ConditionalPlan::operator==(const ConditionalPlan& other) const {
    if (actions != other.actions) return false;
    if (!branch != !other.branch) return false;
    if (branch && !(*branch == *other.branch)) return false;
    return true;
}

bool Branch::operator==(const Branch& other) const {
    return observation == other.observation && prob == other.prob &&
           infeasible == other.infeasible && subplan == other.subplan;
}

bool BranchNode::operator==(const BranchNode& other) const {
    return sensor == other.sensor && branches == other.branches;
}

std::string observationLabel(const std::vector<Literal>& observation) {
    std::ostringstream os;
    bool first = true;
    for (const auto& l : observation) {
        if (!first) os << " ";
        os << l.str();
        first = false;
    }
    return os.str();
}

std::string pathKey(const std::vector<std::string>& observations) {
    if (observations.empty()) return "-";
    std::ostringstream os;
    for (size_t i = 0; i < observations.size(); ++i) {
        if (i) os << "/";
        os << observations[i];
    }
    return os.str();
}

namespace {

void walkCosts(const ConditionalPlan& pi, double prefix,
               std::vector<std::string>& path, PlanCostReport& out) {
    double here = prefix;
    for (const auto& a : pi.actions) here += a.cost;
    if (!pi.branch) {
        out.perPath[pathKey(path)] = here;
        out.worstCase = std::max(out.worstCase, Cost(here));
        return;
    }
    here += pi.branch->sensor.cost;
    for (const auto& br : pi.branch->branches) {
        path.push_back(observationLabel(br.observation));
        walkCosts(br.subplan, here, path, out);
        path.pop_back();
    }
}

void walkProbs(const ConditionalPlan& pi, double prefix,
               std::vector<std::string>& path,
               std::map<std::string, double>& out) {
    double here = prefix;
    for (const auto& a : pi.actions) here *= a.prob;
    if (!pi.branch) {
        out[pathKey(path)] = here;
        return;
    }
    here *= pi.branch->sensor.prob;
    for (const auto& br : pi.branch->branches) {
        path.push_back(observationLabel(br.observation));
        walkProbs(br.subplan, here * br.prob, path, out);
        path.pop_back();
    }
}

}  // namespace

PlanCostReport plan_cost(const ConditionalPlan& pi) {
    PlanCostReport out;
    out.worstCase = Cost(0);
    std::vector<std::string> path;
    walkCosts(pi, 0.0, path, out);
    return out;
}

std::map<std::string, double> plan_probability(const ConditionalPlan& pi) {
    std::map<std::string, double> out;
    std::vector<std::string> path;
    walkProbs(pi, 1.0, path, out);
    return out;
}

}  // namespace hqcp
