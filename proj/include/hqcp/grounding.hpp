#pragma once

#include <string>
#include <vector>

#include "hqcp/cost.hpp"
#include "hqcp/domain.hpp"

namespace hqcp {

struct GroundAction {
    std::string name;
    std::vector<std::string> args;
    std::vector<Literal> pre;
    std::vector<Literal> add;
    std::vector<Literal> del;
    double prob = 1.0;
    Cost cost;  // precondition cost under the problem's table
};

struct GroundSense {
    std::string name;
    std::vector<std::string> args;
    std::vector<Literal> pre;
    Literal observe;  // ground where the template had bound args
    double prob = 1.0;
    Cost cost;
};

struct GroundMethod {
    std::string name;
    std::vector<std::string> args;
    std::vector<Literal> pre;
    std::vector<TaskHead> subtasks;
    Cost cost;
    int declIndex = 0;  // declaration order, last tie-break key
};

// Snapshot semantics: returns a fresh state, input untouched.
State apply_effects(const GroundAction& a, const State& s);

Cost action_cost(const GroundAction& a, const CostTable& delta);
Cost method_cost(const GroundMethod& m, const CostTable& delta);

// Enumerates ground applicable instantiations against a state. Unbound
// variables beyond the task-head unification range over the constant
// universe collected from problem and domain.
class Grounder {
public:
    explicit Grounder(const Problem& problem);

    std::vector<GroundAction> actuationCandidates(const TaskHead& t,
                                                  const State& s) const;
    std::vector<GroundSense> sensingCandidates(const TaskHead& t,
                                               const State& s) const;
    std::vector<GroundMethod> methodCandidates(const TaskHead& t,
                                               const State& s) const;

    TaskKind kindOf(const TaskHead& t) const;  // throws UnknownTask

    const std::vector<std::string>& constants() const { return constants_; }

private:
    const Domain& domain_;
    const CostTable& costs_;
    std::vector<std::string> constants_;

    std::vector<Substitution> completions(const Substitution& base,
                                          std::vector<std::string> freeVars) const;
};

// Index of the unique pending belief state whose some alternative contains
// a literal matching the ground observation template, or -1.
// Throws NoMatchingBelief on ambiguity.
int matchBelief(const std::vector<BeliefState>& pending, const Literal& observe);

bool observationMatches(const Literal& observe, const Literal& lit);

}  // namespace hqcp
