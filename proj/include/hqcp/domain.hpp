#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hqcp/belief.hpp"
#include "hqcp/literal.hpp"

namespace hqcp {

enum class TaskKind { Compound, Actuation, Sensing };

// Name + argument list of a task occurrence. Primitive task names carry
// the leading '!' of their operator.
struct TaskHead {
    std::string name;
    std::vector<std::string> args;

    std::string str() const;

    auto operator<=>(const TaskHead&) const = default;
};

// Operator with add/delete effects and a success probability.
struct ActuationOperator {
    std::string name;
    std::vector<std::string> params;
    std::vector<Literal> pre;
    std::vector<Literal> add;
    std::vector<Literal> del;
    double prob = 1.0;
};

// Operator that observes a belief-state predicate and changes nothing.
// `observe` is a template literal; args present must match the observed
// literal's leading args.
struct SensingOperator {
    std::string name;
    std::vector<std::string> params;
    std::vector<Literal> pre;
    Literal observe;
    double prob = 1.0;
};

// Decomposition rule: the method's name and params form the compound-task
// head it decomposes. Extra variables in pre are grounded by enumeration.
struct Method {
    std::string name;
    std::vector<std::string> params;
    std::vector<Literal> pre;
    std::vector<TaskHead> subtasks;
};

struct Domain {
    std::string name;
    std::vector<ActuationOperator> actuations;
    std::vector<SensingOperator> sensings;
    std::vector<Method> methods;

    const ActuationOperator* findActuation(const std::string& name) const;
    const SensingOperator* findSensing(const std::string& name) const;
    bool hasMethodFor(const std::string& name) const;

    // Compound when a method decomposes it, otherwise the operator kind.
    std::optional<TaskKind> kindOf(const std::string& name) const;
};

struct Problem {
    std::string name;
    State s0;
    std::vector<BeliefState> beliefs;
    std::vector<TaskHead> tasks;  // omega_0, totally ordered
    Domain domain;
    CostTable costs;
};

}  // namespace hqcp
