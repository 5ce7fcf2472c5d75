#include "hqcp/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hqcp {

namespace {

struct OracleSearch {
    const Problem& problem;
    const OracleLimits& limits;
    Grounder grounder;
    long long nodes = 0;
    long long plansEnumerated = 0;

    explicit OracleSearch(const Problem& p, const OracleLimits& l)
        : problem(p), limits(l), grounder(p) {}

    struct Found {
        ConditionalPlan plan;
        Cost cost;
    };

    void tick() {
        if (++nodes > limits.nodeBudget) throw BudgetExceeded(limits.nodeBudget);
    }

    // Exhaustive minimum over all completions of the agenda. Same frontmost
    // task order and grounding as the planner, declaration order, no
    // heuristic ordering and no pruning.
    std::optional<Found> best(const State& s,
                              const std::vector<BeliefState>& pending,
                              const std::vector<TaskHead>& agenda) {
        tick();
        if (agenda.empty()) {
            ++plansEnumerated;
            return Found{ConditionalPlan{}, Cost(0)};
        }
        TaskHead t = agenda.front();
        std::vector<TaskHead> rest(agenda.begin() + 1, agenda.end());
        switch (grounder.kindOf(t)) {
            case TaskKind::Actuation: {
                std::optional<Found> out;
                for (const auto& a : grounder.actuationCandidates(t, s)) {
                    State s2 = apply_effects(a, s);
                    auto sub = best(s2, pending, rest);
                    if (!sub) continue;
                    Cost total = a.cost + sub->cost;
                    if (!out || total < out->cost) {
                        PlanAction step;
                        step.name = a.name;
                        step.args = a.args;
                        step.prob = a.prob;
                        step.cost = a.cost.value();
                        sub->plan.actions.insert(sub->plan.actions.begin(),
                                                 std::move(step));
                        out = Found{std::move(sub->plan), total};
                    }
                }
                return out;
            }
            case TaskKind::Compound: {
                std::optional<Found> out;
                for (const auto& m : grounder.methodCandidates(t, s)) {
                    std::vector<TaskHead> next = m.subtasks;
                    next.insert(next.end(), rest.begin(), rest.end());
                    auto sub = best(s, pending, next);
                    if (sub && (!out || sub->cost < out->cost))
                        out = std::move(sub);
                }
                return out;
            }
            case TaskKind::Sensing: {
                std::optional<Found> out;
                for (const auto& g : grounder.sensingCandidates(t, s)) {
                    int bi = matchBelief(pending, g.observe);
                    if (bi < 0)
                        throw NoMatchingBelief("observation " +
                                               g.observe.str() +
                                               " matches no pending belief");
                    std::vector<BeliefState> remaining = pending;
                    BeliefState belief = remaining[static_cast<size_t>(bi)];
                    remaining.erase(remaining.begin() + bi);
                    BranchNode node;
                    node.sensor.name = g.name;
                    node.sensor.args = g.args;
                    node.sensor.prob = g.prob;
                    node.sensor.cost = g.cost.value();
                    node.sensor.sensing = true;
                    Cost worst = Cost(0);
                    bool failed = false;
                    for (const auto& alt : belief.alternatives) {
                        State s2 = s;
                        for (const auto& l : alt.fragment) s2.insert(l);
                        auto sub = best(s2, remaining, rest);
                        Branch br;
                        br.observation = alt.fragment;
                        br.prob = alt.prob;
                        if (sub) {
                            worst = std::max(worst, sub->cost);
                            br.subplan = std::move(sub->plan);
                        } else if (limits.allowNullBranches) {
                            br.infeasible = true;
                        } else {
                            failed = true;
                            break;
                        }
                        node.branches.push_back(std::move(br));
                    }
                    if (failed) continue;
                    Cost total = g.cost + worst;
                    if (!out || total < out->cost) {
                        ConditionalPlan plan;
                        plan.branch =
                            std::make_shared<const BranchNode>(std::move(node));
                        out = Found{std::move(plan), total};
                    }
                }
                return out;
            }
        }
        return std::nullopt;
    }
};

// One concrete world: the deterministic state seeded with one drawn
// fragment per belief state.
struct Walker {
    const Problem& problem;

    // Returns executed cost; success=false on precondition or branch
    // trouble. issues collects executability diagnostics when non-null.
    bool walk(const ConditionalPlan& pi, State& world,
              std::mt19937_64* rng, double& cost,
              std::vector<std::string>* issues,
              std::vector<std::string>& path,
              std::map<std::string, long long>* hits) {
        for (const auto& a : pi.actions) {
            if (!preHolds(a, world, issues)) return false;
            if (rng) {
                std::uniform_real_distribution<double> u(0.0, 1.0);
                if (u(*rng) > a.prob) return false;  // action fizzled
            }
            applyByLookup(a, world);
            cost += a.cost;
        }
        if (!pi.branch) return true;
        const auto& node = *pi.branch;
        if (!preHolds(node.sensor, world, issues)) return false;
        if (rng) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            if (u(*rng) > node.sensor.prob) return false;
        }
        cost += node.sensor.cost;
        const Branch* match = nullptr;
        for (const auto& br : node.branches) {
            bool all = true;
            for (const auto& l : br.observation)
                if (!world.count(l.atom())) all = false;
            if (all) {
                match = &br;
                break;
            }
        }
        if (!match) {
            if (issues) {
                issues->push_back("no branch matches world at path " +
                                  pathKey(path));
                return false;
            }
            throw BranchMissing("drawn world has no matching branch at path " +
                                pathKey(path));
        }
        path.push_back(observationLabel(match->observation));
        if (hits) ++(*hits)[pathKey(path)];
        bool ok;
        if (match->infeasible) {
            if (issues)
                issues->push_back("world reaches NULL branch at path " +
                                  pathKey(path));
            ok = false;
        } else {
            ok = walk(match->subplan, world, rng, cost, issues, path, hits);
        }
        path.pop_back();
        return ok;
    }

private:
    bool preHolds(const PlanAction& a, const State& world,
                  std::vector<std::string>* issues) {
        auto pre = groundPre(a);
        if (!pre) {
            if (issues)
                issues->push_back("plan action " + a.str() +
                                  " matches no domain operator");
            return false;
        }
        for (const auto& l : *pre) {
            if (!holds(world, l)) {
                if (issues)
                    issues->push_back("precondition " + l.str() +
                                      " of " + a.str() + " does not hold");
                return false;
            }
        }
        return true;
    }

    std::optional<std::vector<Literal>> groundPre(const PlanAction& a) {
        if (a.sensing) {
            const SensingOperator* op = problem.domain.findSensing(a.name);
            if (!op || op->params.size() != a.args.size()) return std::nullopt;
            return bind(op->pre, op->params, a.args);
        }
        const ActuationOperator* op = problem.domain.findActuation(a.name);
        if (!op || op->params.size() != a.args.size()) return std::nullopt;
        return bind(op->pre, op->params, a.args);
    }

    // Free precondition variables (beyond params) are satisfied when some
    // constant binding holds; effects never mention them for the domains
    // handled here, so existential evaluation suffices.
    std::optional<std::vector<Literal>> bind(
        const std::vector<Literal>& pre, const std::vector<std::string>& params,
        const std::vector<std::string>& args) {
        Substitution sigma;
        for (size_t i = 0; i < params.size(); ++i) sigma[params[i]] = args[i];
        std::vector<Literal> out;
        for (const auto& l : pre) {
            Literal g = l;
            bool free = false;
            for (auto& x : g.args) {
                if (isVariable(x)) {
                    auto it = sigma.find(x);
                    if (it != sigma.end())
                        x = it->second;
                    else
                        free = true;
                }
            }
            if (!free) out.push_back(std::move(g));
        }
        return out;
    }

    void applyByLookup(const PlanAction& a, State& world) {
        if (a.sensing) return;
        const ActuationOperator* op = problem.domain.findActuation(a.name);
        if (!op) return;
        Substitution sigma;
        for (size_t i = 0; i < op->params.size() && i < a.args.size(); ++i)
            sigma[op->params[i]] = a.args[i];
        for (const auto& l : op->del) {
            Literal g = l;
            bool free = false;
            for (auto& x : g.args) {
                if (isVariable(x)) {
                    auto it = sigma.find(x);
                    if (it != sigma.end())
                        x = it->second;
                    else
                        free = true;
                }
            }
            if (!free) world.erase(g.atom());
        }
        for (const auto& l : op->add) {
            Literal g = l;
            bool free = false;
            for (auto& x : g.args) {
                if (isVariable(x)) {
                    auto it = sigma.find(x);
                    if (it != sigma.end())
                        x = it->second;
                    else
                        free = true;
                }
            }
            if (!free) world.insert(g.atom());
        }
    }
};

void enumerateWorlds(const std::vector<BeliefState>& beliefs, size_t idx,
                     State& world,
                     const std::function<void(const State&)>& fn) {
    if (idx == beliefs.size()) {
        fn(world);
        return;
    }
    for (const auto& alt : beliefs[idx].alternatives) {
        State w = world;
        for (const auto& l : alt.fragment) w.insert(l);
        enumerateWorlds(beliefs, idx + 1, w, fn);
    }
}

}  // namespace

OracleResult oracle_plan(const Problem& problem, const OracleLimits& limits) {
    OracleSearch search(problem, limits);
    auto found = search.best(problem.s0, problem.beliefs, problem.tasks);
    OracleResult out;
    out.nodes = search.nodes;
    out.plansEnumerated = search.plansEnumerated;
    if (found) {
        out.bestCost = found->cost;
        out.bestPlan = std::move(found->plan);
    }
    return out;
}

SimulationReport simulate(const ConditionalPlan& pi, const Problem& problem,
                          long long samples, uint64_t seed) {
    SimulationReport report;
    report.samples = samples;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    Walker walker{problem};
    long long successes = 0;
    double costSum = 0.0;
    for (long long i = 0; i < samples; ++i) {
        State world = problem.s0;
        for (const auto& b : problem.beliefs) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            double draw = u(rng);
            double acc = 0.0;
            const auto* chosen = &b.alternatives.back();
            for (const auto& alt : b.alternatives) {
                acc += alt.prob;
                if (draw <= acc) {
                    chosen = &alt;
                    break;
                }
            }
            for (const auto& l : chosen->fragment) world.insert(l);
        }
        double cost = 0.0;
        std::vector<std::string> path;
        if (walker.walk(pi, world, &rng, cost, nullptr, path,
                        &report.branchHits))
            ++successes;
        costSum += cost;
    }
    report.successRate =
        samples > 0 ? static_cast<double>(successes) / samples : 0.0;
    report.meanCost = samples > 0 ? costSum / samples : 0.0;
    return report;
}

std::string SimulationReport::toJson() const {
    nlohmann::ordered_json j;
    j["success_rate"] = successRate;
    j["mean_cost"] = meanCost;
    j["samples"] = samples;
    j["seed"] = seed;
    j["branch_hits"] = branchHits;
    return j.dump(2) + "\n";
}

std::vector<std::string> check_executability(const ConditionalPlan& pi,
                                             const Problem& problem) {
    std::vector<std::string> issues;
    Walker walker{problem};
    State base = problem.s0;
    enumerateWorlds(problem.beliefs, 0, base, [&](const State& w) {
        State world = w;
        double cost = 0.0;
        std::vector<std::string> path;
        walker.walk(pi, world, nullptr, cost, &issues, path, nullptr);
    });
    return issues;
}

std::vector<AdmissibilityViolation> check_admissibility(
    const Problem& problem, const OracleLimits& limits,
    const PlannerConfig& config) {
    struct Record {
        State state;
        std::vector<BeliefState> pending;
        TaskHead head;
        Cost heuristic;
    };
    std::vector<Record> records;
    std::set<std::string> seen;
    ExpansionHook hook = [&](const State& s,
                             const std::vector<BeliefState>& pending,
                             const TaskHead& head, Cost h) {
        std::ostringstream key;
        key << head.str() << "|" << stateStr(s) << "|" << pending.size();
        if (!seen.insert(key.str()).second) return;
        records.push_back(Record{s, pending, head, h});
    };
    plan(problem, config, hook);

    std::vector<AdmissibilityViolation> violations;
    for (const auto& rec : records) {
        Problem sub = problem;
        sub.s0 = rec.state;
        sub.beliefs = rec.pending;
        sub.tasks = {rec.head};
        OracleResult oracle = oracle_plan(sub, limits);
        if (rec.heuristic > oracle.bestCost)
            violations.push_back(AdmissibilityViolation{
                rec.head.str(), rec.heuristic.str(), oracle.bestCost.str()});
    }
    return violations;
}

}  // namespace hqcp
