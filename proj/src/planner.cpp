#include "hqcp/planner.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

namespace hqcp {

SearchContext SearchContext::initial(const Problem& problem,
                                     const Grounder& grounder) {
    SearchContext ctx;
    ctx.state = problem.s0;
    ctx.pending = problem.beliefs;
    for (const auto& head : problem.tasks) {
        int id = ctx.tasks.add(grounder.kindOf(head), head, -1);
        ctx.agenda.push_back(id);
    }
    return ctx;
}

std::string SearchContext::canonical() const {
    std::ostringstream os;
    os << "state " << stateStr(state) << "\n";
    os << "pending";
    for (const auto& b : pending) os << " " << b.str();
    os << "\n";
    os << tasks.canonical(agenda);
    return os.str();
}

int ensureCandidates(SearchContext& ctx, const Grounder& grounder,
                     int taskId) {
    TaskNode& node = ctx.tasks[taskId];
    if (node.candidatesComputed)
        return static_cast<int>(node.candidates.size());
    std::vector<Candidate> cands;
    switch (node.kind) {
        case TaskKind::Compound:
            for (auto& m : grounder.methodCandidates(node.head, ctx.state))
                cands.push_back(Candidate{m.cost, std::move(m)});
            break;
        case TaskKind::Actuation:
            for (auto& a : grounder.actuationCandidates(node.head, ctx.state))
                cands.push_back(Candidate{a.cost, std::move(a)});
            break;
        case TaskKind::Sensing:
            for (auto& s : grounder.sensingCandidates(node.head, ctx.state))
                cands.push_back(Candidate{s.cost, std::move(s)});
            break;
    }
    sortCandidates(cands);
    node.candidates = std::move(cands);
    node.candidatesComputed = true;
    return static_cast<int>(node.candidates.size());
}

void instantiate(SearchContext& ctx, const Grounder& grounder, int taskId,
                 int candIdx) {
    if (ctx.agenda.empty() || ctx.agenda.front() != taskId)
        throw std::logic_error("instantiate: task is not the current task");
    TaskKind kind = ctx.tasks[taskId].kind;
    {
        TaskNode& node = ctx.tasks[taskId];
        node.chosen = candIdx;
        node.instantiated = true;
        node.cost = node.candidates[static_cast<size_t>(candIdx)].estimate;
    }
    ctx.agenda.pop_front();
    if (kind == TaskKind::Compound) {
        // Copy: adding children reallocates the arena under the candidate.
        GroundMethod m = std::get<GroundMethod>(
            ctx.tasks[taskId].candidates[static_cast<size_t>(candIdx)].inst);
        std::vector<int> childIds;
        for (const auto& st : m.subtasks)
            childIds.push_back(ctx.tasks.add(grounder.kindOf(st), st, taskId));
        ctx.tasks[taskId].children = childIds;
        for (auto it = childIds.rbegin(); it != childIds.rend(); ++it)
            ctx.agenda.push_front(*it);
    } else if (kind == TaskKind::Actuation) {
        const auto& a = std::get<GroundAction>(
            ctx.tasks[taskId].candidates[static_cast<size_t>(candIdx)].inst);
        ctx.state = apply_effects(a, ctx.state);
    }
    // Sensing: state extension happens per alternative.
}

void instantiateSensingAlternative(SearchContext& ctx, const Grounder& grounder,
                                   int taskId, int candIdx, int altIdx) {
    if (ctx.tasks[taskId].kind != TaskKind::Sensing)
        throw std::logic_error("not a sensing task");
    instantiate(ctx, grounder, taskId, candIdx);
    const auto& sense = std::get<GroundSense>(
        ctx.tasks[taskId].candidates[static_cast<size_t>(candIdx)].inst);
    int bi = matchBelief(ctx.pending, sense.observe);
    if (bi < 0)
        throw NoMatchingBelief("observation " + sense.observe.str() +
                               " matches no pending belief state");
    BeliefState belief = ctx.pending[static_cast<size_t>(bi)];
    ctx.pending.erase(ctx.pending.begin() + bi);
    const auto& alt = belief.alternatives.at(static_cast<size_t>(altIdx));
    for (const auto& l : alt.fragment) ctx.state.insert(l);
}

namespace {

struct SolveResult {
    ConditionalPlan plan;
    Cost cost;  // worst-case cost of the completion
};

class Planner {
public:
    Planner(const Problem& problem, const PlannerConfig& config,
            const ExpansionHook& hook)
        : problem_(problem), config_(config), hook_(hook), grounder_(problem) {}

    PlanResult run() {
        SearchContext ctx = SearchContext::initial(problem_, grounder_);
        auto result = solve(ctx, 0);
        PlanResult out;
        out.stats = stats_;
        if (result) {
            out.plan = std::move(result->plan);
            out.cost = result->cost;
            out.pathProbabilities = plan_probability(*out.plan);
        } else {
            out.failureReason = "no consistent decomposition of the task network";
        }
        if (config_.trace >= 1)
            std::cerr << "[hqcp] nodes=" << stats_.nodes
                      << " backtracks=" << stats_.backtracks
                      << " updates=" << stats_.updates << "\n";
        return out;
    }

private:
    const Problem& problem_;
    const PlannerConfig& config_;
    const ExpansionHook& hook_;
    Grounder grounder_;
    PlannerStats stats_;

    void trace(int depth, const std::string& msg) {
        if (config_.trace >= 2)
            std::cerr << "[hqcp] " << std::string(static_cast<size_t>(depth), ' ')
                      << msg << "\n";
    }

    std::optional<SolveResult> solve(SearchContext& ctx, int depth) {
        if (depth > config_.maxDepth) throw DepthExceeded(config_.maxDepth);
        ++stats_.nodes;
        if (ctx.agenda.empty()) return SolveResult{ConditionalPlan{}, Cost(0)};
        int t = ctx.agenda.front();
        switch (ctx.tasks[t].kind) {
            case TaskKind::Actuation:
                return expandActuation(t, ctx, depth);
            case TaskKind::Compound:
                return expandCompound(t, ctx, depth);
            case TaskKind::Sensing:
                return expandSensing(t, ctx, depth);
        }
        return std::nullopt;
    }

    void afterInstantiate(SearchContext& ctx, int t) {
        auto upd = update_costs(ctx.tasks, t);
        stats_.updates += upd.recomputed;
        if (!upd.consistent) ++stats_.inconsistencies;
    }

    std::optional<SolveResult> expandActuation(int t, SearchContext& ctx,
                                               int depth) {
        int n = ensureCandidates(ctx, grounder_, t);
        trace(depth, "actuation " + ctx.tasks[t].head.str() + " x" +
                         std::to_string(n));
        std::optional<SolveResult> best;
        for (int i = 0; i < n; ++i) {
            // Ascending action cost; a candidate at least as costly as the
            // incumbent cannot improve it (suffix costs are non-negative).
            if (best && ctx.tasks[t].candidates[static_cast<size_t>(i)]
                                .estimate >= best->cost)
                break;
            SearchContext snapshot = ctx;
            instantiate(ctx, grounder_, t, i);
            afterInstantiate(ctx, t);
            // By value: recursion below backtracks through ctx and frees
            // the arena storage a reference would point into.
            GroundAction action = std::get<GroundAction>(
                ctx.tasks[t].candidates[static_cast<size_t>(i)].inst);
            auto sub = solve(ctx, depth + 1);
            if (sub) {
                Cost total = action.cost + sub->cost;
                if (!best || total < best->cost) {
                    PlanAction step;
                    step.name = action.name;
                    step.args = action.args;
                    step.prob = action.prob;
                    step.cost = action.cost.value();
                    sub->plan.actions.insert(sub->plan.actions.begin(),
                                             std::move(step));
                    best = SolveResult{std::move(sub->plan), total};
                }
            }
            ctx = std::move(snapshot);
            ++stats_.backtracks;
        }
        return best;
    }

    std::optional<SolveResult> expandCompound(int t, SearchContext& ctx,
                                              int depth) {
        int n = ensureCandidates(ctx, grounder_, t);
        trace(depth, "compound " + ctx.tasks[t].head.str() + " x" +
                         std::to_string(n));
        if (hook_)
            hook_(ctx.state, ctx.pending, ctx.tasks[t].head,
                  heuristic_cost(ctx.tasks, t));
        std::optional<SolveResult> best;
        for (int i = 0; i < n; ++i) {
            SearchContext snapshot = ctx;
            instantiate(ctx, grounder_, t, i);
            afterInstantiate(ctx, t);
            auto sub = solve(ctx, depth + 1);
            if (sub && (!best || sub->cost < best->cost))
                best = std::move(sub);
            ctx = std::move(snapshot);
            ++stats_.backtracks;
        }
        return best;
    }

    std::optional<SolveResult> expandSensing(int t, SearchContext& ctx,
                                             int depth) {
        int n = ensureCandidates(ctx, grounder_, t);
        trace(depth, "sensing " + ctx.tasks[t].head.str() + " x" +
                         std::to_string(n));
        std::optional<SolveResult> best;
        for (int i = 0; i < n; ++i) {
            SearchContext snapshot = ctx;
            instantiate(ctx, grounder_, t, i);
            afterInstantiate(ctx, t);
            GroundSense sense = std::get<GroundSense>(
                ctx.tasks[t].candidates[static_cast<size_t>(i)].inst);
            int bi = matchBelief(ctx.pending, sense.observe);
            if (bi < 0)
                throw NoMatchingBelief("observation " + sense.observe.str() +
                                       " matches no pending belief state");
            BeliefState belief = ctx.pending[static_cast<size_t>(bi)];
            ctx.pending.erase(ctx.pending.begin() + bi);

            BranchNode node;
            node.sensor.name = sense.name;
            node.sensor.args = sense.args;
            node.sensor.prob = sense.prob;
            node.sensor.cost = sense.cost.value();
            node.sensor.sensing = true;
            Cost worst = Cost(0);
            bool failed = false;
            for (const auto& alt : belief.alternatives) {
                SearchContext branchCtx = ctx;
                for (const auto& l : alt.fragment) branchCtx.state.insert(l);
                auto sub = solve(branchCtx, depth + 1);
                Branch br;
                br.observation = alt.fragment;
                br.prob = alt.prob;
                if (sub) {
                    worst = std::max(worst, sub->cost);
                    br.subplan = std::move(sub->plan);
                } else if (config_.allowNullBranches) {
                    br.infeasible = true;
                } else {
                    failed = true;
                    break;
                }
                node.branches.push_back(std::move(br));
            }
            if (!failed) {
                Cost total = sense.cost + worst;
                if (!best || total < best->cost) {
                    ConditionalPlan plan;
                    plan.branch =
                        std::make_shared<const BranchNode>(std::move(node));
                    best = SolveResult{std::move(plan), total};
                }
            }
            ctx = std::move(snapshot);
            ++stats_.backtracks;
        }
        return best;
    }
};

}  // namespace

PlanResult plan(const Problem& problem, const PlannerConfig& config,
                const ExpansionHook& hook) {
    Planner p(problem, config, hook);
    return p.run();
}

}  // namespace hqcp
