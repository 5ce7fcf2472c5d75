#include "hqcp/grounding.hpp"

#include <algorithm>
#include <set>

namespace hqcp {

State apply_effects(const GroundAction& a, const State& s) {
    for (const auto& l : a.add)
        for (const auto& d : a.del)
            if (l == d)
                throw std::logic_error("add/delete overlap in " + a.name +
                                       " on " + l.str());
    State out = s;
    for (const auto& l : a.del) out.erase(l.atom());
    for (const auto& l : a.add) out.insert(l.atom());
    return out;
}

Cost action_cost(const GroundAction& a, const CostTable& delta) {
    return preconditionCost(a.pre, delta);
}

Cost method_cost(const GroundMethod& m, const CostTable& delta) {
    return preconditionCost(m.pre, delta);
}

namespace {

void collectLiteralConstants(const std::vector<Literal>& lits,
                             std::set<std::string>& out) {
    for (const auto& l : lits)
        for (const auto& a : l.args)
            if (!isVariable(a)) out.insert(a);
}

void collectVars(const std::vector<Literal>& lits, const Substitution& bound,
                 std::set<std::string>& out) {
    for (const auto& l : lits)
        for (const auto& a : l.args)
            if (isVariable(a) && !bound.count(a)) out.insert(a);
}

// Binds template args against ground task args; fails on arity mismatch or
// constant clash.
bool unifyHead(const std::vector<std::string>& params,
               const std::vector<std::string>& args, Substitution& sigma) {
    if (params.size() != args.size()) return false;
    for (size_t i = 0; i < params.size(); ++i) {
        if (isVariable(params[i])) {
            auto it = sigma.find(params[i]);
            if (it == sigma.end())
                sigma[params[i]] = args[i];
            else if (it->second != args[i])
                return false;
        } else if (params[i] != args[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace

Grounder::Grounder(const Problem& problem)
    : domain_(problem.domain), costs_(problem.costs) {
    std::set<std::string> consts;
    for (const auto& l : problem.s0)
        for (const auto& a : l.args) consts.insert(a);
    for (const auto& b : problem.beliefs)
        for (const auto& alt : b.alternatives)
            for (const auto& l : alt.fragment)
                for (const auto& a : l.args) consts.insert(a);
    for (const auto& t : problem.tasks)
        for (const auto& a : t.args)
            if (!isVariable(a)) consts.insert(a);
    for (const auto& o : domain_.actuations) {
        collectLiteralConstants(o.pre, consts);
        collectLiteralConstants(o.add, consts);
        collectLiteralConstants(o.del, consts);
    }
    for (const auto& o : domain_.sensings) {
        collectLiteralConstants(o.pre, consts);
        collectLiteralConstants({o.observe}, consts);
    }
    for (const auto& m : domain_.methods) {
        collectLiteralConstants(m.pre, consts);
        for (const auto& st : m.subtasks)
            for (const auto& a : st.args)
                if (!isVariable(a)) consts.insert(a);
    }
    constants_.assign(consts.begin(), consts.end());
}

std::vector<Substitution> Grounder::completions(
    const Substitution& base, std::vector<std::string> freeVars) const {
    std::vector<Substitution> out{base};
    for (const auto& var : freeVars) {
        std::vector<Substitution> next;
        next.reserve(out.size() * constants_.size());
        for (const auto& sigma : out) {
            for (const auto& c : constants_) {
                Substitution ext = sigma;
                ext[var] = c;
                next.push_back(std::move(ext));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<GroundAction> Grounder::actuationCandidates(const TaskHead& t,
                                                        const State& s) const {
    std::vector<GroundAction> out;
    const ActuationOperator* op = domain_.findActuation(t.name);
    if (!op) return out;
    Substitution sigma;
    if (!unifyHead(op->params, t.args, sigma)) return out;
    std::set<std::string> freeVars;
    collectVars(op->pre, sigma, freeVars);
    collectVars(op->add, sigma, freeVars);
    collectVars(op->del, sigma, freeVars);
    for (const auto& full :
         completions(sigma, {freeVars.begin(), freeVars.end()})) {
        if (!applicable(op->pre, full, s)) continue;
        GroundAction a;
        a.name = op->name;
        a.args = t.args;
        for (const auto& l : op->pre) a.pre.push_back(applyLiteral(full, l));
        for (const auto& l : op->add) a.add.push_back(applyLiteral(full, l));
        for (const auto& l : op->del) a.del.push_back(applyLiteral(full, l));
        a.prob = op->prob;
        a.cost = preconditionCost(a.pre, costs_);
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<GroundSense> Grounder::sensingCandidates(const TaskHead& t,
                                                     const State& s) const {
    std::vector<GroundSense> out;
    const SensingOperator* op = domain_.findSensing(t.name);
    if (!op) return out;
    Substitution sigma;
    if (!unifyHead(op->params, t.args, sigma)) return out;
    std::set<std::string> freeVars;
    collectVars(op->pre, sigma, freeVars);
    collectVars({op->observe}, sigma, freeVars);
    for (const auto& full :
         completions(sigma, {freeVars.begin(), freeVars.end()})) {
        if (!applicable(op->pre, full, s)) continue;
        GroundSense g;
        g.name = op->name;
        g.args = t.args;
        for (const auto& l : op->pre) g.pre.push_back(applyLiteral(full, l));
        g.observe = applyLiteral(full, op->observe);
        g.prob = op->prob;
        g.cost = preconditionCost(g.pre, costs_);
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<GroundMethod> Grounder::methodCandidates(const TaskHead& t,
                                                     const State& s) const {
    std::vector<GroundMethod> out;
    for (size_t mi = 0; mi < domain_.methods.size(); ++mi) {
        const Method& m = domain_.methods[mi];
        if (m.name != t.name) continue;
        Substitution sigma;
        if (!unifyHead(m.params, t.args, sigma)) continue;
        std::set<std::string> freeVars;
        collectVars(m.pre, sigma, freeVars);
        for (const auto& st : m.subtasks)
            for (const auto& a : st.args)
                if (isVariable(a) && !sigma.count(a)) freeVars.insert(a);
        for (const auto& full :
             completions(sigma, {freeVars.begin(), freeVars.end()})) {
            if (!applicable(m.pre, full, s)) continue;
            GroundMethod g;
            g.name = m.name;
            g.args = t.args;
            for (const auto& l : m.pre) g.pre.push_back(applyLiteral(full, l));
            for (const auto& st : m.subtasks) {
                TaskHead h;
                h.name = st.name;
                for (const auto& a : st.args)
                    h.args.push_back(applyTerm(full, a));
                g.subtasks.push_back(std::move(h));
            }
            g.cost = preconditionCost(g.pre, costs_);
            g.declIndex = static_cast<int>(mi);
            out.push_back(std::move(g));
        }
    }
    return out;
}

TaskKind Grounder::kindOf(const TaskHead& t) const {
    auto k = domain_.kindOf(t.name);
    if (!k)
        throw UnknownTask("task " + t.str() +
                              " resolves to no operator or method",
                          SourceSpan{});
    return *k;
}

bool observationMatches(const Literal& observe, const Literal& lit) {
    if (observe.pred != lit.pred) return false;
    if (observe.args.size() > lit.args.size()) return false;
    for (size_t i = 0; i < observe.args.size(); ++i)
        if (observe.args[i] != lit.args[i]) return false;
    return true;
}

int matchBelief(const std::vector<BeliefState>& pending,
                const Literal& observe) {
    int found = -1;
    for (size_t i = 0; i < pending.size(); ++i) {
        bool matches = false;
        for (const auto& alt : pending[i].alternatives)
            for (const auto& l : alt.fragment)
                if (observationMatches(observe, l)) matches = true;
        if (!matches) continue;
        if (found >= 0)
            throw NoMatchingBelief("observation " + observe.str() +
                                   " matches more than one belief state");
        found = static_cast<int>(i);
    }
    return found;
}

}  // namespace hqcp
