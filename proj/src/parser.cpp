#include "hqcp/parser.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hqcp/sexpr.hpp"

namespace hqcp {

namespace {

using json = nlohmann::ordered_json;

const SExpr& expectList(const SExpr& e, const char* what) {
    if (e.kind != SExpr::Kind::List)
        throw ParseError(std::string("expected ") + what + ", got " + e.str(),
                         e.span);
    return e;
}

std::string expectSymbol(const SExpr& e, const char* what) {
    if (e.kind != SExpr::Kind::Symbol)
        throw ParseError(std::string("expected ") + what + ", got " + e.str(),
                         e.span);
    return e.text;
}

double expectNumber(const SExpr& e, const char* what) {
    if (e.kind != SExpr::Kind::Number)
        throw ParseError(std::string("expected ") + what + ", got " + e.str(),
                         e.span);
    return e.number;
}

Literal parseLiteral(const SExpr& e) {
    expectList(e, "literal");
    if (e.items.empty()) throw ParseError("empty literal", e.span);
    if (e.items[0].isSymbol("not")) {
        if (e.items.size() != 2)
            throw ParseError("(not ...) takes one literal", e.span);
        Literal l = parseLiteral(e.items[1]);
        if (!l.positive)
            throw ParseError("double negation in literal", e.span);
        l.positive = false;
        return l;
    }
    Literal l;
    l.pred = expectSymbol(e.items[0], "predicate symbol");
    for (size_t i = 1; i < e.items.size(); ++i)
        l.args.push_back(expectSymbol(e.items[i], "literal argument"));
    return l;
}

std::vector<Literal> parseLiteralList(const SExpr& e, const char* what) {
    expectList(e, what);
    std::vector<Literal> out;
    for (const auto& item : e.items) out.push_back(parseLiteral(item));
    return out;
}

std::vector<std::string> parseParams(const SExpr& e) {
    expectList(e, "parameter list");
    std::vector<std::string> out;
    for (const auto& item : e.items) {
        std::string v = expectSymbol(item, "parameter");
        if (!isVariable(v))
            throw ValidationError("parameter must be a ?variable: " + v,
                                  item.span);
        out.push_back(v);
    }
    return out;
}

TaskHead parseTaskHead(const SExpr& e) {
    expectList(e, "task");
    if (e.items.empty()) throw ParseError("empty task", e.span);
    TaskHead h;
    h.name = expectSymbol(e.items[0], "task name");
    for (size_t i = 1; i < e.items.size(); ++i)
        h.args.push_back(expectSymbol(e.items[i], "task argument"));
    return h;
}

void collectVarsOf(const std::vector<Literal>& lits,
                   std::set<std::string>& out) {
    for (const auto& l : lits)
        for (const auto& a : l.args)
            if (isVariable(a)) out.insert(a);
}

double parseProbClause(const SExpr& parent, size_t& idx) {
    // optional trailing `:prob p`, default 1.0
    if (idx >= parent.items.size()) return 1.0;
    if (!parent.items[idx].isSymbol(":prob"))
        throw ParseError("unexpected trailing item " + parent.items[idx].str(),
                         parent.items[idx].span);
    if (idx + 1 >= parent.items.size())
        throw ParseError(":prob needs a value", parent.items[idx].span);
    double p = expectNumber(parent.items[idx + 1], "probability");
    if (p <= 0.0 || p > 1.0)
        throw ValidationError("probability outside (0,1]: " +
                                  std::to_string(p),
                              parent.items[idx + 1].span);
    idx += 2;
    if (idx != parent.items.size())
        throw ParseError("unexpected trailing item " + parent.items[idx].str(),
                         parent.items[idx].span);
    return p;
}

ActuationOperator parseActuation(const SExpr& e) {
    // (:operator !name (params) (pre) (:add ...) (:delete ...) [:prob p])
    if (e.items.size() < 5)
        throw ParseError(":operator needs name, params, pre, :add, :delete",
                         e.span);
    ActuationOperator op;
    op.name = expectSymbol(e.items[1], "operator name");
    if (op.name.empty() || op.name[0] != '!')
        throw ValidationError("operator name must start with '!': " + op.name,
                              e.items[1].span);
    op.params = parseParams(e.items[2]);
    op.pre = parseLiteralList(e.items[3], "precondition list");
    const SExpr& addClause = expectList(e.items[4], "(:add ...)");
    if (addClause.items.empty() || !addClause.items[0].isSymbol(":add"))
        throw ParseError("expected (:add ...)", e.items[4].span);
    for (size_t i = 1; i < addClause.items.size(); ++i)
        op.add.push_back(parseLiteral(addClause.items[i]));
    const SExpr& delClause = expectList(e.items[5], "(:delete ...)");
    if (delClause.items.empty() || !delClause.items[0].isSymbol(":delete"))
        throw ParseError("expected (:delete ...)", e.items[5].span);
    for (size_t i = 1; i < delClause.items.size(); ++i)
        op.del.push_back(parseLiteral(delClause.items[i]));
    size_t idx = 6;
    op.prob = parseProbClause(e, idx);

    for (const auto& a : op.add)
        for (const auto& d : op.del)
            if (a.atom() == d.atom())
                throw ValidationError("literal both added and deleted in " +
                                          op.name + ": " + a.str(),
                                      e.span);
    std::set<std::string> known(op.params.begin(), op.params.end());
    collectVarsOf(op.pre, known);
    std::set<std::string> effectVars;
    collectVarsOf(op.add, effectVars);
    collectVarsOf(op.del, effectVars);
    for (const auto& v : effectVars)
        if (!known.count(v))
            throw ValidationError("effect variable " + v +
                                      " missing from params and pre of " +
                                      op.name,
                                  e.span);
    return op;
}

SensingOperator parseSensing(const SExpr& e) {
    // (:sensing !name (params) (pre) (:observe (pred args...)) [:prob p])
    if (e.items.size() < 5)
        throw ParseError(":sensing needs name, params, pre, :observe", e.span);
    SensingOperator op;
    op.name = expectSymbol(e.items[1], "operator name");
    if (op.name.empty() || op.name[0] != '!')
        throw ValidationError("operator name must start with '!': " + op.name,
                              e.items[1].span);
    op.params = parseParams(e.items[2]);
    op.pre = parseLiteralList(e.items[3], "precondition list");
    const SExpr& obClause = expectList(e.items[4], "(:observe ...)");
    if (obClause.items.size() != 2 || !obClause.items[0].isSymbol(":observe"))
        throw ParseError("expected (:observe (pred args...))", e.items[4].span);
    op.observe = parseLiteral(obClause.items[1]);
    if (!op.observe.positive)
        throw ValidationError("observation template must be positive",
                              obClause.items[1].span);
    size_t idx = 5;
    op.prob = parseProbClause(e, idx);

    std::set<std::string> known(op.params.begin(), op.params.end());
    collectVarsOf(op.pre, known);
    for (const auto& a : op.observe.args)
        if (isVariable(a) && !known.count(a))
            throw ValidationError("observation variable " + a +
                                      " missing from params and pre of " +
                                      op.name,
                                  e.span);
    return op;
}

Method parseMethod(const SExpr& e) {
    // (:method name (params) (pre) (:subtasks (t1 ...) (t2 ...)))
    if (e.items.size() != 5)
        throw ParseError(":method needs name, params, pre, :subtasks", e.span);
    Method m;
    m.name = expectSymbol(e.items[1], "method name");
    if (!m.name.empty() && m.name[0] == '!')
        throw ValidationError("method name must not start with '!': " + m.name,
                              e.items[1].span);
    m.params = parseParams(e.items[2]);
    m.pre = parseLiteralList(e.items[3], "precondition list");
    const SExpr& subClause = expectList(e.items[4], "(:subtasks ...)");
    if (subClause.items.empty() || !subClause.items[0].isSymbol(":subtasks"))
        throw ParseError("expected (:subtasks ...)", e.items[4].span);
    for (size_t i = 1; i < subClause.items.size(); ++i)
        m.subtasks.push_back(parseTaskHead(subClause.items[i]));
    if (m.subtasks.empty())
        throw ValidationError("method " + m.name + " has no subtasks", e.span);
    return m;
}

json literalToJson(const Literal& l) {
    json arr = json::array();
    arr.push_back(l.pred);
    for (const auto& a : l.args) arr.push_back(a);
    return arr;
}

json actionToJson(const PlanAction& a) {
    json j;
    j["name"] = a.name;
    j["args"] = a.args;
    j["prob"] = a.prob;
    j["cost"] = a.cost;
    return j;
}

json planToJson(const ConditionalPlan& pi) {
    json steps = json::array();
    for (const auto& a : pi.actions) {
        json s = actionToJson(a);
        s["type"] = "action";
        steps.push_back(std::move(s));
    }
    if (pi.branch) {
        json s;
        s["type"] = "branch";
        s["sensor"] = actionToJson(pi.branch->sensor);
        json brs = json::array();
        for (const auto& br : pi.branch->branches) {
            json b;
            json obs = json::array();
            for (const auto& l : br.observation) obs.push_back(literalToJson(l));
            b["observation"] = std::move(obs);
            b["prob"] = br.prob;
            b["null"] = br.infeasible;
            b["plan"] = planToJson(br.subplan);
            brs.push_back(std::move(b));
        }
        s["branches"] = std::move(brs);
        steps.push_back(std::move(s));
    }
    json out;
    out["steps"] = std::move(steps);
    return out;
}

void renderTree(const ConditionalPlan& pi, int indent, std::ostream& os) {
    std::string pad(static_cast<size_t>(indent), ' ');
    if (pi.empty()) {
        os << pad << "NULL\n";
        return;
    }
    for (const auto& a : pi.actions) os << pad << a.str() << "\n";
    if (pi.branch) {
        for (const auto& br : pi.branch->branches) {
            os << pad << "(!Observe ";
            if (br.observation.size() == 1) {
                os << br.observation[0].pred;
                for (const auto& arg : br.observation[0].args) os << " " << arg;
            } else {
                os << observationLabel(br.observation);
            }
            os << ")\n";
            renderTree(br.subplan, indent + 2, os);
        }
    }
}

PlanAction actionFromJson(const json& j) {
    PlanAction a;
    a.name = j.at("name").get<std::string>();
    a.args = j.at("args").get<std::vector<std::string>>();
    a.prob = j.at("prob").get<double>();
    a.cost = j.at("cost").get<double>();
    return a;
}

ConditionalPlan planFromJson(const json& j) {
    ConditionalPlan pi;
    const json& steps = j.at("steps");
    if (!steps.is_array())
        throw std::runtime_error("plan json: \"steps\" must be an array");
    for (size_t i = 0; i < steps.size(); ++i) {
        const json& s = steps[i];
        std::string type = s.at("type").get<std::string>();
        if (type == "action") {
            if (pi.branch)
                throw std::runtime_error(
                    "plan json: branch node must be the last step");
            pi.actions.push_back(actionFromJson(s));
        } else if (type == "branch") {
            if (i + 1 != steps.size())
                throw std::runtime_error(
                    "plan json: branch node must be the last step");
            BranchNode node;
            node.sensor = actionFromJson(s.at("sensor"));
            node.sensor.sensing = true;
            for (const json& b : s.at("branches")) {
                Branch br;
                for (const json& lit : b.at("observation")) {
                    if (!lit.is_array() || lit.empty())
                        throw std::runtime_error(
                            "plan json: observation literal must be a "
                            "non-empty array");
                    Literal l;
                    l.pred = lit[0].get<std::string>();
                    for (size_t k = 1; k < lit.size(); ++k)
                        l.args.push_back(lit[k].get<std::string>());
                    br.observation.push_back(std::move(l));
                }
                br.prob = b.at("prob").get<double>();
                br.infeasible = b.value("null", false);
                br.subplan = planFromJson(b.at("plan"));
                node.branches.push_back(std::move(br));
            }
            pi.branch = std::make_shared<const BranchNode>(std::move(node));
        } else {
            throw std::runtime_error("plan json: unknown step type " + type);
        }
    }
    return pi;
}

}  // namespace

Domain parse_domain(const std::string& text, const std::string& file) {
    auto exprs = parseSExprs(text, file);
    if (exprs.size() != 1)
        throw ParseError("expected a single (defdomain ...) form",
                         exprs[1].span);
    const SExpr& top = expectList(exprs[0], "(defdomain ...)");
    if (top.items.size() != 3 || !top.items[0].isSymbol("defdomain"))
        throw ParseError("expected (defdomain <name> (<item>*))", top.span);
    Domain d;
    d.name = expectSymbol(top.items[1], "domain name");
    const SExpr& items = expectList(top.items[2], "domain item list");
    std::set<std::string> opNames;
    for (const auto& item : items.items) {
        expectList(item, "domain item");
        if (item.items.empty())
            throw ParseError("empty domain item", item.span);
        if (item.items[0].isSymbol(":operator")) {
            ActuationOperator op = parseActuation(item);
            if (!opNames.insert(op.name).second)
                throw ValidationError("duplicate operator name " + op.name,
                                      item.span);
            d.actuations.push_back(std::move(op));
        } else if (item.items[0].isSymbol(":sensing")) {
            SensingOperator op = parseSensing(item);
            if (!opNames.insert(op.name).second)
                throw ValidationError("duplicate operator name " + op.name,
                                      item.span);
            d.sensings.push_back(std::move(op));
        } else if (item.items[0].isSymbol(":method")) {
            d.methods.push_back(parseMethod(item));
        } else {
            throw ParseError("unknown domain item " + item.items[0].str(),
                             item.span);
        }
    }
    for (const auto& m : d.methods)
        if (d.findActuation(m.name) || d.findSensing(m.name))
            throw ValidationError("name " + m.name +
                                      " used for both a method and an operator",
                                  top.span);
    return d;
}

Problem parse_problem(const std::string& text, const Domain& domain,
                      const std::string& file) {
    auto exprs = parseSExprs(text, file);
    if (exprs.size() != 1)
        throw ParseError("expected a single (defproblem ...) form",
                         exprs[1].span);
    const SExpr& top = expectList(exprs[0], "(defproblem ...)");
    if (top.items.size() < 3 || !top.items[0].isSymbol("defproblem"))
        throw ParseError("expected (defproblem <name> <domain> <clause>*)",
                         top.span);
    Problem p;
    p.name = expectSymbol(top.items[1], "problem name");
    std::string domName = expectSymbol(top.items[2], "domain name");
    if (domName != domain.name)
        throw ValidationError("problem references domain " + domName +
                                  " but " + domain.name + " was loaded",
                              top.items[2].span);
    p.domain = domain;
    bool sawTasks = false;
    for (size_t ci = 3; ci < top.items.size(); ++ci) {
        const SExpr& clause = expectList(top.items[ci], "problem clause");
        if (clause.items.empty())
            throw ParseError("empty problem clause", clause.span);
        if (clause.items[0].isSymbol(":state")) {
            for (size_t i = 1; i < clause.items.size(); ++i) {
                Literal l = parseLiteral(clause.items[i]);
                if (!l.positive || !l.ground())
                    throw ValidationError(
                        "state atoms must be positive and ground: " + l.str(),
                        clause.items[i].span);
                p.s0.insert(l);
            }
        } else if (clause.items[0].isSymbol(":belief")) {
            std::vector<BeliefState::Alternative> alts;
            for (size_t i = 1; i < clause.items.size(); ++i) {
                const SExpr& pair = expectList(clause.items[i],
                                               "(fragment prob) pair");
                if (pair.items.size() != 2)
                    throw ParseError("expected (fragment prob)", pair.span);
                BeliefState::Alternative alt;
                alt.fragment = parseLiteralList(pair.items[0], "fragment");
                alt.prob = expectNumber(pair.items[1], "probability");
                alts.push_back(std::move(alt));
            }
            try {
                p.beliefs.push_back(BeliefState::make(std::move(alts)));
            } catch (const InvalidDistribution& e) {
                throw ValidationError(e.what(), clause.span);
            }
        } else if (clause.items[0].isSymbol(":tasks")) {
            sawTasks = true;
            for (size_t i = 1; i < clause.items.size(); ++i)
                p.tasks.push_back(parseTaskHead(clause.items[i]));
        } else if (clause.items[0].isSymbol(":cost")) {
            for (size_t i = 1; i < clause.items.size(); ++i) {
                const SExpr& entry =
                    expectList(clause.items[i], "(literal value) entry");
                if (entry.items.size() != 2)
                    throw ParseError("expected (literal value)", entry.span);
                Literal l = parseLiteral(entry.items[0]);
                double v = expectNumber(entry.items[1], "cost value");
                if (v < 0)
                    throw ValidationError("negative cost for " + l.str(),
                                          entry.items[1].span);
                p.costs.set(l, v);
            }
        } else {
            throw ParseError("unknown problem clause " + clause.items[0].str(),
                             clause.span);
        }
    }
    if (!sawTasks || p.tasks.empty())
        throw ValidationError("problem declares no tasks", top.span);
    for (const auto& t : p.tasks) {
        if (!domain.kindOf(t.name))
            throw UnknownTask("task " + t.str() +
                                  " resolves to no operator or method",
                              top.span);
        for (const auto& a : t.args)
            if (isVariable(a))
                throw ValidationError("initial tasks must be ground: " +
                                          t.str(),
                                      top.span);
    }
    return p;
}

std::string serialize_plan(const ConditionalPlan& pi, PlanFormat format) {
    if (format == PlanFormat::Json) {
        json j = planToJson(pi);
        auto report = plan_cost(pi);
        j["worst_case_cost"] = report.worstCase.isInfinite()
                                   ? json("inf")
                                   : json(report.worstCase.value());
        j["path_costs"] = report.perPath;
        j["path_probabilities"] = plan_probability(pi);
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    renderTree(pi, 0, os);
    return os.str();
}

ConditionalPlan parse_plan_json(const std::string& text) {
    json j = json::parse(text);
    return planFromJson(j);
}

}  // namespace hqcp
