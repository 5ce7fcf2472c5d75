#include "hqcp/bench.hpp"

#include <chrono>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hqcp/parser.hpp"

namespace hqcp {

namespace {

std::string fmtProb(double p) {
    std::ostringstream os;
    os.precision(17);
    os << p;
    return os.str();
}

}  // namespace

GeneratedInstance gen_medicate(int n) {
    if (n < 1) throw std::invalid_argument("gen_medicate: n must be >= 1");
    std::ostringstream d;
    d << "; medicate domain, " << n << " candidate infections\n";
    d << "(defdomain medicate\n";
    d << "  ((:sensing !diagnose () () (:observe (infected)) :prob 1.0)\n";
    d << "   (:operator !medicate (?d) ((infected ?d)) (:add (healthy)) "
         "(:delete (infected ?d)) :prob 1.0)\n";
    d << "   (:operator !rest () ((healthy)) (:add) (:delete) :prob 1.0)\n";
    d << "   (:method treat-patient () () (:subtasks (!diagnose) (cure)))\n";
    d << "   (:method cure () ((healthy)) (:subtasks (!rest)))\n";
    d << "   (:method cure () ((infected ?d)) (:subtasks (!medicate ?d)))))\n";

    std::ostringstream p;
    double prob = 1.0 / (n + 1);
    p << "(defproblem medicate-" << n << " medicate\n";
    p << "  (:state)\n";
    p << "  (:belief";
    for (int i = 1; i <= n; ++i)
        p << " (((infected d" << i << ")) " << fmtProb(prob) << ")";
    p << " (((healthy)) " << fmtProb(prob) << "))\n";
    p << "  (:tasks (treat-patient))\n";
    p << "  (:cost";
    for (int i = 1; i <= n; ++i) p << " ((infected d" << i << ") 1)";
    p << " ((healthy) 1)))\n";
    return GeneratedInstance{d.str(), p.str()};
}

std::string zenoScenarioName(ZenoScenario s) {
    return s == ZenoScenario::Late ? "late" : "tight";
}

GeneratedInstance gen_zenotravel(ZenoScenario scenario) {
    std::ostringstream d;
    d << "; extended zenotravel: fly (slow, cheap) vs zoom (fast, thirsty)\n";
    d << "(defdomain zenotravel\n";
    d << "  ((:operator !board (?p ?c) ((at-plane ?c) (pax-at ?p ?c)) "
         "(:add (aboard ?p)) (:delete (pax-at ?p ?c)) :prob 1.0)\n";
    d << "   (:operator !debark (?p ?c) ((at-plane ?c) (aboard ?p)) "
         "(:add (pax-at ?p ?c)) (:delete (aboard ?p)) :prob 1.0)\n";
    d << "   (:operator !fly (?x ?y ?t) ((at-plane ?x) (link ?x ?y) (slack ?t)) "
         "(:add (at-plane ?y)) (:delete (at-plane ?x) (slack ?t)) :prob 1.0)\n";
    d << "   (:operator !zoom (?x ?y) ((at-plane ?x) (link ?x ?y) (fueled)) "
         "(:add (at-plane ?y)) (:delete (at-plane ?x) (fueled)) :prob 1.0)\n";
    d << "   (:operator !refuel (?x) ((at-plane ?x) (usable ?x)) "
         "(:add (fueled)) (:delete) :prob 1.0)\n";
    d << "   (:sensing !observe-supplier (?x) ((at-plane ?x)) "
         "(:observe (usable ?x)) :prob 1.0)\n";
    d << "   (:method transport (?p ?x ?z) ((link ?x ?y) (link ?y ?z)) "
         "(:subtasks (check-supply ?x) (!board ?p ?x) (leg ?x ?y) "
         "(check-supply ?y) (leg ?y ?z) (!debark ?p ?z)))\n";
    d << "   (:method check-supply (?x) () (:subtasks (!observe-supplier ?x)))\n";
    d << "   (:method leg (?x ?y) ((slack ?t)) (:subtasks (!fly ?x ?y ?t)))\n";
    d << "   (:method leg (?x ?y) () (:subtasks (!refuel ?x) (!zoom ?x ?y)))))\n";

    std::ostringstream p;
    std::string name = zenoScenarioName(scenario);
    p << "(defproblem zeno-" << name << " zenotravel\n";
    p << "  (:state (at-plane a) (pax-at p1 a) (link a b) (link b c)";
    p << " (slack t1)";
    if (scenario == ZenoScenario::Late) p << " (slack t2)";
    p << ")\n";
    p << "  (:belief (((usable a)) 0.9) (((unusable a)) 0.1))\n";
    p << "  (:belief (((usable b)) 0.9) (((unusable b)) 0.1))\n";
    p << "  (:tasks (transport p1 a c))\n";
    p << "  (:cost ((link a b) 100) ((link b c) 120) ((fueled) 150)\n";
    p << "         ((usable a) 80) ((usable b) 100)\n";
    p << "         ((unusable a) 400) ((unusable b) 400)))\n";
    return GeneratedInstance{d.str(), p.str()};
}

namespace {

BenchRow runOne(const std::string& domainName, const std::string& scale,
                int rep, const GeneratedInstance& inst, bool allowNull) {
    BenchRow row;
    row.domain = domainName;
    row.scale = scale;
    row.rep = rep;
    try {
        Domain dom = parse_domain(inst.domainText);
        Problem prob = parse_problem(inst.problemText, dom);
        PlannerConfig cfg;
        cfg.allowNullBranches = allowNull;
        auto t0 = std::chrono::steady_clock::now();
        PlanResult result = plan(prob, cfg);
        auto t1 = std::chrono::steady_clock::now();
        row.wallMs =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.nodes = result.stats.nodes;
        row.backtracks = result.stats.backtracks;
        if (result.ok())
            row.cost = result.cost.value();
        else
            row.failed = true;
    } catch (const std::exception&) {
        row.failed = true;
    }
    return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchSpec& spec, int jobs) {
    struct Job {
        std::string scale;
        int rep;
        GeneratedInstance inst;
        bool allowNull;
    };
    std::vector<Job> jobsList;
    if (spec.domain == "medicate") {
        for (int n : spec.scales) {
            GeneratedInstance inst = gen_medicate(n);
            for (int r = 1; r <= spec.repetitions; ++r)
                jobsList.push_back(Job{std::to_string(n), r, inst, false});
        }
    } else if (spec.domain == "zenotravel") {
        for (ZenoScenario sc : spec.scenarios) {
            GeneratedInstance inst = gen_zenotravel(sc);
            // Tight deliberately contains an unachievable branch; run it
            // with NULL branches permitted, as the reference output does.
            bool allowNull = sc == ZenoScenario::Tight;
            for (int r = 1; r <= spec.repetitions; ++r)
                jobsList.push_back(
                    Job{zenoScenarioName(sc), r, inst, allowNull});
        }
    } else if (!spec.domain.empty()) {
        throw std::invalid_argument("unknown benchmark domain " + spec.domain);
    }

    std::vector<BenchRow> rows(jobsList.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < jobsList.size(); ++i) {
            const Job& j = jobsList[i];
            rows[i] = runOne(spec.domain, j.scale, j.rep, j.inst, j.allowNull);
        }
    } else {
        std::vector<std::future<BenchRow>> futures;
        futures.reserve(jobsList.size());
        for (const Job& j : jobsList)
            futures.push_back(std::async(std::launch::async, [&spec, j]() {
                return runOne(spec.domain, j.scale, j.rep, j.inst, j.allowNull);
            }));
        for (size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
    }

    // Per-scale averages in first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<const BenchRow*>> byScale;
    for (const auto& r : rows) {
        if (!byScale.count(r.scale)) order.push_back(r.scale);
        byScale[r.scale].push_back(&r);
    }
    std::vector<BenchRow> out = rows;
    for (const auto& scale : order) {
        const auto& group = byScale[scale];
        BenchRow avg;
        avg.domain = spec.domain;
        avg.scale = scale;
        avg.rep = -1;
        long long ok = 0;
        for (const BenchRow* r : group) {
            avg.wallMs += r->wallMs;
            avg.nodes += r->nodes;
            avg.backtracks += r->backtracks;
            if (!r->failed) {
                avg.cost += r->cost;
                ++ok;
            }
        }
        size_t count = group.size();
        avg.wallMs /= count;
        avg.nodes /= static_cast<long long>(count);
        avg.backtracks /= static_cast<long long>(count);
        avg.cost = ok > 0 ? avg.cost / ok : 0.0;
        avg.failed = ok == 0;
        out.push_back(std::move(avg));
    }
    return out;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "domain,scale,rep,wall_ms,nodes,backtracks,cost\n";
    for (const auto& r : rows) {
        os << r.domain << "," << r.scale << ","
           << (r.rep < 0 ? std::string("avg") : std::to_string(r.rep)) << ","
           << r.wallMs << "," << r.nodes << "," << r.backtracks << ",";
        if (r.failed)
            os << "failed";
        else
            os << r.cost;
        os << "\n";
    }
    return os.str();
}

}  // namespace hqcp
