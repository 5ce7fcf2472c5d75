#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hqcp/bench.hpp"
#include "hqcp/parser.hpp"
#include "hqcp/planner.hpp"

using namespace hqcp;

namespace {

const char* kMiniDomain = R"((defdomain mini
  ((:operator !go (?x ?y) ((at ?x) (road ?x ?y)) (:add (at ?y)) (:delete (at ?x)))
   (:method travel (?x ?y) ((road ?x ?y)) (:subtasks (!go ?x ?y)))))
)";

}  // namespace

TEST_CASE("the medicate domain parses into its operators and methods") {
    GeneratedInstance inst = gen_medicate(1);
    Domain d = parse_domain(inst.domainText);
    CHECK(d.name == "medicate");
    CHECK(d.sensings.size() == 1);
    CHECK(d.sensings[0].name == "!diagnose");
    CHECK(d.actuations.size() == 2);
    CHECK(d.methods.size() == 3);
    CHECK(d.kindOf("treat-patient") == TaskKind::Compound);
    CHECK(d.kindOf("!diagnose") == TaskKind::Sensing);
    CHECK(d.kindOf("!medicate") == TaskKind::Actuation);

    Problem p = parse_problem(inst.problemText, d);
    CHECK(p.beliefs.size() == 1);
    CHECK(p.beliefs[0].alternatives.size() == 2);
    CHECK(p.tasks.size() == 1);
    CHECK(p.tasks[0].name == "treat-patient");
}

TEST_CASE("parsing is deterministic") {
    GeneratedInstance inst = gen_medicate(2);
    Domain a = parse_domain(inst.domainText);
    Domain b = parse_domain(inst.domainText);
    REQUIRE(a.methods.size() == b.methods.size());
    for (size_t i = 0; i < a.methods.size(); ++i) {
        CHECK(a.methods[i].name == b.methods[i].name);
        CHECK(a.methods[i].subtasks == b.methods[i].subtasks);
    }
}

TEST_CASE("empty input is a parse error") {
    CHECK_THROWS_AS(parse_domain(""), ParseError);
}

TEST_CASE("syntax faults carry a 1-based source position") {
    try {
        parse_domain("(defdomain d\n  ((:operator !a ()");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.span().line >= 1);
        CHECK(e.span().column >= 1);
        CHECK(std::string(e.what()).find(":") != std::string::npos);
    }
}

TEST_CASE("probability outside (0,1] is rejected") {
    std::string text =
        "(defdomain d ((:operator !a () () (:add (p)) (:delete) :prob 1.3)))";
    CHECK_THROWS_AS(parse_domain(text), ValidationError);
    std::string zero =
        "(defdomain d ((:operator !a () () (:add (p)) (:delete) :prob 0)))";
    CHECK_THROWS_AS(parse_domain(zero), ValidationError);
}

TEST_CASE("unbound effect variables are rejected") {
    std::string text =
        "(defdomain d ((:operator !a (?x) () (:add (p ?y)) (:delete))))";
    CHECK_THROWS_AS(parse_domain(text), ValidationError);
}

TEST_CASE("problem files populate state, beliefs, tasks, and costs") {
    Domain d = parse_domain(kMiniDomain);
    std::string text = R"((defproblem trip mini
  (:state (at a) (road a b))
  (:belief (((supplier b unoccupied)) 0.9) (((supplier b occupied)) 0.1))
  (:tasks (travel a b))
  (:cost ((supplier b unoccupied) 100) ((road a b) 7))))";
    Problem p = parse_problem(text, d);
    CHECK(p.s0.size() == 2);
    REQUIRE(p.beliefs.size() == 1);
    CHECK(p.beliefs[0].alternatives[0].prob + p.beliefs[0].alternatives[1].prob ==
          doctest::Approx(1.0));
    CHECK(p.costs.literalCost(Literal{"supplier", {"b", "unoccupied"}, true}) ==
          100);
    CHECK(p.costs.literalCost(Literal{"road", {"a", "b"}, true}) == 7);
    CHECK(p.costs.literalCost(Literal{"at", {"a"}, true}) == 0);
}

TEST_CASE("belief probabilities must sum to 1") {
    Domain d = parse_domain(kMiniDomain);
    std::string text = R"((defproblem trip mini
  (:state (at a))
  (:belief (((x)) 0.5) (((y)) 0.6))
  (:tasks (travel a b))))";
    CHECK_THROWS_AS(parse_problem(text, d), ValidationError);
}

TEST_CASE("unknown task heads are rejected") {
    Domain d = parse_domain(kMiniDomain);
    std::string text = R"((defproblem trip mini
  (:state (at a))
  (:tasks (teleport a b))))";
    CHECK_THROWS_AS(parse_problem(text, d), UnknownTask);
}

TEST_CASE("negative costs are rejected") {
    Domain d = parse_domain(kMiniDomain);
    std::string text = R"((defproblem trip mini
  (:state (at a))
  (:tasks (travel a b))
  (:cost ((at a) -3))))";
    CHECK_THROWS(parse_problem(text, d));
}

TEST_CASE("tree format renders observations and NULL branches") {
    ConditionalPlan empty;
    CHECK(serialize_plan(empty, PlanFormat::Tree) == "NULL\n");

    BranchNode node;
    node.sensor.name = "!observe-supplier";
    node.sensor.args = {"a"};
    node.sensor.sensing = true;
    Branch usable;
    usable.observation = {Literal{"usable", {"a"}, true}};
    usable.prob = 0.9;
    PlanAction fly;
    fly.name = "!fly";
    fly.args = {"a", "b"};
    usable.subplan.actions = {fly};
    Branch unusable;
    unusable.observation = {Literal{"unusable", {"a"}, true}};
    unusable.prob = 0.1;
    unusable.infeasible = true;
    node.branches = {usable, unusable};
    ConditionalPlan pi;
    pi.branch = std::make_shared<const BranchNode>(node);

    std::string tree = serialize_plan(pi, PlanFormat::Tree);
    CHECK(tree.find("(!Observe usable a)") != std::string::npos);
    CHECK(tree.find("(!Observe unusable a)") != std::string::npos);
    CHECK(tree.find("(!fly a b)") != std::string::npos);
    CHECK(tree.find("NULL") != std::string::npos);
}

TEST_CASE("json serialization round-trips planner output") {
    for (int n : {1, 2, 3}) {
        GeneratedInstance inst = gen_medicate(n);
        Domain d = parse_domain(inst.domainText);
        Problem p = parse_problem(inst.problemText, d);
        PlanResult result = plan(p);
        REQUIRE(result.ok());
        std::string json = serialize_plan(*result.plan, PlanFormat::Json);
        ConditionalPlan back = parse_plan_json(json);
        CHECK(back == *result.plan);
        // and once more through the serializer
        CHECK(serialize_plan(back, PlanFormat::Json) == json);
    }
}

TEST_CASE("malformed plan json reports schema errors instead of crashing") {
    CHECK_THROWS(parse_plan_json("not json at all"));
    CHECK_THROWS(parse_plan_json(R"({"steps": [{"type": "mystery"}]})"));
    // branch must be the last step
    CHECK_THROWS(parse_plan_json(R"({"steps": [
      {"type": "branch", "sensor": {"name": "!s", "args": [], "prob": 1.0, "cost": 0.0},
       "branches": []},
      {"type": "action", "name": "!a", "args": [], "prob": 1.0, "cost": 0.0}]})"));
}
