#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hqcp/heuristic.hpp"

using namespace hqcp;

namespace {

Candidate methodCand(double estimate, const std::string& key = "m") {
    GroundMethod m;
    m.name = key;
    m.cost = Cost(estimate);
    return Candidate{Cost(estimate), std::move(m)};
}

Candidate actionCand(double estimate, const std::string& key = "!a") {
    GroundAction a;
    a.name = key;
    a.cost = Cost(estimate);
    return Candidate{Cost(estimate), std::move(a)};
}

int addTask(TaskArena& arena, TaskKind kind, const std::string& name,
            int parent = -1) {
    return arena.add(kind, TaskHead{name, {}}, parent);
}

void choose(TaskArena& arena, int id, int idx) {
    arena[id].chosen = idx;
    arena[id].instantiated = true;
    arena[id].cost = arena[id].candidates[static_cast<size_t>(idx)].estimate;
}

}  // namespace

TEST_CASE("uninstantiated tasks cost nothing until candidates are known") {
    TaskArena arena;
    int t = addTask(arena, TaskKind::Compound, "t");
    CHECK(heuristic_cost(arena, t) == Cost(0));
}

TEST_CASE("candidate sets give the minimum estimate") {
    TaskArena arena;
    int t = addTask(arena, TaskKind::Compound, "t");
    arena[t].candidates = {methodCand(3), methodCand(5)};
    arena[t].candidatesComputed = true;
    CHECK(heuristic_cost(arena, t) == Cost(3));
}

TEST_CASE("no applicable instantiation means infinite cost") {
    TaskArena arena;
    int t = addTask(arena, TaskKind::Compound, "t");
    arena[t].candidatesComputed = true;
    CHECK(heuristic_cost(arena, t).isInfinite());
}

TEST_CASE("instantiated compound adds its children's current values") {
    TaskArena arena;
    int t = addTask(arena, TaskKind::Compound, "t");
    arena[t].candidates = {methodCand(2)};
    arena[t].candidatesComputed = true;
    choose(arena, t, 0);
    int c1 = addTask(arena, TaskKind::Actuation, "!a", t);
    int c2 = addTask(arena, TaskKind::Actuation, "!b", t);
    arena[t].children = {c1, c2};
    CHECK(heuristic_cost(arena, t) == Cost(2));  // children uninstantiated
    arena[c1].cost = Cost(4);
    CHECK(heuristic_cost(arena, t) == Cost(6));
    arena[c2].cost = Cost(1);
    CHECK(heuristic_cost(arena, t) == Cost(7));
}

TEST_CASE("consistency compares the chosen cost to untried alternatives") {
    TaskArena arena;
    int t = addTask(arena, TaskKind::Compound, "t");
    arena[t].candidates = {methodCand(3, "m1"), methodCand(5, "m2")};
    arena[t].candidatesComputed = true;
    choose(arena, t, 0);

    SUBCASE("strict dominance") {
        arena[t].cost = Cost(3);
        CHECK(is_consistent(arena, t));
    }
    SUBCASE("dominated by an untried alternative") {
        arena[t].cost = Cost(7);
        CHECK_FALSE(is_consistent(arena, t));
    }
    SUBCASE("ties keep the incumbent") {
        arena[t].cost = Cost(5);
        CHECK(is_consistent(arena, t));
    }
    SUBCASE("no untried alternative left") {
        choose(arena, t, 1);
        arena[t].cost = Cost(1000);
        CHECK(is_consistent(arena, t));
    }
}

TEST_CASE("update on a single-task network is trivially consistent") {
    TaskArena arena;
    int t = addTask(arena, TaskKind::Actuation, "!a");
    arena[t].candidates = {actionCand(4)};
    arena[t].candidatesComputed = true;
    choose(arena, t, 0);
    auto result = update_costs(arena, t);
    CHECK(result.consistent);
    CHECK(result.recomputed == 0);
}

TEST_CASE("a child cost increase can invalidate the parent's choice") {
    TaskArena arena;
    int parent = addTask(arena, TaskKind::Compound, "p");
    arena[parent].candidates = {methodCand(0, "m1"), methodCand(3, "m2")};
    arena[parent].candidatesComputed = true;
    choose(arena, parent, 0);
    int child = addTask(arena, TaskKind::Actuation, "!a", parent);
    arena[parent].children = {child};
    arena[child].candidates = {actionCand(4)};
    arena[child].candidatesComputed = true;
    choose(arena, child, 0);

    auto result = update_costs(arena, child);
    CHECK_FALSE(result.consistent);
    CHECK(result.inconsistentAt == parent);
    CHECK(arena[parent].cost == Cost(4));  // recomputed before the stop
}

TEST_CASE("a consistent chain recomputes every ancestor exactly once") {
    TaskArena arena;
    int g2 = addTask(arena, TaskKind::Compound, "g2");
    int g1 = addTask(arena, TaskKind::Compound, "g1", g2);
    int g0 = addTask(arena, TaskKind::Compound, "g0", g1);
    int leaf = addTask(arena, TaskKind::Actuation, "!a", g0);
    for (int t : {g2, g1, g0}) {
        arena[t].candidates = {methodCand(0)};
        arena[t].candidatesComputed = true;
        choose(arena, t, 0);
    }
    arena[g2].children = {g1};
    arena[g1].children = {g0};
    arena[g0].children = {leaf};
    arena[leaf].candidates = {actionCand(2)};
    arena[leaf].candidatesComputed = true;
    choose(arena, leaf, 0);

    auto result = update_costs(arena, leaf);
    CHECK(result.consistent);
    CHECK(result.recomputed == 3);
    CHECK(arena[g0].cost == Cost(2));
    CHECK(arena[g1].cost == Cost(2));
    CHECK(arena[g2].cost == Cost(2));
}

TEST_CASE("a consistent update is a fixpoint") {
    TaskArena arena;
    int parent = addTask(arena, TaskKind::Compound, "p");
    arena[parent].candidates = {methodCand(1)};
    arena[parent].candidatesComputed = true;
    choose(arena, parent, 0);
    int child = addTask(arena, TaskKind::Actuation, "!a", parent);
    arena[parent].children = {child};
    arena[child].candidates = {actionCand(3)};
    arena[child].candidatesComputed = true;
    choose(arena, child, 0);

    auto result = update_costs(arena, child);
    REQUIRE(result.consistent);
    Cost before = arena[parent].cost;
    auto again = update_costs(arena, child);
    CHECK(again.consistent);
    CHECK(arena[parent].cost == before);
}

TEST_CASE("instantiating a child never lowers the parent's estimate") {
    TaskArena arena;
    int parent = addTask(arena, TaskKind::Compound, "p");
    arena[parent].candidates = {methodCand(1)};
    arena[parent].candidatesComputed = true;
    choose(arena, parent, 0);
    int child = addTask(arena, TaskKind::Actuation, "!a", parent);
    arena[parent].children = {child};
    Cost before = heuristic_cost(arena, parent);
    for (double c : {0.0, 1.0, 2.5, 7.0}) {
        arena[child].cost = Cost(c);
        CHECK(heuristic_cost(arena, parent) >= before);
    }
}

TEST_CASE("infinite child costs make the parent infinite") {
    TaskArena arena;
    int parent = addTask(arena, TaskKind::Compound, "p");
    arena[parent].candidates = {methodCand(1)};
    arena[parent].candidatesComputed = true;
    choose(arena, parent, 0);
    int child = addTask(arena, TaskKind::Compound, "dead", parent);
    arena[parent].children = {child};
    arena[child].candidatesComputed = true;  // empty candidate set
    arena[child].cost = heuristic_cost(arena, child);
    REQUIRE(arena[child].cost.isInfinite());
    CHECK(heuristic_cost(arena, parent).isInfinite());
}

TEST_CASE("candidate ordering is by estimate then lexicographic key") {
    std::vector<Candidate> cands = {actionCand(5, "!z"), actionCand(2, "!b"),
                                    actionCand(2, "!a")};
    sortCandidates(cands);
    CHECK(cands[0].estimate == Cost(2));
    CHECK(std::get<GroundAction>(cands[0].inst).name == "!a");
    CHECK(std::get<GroundAction>(cands[1].inst).name == "!b");
    CHECK(cands[2].estimate == Cost(5));
}
