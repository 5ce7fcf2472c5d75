#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqcp/planner.hpp"

namespace hqcp {

struct GeneratedInstance {
    std::string domainText;
    std::string problemText;
};

// Patient with n possible infections or healthy; one sensing operator
// diagnoses, one actuation operator cures. Uniform belief over the n+1
// alternatives. Requires n >= 1.
GeneratedInstance gen_medicate(int n);

enum class ZenoScenario { Late, Tight };

// A -> B -> C transport with fly/zoom modes, refuel gated on an uncertain
// supplier at each airport. Deadlines are encoded statically as slack
// tokens consumed by the slow fly mode: the late scenario affords two,
// the tight scenario one (forcing zoom, hence refuel, on some leg).
GeneratedInstance gen_zenotravel(ZenoScenario scenario);

std::string zenoScenarioName(ZenoScenario s);

struct BenchSpec {
    std::string domain;  // "medicate" | "zenotravel"
    std::vector<int> scales;               // medicate: n values
    std::vector<ZenoScenario> scenarios;   // zenotravel
    int repetitions = 5;
    uint64_t seed = 0;
};

struct BenchRow {
    std::string domain;
    std::string scale;
    int rep = 0;  // -1 marks an average row
    double wallMs = 0.0;
    long long nodes = 0;
    long long backtracks = 0;
    double cost = 0.0;
    bool failed = false;
};

// Runs every (instance, repetition) pair, appending per-scale average rows.
// Per-row failures are recorded and the campaign continues.
std::vector<BenchRow> run_bench(const BenchSpec& spec, int jobs = 1);

// Header `domain,scale,rep,wall_ms,nodes,backtracks,cost`.
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace hqcp
