#pragma once

#include <string>
#include <vector>

#include "hqcp/cost.hpp"
#include "hqcp/literal.hpp"

namespace hqcp {

inline constexpr double kProbabilityTolerance = 1e-9;

// Probability distribution over alternative nondeterministic state
// fragments. Deterministic atoms live in the State, not here.
struct BeliefState {
    struct Alternative {
        std::vector<Literal> fragment;  // ground positive literals, sorted
        double prob = 0.0;

        auto operator<=>(const Alternative&) const = default;
    };

    std::vector<Alternative> alternatives;

    // Validates: probabilities in (0,1] summing to 1 within tolerance,
    // fragments ground, positive, non-empty and pairwise distinct.
    static BeliefState make(std::vector<Alternative> alts);

    std::string str() const;

    auto operator<=>(const BeliefState&) const = default;
};

std::string fragmentStr(const std::vector<Literal>& fragment);

// Expected fragment cost under the distribution.
Cost belief_cost(const BeliefState& b, const CostTable& delta);

}  // namespace hqcp
