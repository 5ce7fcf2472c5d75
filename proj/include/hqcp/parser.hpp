#pragma once

#include <string>

#include "hqcp/domain.hpp"
#include "hqcp/plan.hpp"

namespace hqcp {

// Domain description, `(defdomain <name> (<item>*))`; see docs/dsl.md.
Domain parse_domain(const std::string& text, const std::string& file = "");

// Problem description, `(defproblem <name> <domain> ...)`.
Problem parse_problem(const std::string& text, const Domain& domain,
                      const std::string& file = "");

enum class PlanFormat { Tree, Json };

std::string serialize_plan(const ConditionalPlan& pi, PlanFormat format);

// Inverse of serialize_plan(..., Json) on the "steps" schema.
ConditionalPlan parse_plan_json(const std::string& text);

}  // namespace hqcp
