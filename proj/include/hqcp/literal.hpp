#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hqcp/cost.hpp"
#include "hqcp/errors.hpp"

namespace hqcp {

inline bool isVariable(const std::string& term) {
    return !term.empty() && term.front() == '?';
}

// Ground or lifted logical atom with polarity. Canonical order is
// (predicate, args, polarity) so literal sets serialize uniquely.
struct Literal {
    std::string pred;
    std::vector<std::string> args;
    bool positive = true;

    bool ground() const {
        for (const auto& a : args)
            if (isVariable(a)) return false;
        return true;
    }

    Literal atom() const {
        Literal l = *this;
        l.positive = true;
        return l;
    }

    std::string str() const;

    auto operator<=>(const Literal&) const = default;
};

// Closed-world deterministic state: set of positive ground atoms.
using State = std::set<Literal>;

std::string stateStr(const State& s);

// true iff lit (which may be negative) holds in s under closed world.
bool holds(const State& s, const Literal& lit);

// Variable -> constant bindings. Application is idempotent on ground terms.
using Substitution = std::map<std::string, std::string>;

// Applies sigma to a term; throws UnboundVariable when a variable stays free.
std::string applyTerm(const Substitution& sigma, const std::string& term);
Literal applyLiteral(const Substitution& sigma, const Literal& lit);

// s |= sigma(pre): every positive literal present, no negative literal present.
bool applicable(const std::vector<Literal>& pre, const Substitution& sigma,
                const State& s);

// Per-literal cost table keyed by atom (polarity ignored on lookup).
struct CostTable {
    std::map<Literal, double> entries;  // keys are positive ground literals
    double defaultCost = 0.0;

    void set(const Literal& lit, double cost) {
        if (cost < 0)
            throw InvalidDistribution("negative cost for " + lit.str());
        entries[lit.atom()] = cost;
    }

    double literalCost(const Literal& lit) const {
        auto it = entries.find(lit.atom());
        return it == entries.end() ? defaultCost : it->second;
    }
};

// Sum of table costs over the distinct literals of a ground precondition.
Cost preconditionCost(const std::vector<Literal>& pre, const CostTable& delta);

}  // namespace hqcp
