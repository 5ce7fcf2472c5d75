#include "hqcp/literal.hpp"

#include <sstream>

namespace hqcp {

std::string Literal::str() const {
    std::ostringstream os;
    if (!positive) os << "(not ";
    os << "(" << pred;
    for (const auto& a : args) os << " " << a;
    os << ")";
    if (!positive) os << ")";
    return os.str();
}

std::string stateStr(const State& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& l : s) {
        if (!first) os << " ";
        os << l.str();
        first = false;
    }
    os << "}";
    return os.str();
}

bool holds(const State& s, const Literal& lit) {
    bool present = s.count(lit.atom()) > 0;
    return lit.positive ? present : !present;
}

std::string applyTerm(const Substitution& sigma, const std::string& term) {
    if (!isVariable(term)) return term;
    auto it = sigma.find(term);
    if (it == sigma.end()) throw UnboundVariable(term);
    return it->second;
}

Literal applyLiteral(const Substitution& sigma, const Literal& lit) {
    Literal out = lit;
    for (auto& a : out.args) a = applyTerm(sigma, a);
    return out;
}

bool applicable(const std::vector<Literal>& pre, const Substitution& sigma,
                const State& s) {
    for (const auto& lit : pre) {
        if (!holds(s, applyLiteral(sigma, lit))) return false;
    }
    return true;
}

Cost preconditionCost(const std::vector<Literal>& pre, const CostTable& delta) {
    std::set<Literal> distinct(pre.begin(), pre.end());
    double sum = 0.0;
    for (const auto& l : distinct) sum += delta.literalCost(l);
    return Cost(sum);
}

}  // namespace hqcp
