#include "hqcp/belief.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace hqcp {

BeliefState BeliefState::make(std::vector<Alternative> alts) {
    if (alts.empty())
        throw InvalidDistribution("belief state needs at least one alternative");
    double sum = 0.0;
    std::set<std::vector<Literal>> seen;
    for (auto& alt : alts) {
        if (alt.prob <= 0.0 || alt.prob > 1.0)
            throw InvalidDistribution("belief probability outside (0,1]: " +
                                      std::to_string(alt.prob));
        if (alt.fragment.empty())
            throw InvalidDistribution("empty belief fragment");
        std::sort(alt.fragment.begin(), alt.fragment.end());
        for (const auto& l : alt.fragment) {
            if (!l.ground())
                throw InvalidDistribution("non-ground belief literal " + l.str());
            if (!l.positive)
                throw InvalidDistribution("negative belief literal " + l.str());
        }
        if (!seen.insert(alt.fragment).second)
            throw InvalidDistribution("duplicate belief fragment " +
                                      fragmentStr(alt.fragment));
        sum += alt.prob;
    }
    if (std::fabs(sum - 1.0) > kProbabilityTolerance)
        throw InvalidDistribution("belief probabilities sum to " +
                                  std::to_string(sum) + ", expected 1");
    BeliefState b;
    b.alternatives = std::move(alts);
    return b;
}

std::string fragmentStr(const std::vector<Literal>& fragment) {
    std::ostringstream os;
    bool first = true;
    for (const auto& l : fragment) {
        if (!first) os << " ";
        os << l.str();
        first = false;
    }
    return os.str();
}

std::string BeliefState::str() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& alt : alternatives) {
        if (!first) os << " ";
        os << "(" << fragmentStr(alt.fragment) << " " << alt.prob << ")";
        first = false;
    }
    os << "]";
    return os.str();
}

Cost belief_cost(const BeliefState& b, const CostTable& delta) {
    double sum = 0.0;
    double psum = 0.0;
    for (const auto& alt : b.alternatives) {
        double frag = 0.0;
        std::set<Literal> distinct(alt.fragment.begin(), alt.fragment.end());
        for (const auto& l : distinct) frag += delta.literalCost(l);
        sum += alt.prob * frag;
        psum += alt.prob;
    }
    if (std::fabs(psum - 1.0) > kProbabilityTolerance)
        throw InvalidDistribution("belief probabilities sum to " +
                                  std::to_string(psum) + ", expected 1");
    return Cost(sum);
}

}  // namespace hqcp
