#include "hqcp/domain.hpp"

#include <sstream>

namespace hqcp {

std::string TaskHead::str() const {
    std::ostringstream os;
    os << "(" << name;
    for (const auto& a : args) os << " " << a;
    os << ")";
    return os.str();
}

const ActuationOperator* Domain::findActuation(const std::string& n) const {
    for (const auto& o : actuations)
        if (o.name == n) return &o;
    return nullptr;
}

const SensingOperator* Domain::findSensing(const std::string& n) const {
    for (const auto& o : sensings)
        if (o.name == n) return &o;
    return nullptr;
}

bool Domain::hasMethodFor(const std::string& n) const {
    for (const auto& m : methods)
        if (m.name == n) return true;
    return false;
}

std::optional<TaskKind> Domain::kindOf(const std::string& n) const {
    if (hasMethodFor(n)) return TaskKind::Compound;
    if (findActuation(n)) return TaskKind::Actuation;
    if (findSensing(n)) return TaskKind::Sensing;
    return std::nullopt;
}

}  // namespace hqcp
