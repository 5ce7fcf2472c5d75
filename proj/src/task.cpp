#include "hqcp/task.hpp"

#include <algorithm>
#include <sstream>

namespace hqcp {

std::string Candidate::sortKey() const {
    std::ostringstream os;
    if (const auto* m = std::get_if<GroundMethod>(&inst)) {
        os << m->name;
        for (const auto& a : m->args) os << " " << a;
        for (const auto& st : m->subtasks) os << " " << st.str();
        os << " #" << m->declIndex;
    } else if (const auto* a = std::get_if<GroundAction>(&inst)) {
        os << a->name;
        for (const auto& x : a->args) os << " " << x;
        for (const auto& l : a->pre) os << " " << l.str();
    } else {
        const auto& g = std::get<GroundSense>(inst);
        os << g.name;
        for (const auto& x : g.args) os << " " << x;
        os << " " << g.observe.str();
    }
    return os.str();
}

void sortCandidates(std::vector<Candidate>& cands) {
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) {
                         if (a.estimate != b.estimate)
                             return a.estimate < b.estimate;
                         return a.sortKey() < b.sortKey();
                     });
}

int TaskArena::add(TaskKind kind, TaskHead head, int parent) {
    TaskNode n;
    n.kind = kind;
    n.head = std::move(head);
    n.parent = parent;
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
}

std::string TaskArena::canonical(const std::deque<int>& agenda) const {
    std::ostringstream os;
    for (size_t i = 0; i < nodes.size(); ++i) {
        const TaskNode& n = nodes[i];
        os << i << ":";
        switch (n.kind) {
            case TaskKind::Compound: os << "C"; break;
            case TaskKind::Actuation: os << "A"; break;
            case TaskKind::Sensing: os << "S"; break;
        }
        os << n.head.str() << " cost=" << n.cost.str()
           << " inst=" << (n.instantiated ? 1 : 0) << " chosen=" << n.chosen
           << " cands=" << (n.candidatesComputed ? n.candidates.size() : 0)
           << " parent=" << n.parent << " children=(";
        for (int c : n.children) os << c << " ";
        os << ")\n";
    }
    os << "agenda:";
    for (int id : agenda) os << " " << id;
    os << "\n";
    return os.str();
}

}  // namespace hqcp
