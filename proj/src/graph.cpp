#include "ultras/graph.hpp"

#include "ultras/errors.hpp"

namespace ultras {

UltrasGraph::UltrasGraph(DomainKind kind, std::vector<std::string> alphabet)
    : kind_(kind), alphabet_(std::move(alphabet)) {
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (!action_index_.emplace(alphabet_[i], i).second)
            throw ContractViolation("duplicate action in alphabet: " + alphabet_[i]);
    }
}

void UltrasGraph::check_state(StateId s) const {
    if (s >= labels_.size())
        throw ContractViolation("state id out of range: " + std::to_string(s));
}

const std::string& UltrasGraph::label(StateId s) const {
    check_state(s);
    return labels_[s];
}

std::optional<StateId> UltrasGraph::state_of(std::string_view label) const {
    auto it = state_index_.find(label);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> UltrasGraph::action_index(std::string_view action) const {
    auto it = action_index_.find(action);
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

StateId UltrasGraph::add_state(std::string label) {
    if (state_index_.count(label))
        throw ContractViolation("duplicate state label: " + label);
    StateId id = static_cast<StateId>(labels_.size());
    state_index_.emplace(label, id);
    labels_.push_back(std::move(label));
    rows_.emplace_back(alphabet_.size(), StateDist(kind_));
    return id;
}

void UltrasGraph::set_dist(StateId s, std::size_t action, StateDist d) {
    check_state(s);
    if (action >= alphabet_.size()) throw ContractViolation("action index out of range");
    if (d.kind() != kind_) throw ContractViolation("set_dist: domain kind mismatch");
    for (const auto& [target, v] : d.entries()) check_state(target);
    rows_[s][action] = std::move(d);
}

const StateDist& UltrasGraph::dist(StateId s, std::size_t action) const {
    check_state(s);
    if (action >= alphabet_.size()) throw ContractViolation("action index out of range");
    return rows_[s][action];
}

const StateDist& UltrasGraph::dist(StateId s, std::string_view action) const {
    auto i = action_index(action);
    if (!i) throw UltrasError("unknown action '" + std::string(action) + "'");
    return dist(s, *i);
}

std::size_t UltrasGraph::transition_count() const {
    std::size_t n = 0;
    for (const auto& row : rows_)
        for (const auto& d : row) n += d.size();
    return n;
}

}  // namespace ultras
