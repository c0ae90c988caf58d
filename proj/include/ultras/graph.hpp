#ifndef ULTRAS_GRAPH_HPP
#define ULTRAS_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ultras/domain.hpp"

namespace ultras {

using StateId = std::uint32_t;

/// Reachability distribution over state ids, iterated in id order.
using StateDist = Distribution<StateId>;

/// Explicit functional transition system: a finite set of labeled states, a
/// fixed action alphabet, and for every (state, action) pair exactly one
/// distribution (possibly empty) whose support stays inside the state set.
class UltrasGraph {
public:
    UltrasGraph(DomainKind kind, std::vector<std::string> alphabet);

    DomainKind kind() const { return kind_; }

    std::size_t state_count() const { return labels_.size(); }
    const std::string& label(StateId s) const;
    std::optional<StateId> state_of(std::string_view label) const;

    const std::vector<std::string>& alphabet() const { return alphabet_; }
    std::optional<std::size_t> action_index(std::string_view action) const;

    /// Labels must be unique; the new state starts with all-empty rows.
    StateId add_state(std::string label);

    /// Replaces the distribution for (state, action). Every state in the
    /// support must already exist.
    void set_dist(StateId s, std::size_t action, StateDist d);

    const StateDist& dist(StateId s, std::size_t action) const;
    /// Throws UltrasError for an action outside the alphabet.
    const StateDist& dist(StateId s, std::string_view action) const;

    /// Number of (state, action, state) triples carrying a non-bottom value.
    std::size_t transition_count() const;

private:
    void check_state(StateId s) const;

    DomainKind kind_;
    std::vector<std::string> alphabet_;
    std::map<std::string, std::size_t, std::less<>> action_index_;
    std::vector<std::string> labels_;
    std::map<std::string, StateId, std::less<>> state_index_;
    std::vector<std::vector<StateDist>> rows_;
};

}  // namespace ultras

#endif
