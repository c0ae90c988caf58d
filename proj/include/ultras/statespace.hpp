#ifndef ULTRAS_STATESPACE_HPP
#define ULTRAS_STATESPACE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultras/graph.hpp"
#include "ultras/model.hpp"

namespace ultras {

struct ExplorationConfig {
    /// Hard cap on the number of distinct states; exceeding it raises
    /// BudgetExceededError. Must be at least 1.
    std::size_t max_states = 10000;
    /// Alphabet to close the graph over; defaults to the model's own.
    std::optional<std::vector<std::string>> alphabet;
};

struct Exploration {
    UltrasGraph graph;
    /// Ids of the requested start terms, in request order.
    std::vector<StateId> roots;
};

/// Breadth-first closure of the given start terms under the rule engine.
/// Deterministic: states are numbered in discovery order, which depends only
/// on the roots, the alphabet order, and the canonical order of targets.
Exploration explore(const DefinitionEnv& env, std::span<const TermPtr> roots,
                    const ExplorationConfig& cfg = {});

/// Exploration from the model's init term.
Exploration explore(const DefinitionEnv& env, const ExplorationConfig& cfg = {});

}  // namespace ultras

#endif
