#include "ultras/statespace.hpp"

#include <deque>
#include <unordered_map>

#include "ultras/errors.hpp"
#include "ultras/semantics.hpp"

namespace ultras {

Exploration explore(const DefinitionEnv& env, std::span<const TermPtr> roots,
                    const ExplorationConfig& cfg) {
    if (cfg.max_states < 1) throw ContractViolation("explore: max_states must be at least 1");
    std::vector<std::string> alphabet = cfg.alphabet ? *cfg.alphabet : env.alphabet();
    SemanticsEngine engine(env);
    Exploration result{UltrasGraph(env.kind(), alphabet), {}};

    std::unordered_map<TermPtr, StateId> ids;
    std::deque<TermPtr> frontier;
    auto ensure = [&](TermPtr t) {
        auto it = ids.find(t);
        if (it != ids.end()) return it->second;
        if (result.graph.state_count() >= cfg.max_states)
            throw BudgetExceededError(cfg.max_states, frontier.size());
        StateId id = result.graph.add_state(t->text());
        ids.emplace(t, id);
        frontier.push_back(t);
        return id;
    };

    for (TermPtr r : roots) result.roots.push_back(ensure(r));

    while (!frontier.empty()) {
        TermPtr t = frontier.front();
        frontier.pop_front();
        StateId s = ids.at(t);
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            const TermDist& d = engine.next(t, alphabet[a]);
            StateDist row(result.graph.kind());
            for (const auto& [target, v] : d.entries()) row.add(ensure(target), v);
            result.graph.set_dist(s, a, std::move(row));
        }
    }
    return result;
}

Exploration explore(const DefinitionEnv& env, const ExplorationConfig& cfg) {
    TermPtr root = env.init();
    if (root == nullptr) throw ContractViolation("explore: model has no init term");
    return explore(env, std::span<const TermPtr>(&root, 1), cfg);
}

}  // namespace ultras
