#include "ultras/testing.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "ultras/errors.hpp"

namespace ultras {

const char* to_string(DeltaKind d) {
    switch (d) {
        case DeltaKind::conjunction: return "conjunction";
        case DeltaKind::product: return "product";
        case DeltaKind::minimum: return "minimum";
    }
    throw ContractViolation("to_string: bad DeltaKind");
}

void validate_delta(DeltaKind d, DomainKind kind) {
    bool ok = d == DeltaKind::conjunction ? kind == DomainKind::boolean : is_numeric(kind);
    if (!ok)
        throw ContractViolation(std::string("delta '") + to_string(d) +
                                "' does not fit the " + to_string(kind) + " domain");
}

DeltaKind default_delta(DomainKind kind) {
    return kind == DomainKind::boolean ? DeltaKind::conjunction : DeltaKind::product;
}

Rational apply_delta(DeltaKind d, DomainKind kind, const Rational& a, const Rational& b) {
    validate_delta(d, kind);
    switch (d) {
        case DeltaKind::conjunction:
        case DeltaKind::minimum: return std::min(a, b);
        case DeltaKind::product: return Rational(a * b);
    }
    throw ContractViolation("apply_delta: bad DeltaKind");
}

ObservationSystem make_observation_system(std::string name, const DefinitionEnv& observer_env,
                                          const ExplorationConfig& cfg) {
    if (observer_env.role() != ModelRole::observer)
        throw ContractViolation("make_observation_system: environment was not parsed as an observer");
    Exploration ex = explore(observer_env, cfg);
    std::string omega(omega_name);
    std::optional<StateId> omega_state = ex.graph.state_of(omega);
    if (!omega_state) omega_state = ex.graph.add_state(omega);
    return ObservationSystem{std::move(name), std::move(ex.graph), ex.roots[0], *omega_state};
}

InteractionSystem build_interaction(const UltrasGraph& system, std::span<const StateId> roots,
                                    const ObservationSystem& observer, DeltaKind delta,
                                    const ExplorationConfig& cfg) {
    if (system.kind() != observer.graph.kind())
        throw ContractViolation("build_interaction: system and observer domain kinds differ");
    validate_delta(delta, system.kind());
    if (cfg.max_states < 1) throw ContractViolation("build_interaction: max_states must be at least 1");

    // The product alphabet: the system's actions, then any extra observer
    // actions. A configuration moves only on actions both sides share.
    std::vector<std::string> alphabet = system.alphabet();
    for (const std::string& a : observer.graph.alphabet())
        if (!system.action_index(a)) alphabet.push_back(a);

    InteractionSystem out{UltrasGraph(system.kind(), alphabet), {}, {}, {}};
    std::map<std::pair<StateId, StateId>, StateId> ids;
    std::deque<std::pair<StateId, StateId>> frontier;
    auto ensure = [&](StateId s, StateId o) {
        auto key = std::make_pair(s, o);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        if (out.graph.state_count() >= cfg.max_states)
            throw BudgetExceededError(cfg.max_states, frontier.size());
        // Term texts never contain " , ", so this label is unambiguous.
        StateId id = out.graph.add_state("(" + system.label(s) + " , " + observer.graph.label(o) + ")");
        ids.emplace(key, id);
        out.configs.push_back(key);
        frontier.push_back(key);
        return id;
    };

    for (StateId r : roots) {
        if (r >= system.state_count()) throw ContractViolation("build_interaction: root out of range");
        out.roots.push_back(ensure(r, observer.init_state));
    }

    while (!frontier.empty()) {
        auto [s, o] = frontier.front();
        frontier.pop_front();
        StateId id = ids.at({s, o});
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            auto ia = system.action_index(alphabet[a]);
            auto ib = observer.graph.action_index(alphabet[a]);
            StateDist row(system.kind());
            if (ia && ib) {
                const StateDist& d1 = system.dist(s, *ia);
                const StateDist& d2 = observer.graph.dist(o, *ib);
                for (const auto& [st, v1] : d1.entries())
                    for (const auto& [ot, v2] : d2.entries())
                        row.add(ensure(st, ot), apply_delta(delta, system.kind(), v1, v2));
            }
            out.graph.set_dist(id, a, std::move(row));
        }
    }

    out.successful.resize(out.graph.state_count());
    for (StateId c = 0; c < out.graph.state_count(); ++c)
        out.successful[c] = out.configs[c].second == observer.omega_state;
    return out;
}

DomainValue testing_measure(const InteractionSystem& interaction, StateId config,
                            std::span<const std::string> trace) {
    return measure(interaction.graph, config, trace, interaction.successful);
}

TestingVerdict testing_equiv(const UltrasGraph& system, StateId s1, StateId s2,
                             std::span<const ObservationSystem> battery, DeltaKind delta,
                             int depth, const ExplorationConfig& cfg) {
    for (const ObservationSystem& obs : battery) {
        std::vector<StateId> roots{s1, s2};
        InteractionSystem in = build_interaction(system, roots, obs, delta, cfg);
        auto witness =
            find_distinguishing_trace(in.graph, in.roots[0], in.roots[1], in.successful, depth);
        if (witness)
            return TestingVerdict{false, depth,
                                  TestingWitness{obs.name, std::move(witness->trace), witness->lhs,
                                                 witness->rhs}};
    }
    return TestingVerdict{true, depth, std::nullopt};
}

namespace {

std::string observer_term(const std::vector<std::string>& actions, Calculus calc,
                          const std::string& tail) {
    std::string out = tail;
    for (auto it = actions.rbegin(); it != actions.rend(); ++it) {
        if (calc == Calculus::pepa) out = "(" + *it + ",1)." + out;
        else out = *it + "." + out;
    }
    return out;
}

ObservationSystem observer_from_term(const std::string& term, Calculus calc) {
    std::string text = std::string("calculus ") + to_string(calc) + "\ninit " + term + "\n";
    DefinitionEnv env = parse_model(text, ModelRole::observer);
    return make_observation_system(term, env);
}

}  // namespace

std::vector<ObservationSystem> generate_battery(const std::vector<std::string>& alphabet,
                                                int max_depth, Calculus calc) {
    if (max_depth < 1) throw ContractViolation("generate_battery: max_depth must be at least 1");
    if (max_depth > 4)
        throw ContractViolation("generate_battery: max_depth capped at 4 to bound battery size");
    std::vector<ObservationSystem> battery;
    std::string omega(omega_name);

    // All linear observers a1.a2...ak.OMEGA for 1 <= k <= max_depth, in
    // length-then-lexicographic order over the alphabet as given.
    for (int len = 1; len <= max_depth && !alphabet.empty(); ++len) {
        std::vector<std::size_t> pick(len, 0);
        while (true) {
            std::vector<std::string> actions;
            actions.reserve(pick.size());
            for (std::size_t i : pick) actions.push_back(alphabet[i]);
            battery.push_back(observer_from_term(observer_term(actions, calc, omega), calc));
            int pos = len - 1;
            while (pos >= 0 && pick[pos] + 1 == alphabet.size()) {
                pick[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++pick[pos];
        }
    }

    // Two-branch observers x.(y.OMEGA + z.OMEGA), y != z, which see one step
    // further than any linear observer of length 2.
    if (max_depth >= 2) {
        std::string join = calc == Calculus::pcsp ? " +(1/2) " : " + ";
        for (const std::string& x : alphabet) {
            for (const std::string& y : alphabet) {
                for (const std::string& z : alphabet) {
                    if (y == z) continue;
                    std::string branch = "(" + observer_term({y}, calc, omega) + join +
                                         observer_term({z}, calc, omega) + ")";
                    battery.push_back(
                        observer_from_term(observer_term({x}, calc, branch), calc));
                }
            }
        }
    }
    return battery;
}

std::string format_verdict(const TestingVerdict& v) {
    if (v.equivalent) return "EQUIVALENT depth=" + std::to_string(v.depth);
    const TestingWitness& w = *v.witness;
    std::string trace;
    for (const std::string& a : w.trace) trace += a;
    return "DISTINGUISHED observer=" + w.observer + " trace=" + trace +
           " lhs=" + to_string(w.lhs) + " rhs=" + to_string(w.rhs);
}

}  // namespace ultras
