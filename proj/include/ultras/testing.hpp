#ifndef ULTRAS_TESTING_HPP
#define ULTRAS_TESTING_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ultras/equivalence.hpp"
#include "ultras/graph.hpp"
#include "ultras/model.hpp"
#include "ultras/statespace.hpp"

namespace ultras {

/// How system and observer transition values combine on a shared step.
/// Bottom is preserved in both directions: a step the system or the observer
/// cannot take does not exist in the product.
enum class DeltaKind { conjunction, product, minimum };

const char* to_string(DeltaKind d);

/// conjunction fits Boolean graphs only; product and minimum fit the numeric
/// ones. Throws ContractViolation on a mismatch.
void validate_delta(DeltaKind d, DomainKind kind);
DeltaKind default_delta(DomainKind kind);
Rational apply_delta(DeltaKind d, DomainKind kind, const Rational& a, const Rational& b);

/// An explored observer: its graph, its start state, and the id of the
/// success state OMEGA (appended unreachable if the observer never reports
/// success). OMEGA is inert by construction.
struct ObservationSystem {
    std::string name;
    UltrasGraph graph;
    StateId init_state;
    StateId omega_state;
};

/// Explores an observer model (parsed with ModelRole::observer) into an
/// ObservationSystem.
ObservationSystem make_observation_system(std::string name, const DefinitionEnv& observer_env,
                                          const ExplorationConfig& cfg = {});

/// Product of a system graph with an observer. Configurations are
/// (system state, observer state) pairs; a configuration is successful when
/// its observer component is OMEGA.
struct InteractionSystem {
    UltrasGraph graph;
    std::vector<std::pair<StateId, StateId>> configs;
    /// Product states of the requested system roots paired with the
    /// observer's start state, in request order.
    std::vector<StateId> roots;
    /// Mask of successful configurations.
    std::vector<bool> successful;
};

InteractionSystem build_interaction(const UltrasGraph& system, std::span<const StateId> roots,
                                    const ObservationSystem& observer, DeltaKind delta,
                                    const ExplorationConfig& cfg = {});

/// Measure of reaching success in the interaction system after a trace.
DomainValue testing_measure(const InteractionSystem& interaction, StateId config,
                            std::span<const std::string> trace);

struct TestingWitness {
    std::string observer;
    std::vector<std::string> trace;
    DomainValue lhs;
    DomainValue rhs;
};

struct TestingVerdict {
    bool equivalent;
    int depth;
    std::optional<TestingWitness> witness;
};

/// Runs every observer in the battery against both states and compares
/// success measures for all traces of length <= depth. Verdicts are relative
/// to the given battery; the witness names the first observer (in battery
/// order) that tells the states apart.
TestingVerdict testing_equiv(const UltrasGraph& system, StateId s1, StateId s2,
                             std::span<const ObservationSystem> battery, DeltaKind delta,
                             int depth, const ExplorationConfig& cfg = {});

/// Canonical observer battery over an alphabet: every action sequence of
/// length 1..max_depth ending in success, plus for max_depth >= 2 all
/// two-branch observers x.(y.OMEGA + z.OMEGA) with y != z. Prefixes carry
/// probability 1/2 annotations in PCSP and rate 1 in PEPA. max_depth is
/// capped at 4 to keep batteries small.
std::vector<ObservationSystem> generate_battery(const std::vector<std::string>& alphabet,
                                                int max_depth, Calculus calc);

std::string format_verdict(const TestingVerdict& v);

}  // namespace ultras

#endif
