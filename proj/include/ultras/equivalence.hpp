#ifndef ULTRAS_EQUIVALENCE_HPP
#define ULTRAS_EQUIVALENCE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultras/domain.hpp"
#include "ultras/graph.hpp"

namespace ultras {

/// Membership mask over the graph's states.
std::vector<bool> full_state_set(const UltrasGraph& g);
std::vector<bool> state_set(const UltrasGraph& g, std::span<const StateId> members);

/// The trace measure: aggregate reachability of the target set after the
/// given action sequence. Empty trace: unit if s is in the target, bottom
/// otherwise. One step: join over successors s' of value(s -a-> s') combined
/// with the measure of the rest from s'. Throws UltrasError for an action
/// outside the graph's alphabet.
DomainValue measure(const UltrasGraph& g, StateId s, std::span<const std::string> trace,
                    const std::vector<bool>& target);

struct TraceWitness {
    std::vector<std::string> trace;
    DomainValue lhs;
    DomainValue rhs;
};

struct TraceVerdict {
    bool equivalent;
    int depth;
    std::optional<TraceWitness> witness;
};

/// Least (shortest, then lexicographically smallest in alphabet order) trace
/// of length <= depth whose measure against the target set differs between
/// s1 and s2; nullopt if none exists.
std::optional<TraceWitness> find_distinguishing_trace(const UltrasGraph& g, StateId s1, StateId s2,
                                                      const std::vector<bool>& target, int depth);

/// Trace equivalence up to the given depth: every trace of length <= depth
/// must have equal measure against the full state set from s1 and s2.
TraceVerdict trace_equiv(const UltrasGraph& g, StateId s1, StateId s2, int depth);

/// Partition of the graph's states into equivalence classes. Blocks are
/// numbered by their smallest member, so the numbering is deterministic.
class Partition {
public:
    explicit Partition(std::vector<std::uint32_t> block_of);

    std::size_t size() const { return blocks_.size(); }
    std::uint32_t block_of(StateId s) const { return block_of_[s]; }
    bool same_block(StateId a, StateId b) const { return block_of_[a] == block_of_[b]; }
    const std::vector<std::vector<StateId>>& blocks() const { return blocks_; }

private:
    std::vector<std::uint32_t> block_of_;
    std::vector<std::vector<StateId>> blocks_;
};

/// Coarsest partition stable under one-step class measures: two states stay
/// together iff for every action and every block, the joined value of
/// reaching that block is equal. Computed by iterated splitting from the
/// trivial partition.
Partition bisim_refine(const UltrasGraph& g);

struct BisimWitness {
    std::vector<std::string> trace;
    std::uint32_t block;
    DomainValue lhs;
    DomainValue rhs;
};

struct BisimVerdict {
    bool equivalent;
    int depth;
    std::optional<BisimWitness> witness;
};

/// Validates that s1 and s2 have equal measures against every block of the
/// partition for every trace of length <= depth, the empty trace included.
/// The witness is the least (shortest trace, then lexicographic, then lowest
/// block number) counterexample.
BisimVerdict bisim_check_bounded(const UltrasGraph& g, StateId s1, StateId s2,
                                 const Partition& partition, int depth);

std::string format_verdict(const TraceVerdict& v);
std::string format_verdict(const BisimVerdict& v, const UltrasGraph& g, const Partition& partition);

}  // namespace ultras

#endif
