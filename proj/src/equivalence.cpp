#include "ultras/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "ultras/errors.hpp"

namespace ultras {

std::vector<bool> full_state_set(const UltrasGraph& g) {
    return std::vector<bool>(g.state_count(), true);
}

std::vector<bool> state_set(const UltrasGraph& g, std::span<const StateId> members) {
    std::vector<bool> mask(g.state_count(), false);
    for (StateId s : members) {
        if (s >= g.state_count()) throw ContractViolation("state_set: state id out of range");
        mask[s] = true;
    }
    return mask;
}

DomainValue measure(const UltrasGraph& g, StateId s, std::span<const std::string> trace,
                    const std::vector<bool>& target) {
    if (s >= g.state_count()) throw ContractViolation("measure: state id out of range");
    if (target.size() != g.state_count())
        throw ContractViolation("measure: target mask size mismatch");
    std::vector<std::size_t> actions;
    actions.reserve(trace.size());
    for (const std::string& a : trace) {
        auto i = g.action_index(a);
        if (!i) throw UltrasError("unknown action '" + a + "'");
        actions.push_back(*i);
    }
    // memo[i][state] = measure of the trace suffix starting at position i.
    std::vector<std::vector<std::optional<Rational>>> memo(
        trace.size() + 1, std::vector<std::optional<Rational>>(g.state_count()));
    auto rec = [&](auto&& self, StateId state, std::size_t i) -> const Rational& {
        auto& slot = memo[i][state];
        if (slot) return *slot;
        if (i == actions.size()) {
            slot = Rational(target[state] ? 1 : 0);
            return *slot;
        }
        Rational acc(0);
        for (const auto& [t, v] : g.dist(state, actions[i]).entries())
            acc = raw_join(g.kind(), acc, raw_product(g.kind(), v, self(self, t, i + 1)));
        slot = std::move(acc);
        return *slot;
    };
    return DomainValue{g.kind(), rec(rec, s, 0)};
}

namespace {

// Weighted state vector reached by some trace: state -> aggregated value.
using SparseVec = std::map<StateId, Rational>;

SparseVec step(const UltrasGraph& g, const SparseVec& v, std::size_t action) {
    SparseVec out;
    for (const auto& [s, val] : v) {
        for (const auto& [t, d] : g.dist(s, action).entries()) {
            Rational e = raw_product(g.kind(), val, d);
            auto [it, fresh] = out.try_emplace(t, e);
            if (!fresh) it->second = raw_join(g.kind(), it->second, e);
        }
    }
    return out;
}

Rational mass_over(DomainKind kind, const SparseVec& v, const std::vector<bool>* target) {
    Rational acc(0);
    for (const auto& [s, val] : v)
        if (target == nullptr || (*target)[s]) acc = raw_join(kind, acc, val);
    return acc;
}

std::vector<std::string> trace_names(const UltrasGraph& g, const std::vector<std::size_t>& trace) {
    std::vector<std::string> names;
    names.reserve(trace.size());
    for (std::size_t a : trace) names.push_back(g.alphabet()[a]);
    return names;
}

struct SearchNode {
    std::vector<std::size_t> trace;
    SparseVec v1;
    SparseVec v2;
};

void check_pair(const UltrasGraph& g, StateId s1, StateId s2, int depth) {
    if (s1 >= g.state_count() || s2 >= g.state_count())
        throw ContractViolation("state id out of range");
    if (depth < 0) throw ContractViolation("depth must be non-negative");
}

}  // namespace

std::optional<TraceWitness> find_distinguishing_trace(const UltrasGraph& g, StateId s1, StateId s2,
                                                      const std::vector<bool>& target, int depth) {
    check_pair(g, s1, s2, depth);
    if (target.size() != g.state_count())
        throw ContractViolation("target mask size mismatch");
    DomainKind kind = g.kind();
    SearchNode root{{}, {{s1, Rational(1)}}, {{s2, Rational(1)}}};
    {
        Rational m1 = mass_over(kind, root.v1, &target);
        Rational m2 = mass_over(kind, root.v2, &target);
        if (m1 != m2)
            return TraceWitness{{}, DomainValue{kind, m1}, DomainValue{kind, m2}};
    }
    std::deque<SearchNode> queue;
    queue.push_back(std::move(root));
    while (!queue.empty()) {
        SearchNode node = std::move(queue.front());
        queue.pop_front();
        if (node.trace.size() == static_cast<std::size_t>(depth)) continue;
        for (std::size_t a = 0; a < g.alphabet().size(); ++a) {
            SparseVec w1 = step(g, node.v1, a);
            SparseVec w2 = step(g, node.v2, a);
            Rational m1 = mass_over(kind, w1, &target);
            Rational m2 = mass_over(kind, w2, &target);
            if (m1 != m2) {
                auto trace = node.trace;
                trace.push_back(a);
                return TraceWitness{trace_names(g, trace), DomainValue{kind, m1},
                                    DomainValue{kind, m2}};
            }
            if (w1 == w2) continue;  // futures coincide, nothing deeper can differ
            auto trace = node.trace;
            trace.push_back(a);
            queue.push_back(SearchNode{std::move(trace), std::move(w1), std::move(w2)});
        }
    }
    return std::nullopt;
}

TraceVerdict trace_equiv(const UltrasGraph& g, StateId s1, StateId s2, int depth) {
    auto witness = find_distinguishing_trace(g, s1, s2, full_state_set(g), depth);
    return TraceVerdict{!witness.has_value(), depth, std::move(witness)};
}

Partition::Partition(std::vector<std::uint32_t> block_of) : block_of_(std::move(block_of)) {
    // Renumber blocks by their smallest member so callers see a canonical id.
    std::map<std::uint32_t, std::uint32_t> renumber;
    for (std::uint32_t raw : block_of_) {
        if (!renumber.count(raw)) {
            std::uint32_t next = static_cast<std::uint32_t>(renumber.size());
            renumber.emplace(raw, next);
        }
    }
    blocks_.resize(renumber.size());
    for (StateId s = 0; s < block_of_.size(); ++s) {
        block_of_[s] = renumber.at(block_of_[s]);
        blocks_[block_of_[s]].push_back(s);
    }
}

Partition bisim_refine(const UltrasGraph& g) {
    std::size_t n = g.state_count();
    std::vector<std::uint32_t> block_of(n, 0);
    if (n == 0) return Partition(std::move(block_of));
    std::size_t block_count = 1;
    while (true) {
        // Signature of a state: for every action, the joined value of
        // reaching each current block (bottoms omitted).
        using Signature = std::vector<std::vector<std::pair<std::uint32_t, Rational>>>;
        std::map<std::pair<std::uint32_t, Signature>, std::vector<StateId>> groups;
        for (StateId s = 0; s < n; ++s) {
            Signature sig;
            sig.reserve(g.alphabet().size());
            for (std::size_t a = 0; a < g.alphabet().size(); ++a) {
                std::map<std::uint32_t, Rational> per_block;
                for (const auto& [t, v] : g.dist(s, a).entries()) {
                    auto [it, fresh] = per_block.try_emplace(block_of[t], v);
                    if (!fresh) it->second = raw_join(g.kind(), it->second, v);
                }
                sig.emplace_back(per_block.begin(), per_block.end());
            }
            groups[{block_of[s], std::move(sig)}].push_back(s);
        }
        if (groups.size() == block_count) break;
        block_count = groups.size();
        std::uint32_t next = 0;
        for (const auto& [key, members] : groups) {
            for (StateId s : members) block_of[s] = next;
            ++next;
        }
    }
    return Partition(std::move(block_of));
}

namespace {

// Per-block aggregation of a weighted state vector.
std::map<std::uint32_t, Rational> block_masses(DomainKind kind, const SparseVec& v,
                                               const Partition& partition) {
    std::map<std::uint32_t, Rational> out;
    for (const auto& [s, val] : v) {
        auto [it, fresh] = out.try_emplace(partition.block_of(s), val);
        if (!fresh) it->second = raw_join(kind, it->second, val);
    }
    return out;
}

// First block (lowest id) whose aggregated value differs; absent keys read
// as bottom.
std::optional<std::tuple<std::uint32_t, Rational, Rational>> first_block_difference(
    const std::map<std::uint32_t, Rational>& a, const std::map<std::uint32_t, Rational>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            if (ia->second != 0) return {{ia->first, ia->second, Rational(0)}};
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            if (ib->second != 0) return {{ib->first, Rational(0), ib->second}};
            ++ib;
        } else {
            if (ia->second != ib->second) return {{ia->first, ia->second, ib->second}};
            ++ia;
            ++ib;
        }
    }
    return std::nullopt;
}

}  // namespace

BisimVerdict bisim_check_bounded(const UltrasGraph& g, StateId s1, StateId s2,
                                 const Partition& partition, int depth) {
    check_pair(g, s1, s2, depth);
    DomainKind kind = g.kind();
    SearchNode root{{}, {{s1, Rational(1)}}, {{s2, Rational(1)}}};
    {
        auto c1 = block_masses(kind, root.v1, partition);
        auto c2 = block_masses(kind, root.v2, partition);
        if (auto diff = first_block_difference(c1, c2)) {
            auto [block, m1, m2] = *diff;
            return BisimVerdict{false, depth,
                                BisimWitness{{}, block, DomainValue{kind, m1}, DomainValue{kind, m2}}};
        }
    }
    std::deque<SearchNode> queue;
    queue.push_back(std::move(root));
    while (!queue.empty()) {
        SearchNode node = std::move(queue.front());
        queue.pop_front();
        if (node.trace.size() == static_cast<std::size_t>(depth)) continue;
        for (std::size_t a = 0; a < g.alphabet().size(); ++a) {
            SparseVec w1 = step(g, node.v1, a);
            SparseVec w2 = step(g, node.v2, a);
            auto c1 = block_masses(kind, w1, partition);
            auto c2 = block_masses(kind, w2, partition);
            if (auto diff = first_block_difference(c1, c2)) {
                auto trace = node.trace;
                trace.push_back(a);
                auto [block, m1, m2] = *diff;
                return BisimVerdict{false, depth,
                                    BisimWitness{trace_names(g, trace), block,
                                                 DomainValue{kind, m1}, DomainValue{kind, m2}}};
            }
            if (w1 == w2) continue;
            auto trace = node.trace;
            trace.push_back(a);
            queue.push_back(SearchNode{std::move(trace), std::move(w1), std::move(w2)});
        }
    }
    return BisimVerdict{true, depth, std::nullopt};
}

namespace {

std::string joined_trace(const std::vector<std::string>& trace) {
    std::string out;
    for (const std::string& a : trace) out += a;
    return out;
}

}  // namespace

std::string format_verdict(const TraceVerdict& v) {
    if (v.equivalent) return "EQUIVALENT depth=" + std::to_string(v.depth);
    const TraceWitness& w = *v.witness;
    return "DISTINGUISHED trace=" + joined_trace(w.trace) + " lhs=" + to_string(w.lhs) +
           " rhs=" + to_string(w.rhs);
}

std::string format_verdict(const BisimVerdict& v, const UltrasGraph& g,
                           const Partition& partition) {
    if (v.equivalent) return "EQUIVALENT depth=" + std::to_string(v.depth);
    const BisimWitness& w = *v.witness;
    std::string members;
    for (StateId s : partition.blocks()[w.block]) {
        if (!members.empty()) members += ", ";
        members += g.label(s);
    }
    return "DISTINGUISHED trace=" + joined_trace(w.trace) + " class={" + members + "}" +
           " lhs=" + to_string(w.lhs) + " rhs=" + to_string(w.rhs);
}

}  // namespace ultras
