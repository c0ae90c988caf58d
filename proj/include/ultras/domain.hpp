#ifndef ULTRAS_DOMAIN_HPP
#define ULTRAS_DOMAIN_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "ultras/errors.hpp"
#include "ultras/rational.hpp"

namespace ultras {

/// Reachability domain of a labeled transition system: Boolean presence,
/// exact probabilities in [0,1], or exponential rates in [0,inf).
enum class DomainKind { boolean, probability, rate };

const char* to_string(DomainKind kind);

inline bool is_numeric(DomainKind kind) { return kind != DomainKind::boolean; }

/// One element of a reachability domain. The bottom element (false / 0)
/// means "not reachable". Boolean truth is stored as the rational 1, so all
/// three domains share one representation.
struct DomainValue {
    DomainKind kind;
    Rational value;

    bool is_bottom() const { return value == 0; }

    static DomainValue bottom(DomainKind k) { return {k, Rational(0)}; }
    /// Truth for the Boolean domain, 1 for the numeric ones.
    static DomainValue unit(DomainKind k) { return {k, Rational(1)}; }

    friend bool operator==(const DomainValue&, const DomainValue&) = default;
};

/// Throws ContractViolation unless v lies in the range of the kind:
/// {0,1} for Boolean, [0,1] for probability, [0,inf) for rate.
void check_value(DomainKind kind, const Rational& v);

/// Aggregation across alternatives: disjunction / addition / addition.
Rational raw_join(DomainKind kind, const Rational& a, const Rational& b);

/// Sequencing along a path: conjunction / multiplication / multiplication.
Rational raw_product(DomainKind kind, const Rational& a, const Rational& b);

DomainValue value_join(const DomainValue& a, const DomainValue& b);
DomainValue value_product(const DomainValue& a, const DomainValue& b);

/// The order whose least element is bottom: false before true, numeric <=.
bool value_leq(const DomainValue& a, const DomainValue& b);

/// "true"/"false" for Boolean values, exact rational text otherwise.
std::string to_string(const DomainValue& v);

/// Finitely supported reachability distribution over keys of type Key. The
/// bottom element never appears in the support: an absent key reads as
/// bottom, and joining in a zero value is a no-op.
template <typename Key, typename Less = std::less<Key>>
class Distribution {
public:
    using Map = std::map<Key, Rational, Less>;

    explicit Distribution(DomainKind kind) : kind_(kind) {}

    DomainKind kind() const { return kind_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const Map& entries() const { return entries_; }

    Rational value(const Key& k) const {
        auto it = entries_.find(k);
        return it == entries_.end() ? Rational(0) : it->second;
    }

    /// Joins v into the entry for k: disjunction for Boolean, addition for
    /// the numeric kinds. Values outside the kind's range are rejected.
    void add(const Key& k, const Rational& v) {
        check_value(kind_, v);
        if (v == 0) return;
        auto it = entries_.find(k);
        if (it == entries_.end()) {
            entries_.emplace(k, v);
        } else {
            Rational joined = raw_join(kind_, it->second, v);
            check_value(kind_, joined);
            it->second = std::move(joined);
        }
    }

    friend bool operator==(const Distribution& a, const Distribution& b) {
        return a.kind_ == b.kind_ && a.entries_ == b.entries_;
    }

private:
    DomainKind kind_;
    Map entries_;
};

/// Pointwise join of two distributions of the same kind.
template <typename Key, typename Less>
Distribution<Key, Less> dist_join(const Distribution<Key, Less>& a,
                                  const Distribution<Key, Less>& b) {
    if (a.kind() != b.kind()) throw ContractViolation("dist_join: domain kind mismatch");
    Distribution<Key, Less> out = a;
    for (const auto& [k, v] : b.entries()) out.add(k, v);
    return out;
}

/// Scales every value by x/y, with the convention that y = 0 yields the
/// empty distribution. Defined for the numeric kinds only.
template <typename Key, typename Less>
Distribution<Key, Less> dist_scale(const Rational& x, const Rational& y,
                                   const Distribution<Key, Less>& d) {
    if (!is_numeric(d.kind())) throw ContractViolation("dist_scale: numeric domain kind required");
    if (x < 0 || y < 0) throw ContractViolation("dist_scale: negative factor");
    Distribution<Key, Less> out(d.kind());
    if (y == 0) return out;
    Rational f = x / y;
    for (const auto& [k, v] : d.entries()) out.add(k, Rational(v * f));
    return out;
}

/// Total join of all values in the support: true iff nonempty for Boolean,
/// the sum of the values otherwise. Bottom for the empty distribution.
template <typename Key, typename Less>
DomainValue dist_mass(const Distribution<Key, Less>& d) {
    Rational acc(0);
    for (const auto& [k, v] : d.entries()) acc = raw_join(d.kind(), acc, v);
    return DomainValue{d.kind(), std::move(acc)};
}

}  // namespace ultras

#endif
