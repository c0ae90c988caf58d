#ifndef ULTRAS_TERM_HPP
#define ULTRAS_TERM_HPP

#include <array>
#include <deque>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ultras/rational.hpp"

namespace ultras {

enum class TermKind {
    stop,          // inert process
    prefix,        // a.P          (CSP, PCSP)
    rated_prefix,  // (a,r).P      (PEPA)
    choice,        // P + Q        (CSP, PEPA)
    pchoice,       // P +(p) Q     (PCSP)
    par,           // P |[L]| Q    (CSP, PEPA)
    ppar,          // P |[L]|(p) Q (PCSP)
    constant,      // named behavior
};

class Term;
using TermPtr = const Term*;

/// Immutable process term. Terms are built through a TermPool, which interns
/// them by canonical text: structurally equal terms from one pool are the
/// same object, so pointer equality is structural equality.
class Term {
public:
    TermKind kind() const { return kind_; }

    /// Canonical concrete syntax with minimal parentheses. Doubles as the
    /// interning key and as a deterministic total order on terms.
    const std::string& text() const { return text_; }

    const std::string& action() const { return name_; }  // prefix, rated_prefix
    const std::string& name() const { return name_; }    // constant
    const Rational& rate() const { return value_; }      // rated_prefix
    const Rational& prob() const { return value_; }      // pchoice, ppar

    TermPtr cont() const { return kids_[0]; }   // prefix, rated_prefix
    TermPtr left() const { return kids_[0]; }   // binary operators
    TermPtr right() const { return kids_[1]; }

    /// Synchronization set, sorted and duplicate-free. par and ppar only.
    const std::vector<std::string>& sync() const { return sync_; }
    bool in_sync(std::string_view a) const;

private:
    friend class TermPool;
    Term() = default;

    TermKind kind_ = TermKind::stop;
    std::string name_;
    Rational value_;
    std::vector<std::string> sync_;
    std::array<TermPtr, 2> kids_{nullptr, nullptr};
    std::string text_;
};

/// Orders terms by canonical text; gives term-keyed containers a
/// deterministic iteration order.
struct TermLess {
    bool operator()(TermPtr a, TermPtr b) const { return a->text() < b->text(); }
};

class TermPool {
public:
    TermPool() = default;
    TermPool(const TermPool&) = delete;
    TermPool& operator=(const TermPool&) = delete;

    TermPtr stop();
    TermPtr constant(std::string name);
    TermPtr prefix(std::string action, TermPtr cont);
    /// rate must be strictly positive.
    TermPtr rated_prefix(std::string action, Rational rate, TermPtr cont);
    TermPtr choice(TermPtr l, TermPtr r);
    /// p must lie in [0,1].
    TermPtr pchoice(Rational p, TermPtr l, TermPtr r);
    /// The sync set is normalized (sorted, duplicates removed).
    TermPtr par(std::vector<std::string> sync, TermPtr l, TermPtr r);
    TermPtr ppar(std::vector<std::string> sync, Rational p, TermPtr l, TermPtr r);

    std::size_t size() const { return terms_.size(); }

private:
    TermPtr intern(std::unique_ptr<Term> t);

    std::unordered_map<std::string_view, TermPtr> index_;
    std::deque<std::unique_ptr<Term>> terms_;
};

}  // namespace ultras

#endif
