#ifndef ULTRAS_SEMANTICS_HPP
#define ULTRAS_SEMANTICS_HPP

#include <map>
#include <string>
#include <utility>

#include "ultras/domain.hpp"
#include "ultras/model.hpp"
#include "ultras/term.hpp"

namespace ultras {

/// Reachability distribution over target terms, iterated in canonical text
/// order.
using TermDist = Distribution<TermPtr, TermLess>;

/// Rule engine: maps one (term, action) pair to its target distribution in
/// the environment's calculus. Every pair has exactly one distribution; a
/// term that cannot perform the action gets the empty one. Results are
/// memoized per engine instance, so repeated queries are cheap.
class SemanticsEngine {
public:
    explicit SemanticsEngine(const DefinitionEnv& env)
        : env_(env), kind_(env.kind()) {}

    const TermDist& next(TermPtr term, const std::string& action) const;

    const DefinitionEnv& env() const { return env_; }

private:
    TermDist derive(TermPtr term, const std::string& action) const;
    TermDist derive_coop(TermPtr term, const std::string& action) const;
    TermDist derive_interleave(TermPtr term, const std::string& action) const;
    TermDist shift(const TermDist& d, TermPtr parent, bool moved_left) const;
    TermDist mix(const Rational& p, const TermDist& d1, const TermDist& d2) const;

    const DefinitionEnv& env_;
    DomainKind kind_;
    mutable std::map<std::pair<TermPtr, std::string>, TermDist> memo_;
};

/// One-shot wrappers named after the calculus they serve; each insists the
/// environment really is of that calculus.
TermDist next_csp(TermPtr p, const std::string& action, const DefinitionEnv& env);
TermDist next_pcsp(TermPtr p, const std::string& action, const DefinitionEnv& env);
TermDist next_pepa(TermPtr p, const std::string& action, const DefinitionEnv& env);

}  // namespace ultras

#endif
