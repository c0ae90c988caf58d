#include "ultras/semantics.hpp"

#include <algorithm>

#include "ultras/errors.hpp"

namespace ultras {

const TermDist& SemanticsEngine::next(TermPtr term, const std::string& action) const {
    auto key = std::make_pair(term, action);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    TermDist d = derive(term, action);
    return memo_.emplace(std::move(key), std::move(d)).first->second;
}

TermDist SemanticsEngine::derive(TermPtr term, const std::string& action) const {
    TermDist empty(kind_);
    switch (term->kind()) {
        case TermKind::stop:
            return empty;

        case TermKind::constant: {
            TermPtr body = env_.lookup(term->name());
            if (body == nullptr) return empty;  // the inert observer success state
            return next(body, action);
        }

        case TermKind::prefix: {
            if (term->action() != action) return empty;
            TermDist d(kind_);
            d.add(term->cont(), Rational(1));
            return d;
        }

        case TermKind::rated_prefix: {
            if (term->action() != action) return empty;
            TermDist d(kind_);
            d.add(term->cont(), term->rate());
            return d;
        }

        case TermKind::choice:
            return dist_join(next(term->left(), action), next(term->right(), action));

        case TermKind::pchoice:
            return mix(term->prob(), next(term->left(), action), next(term->right(), action));

        case TermKind::par:
        case TermKind::ppar:
            if (term->in_sync(action)) return derive_coop(term, action);
            return derive_interleave(term, action);
    }
    throw ContractViolation("derive: bad TermKind");
}

// Cooperation on a synchronized action: pair up the two target
// distributions. CSP conjoins truth values; PCSP multiplies probabilities,
// which keeps the decorated operator's mass at 0 or 1; PEPA multiplies and
// then rescales so the total is the apparent rate min(sum1, sum2).
TermDist SemanticsEngine::derive_coop(TermPtr term, const std::string& action) const {
    const TermDist& d1 = next(term->left(), action);
    const TermDist& d2 = next(term->right(), action);
    TermDist out(kind_);
    TermPool& pool = env_.pool();
    for (const auto& [q1, v1] : d1.entries()) {
        for (const auto& [q2, v2] : d2.entries()) {
            TermPtr target = term->kind() == TermKind::par
                                 ? pool.par(term->sync(), q1, q2)
                                 : pool.ppar(term->sync(), term->prob(), q1, q2);
            out.add(target, raw_product(kind_, v1, v2));
        }
    }
    if (env_.calculus() == Calculus::pepa) {
        Rational m1 = dist_mass(d1).value;
        Rational m2 = dist_mass(d2).value;
        out = dist_scale(std::min(m1, m2), Rational(m1 * m2), out);
    }
    return out;
}

// Independent moves on an unsynchronized action: each side steps on its own
// with the other component frozen in place. CSP and PEPA join the two
// halves; PCSP mixes them with the operator's probability annotation.
TermDist SemanticsEngine::derive_interleave(TermPtr term, const std::string& action) const {
    const TermDist& d1 = next(term->left(), action);
    const TermDist& d2 = next(term->right(), action);
    TermDist left_moves = shift(d1, term, true);
    TermDist right_moves = shift(d2, term, false);
    if (term->kind() == TermKind::ppar)
        return mix(term->prob(), left_moves, right_moves);
    return dist_join(left_moves, right_moves);
}

// Re-wraps each target of d as a parallel term with the untouched component
// of parent on the other side.
TermDist SemanticsEngine::shift(const TermDist& d, TermPtr parent, bool moved_left) const {
    TermDist out(kind_);
    TermPool& pool = env_.pool();
    for (const auto& [q, v] : d.entries()) {
        TermPtr l = moved_left ? q : parent->left();
        TermPtr r = moved_left ? parent->right() : q;
        TermPtr target = parent->kind() == TermKind::par
                             ? pool.par(parent->sync(), l, r)
                             : pool.ppar(parent->sync(), parent->prob(), l, r);
        out.add(target, v);
    }
    return out;
}

// Probabilistic blend of two alternatives. Each side's weight is its
// annotation times its total mass, renormalized; a side that cannot move
// contributes no weight, and if neither can the result is empty.
TermDist SemanticsEngine::mix(const Rational& p, const TermDist& d1, const TermDist& d2) const {
    Rational w1 = p * dist_mass(d1).value;
    Rational w2 = (1 - p) * dist_mass(d2).value;
    Rational den = w1 + w2;
    return dist_join(dist_scale(w1, den, d1), dist_scale(w2, den, d2));
}

namespace {

const DefinitionEnv& expect_calculus(const DefinitionEnv& env, Calculus c, const char* fn) {
    if (env.calculus() != c)
        throw ContractViolation(std::string(fn) + ": environment is a " +
                                to_string(env.calculus()) + " model, not " + to_string(c));
    return env;
}

}  // namespace

TermDist next_csp(TermPtr p, const std::string& action, const DefinitionEnv& env) {
    return SemanticsEngine(expect_calculus(env, Calculus::csp, "next_csp")).next(p, action);
}

TermDist next_pcsp(TermPtr p, const std::string& action, const DefinitionEnv& env) {
    return SemanticsEngine(expect_calculus(env, Calculus::pcsp, "next_pcsp")).next(p, action);
}

TermDist next_pepa(TermPtr p, const std::string& action, const DefinitionEnv& env) {
    return SemanticsEngine(expect_calculus(env, Calculus::pepa, "next_pepa")).next(p, action);
}

}  // namespace ultras
