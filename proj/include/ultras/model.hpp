#ifndef ULTRAS_MODEL_HPP
#define ULTRAS_MODEL_HPP

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ultras/domain.hpp"
#include "ultras/term.hpp"

namespace ultras {

enum class Calculus { csp, pcsp, pepa };

const char* to_string(Calculus c);

/// The reachability domain each calculus maps onto.
DomainKind domain_kind(Calculus c);

/// Reserved constant naming the success state of test observers. It may be
/// referenced (never defined) in observer files and is inert: no rule fires
/// from it.
inline constexpr std::string_view omega_name = "OMEGA";

/// Whether a file describes a system model or a test observer.
enum class ModelRole { system, observer };

struct Definition {
    std::string name;
    TermPtr body;
};

/// A parsed model: calculus, constant definitions, initial term, and the
/// action alphabet in order of first appearance in the source. The
/// environment owns the term pool; standalone terms parsed against it share
/// the pool, so pointer equality keeps meaning structural equality.
class DefinitionEnv {
public:
    Calculus calculus() const { return calculus_; }
    DomainKind kind() const { return domain_kind(calculus_); }
    ModelRole role() const { return role_; }

    const std::vector<Definition>& definitions() const { return definitions_; }

    /// Body of the named constant, or nullptr when undefined (only the
    /// observer success constant can be referenced without a definition).
    TermPtr lookup(std::string_view name) const;

    TermPtr init() const { return init_; }

    /// Actions in order of first appearance, synchronization sets included.
    const std::vector<std::string>& alphabet() const { return alphabet_; }

    TermPool& pool() const { return *pool_; }

private:
    friend class Parser;
    explicit DefinitionEnv(Calculus c, ModelRole role)
        : calculus_(c), role_(role), pool_(std::make_shared<TermPool>()) {}

    void note_action(const std::string& name);

    Calculus calculus_;
    ModelRole role_;
    std::shared_ptr<TermPool> pool_;
    std::vector<Definition> definitions_;
    std::map<std::string, std::size_t, std::less<>> definition_index_;
    TermPtr init_ = nullptr;
    std::vector<std::string> alphabet_;
};

/// Parses a complete model file. Grammar, per line: a `calculus` header,
/// `const NAME = TERM` definitions, exactly one `init TERM`; `#` starts a
/// comment. Checks: operators must match the calculus, constants must be
/// defined (except OMEGA in observers) and guarded by at least one prefix in
/// every definition body, probabilities lie in [0,1], rates are positive.
DefinitionEnv parse_model(std::string_view text, ModelRole role = ModelRole::system);

/// Parses one standalone term in the environment's calculus, validating its
/// constant references against env and appending any new actions to the
/// alphabet. Used for terms given on the command line.
TermPtr parse_term(DefinitionEnv& env, std::string_view text);

/// The action alphabet of the model as recorded while parsing.
std::vector<std::string> alphabet_of(const DefinitionEnv& env);

}  // namespace ultras

#endif
