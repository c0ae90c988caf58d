#include "ultras/model.hpp"

#include <algorithm>

#include "ultras/errors.hpp"

namespace ultras {

const char* to_string(Calculus c) {
    switch (c) {
        case Calculus::csp: return "csp";
        case Calculus::pcsp: return "pcsp";
        case Calculus::pepa: return "pepa";
    }
    throw ContractViolation("to_string: bad Calculus");
}

DomainKind domain_kind(Calculus c) {
    switch (c) {
        case Calculus::csp: return DomainKind::boolean;
        case Calculus::pcsp: return DomainKind::probability;
        case Calculus::pepa: return DomainKind::rate;
    }
    throw ContractViolation("domain_kind: bad Calculus");
}

TermPtr DefinitionEnv::lookup(std::string_view name) const {
    auto it = definition_index_.find(name);
    if (it == definition_index_.end()) return nullptr;
    return definitions_[it->second].body;
}

void DefinitionEnv::note_action(const std::string& name) {
    if (std::find(alphabet_.begin(), alphabet_.end(), name) == alphabet_.end())
        alphabet_.push_back(name);
}

std::vector<std::string> alphabet_of(const DefinitionEnv& env) { return env.alphabet(); }

}  // namespace ultras
