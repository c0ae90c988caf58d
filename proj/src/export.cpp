#include "ultras/export.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ultras {

namespace {

std::string escape_label(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string value_text(DomainKind kind, const Rational& v) {
    if (kind == DomainKind::boolean) return "1";
    return to_string(v);
}

// Action indices in alphabetical order of the action names, so exports do
// not depend on the order the alphabet was declared in.
std::vector<std::size_t> sorted_actions(const UltrasGraph& g) {
    std::vector<std::size_t> idx(g.alphabet().size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return g.alphabet()[a] < g.alphabet()[b]; });
    return idx;
}

}  // namespace

std::string export_dot(const UltrasGraph& g) {
    std::ostringstream out;
    out << "digraph ultras {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=box];\n";
    for (StateId s = 0; s < g.state_count(); ++s)
        out << "  " << s << " [label=\"" << escape_label(g.label(s)) << "\"];\n";
    auto actions = sorted_actions(g);
    for (StateId s = 0; s < g.state_count(); ++s) {
        for (std::size_t a : actions) {
            for (const auto& [t, v] : g.dist(s, a).entries()) {
                out << "  " << s << " -> " << t << " [label=\"" << g.alphabet()[a];
                if (g.kind() != DomainKind::boolean) out << "/" << to_string(v);
                out << "\"];\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

std::string export_tra(const UltrasGraph& g) {
    std::ostringstream out;
    out << "STATES " << g.state_count() << "\n";
    out << "TRANSITIONS " << g.transition_count() << "\n";
    auto actions = sorted_actions(g);
    for (StateId s = 0; s < g.state_count(); ++s) {
        for (std::size_t a : actions) {
            for (const auto& [t, v] : g.dist(s, a).entries()) {
                out << s << " " << g.alphabet()[a] << " " << t << " "
                    << value_text(g.kind(), v) << "\n";
            }
        }
    }
    return out.str();
}

}  // namespace ultras
