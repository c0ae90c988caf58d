#ifndef ULTRAS_EXPORT_HPP
#define ULTRAS_EXPORT_HPP

#include <string>

#include "ultras/graph.hpp"

namespace ultras {

/// Graphviz rendering: one node per state (labeled with the state's term
/// text), one edge per non-bottom transition. Boolean edges carry just the
/// action name; quantitative ones append "/value".
std::string export_dot(const UltrasGraph& g);

/// Plain transition list:
///   STATES n
///   TRANSITIONS m
///   src action dst value
/// Lines are sorted by (src, action, dst); Boolean truth prints as 1.
std::string export_tra(const UltrasGraph& g);

}  // namespace ultras

#endif
