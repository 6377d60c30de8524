#ifndef TANGO_ROUTE_IO_HPP
#define TANGO_ROUTE_IO_HPP

#include <string>

#include "tango/search.hpp"

namespace tango {

const char* to_string(Termination t);
// Throws std::invalid_argument for unknown names.
Termination parse_termination(const std::string& name);

// JSON document with the route (null when unsolved), search counters and the
// configuration that produced it.
std::string route_to_json(const SearchResult& result, const SearchConfig& config,
                          const Molecule& target, const Molecule& sm);

// Graphviz digraph; molecules are boxes, reactions points.
std::string route_to_dot(const Route& route);

}  // namespace tango

#endif  // TANGO_ROUTE_IO_HPP
