#pragma once

#include <iosfwd>
#include <string>

#include "clearx/trace.hpp"
#include "clearx/types.hpp"

namespace clearx {

// Instance files are JSON objects:
//   {
//     "agents": 3,
//     "goods": 2,
//     "initial": [[1,0],[0,1],[1,1]],   // 0/1 rows, one per agent
//     "beta": [[0,0.1,0.2],[0.1,0,0.3],[0.2,0.3,0]]
//   }
// beta must be symmetric with zero diagonal and off-diagonal values in (0,1).
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& inst);

// Stable, human-readable run log: one block per round with the proposal
// list and decision bits, then the final allocation and utilities.
std::string trace_to_text(const Instance& inst, const Trace& trace);

// Same content as a JSON document with fixed field order.
std::string trace_to_json(const Instance& inst, const Trace& trace);

}  // namespace clearx
