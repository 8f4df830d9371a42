#pragma once

/// \file
/// Plain-text graph files.
///
///   # comments allowed anywhere
///   model <profile name>
///   fiber circle <R> | sphere <R>
///   resolution <n> | <n_colatitude> <n_azimuth>
///   label <text>
///   <coordinates...> <psi>        one line per node, grid order
///
/// Values are written with 17 significant digits so a round trip is exact.

#include <iosfwd>
#include <string>
#include <vector>

#include "warpiso/fiber.hpp"
#include "warpiso/hypersurface.hpp"
#include "warpiso/quadrature.hpp"

namespace warpiso {

struct GraphFile {
  std::string model;
  FiberSpec fiber;
  GridResolution resolution;
  std::string label;
  std::vector<double> psi;
};

void write_graph(std::ostream& out, const StarGraph& graph);
void write_graph_file(const std::string& path, const StarGraph& graph);

/// Throws PreconditionError with the line number on malformed input, and
/// when node coordinates disagree with the declared grid.
GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);

/// Builds the sampled StarGraph described by a file.
StarGraph load_star_graph(const std::string& path);

}  // namespace warpiso
