#include "warpiso/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "warpiso/errors.hpp"
#include "warpiso/profile_catalog.hpp"

namespace warpiso {

void write_graph(std::ostream& out, const StarGraph& graph) {
  const auto& fiber = graph.space().fiber();
  const auto& grid = graph.grid();
  out << std::setprecision(17);
  out << "# warpiso graph\n";
  out << "model " << graph.space().profile().label() << "\n";
  out << "fiber " << (fiber.is_circle() ? "circle " : "sphere ") << fiber.radius() << "\n";
  out << "resolution " << grid.resolution().primary;
  if (grid.dimension() == 2) out << " " << grid.resolution().secondary;
  out << "\nlabel " << graph.label() << "\n";
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto y = grid.coords(i);
    out << y[0];
    if (grid.dimension() == 2) out << " " << y[1];
    out << " " << graph.psi(i) << "\n";
  }
}

void write_graph_file(const std::string& path, const StarGraph& graph) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write graph file '" + path + "'");
  write_graph(out, graph);
}

GraphFile read_graph(std::istream& in) {
  std::string model, label;
  std::optional<FiberSpec> fiber;
  std::optional<GridResolution> resolution;
  std::optional<FiberGrid> grid;
  std::vector<double> psi;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw PreconditionError("graph file line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (std::isalpha(static_cast<unsigned char>(line[first]))) {
      std::string key;
      ls >> key;
      if (key == "model") {
        ls >> model;
      } else if (key == "fiber") {
        std::string kind;
        double R = 0.0;
        if (!(ls >> kind >> R)) fail("expected 'fiber circle|sphere <R>'");
        if (kind == "circle") fiber = FiberSpec::circle(R);
        else if (kind == "sphere") fiber = FiberSpec::sphere(R);
        else fail("unknown fiber '" + kind + "'");
      } else if (key == "resolution") {
        GridResolution r;
        if (!(ls >> r.primary)) fail("expected resolution");
        ls >> r.secondary;
        resolution = r;
      } else if (key == "label") {
        std::getline(ls >> std::ws, label);
      } else {
        fail("unknown header key '" + key + "'");
      }
      continue;
    }
    if (!fiber || !resolution || model.empty()) fail("node line before model/fiber/resolution header");
    if (!grid) {
      grid = fiber_grid(*fiber, *resolution);
      psi.reserve(grid->size());
    }
    const std::size_t i = psi.size();
    if (i >= grid->size()) fail("more node lines than the resolution allows");
    std::array<double, 2> y{};
    double value = 0.0;
    if (!(ls >> y[0])) fail("malformed node line");
    if (grid->dimension() == 2 && !(ls >> y[1])) fail("malformed node line");
    if (!(ls >> value)) fail("malformed node line");
    const auto expect = grid->coords(i);
    if (std::abs(y[0] - expect[0]) > 1e-12 || std::abs(y[1] - expect[1]) > 1e-12)
      fail("node coordinates do not match the declared grid");
    psi.push_back(value);
  }
  if (!grid || psi.size() != grid->size())
    throw PreconditionError("graph file: expected " + std::to_string(grid ? grid->size() : 0) +
                            " node lines, found " + std::to_string(psi.size()));
  return {model, *fiber, *resolution, label, std::move(psi)};
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

StarGraph load_star_graph(const std::string& path) {
  GraphFile f = read_graph_file(path);
  WarpedSpace space(make_profile(f.model), f.fiber);
  const FiberGrid grid = fiber_grid(f.fiber, f.resolution);
  return build_star_graph(space, f.label.empty() ? path : f.label, std::move(f.psi), grid);
}

}  // namespace warpiso
