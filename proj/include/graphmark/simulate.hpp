#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "graphmark/graph.hpp"
#include "graphmark/pattern.hpp"

namespace graphmark {

/// Homogeneous Poisson process with intensity lambda on w. With fixed_n the
/// count is conditioned to exactly that many points (binomial process).
std::vector<Point> sim_poisson(double lambda, const Window& w, std::uint64_t seed,
                               std::optional<std::size_t> fixed_n = std::nullopt);

/// Strauss process by Metropolis-Hastings birth/death/move, started empty.
std::vector<Point> sim_strauss(double beta, double gamma, double radius, const Window& w,
                               std::uint64_t seed, int n_iter = 100000);

struct ThomasRealization {
  std::vector<Point> points;          // offspring kept inside the window
  std::vector<Point> parents;         // all parents on the dilated window
  std::vector<std::size_t> parent_of;  // parent index per retained point
};

/// Modified Thomas process; parents live on w dilated by 4 sigma.
ThomasRealization sim_thomas_realization(double lambda_p, double sigma, double mu,
                                         const Window& w, std::uint64_t seed);
std::vector<Point> sim_thomas(double lambda_p, double sigma, double mu, const Window& w,
                              std::uint64_t seed);

struct ErConstant {
  double p = 0.5;
};
struct ErBoundary {};
using ErMode = std::variant<ErConstant, ErBoundary>;

/// One Erdos-Renyi graph per point. In boundary mode the edge probability of
/// point i is its distance to the window edge, which must lie in (0, 1).
std::vector<GraphMark> gen_er_marks(std::span<const Point> points, int n_vertices, ErMode mode,
                                    const Window& w, std::uint64_t seed);

/// Nonzero entry (s, t) becomes (deg s + deg t) / 2 of the binary input.
GraphMark degree_weight_mark(const GraphMark& g);
std::vector<GraphMark> degree_weight_marks(std::span<const GraphMark> marks);

/// Uniform random permutation of 0..n-1 (Fisher-Yates).
std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed);

/// Same points, marks shuffled by random_permutation(n, seed).
MarkedPointPattern random_relabel(const MarkedPointPattern& p, std::uint64_t seed);

struct PoissonGround {
  double lambda = 110.0;
  std::optional<std::size_t> fixed_n;
};
struct StraussGround {
  double beta = 160.0;
  double gamma = 0.3;
  double radius = 0.05;
  int n_iter = 100000;
};
struct ThomasGround {
  double lambda_p = 8.0;
  double sigma = 0.45;
  double mu = 11.0;
};
using GroundModel = std::variant<PoissonGround, StraussGround, ThomasGround>;

struct ErConstMarks {
  int n_vertices = 25;
  double p = 0.5;
};
struct ErBoundaryMarks {
  int n_vertices = 25;
};
struct NoMarks {};
using MarkModel = std::variant<ErConstMarks, ErBoundaryMarks, NoMarks>;

enum class AdjacencyMode { binary, degree_weighted };

struct SimulationConfig {
  GroundModel ground = PoissonGround{};
  Window window = Window::unit_square();
  MarkModel marks = ErConstMarks{};
  AdjacencyMode adjacency = AdjacencyMode::binary;
  std::uint64_t seed = 0;
};

/// Validates the parameters (InvalidParam / InvalidP).
void validate(const SimulationConfig& cfg);

/// Ground process from derive_seed(seed, 0), marks from derive_seed(seed, 1).
/// Without a mark model every point carries a single-vertex graph.
MarkedPointPattern simulate_pattern(const SimulationConfig& cfg);

}  // namespace graphmark
