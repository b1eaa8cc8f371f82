#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "lpq/grid.hpp"

// Dyadic-cube combinatorics behind the kernel
//   k(x, y) = sum_{J in D(I)} chi_{mJ}(x) chi_{mJ}(y) / l(J)^{2 alpha + n}.
// Everything here works on the continuum root cube, independent of any grid.
// With root [0,1]^n and integer m every cube bound is a dyadic rational that is
// exact in binary64, so membership tests are exact.
namespace lpq {

/// A cube of D_k(root): edge l(root) 2^-k, corner root.corner + index * edge.
struct DyadicCube {
  int level = 0;
  Index index{};

  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

Cube to_cube(const DyadicCube& cube, const Cube& root);
Cube dilate(const DyadicCube& cube, const Cube& root, double factor);
/// The 2^n cubes of level k+1 partitioning the cube.
std::vector<DyadicCube> children(const DyadicCube& cube, int dim);
DyadicCube parent(const DyadicCube& cube, int dim);
/// True when `inner` is `outer` or one of its dyadic descendants.
bool is_within(const DyadicCube& inner, const DyadicCube& outer, int dim) noexcept;

struct PointPair {
  Point x{};
  Point y{};
};

double sup_distance(const Point& x, const Point& y, int dim) noexcept;
double euclidean_distance(const Point& x, const Point& y, int dim) noexcept;

/// x, y in mJ (closed)
bool in_gamma(const DyadicCube& cube, const Cube& root, const Point& x, const Point& y, double m) noexcept;

/// Smallest max_level for which gamma_set is guaranteed complete:
/// ceil(log2(m l(root) / |x - y|_inf)) + 1, clamped at 0.
int required_gamma_depth(const Cube& root, const Point& x, const Point& y, double m);

/// Gamma = {J in D(root) : x, y in mJ}, levels 0..max_level.
struct GammaSet {
  Cube root;
  Point x{};
  Point y{};
  double m = 2.0;
  int max_level = 0;
  std::vector<DyadicCube> members;  // sorted

  bool contains(const DyadicCube& cube) const;
};

/// Tree descent from the root, pruning a subtree as soon as mJ misses x or y.
/// Throws DomainError for x == y and ConfigError when m < 2 or max_level is
/// below required_gamma_depth().
GammaSet gamma_set(const Cube& root, const Point& x, const Point& y, double m, int max_level);

/// Minimal members of Gamma: no proper dyadic descendant lies in Gamma.
std::vector<DyadicCube> allowed_cubes(const GammaSet& gamma);

/// sum_J l(J)^{-2 alpha - n}. Throws ConfigError for alpha <= -n/2.
double kernel_sum(std::span<const DyadicCube> cubes, const Cube& root, double alpha);

/// Allowed cubes split by the first shell I_k = 2^k I_0 they meet (kind 1:
/// contained in I_{k+1}; kind 2: not contained). I_0 is centred at (x+y)/2
/// with edge sqrt(n) |x - y|_2.
struct AllowedClassification {
  Cube root;
  Cube base_shell;
  std::vector<DyadicCube> allowed;
  std::map<std::pair<int, int>, std::vector<DyadicCube>> rings;  // (k, kind) -> cubes

  Cube shell(int k) const;
};

AllowedClassification classify_allowed(std::span<const DyadicCube> allowed, const Cube& root, const Point& x,
                                       const Point& y);

struct RingCount {
  int shell = 0;
  std::size_t first_kind = 0;
  std::size_t second_kind = 0;
};

struct RingCountSummary {
  std::vector<RingCount> per_shell;  // shells 0..max k with a nonempty ring
  std::size_t max_first = 0;
  std::size_t max_second = 0;
  double max_first_normalized = 0.0;  // max_k #Gamma_k^(1) / m^n
};

RingCountSummary count_summary(const AllowedClassification& classification, double m);

/// x uniform in the root; y = x + r u with r log-uniform in
/// [1e-3, 1e-1] l(root) and u a uniform direction; y outside the root is redrawn.
std::vector<PointPair> sample_pairs(const Cube& root, std::size_t count, std::uint64_t seed);

struct KernelEvaluation {
  PointPair pair;
  double distance = 0.0;  // Euclidean
  double full = 0.0;      // sum over Gamma
  double allowed = 0.0;   // sum over allowed cubes
  std::size_t gamma_size = 0;
  std::size_t allowed_size = 0;
  RingCountSummary rings;
};

/// Gamma enumerated to required_gamma_depth() + extra_levels.
KernelEvaluation evaluate_kernel(const Cube& root, const PointPair& pair, double alpha, double m,
                                 int extra_levels = 0);

}  // namespace lpq
