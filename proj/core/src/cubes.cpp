#include "lpq/cubes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "lpq/error.hpp"

namespace lpq {

Cube to_cube(const DyadicCube& cube, const Cube& root) {
  Cube out{root.dim, root.corner, std::ldexp(root.edge, -cube.level)};
  for (int d = 0; d < root.dim; ++d) out.corner[d] = root.corner[d] + static_cast<double>(cube.index[d]) * out.edge;
  return out;
}

Cube dilate(const DyadicCube& cube, const Cube& root, double factor) { return dilate(to_cube(cube, root), factor); }

std::vector<DyadicCube> children(const DyadicCube& cube, int dim) {
  std::vector<DyadicCube> out;
  const int count = 1 << dim;
  out.reserve(static_cast<std::size_t>(count));
  for (int bits = 0; bits < count; ++bits) {
    DyadicCube child{cube.level + 1, {}};
    for (int d = 0; d < dim; ++d) child.index[d] = 2 * cube.index[d] + ((bits >> (dim - 1 - d)) & 1);
    out.push_back(child);
  }
  return out;
}

DyadicCube parent(const DyadicCube& cube, int dim) {
  if (cube.level == 0) throw ConfigError("the root has no parent");
  DyadicCube p{cube.level - 1, {}};
  for (int d = 0; d < dim; ++d) p.index[d] = cube.index[d] >> 1;
  return p;
}

bool is_within(const DyadicCube& inner, const DyadicCube& outer, int dim) noexcept {
  if (inner.level < outer.level) return false;
  const int shift = inner.level - outer.level;
  for (int d = 0; d < dim; ++d) {
    if ((inner.index[d] >> shift) != outer.index[d]) return false;
  }
  return true;
}

double sup_distance(const Point& x, const Point& y, int dim) noexcept {
  double best = 0.0;
  for (int d = 0; d < dim; ++d) best = std::max(best, std::abs(x[d] - y[d]));
  return best;
}

double euclidean_distance(const Point& x, const Point& y, int dim) noexcept {
  if (dim == 1) return std::abs(x[0] - y[0]);
  return std::hypot(x[0] - y[0], x[1] - y[1]);
}

bool in_gamma(const DyadicCube& cube, const Cube& root, const Point& x, const Point& y, double m) noexcept {
  const double edge = std::ldexp(root.edge, -cube.level);
  for (int d = 0; d < root.dim; ++d) {
    const double corner = root.corner[d] + static_cast<double>(cube.index[d]) * edge;
    const double lo = corner + 0.5 * (1.0 - m) * edge;
    const double hi = corner + 0.5 * (1.0 + m) * edge;
    if (x[d] < lo || x[d] > hi || y[d] < lo || y[d] > hi) return false;
  }
  return true;
}

int required_gamma_depth(const Cube& root, const Point& x, const Point& y, double m) {
  const double dist = sup_distance(x, y, root.dim);
  if (dist == 0.0) throw DomainError("diagonal point pair");
  const double depth = std::ceil(std::log2(m * root.edge / dist)) + 1.0;
  return depth < 0.0 ? 0 : static_cast<int>(depth);
}

bool GammaSet::contains(const DyadicCube& cube) const {
  return std::binary_search(members.begin(), members.end(), cube);
}

GammaSet gamma_set(const Cube& root, const Point& x, const Point& y, double m, int max_level) {
  if (!(m >= 2.0)) throw ConfigError("dilation m must be >= 2");
  const int required = required_gamma_depth(root, x, y, m);
  if (max_level < required) {
    throw ConfigError("max_level " + std::to_string(max_level) + " too small; need at least " +
                      std::to_string(required));
  }
  GammaSet gamma{root, x, y, m, max_level, {}};
  std::vector<DyadicCube> stack{DyadicCube{}};
  while (!stack.empty()) {
    const DyadicCube cube = stack.back();
    stack.pop_back();
    // Membership is monotone up the tree, so a failing cube prunes its subtree.
    if (!in_gamma(cube, root, x, y, m)) continue;
    gamma.members.push_back(cube);
    if (cube.level < max_level) {
      for (const auto& child : children(cube, root.dim)) stack.push_back(child);
    }
  }
  std::sort(gamma.members.begin(), gamma.members.end());
  return gamma;
}

std::vector<DyadicCube> allowed_cubes(const GammaSet& gamma) {
  std::vector<DyadicCube> out;
  for (const auto& cube : gamma.members) {
    const auto kids = children(cube, gamma.root.dim);
    const bool minimal = std::none_of(kids.begin(), kids.end(), [&](const DyadicCube& c) { return gamma.contains(c); });
    if (minimal) out.push_back(cube);
  }
  return out;
}

double kernel_sum(std::span<const DyadicCube> cubes, const Cube& root, double alpha) {
  const int n = root.dim;
  if (!(alpha > -0.5 * n)) throw ConfigError("divergent tree-sum regime: alpha must exceed -n/2");
  const double exponent = -(2.0 * alpha + n);
  double sum = 0.0;
  for (const auto& cube : cubes) sum += std::pow(std::ldexp(root.edge, -cube.level), exponent);
  return sum;
}

namespace {

bool intersects(const Cube& a, const Cube& b) noexcept {
  for (int d = 0; d < a.dim; ++d) {
    if (a.corner[d] > b.corner[d] + b.edge || b.corner[d] > a.corner[d] + a.edge) return false;
  }
  return true;
}

bool inside(const Cube& inner, const Cube& outer) noexcept {
  for (int d = 0; d < inner.dim; ++d) {
    if (inner.corner[d] < outer.corner[d] || inner.corner[d] + inner.edge > outer.corner[d] + outer.edge) return false;
  }
  return true;
}

constexpr int kMaxShell = 1100;

}  // namespace

Cube AllowedClassification::shell(int k) const { return dilate(base_shell, std::ldexp(1.0, k)); }

AllowedClassification classify_allowed(std::span<const DyadicCube> allowed, const Cube& root, const Point& x,
                                       const Point& y) {
  const int n = root.dim;
  const double dist = euclidean_distance(x, y, n);
  if (dist == 0.0) throw DomainError("diagonal point pair");

  AllowedClassification out{root, Cube{n, {}, std::sqrt(static_cast<double>(n)) * dist}, {}, {}};
  for (int d = 0; d < n; ++d) out.base_shell.corner[d] = 0.5 * (x[d] + y[d]) - 0.5 * out.base_shell.edge;
  out.allowed.assign(allowed.begin(), allowed.end());

  for (const auto& cube : allowed) {
    const Cube geometry = to_cube(cube, root);
    // Shells are nested, so the first shell met is the unique k whose
    // predecessors are all disjoint from the cube.
    int k = 0;
    while (k <= kMaxShell && !intersects(geometry, out.shell(k))) ++k;
    if (k > kMaxShell) throw InvariantError("allowed cube meets no shell I_k");
    const int kind = inside(geometry, out.shell(k + 1)) ? 1 : 2;
    out.rings[{k, kind}].push_back(cube);
  }
  return out;
}

RingCountSummary count_summary(const AllowedClassification& classification, double m) {
  RingCountSummary summary;
  const double scale = std::pow(m, classification.root.dim);
  int top = -1;
  for (const auto& [key, cubes] : classification.rings) top = std::max(top, key.first);
  for (int k = 0; k <= top; ++k) {
    RingCount row{k, 0, 0};
    if (auto it = classification.rings.find({k, 1}); it != classification.rings.end()) row.first_kind = it->second.size();
    if (auto it = classification.rings.find({k, 2}); it != classification.rings.end()) row.second_kind = it->second.size();
    summary.max_first = std::max(summary.max_first, row.first_kind);
    summary.max_second = std::max(summary.max_second, row.second_kind);
    summary.max_first_normalized = std::max(summary.max_first_normalized, static_cast<double>(row.first_kind) / scale);
    summary.per_shell.push_back(row);
  }
  return summary;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit_uniform(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<PointPair> sample_pairs(const Cube& root, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<PointPair> pairs;
  pairs.reserve(count);
  const int n = root.dim;
  while (pairs.size() < count) {
    PointPair pair;
    for (int d = 0; d < n; ++d) pair.x[d] = root.corner[d] + root.edge * unit_uniform(engine);
    const double radius = root.edge * std::pow(10.0, -3.0 + 2.0 * unit_uniform(engine));
    if (n == 1) {
      pair.y[0] = pair.x[0] + (unit_uniform(engine) < 0.5 ? -radius : radius);
    } else {
      const double angle = 2.0 * std::numbers::pi * unit_uniform(engine);
      pair.y[0] = pair.x[0] + radius * std::cos(angle);
      pair.y[1] = pair.x[1] + radius * std::sin(angle);
    }
    if (root.contains(pair.y) && sup_distance(pair.x, pair.y, n) > 0.0) pairs.push_back(pair);
  }
  return pairs;
}

KernelEvaluation evaluate_kernel(const Cube& root, const PointPair& pair, double alpha, double m, int extra_levels) {
  const int depth = required_gamma_depth(root, pair.x, pair.y, m) + extra_levels;
  const auto gamma = gamma_set(root, pair.x, pair.y, m, depth);
  const auto allowed = allowed_cubes(gamma);
  KernelEvaluation out;
  out.pair = pair;
  out.distance = euclidean_distance(pair.x, pair.y, root.dim);
  out.full = kernel_sum(gamma.members, root, alpha);
  out.allowed = kernel_sum(allowed, root, alpha);
  out.gamma_size = gamma.members.size();
  out.allowed_size = allowed.size();
  if (!allowed.empty()) out.rings = count_summary(classify_allowed(allowed, root, pair.x, pair.y), m);
  return out;
}

}  // namespace lpq
