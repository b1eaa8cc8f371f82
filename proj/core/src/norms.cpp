#include "lpq/norms.hpp"

#include <algorithm>
#include <cmath>

#include "lpq/error.hpp"
#include "lpq/format.hpp"
#include "lpq/parallel.hpp"

namespace lpq {

std::string_view to_string(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::q_alpha: return "qalpha";
    case NormKind::campanato: return "campanato";
    case NormKind::lp_morrey: return "lpmorrey";
    case NormKind::dyadic_lp: return "dyadiclp";
    case NormKind::morrey_besov: return "mb";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kRowChunk = 32;

void check_cube(const GridFunction& f, const Cube& cube) {
  if (cube.dim != f.dim()) throw ConfigError("cube and grid dimensions differ");
}

void check_alpha_regime(double alpha, std::vector<std::string>& notes) {
  if (alpha > 0.0 && alpha < 1.0) return;
  if (alpha < 0.0) {
    notes.push_back("alpha < 0: Q_alpha coincides with BMO in this regime");
  } else {
    notes.push_back("alpha outside (0,1): Q_alpha contains only constants for alpha >= 1");
  }
}

NormReport finish(NormKind kind, double exponent, std::vector<CubeValue> table, std::vector<std::string> notes) {
  if (table.empty()) throw DomainError("no usable cube in the family");
  NormReport report{kind, exponent, 0.0, table.front().cube, std::move(table), std::move(notes)};
  for (const auto& row : report.table) {
    if (row.value > report.value) {
      report.value = row.value;
      report.argmax = row.cube;
    }
  }
  return report;
}

struct PointSet {
  std::vector<Index> index;  // unwrapped lattice coordinates
  std::vector<double> weight;
  std::vector<double> value;
};

PointSet gather(const GridFunction& f, const CubeLattice& lattice) {
  PointSet pts;
  const auto total = lattice.point_count();
  pts.index.reserve(total);
  pts.weight.reserve(total);
  pts.value.reserve(total);
  const auto& ax = lattice.axes[0];
  if (lattice.dim == 1) {
    for (std::int64_t i = ax.first; i <= ax.last; ++i) {
      pts.index.push_back({i, 0});
      pts.weight.push_back(ax.weight(i));
      pts.value.push_back(f.at({i, 0}));
    }
    return pts;
  }
  const auto& ay = lattice.axes[1];
  for (std::int64_t i = ax.first; i <= ax.last; ++i) {
    for (std::int64_t j = ay.first; j <= ay.last; ++j) {
      pts.index.push_back({i, j});
      pts.weight.push_back(ax.weight(i) * ay.weight(j));
      pts.value.push_back(f.at({i, j}));
    }
  }
  return pts;
}

// Zero for a cube that misses the lattice entirely.
std::size_t lattice_size(const Cube& cube, int size) {
  try {
    return cube_lattice(cube, size).point_count();
  } catch (const DomainError&) {
    return 0;
  }
}

}  // namespace

double q_alpha_cube(const GridFunction& f, double alpha, const Cube& cube) {
  check_cube(f, cube);
  const int n = f.dim();
  if (lattice_size(cube, f.size()) < 2) return 0.0;
  const auto lattice = cube_lattice(cube, f.size());
  const auto pts = gather(f, lattice);
  const double h = f.spacing();
  const double exponent = -(2.0 * alpha + n);

  // Kernel |x - y|^{-2 alpha - n} tabulated per absolute lattice offset.
  const auto extent0 = lattice.axes[0].count();
  const auto extent1 = n == 2 ? lattice.axes[1].count() : 1;
  std::vector<double> kernel(static_cast<std::size_t>(extent0 * extent1), 0.0);
  for (std::int64_t a = 0; a < extent0; ++a) {
    for (std::int64_t b = 0; b < extent1; ++b) {
      if (a == 0 && b == 0) continue;
      const double dist = h * std::hypot(static_cast<double>(a), static_cast<double>(b));
      kernel[static_cast<std::size_t>(a * extent1 + b)] = std::pow(dist, exponent);
    }
  }

  const std::size_t count = pts.value.size();
  const double half_sum = parallel::chunked_sum(count, kRowChunk, [&](std::size_t a) {
    const double fa = pts.value[a];
    const auto& ia = pts.index[a];
    double row = 0.0;
    for (std::size_t b = a + 1; b < count; ++b) {
      const auto& ib = pts.index[b];
      const std::int64_t d0 = ib[0] > ia[0] ? ib[0] - ia[0] : ia[0] - ib[0];
      const std::int64_t d1 = ib[1] > ia[1] ? ib[1] - ia[1] : ia[1] - ib[1];
      const double diff = fa - pts.value[b];
      row += pts.weight[b] * diff * diff * kernel[static_cast<std::size_t>(d0 * extent1 + d1)];
    }
    return pts.weight[a] * row;
  });
  return std::pow(cube.edge, 2.0 * alpha - n) * std::pow(h, 2 * n) * 2.0 * half_sum;
}

double campanato_cube(const GridFunction& f, double lambda, const Cube& cube) {
  check_cube(f, cube);
  const auto lattice = cube_lattice(cube, f.size());
  const auto pts = gather(f, lattice);
  double weights = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < pts.value.size(); ++i) {
    weights += pts.weight[i];
    weighted += pts.weight[i] * pts.value[i];
  }
  const double mean = weighted / weights;
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.value.size(); ++i) {
    const double d = pts.value[i] - mean;
    acc += pts.weight[i] * d * d;
  }
  return std::pow(cube.edge, -lambda) * std::pow(f.spacing(), f.dim()) * acc;
}

int lowest_band(const Cube& cube) noexcept {
  const int level = dyadic_level(cube);
  if (level >= 0) return level;
  return static_cast<int>(std::ceil(-std::log2(cube.edge)));
}

double lp_morrey_cube(const BandDecomposition& bands, double alpha, const Cube& cube) {
  const int first = lowest_band(cube);
  if (!bands.has_band(first)) {
    throw ConfigError("decomposition lacks band " + std::to_string(first) + " needed by a cube of edge " +
                      format_double(cube.edge));
  }
  const int n = cube.dim;
  double acc = 0.0;
  for (int j = first; j <= bands.j_max; ++j) {
    acc += std::pow(2.0, 2.0 * alpha * j) * l2_on_cube(bands.band(j), cube);
  }
  return std::pow(cube.edge, 2.0 * alpha - n) * acc;
}

NormReport q_alpha(const GridFunction& f, double alpha, std::span<const Cube> cubes) {
  std::vector<std::string> notes;
  check_alpha_regime(alpha, notes);
  std::vector<CubeValue> table;
  for (const auto& cube : cubes) {
    check_cube(f, cube);
    if (lattice_size(cube, f.size()) < 2) {
      const std::string msg = "skipped cube with fewer than two lattice points";
      warn(msg);
      notes.push_back(msg);
      continue;
    }
    table.push_back({cube, 0.0});
  }
  for (auto& row : table) row.value = std::sqrt(q_alpha_cube(f, alpha, row.cube));
  return finish(NormKind::q_alpha, alpha, std::move(table), std::move(notes));
}

NormReport campanato(const GridFunction& f, double lambda, std::span<const Cube> cubes) {
  std::vector<std::string> notes;
  if (lambda < 0.0 || lambda > f.dim()) notes.push_back("lambda outside the diagnostic range [0, n]");
  auto table = parallel::map<CubeValue>(cubes.size(), [&](std::size_t i) {
    return CubeValue{cubes[i], std::sqrt(campanato_cube(f, lambda, cubes[i]))};
  });
  return finish(NormKind::campanato, lambda, std::move(table), std::move(notes));
}

NormReport lp_morrey(const GridFunction& f, double alpha, std::span<const Cube> cubes,
                     const BandDecomposition& bands) {
  if (bands.bands.empty() || !f.same_shape(bands.bands.front())) {
    throw ConfigError("decomposition does not match the grid function");
  }
  std::vector<std::string> notes;
  check_alpha_regime(alpha, notes);
  bool rounded = false;
  for (const auto& cube : cubes) {
    check_cube(f, cube);
    rounded = rounded || dyadic_level(cube) < 0;
  }
  if (rounded) notes.push_back("non-dyadic cube edges: band sums start at ceil(-log2 l(I))");
  auto table = parallel::map<CubeValue>(cubes.size(), [&](std::size_t i) {
    return CubeValue{cubes[i], std::sqrt(lp_morrey_cube(bands, alpha, cubes[i]))};
  });
  return finish(NormKind::lp_morrey, alpha, std::move(table), std::move(notes));
}

namespace {

int checked_dyadic_level(const BandDecomposition& bands, double alpha, const Cube& cube, int depth) {
  if (!(alpha > 0.0)) throw ConfigError("dyadic_lp requires alpha > 0");
  const int level = dyadic_level(cube);
  if (level < 0) throw ConfigError("dyadic_lp requires a dyadic cube edge");
  const int log2_size = bands.j_max - 1;
  if (depth < 0 || depth > log2_size - level - kMinLog2Size) {
    throw ConfigError("depth K = " + std::to_string(depth) + " too deep for a level-" + std::to_string(level) +
                      " cube on N = 2^" + std::to_string(log2_size));
  }
  if (!bands.has_band(level)) throw ConfigError("decomposition lacks band " + std::to_string(level));
  return level;
}

}  // namespace

double dyadic_lp(const BandDecomposition& bands, double alpha, const Cube& cube, int depth) {
  const int level = checked_dyadic_level(bands, alpha, cube, depth);
  const int n = cube.dim;
  const Cube root{n, cube.corner, cube.edge};
  double total = 0.0;
  for (int k = 0; k <= depth; ++k) {
    const double edge = std::ldexp(cube.edge, -k);
    const std::int64_t per_axis = std::int64_t{1} << k;
    double level_sum = 0.0;
    for (std::int64_t a = 0; a < per_axis; ++a) {
      for (std::int64_t b = 0; b < (n == 2 ? per_axis : 1); ++b) {
        const Cube child{n, {root.corner[0] + static_cast<double>(a) * edge, root.corner[1] + static_cast<double>(b) * edge},
                         edge};
        double inner = 0.0;
        for (int j = level + k; j <= bands.j_max; ++j) inner += l2_on_cube(bands.band(j), child);
        level_sum += inner / child.volume();
      }
    }
    total += std::pow(2.0, (2.0 * alpha - n) * k) * level_sum;
  }
  return total;
}

double fubini_weight(double alpha, int depth, int offset) {
  double w = 0.0;
  for (int k = 0; k <= std::min(depth, offset); ++k) w += std::pow(2.0, 2.0 * alpha * k);
  return w;
}

double dyadic_lp_rearranged(const BandDecomposition& bands, double alpha, const Cube& cube, int depth) {
  const int level = checked_dyadic_level(bands, alpha, cube, depth);
  double total = 0.0;
  for (int j = level; j <= bands.j_max; ++j) {
    total += fubini_weight(alpha, depth, j - level) * l2_on_cube(bands.band(j), cube);
  }
  return total / cube.volume();
}

NormReport dyadic_lp_norm(const GridFunction& f, double alpha, std::span<const Cube> cubes, int depth,
                          const BandDecomposition& bands) {
  std::vector<std::string> notes;
  check_alpha_regime(alpha, notes);
  std::vector<Cube> usable;
  for (const auto& cube : cubes) {
    check_cube(f, cube);
    const int level = dyadic_level(cube);
    if (level >= 0 && depth <= f.log2_size() - level - kMinLog2Size) usable.push_back(cube);
  }
  if (usable.size() < cubes.size()) notes.push_back("cubes too small for depth K were skipped");
  auto table = parallel::map<CubeValue>(usable.size(), [&](std::size_t i) {
    return CubeValue{usable[i], std::sqrt(dyadic_lp(bands, alpha, usable[i], depth))};
  });
  return finish(NormKind::dyadic_lp, alpha, std::move(table), std::move(notes));
}

MorreyBesovReport morrey_besov(const BandDecomposition& bands, double alpha, double sigma, double p, double q,
                               std::span<const Cube> cubes) {
  if (p != 2.0 || q != 2.0) throw ConfigError("only the embedding case is implemented (p = q = 2)");
  if (cubes.empty()) throw DomainError("no usable cube in the family");
  MorreyBesovReport report{alpha, sigma, 0.0, {}};
  double total = 0.0;
  for (int j = bands.j_min; j <= bands.j_max; ++j) {
    const auto& band = bands.band(j);
    const double weight = std::pow(2.0, 2.0 * alpha * j);
    auto values = parallel::map<double>(cubes.size(), [&](std::size_t i) {
      const Cube& cube = cubes[i];
      if (cube.dim != band.dim()) throw ConfigError("cube and grid dimensions differ");
      return std::pow(cube.volume(), -sigma / cube.dim) * weight * l2_on_cube(band, cube);
    });
    BandSupremum sup{j, values.front(), cubes.front()};
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] > sup.value) {
        sup.value = values[i];
        sup.argmax = cubes[i];
      }
    }
    total += sup.value;
    report.bands.push_back(sup);
  }
  report.value = std::sqrt(total);
  return report;
}

}  // namespace lpq
