#include "lpq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lpq/error.hpp"
#include "lpq/format.hpp"

namespace lpq {

std::vector<Cube> CubeFamily::cubes(int dim, int log2_size) const {
  const int level = level_max < 0 ? log2_size - kMinLog2Size : level_max;
  return enumerate_cubes(dim, log2_size, level, shifted);
}

double relative_discrepancy(double value, double reference) noexcept {
  return std::abs(value - reference) / std::max(std::abs(reference), kDiscrepancyFloor);
}

namespace {

void check_sizes(std::span<const int> sizes) {
  if (sizes.empty()) throw ConfigError("at least one grid size is required");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw ConfigError("grid sizes must be strictly ascending");
  }
}

}  // namespace

EquivalenceReport equivalence_report(std::span<const CorpusSpec> corpus, double alpha, std::span<const int> sizes,
                                     const CubeFamily& family, ProfileFamily profiles) {
  check_sizes(sizes);
  EquivalenceReport report;
  report.alpha = alpha;
  report.sizes.assign(sizes.begin(), sizes.end());
  if (!(alpha > 0.0 && alpha < 1.0)) {
    report.notes.push_back("alpha = " + format_double(alpha) +
                           " is outside (0,1); the equivalence is not expected to hold");
  }

  for (const auto& spec : corpus) {
    ResolutionTrend trend{spec.id, {}, {}, 0.0, false, false};
    bool any_zero = false;
    for (int size : sizes) {
      const auto f = generate(spec.at(spec.dim, size));
      const auto cubes = family.cubes(f.dim(), f.log2_size());
      const auto bands = decompose(f, 0, profiles);
      const auto q = q_alpha(f, alpha, cubes);
      const auto lp = lp_morrey(f, alpha, cubes, bands);
      EquivalenceRow row{spec.id, size, q.value, lp.value, 0.0, false, q.argmax, lp.argmax};
      row.both_zero = q.value < kZeroNorm && lp.value < kZeroNorm;
      if (!row.both_zero) row.ratio = q.value > 0.0 ? lp.value / q.value : 0.0;
      any_zero = any_zero || row.both_zero;
      trend.ratios.push_back(row.ratio);
      report.rows.push_back(std::move(row));
    }
    if (any_zero) {
      report.notes.push_back(spec.id + ": both norms zero, excluded from ratios");
    } else if (trend.ratios.size() > 1) {
      int direction = 0;
      bool monotone = true;
      for (std::size_t i = 1; i < trend.ratios.size(); ++i) {
        const double doublings = std::log2(static_cast<double>(sizes[i]) / sizes[i - 1]);
        const double step = std::pow(trend.ratios[i] / trend.ratios[i - 1], 1.0 / doublings) - 1.0;
        trend.drift.push_back(step);
        trend.max_drift = std::max(trend.max_drift, std::abs(step));
        const int sign = step > 0.0 ? 1 : (step < 0.0 ? -1 : 0);
        if (direction != 0 && sign != direction) monotone = false;
        if (direction == 0) direction = sign;
      }
      trend.monotone = monotone;
      trend.flagged = trend.max_drift > kDriftLimit;
    }
    report.trends.push_back(std::move(trend));
  }

  bool first = true;
  for (const auto& row : report.rows) {
    if (row.both_zero || row.ratio <= 0.0) continue;
    report.c_low = first ? row.ratio : std::min(report.c_low, row.ratio);
    report.c_high = first ? row.ratio : std::max(report.c_high, row.ratio);
    first = false;
  }
  return report;
}

double fubini_identity_check(const BandDecomposition& bands, double alpha, const Cube& cube, int depth) {
  const double direct = dyadic_lp(bands, alpha, cube, depth);
  const double rearranged = dyadic_lp_rearranged(bands, alpha, cube, depth);
  if (direct == 0.0 && rearranged == 0.0) return 0.0;
  return relative_discrepancy(rearranged, direct);
}

FubiniSweep fubini_sweep(std::span<const CorpusSpec> corpus, std::span<const double> alphas, int max_cube_level,
                         int max_depth) {
  FubiniSweep sweep;
  for (const auto& spec : corpus) {
    const auto f = generate(spec);
    const auto bands = decompose(f, 0);
    const auto cubes = enumerate_cubes(f.dim(), f.log2_size(), std::min(max_cube_level, f.log2_size() - kMinLog2Size),
                                       false);
    for (double alpha : alphas) {
      for (const auto& cube : cubes) {
        const int level = dyadic_level(cube);
        for (int depth = 0; depth <= std::min(max_depth, f.log2_size() - level - kMinLog2Size); ++depth) {
          const double d = fubini_identity_check(bands, alpha, cube, depth);
          ++sweep.checks;
          if (d > sweep.max_discrepancy || sweep.checks == 1) {
            sweep.max_discrepancy = std::max(sweep.max_discrepancy, d);
            sweep.worst_id = spec.id;
            sweep.worst_alpha = alpha;
            sweep.worst_cube = cube;
            sweep.worst_depth = depth;
          }
        }
      }
    }
  }
  return sweep;
}

double lemma23_lhs(const GridFunction& f, double alpha, double m, const Cube& cube, int depth) {
  if (!(m >= 2.0)) throw ConfigError("lemma check requires m >= 2");
  const int n = f.dim();
  if (!(alpha > -0.5 * n)) throw ConfigError("lemma check requires alpha > -n/2");
  if (cube.dim != n) throw ConfigError("cube and grid dimensions differ");
  const int level = dyadic_level(cube);
  if (level < 0) throw ConfigError("lemma check requires a dyadic cube edge");
  if (depth < 0 || depth > f.log2_size() - level - kMinLog2Size) {
    throw ConfigError("depth K = " + std::to_string(depth) + " too deep for this grid");
  }
  const double hn = std::pow(f.spacing(), n);
  double total = 0.0;
  for (int k = 0; k <= depth; ++k) {
    const double edge = std::ldexp(cube.edge, -k);
    const std::int64_t per_axis = std::int64_t{1} << k;
    double level_sum = 0.0;
    for (std::int64_t a = 0; a < per_axis; ++a) {
      for (std::int64_t b = 0; b < (n == 2 ? per_axis : 1); ++b) {
        const Cube child{n,
                         {cube.corner[0] + static_cast<double>(a) * edge,
                          n == 2 ? cube.corner[1] + static_cast<double>(b) * edge : 0.0},
                         edge};
        const Cube dilated = dilate(child, m);
        // sum_x sum_y w_x w_y (f_x - f_y)^2 = 2 W sum_x w_x (f_x - fbar)^2
        const auto lattice = cube_lattice(dilated, f.size());
        const double mean = cube_mean(f, dilated);
        double spread = 0.0;
        const auto& ax = lattice.axes[0];
        if (n == 1) {
          for (std::int64_t i = ax.first; i <= ax.last; ++i) {
            const double d = f.at({i, 0}) - mean;
            spread += ax.weight(i) * d * d;
          }
        } else {
          const auto& ay = lattice.axes[1];
          for (std::int64_t i = ax.first; i <= ax.last; ++i) {
            for (std::int64_t j = ay.first; j <= ay.last; ++j) {
              const double d = f.at({i, j}) - mean;
              spread += ax.weight(i) * ay.weight(j) * d * d;
            }
          }
        }
        const double double_sum = 2.0 * lattice.weight_sum() * spread * hn * hn;
        const double volume = child.volume();
        level_sum += double_sum / (volume * volume);
      }
    }
    total += std::pow(2.0, (2.0 * alpha - n) * k) * level_sum;
  }
  return total;
}

Lemma23Record lemma23_check(const GridFunction& f, double alpha, double m, const Cube& cube, int depth,
                            const CubeFamily& family) {
  Lemma23Record rec{{}, alpha, m, depth, lemma23_lhs(f, alpha, m, cube, depth), 0.0, 0.0};
  const auto cubes = family.cubes(f.dim(), f.log2_size());
  rec.q_alpha = q_alpha(f, alpha, cubes).value;
  if (rec.q_alpha > 0.0) rec.ratio = rec.lhs / (std::pow(m, 2.0 * alpha + 2.0 * f.dim()) * rec.q_alpha * rec.q_alpha);
  return rec;
}

DecayRecord kernel_decay_check(double alpha, double m, int dim, std::size_t pair_count, std::uint64_t seed,
                               int extra_levels) {
  check_dim(dim);
  if (!(m >= 2.0)) throw ConfigError("decay check requires m >= 2");
  if (!(alpha > -0.5 * dim)) throw ConfigError("decay check requires alpha > -n/2");
  DecayRecord rec;
  rec.alpha = alpha;
  rec.m = m;
  rec.dim = dim;
  const Cube root = Cube::unit(dim);
  const auto pairs = sample_pairs(root, pair_count, seed);
  rec.rows.reserve(pairs.size());
  for (const auto& pair : pairs) rec.rows.push_back(evaluate_kernel(root, pair, alpha, m, extra_levels));

  const double power = 2.0 * alpha + dim;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& row : rec.rows) {
    const double lx = std::log(row.distance);
    const double ly = std::log(row.full);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    const double scale = std::pow(row.distance, power);
    rec.max_full_product = std::max(rec.max_full_product, row.full * scale);
    rec.max_allowed_product = std::max(rec.max_allowed_product, row.allowed * scale);
    if (row.allowed > 0.0) rec.max_full_over_allowed = std::max(rec.max_full_over_allowed, row.full / row.allowed);
    rec.max_second = std::max(rec.max_second, row.rings.max_second);
    rec.max_first_normalized = std::max(rec.max_first_normalized, row.rings.max_first_normalized);
    rec.subset_ok = rec.subset_ok && row.full >= row.allowed;
  }
  const double count = static_cast<double>(rec.rows.size());
  if (rec.rows.size() >= 2) rec.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return rec;
}

EmbeddingReport embedding_check(std::span<const CorpusSpec> corpus, double alpha, const CubeFamily& family) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("embedding check requires alpha in (0,1)");
  EmbeddingReport report;
  report.alpha = alpha;
  for (const auto& spec : corpus) {
    const auto f = generate(spec);
    const auto cubes = family.cubes(f.dim(), f.log2_size());
    const auto bands = decompose(f, 0);
    EmbeddingRow row{spec.id, f.size(), q_alpha(f, alpha, cubes).value, 0.0, 0.0, false, false};
    row.morrey_besov = morrey_besov(bands, alpha, f.dim() - 2.0 * alpha, 2.0, 2.0, cubes).value;
    if (row.q_alpha < kZeroNorm && row.morrey_besov < kZeroNorm) {
      row.excluded = true;
    } else if (row.morrey_besov < kZeroNorm) {
      row.violation = true;
      report.violation = true;
    } else {
      row.ratio = row.q_alpha / row.morrey_besov;
      report.max_ratio = std::max(report.max_ratio, row.ratio);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace lpq
