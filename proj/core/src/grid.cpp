#include "lpq/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <string>

#include "lpq/error.hpp"
#include "lpq/format.hpp"

namespace lpq {

int checked_log2_size(int size) {
  if (size <= 0 || !std::has_single_bit(static_cast<unsigned>(size))) {
    throw ConfigError("grid size must be a power of two, got " + std::to_string(size));
  }
  const int log2 = std::countr_zero(static_cast<unsigned>(size));
  if (log2 < kMinLog2Size) {
    throw ConfigError("grid size must be at least 8, got " + std::to_string(size));
  }
  return log2;
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw ConfigError("dimension must be 1 or 2, got " + std::to_string(dim));
  }
}

namespace {

std::size_t total_points(int dim, int size) {
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(size);
  return total;
}

std::int64_t wrap(std::int64_t i, std::int64_t n) noexcept {
  const std::int64_t r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace

GridFunction::GridFunction(int dim, int size, std::vector<double> values)
    : dim_(dim), size_(size), log2_size_(0), values_(std::move(values)) {
  check_dim(dim);
  log2_size_ = checked_log2_size(size);
  if (values_.size() != total_points(dim, size)) {
    throw ConfigError("grid expects " + std::to_string(total_points(dim, size)) + " values, got " +
                      std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ConfigError("grid values must be finite");
  }
}

GridFunction GridFunction::constant(int dim, int size, double value) {
  check_dim(dim);
  checked_log2_size(size);
  return GridFunction(dim, size, std::vector<double>(total_points(dim, size), value));
}

std::size_t GridFunction::flat_index(const Index& idx) const noexcept {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) {
    flat = flat * static_cast<std::size_t>(size_) + static_cast<std::size_t>(wrap(idx[d], size_));
  }
  return flat;
}

GridFunction GridFunction::shifted(const Index& offset) const {
  std::vector<double> out(values_.size());
  if (dim_ == 1) {
    for (std::int64_t i = 0; i < size_; ++i) out[static_cast<std::size_t>(i)] = at({i - offset[0], 0});
  } else {
    for (std::int64_t i = 0; i < size_; ++i) {
      for (std::int64_t j = 0; j < size_; ++j) {
        out[static_cast<std::size_t>(i * size_ + j)] = at({i - offset[0], j - offset[1]});
      }
    }
  }
  return GridFunction(dim_, size_, std::move(out));
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return GridFunction(dim_, size_, std::move(out));
}

GridFunction GridFunction::combined(double a, const GridFunction& other, double b) const {
  if (!same_shape(other)) throw ConfigError("grid shapes differ");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * values_[i] + b * other.values_[i];
  return GridFunction(dim_, size_, std::move(out));
}

SpectralFunction::SpectralFunction(int dim, int size, std::vector<std::complex<double>> coefficients)
    : dim_(dim), size_(size), coefficients_(std::move(coefficients)) {
  check_dim(dim);
  checked_log2_size(size);
  if (coefficients_.size() != total_points(dim, size)) {
    throw ConfigError("spectrum size does not match grid shape");
  }
}

std::complex<double> SpectralFunction::coefficient(const Index& xi) const {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) {
    if (xi[d] < -size_ / 2 || xi[d] >= size_ / 2) {
      throw ConfigError("frequency outside the represented range");
    }
    flat = flat * static_cast<std::size_t>(size_) + static_cast<std::size_t>(wrap(xi[d], size_));
  }
  return coefficients_[flat];
}

Index SpectralFunction::frequency_of(std::size_t flat) const noexcept {
  Index xi{};
  for (int d = dim_ - 1; d >= 0; --d) {
    xi[d] = frequency_of_slot(flat % static_cast<std::size_t>(size_), size_);
    flat /= static_cast<std::size_t>(size_);
  }
  return xi;
}

namespace {

// FFTW planning is not thread safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run_fft(int dim, int size, std::vector<std::complex<double>>& data, int sign) {
  static_assert(sizeof(fftw_complex) == sizeof(std::complex<double>));
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  const std::array<int, kMaxDim> extents{size, size};
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(dim, extents.data(), buffer, buffer, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw InvariantError("FFTW failed to create a plan");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

SpectralFunction transform(const GridFunction& f) {
  std::vector<std::complex<double>> data(f.values().begin(), f.values().end());
  run_fft(f.dim(), f.size(), data, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(f.point_count());
  // f is real, so fhat(-xi) = conj(fhat(xi)); impose it exactly so that any
  // radial multiplier maps back to a real function
  const auto n = static_cast<std::size_t>(f.size());
  auto mirror = [n](std::size_t slot) { return (n - slot) % n; };
  std::vector<std::complex<double>> sym(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t j = f.dim() == 1 ? mirror(i) : mirror(i / n) * n + mirror(i % n);
    sym[i] = 0.5 * scale * (data[i] + std::conj(data[j]));
  }
  return SpectralFunction(f.dim(), f.size(), std::move(sym));
}

GridFunction inverse_transform(const SpectralFunction& spectrum) {
  std::vector<std::complex<double>> data(spectrum.data().begin(), spectrum.data().end());
  // sum |c| bounds every output value, so it sets the roundoff scale
  double mass = 0.0;
  for (const auto& c : data) mass += std::abs(c);
  run_fft(spectrum.dim(), spectrum.size(), data, FFTW_BACKWARD);
  double residue = 0.0;
  std::vector<double> values(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    values[i] = data[i].real();
    residue = std::max(residue, std::abs(data[i].imag()));
  }
  if (residue > 1e-12 * mass) {
    throw InvariantError("inverse transform is not real: imaginary residue " + format_double(residue));
  }
  return GridFunction(spectrum.dim(), spectrum.size(), std::move(values));
}

Point Cube::center() const noexcept {
  Point c{};
  for (int d = 0; d < dim; ++d) c[d] = corner[d] + 0.5 * edge;
  return c;
}

bool Cube::contains(const Point& p) const noexcept {
  for (int d = 0; d < dim; ++d) {
    if (p[d] < corner[d] || p[d] > corner[d] + edge) return false;
  }
  return true;
}

double Cube::volume() const noexcept { return std::pow(edge, dim); }

Cube dilate(const Cube& cube, double factor) {
  if (!(factor > 0.0)) throw ConfigError("dilation factor must be positive");
  Cube out = cube;
  out.edge = cube.edge * factor;
  for (int d = 0; d < cube.dim; ++d) out.corner[d] = cube.corner[d] + 0.5 * (cube.edge - out.edge);
  return out;
}

std::size_t CubeLattice::point_count() const noexcept {
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(std::max<std::int64_t>(axes[d].count(), 0));
  return total;
}

double CubeLattice::weight_sum() const noexcept {
  double total = 1.0;
  for (int d = 0; d < dim; ++d) {
    const auto& a = axes[d];
    double s = 0.0;
    for (std::int64_t i = a.first; i <= a.last; ++i) s += a.weight(i);
    total *= s;
  }
  return total;
}

CubeLattice cube_lattice(const Cube& cube, int size) {
  if (!(cube.edge > 0.0)) throw ConfigError("cube edge must be positive");
  CubeLattice lattice{cube.dim, {}};
  const double n = size;
  for (int d = 0; d < cube.dim; ++d) {
    const double lo = cube.corner[d] * n;
    const double hi = (cube.corner[d] + cube.edge) * n;
    AxisSpan span;
    span.first = static_cast<std::int64_t>(std::ceil(lo));
    span.last = static_cast<std::int64_t>(std::floor(hi));
    if (span.last < span.first) throw DomainError("degenerate cube");
    span.first_weight = static_cast<double>(span.first) == lo ? 0.5 : 1.0;
    span.last_weight = static_cast<double>(span.last) == hi ? 0.5 : 1.0;
    lattice.axes[d] = span;
  }
  return lattice;
}

namespace {

// Calls fn(weight, value) for every lattice point of the cube, in row-major order.
template <class Fn>
void for_each_weighted(const GridFunction& f, const CubeLattice& lattice, Fn&& fn) {
  const auto& ax = lattice.axes[0];
  if (lattice.dim == 1) {
    for (std::int64_t i = ax.first; i <= ax.last; ++i) fn(ax.weight(i), f.at({i, 0}));
    return;
  }
  const auto& ay = lattice.axes[1];
  for (std::int64_t i = ax.first; i <= ax.last; ++i) {
    const double wi = ax.weight(i);
    for (std::int64_t j = ay.first; j <= ay.last; ++j) fn(wi * ay.weight(j), f.at({i, j}));
  }
}

void check_cube_dim(const GridFunction& f, const Cube& cube) {
  if (cube.dim != f.dim()) throw ConfigError("cube and grid dimensions differ");
}

}  // namespace

double cube_mean(const GridFunction& f, const Cube& cube) {
  check_cube_dim(f, cube);
  const auto lattice = cube_lattice(cube, f.size());
  double weighted = 0.0;
  double weights = 0.0;
  for_each_weighted(f, lattice, [&](double w, double v) {
    weighted += w * v;
    weights += w;
  });
  return weighted / weights;
}

double l2_on_cube(const GridFunction& f, const Cube& cube) {
  check_cube_dim(f, cube);
  const auto lattice = cube_lattice(cube, f.size());
  double acc = 0.0;
  for_each_weighted(f, lattice, [&](double w, double v) { acc += w * v * v; });
  return acc * std::pow(f.spacing(), f.dim());
}

std::vector<Cube> enumerate_cubes(int dim, int log2_size, int level_max, bool shifted) {
  check_dim(dim);
  if (level_max < 0) throw ConfigError("level_max must be non-negative");
  if (level_max > log2_size - kMinLog2Size) {
    throw ConfigError("level_max " + std::to_string(level_max) + " too deep for N = 2^" +
                      std::to_string(log2_size) + " (cubes need at least 8 points per edge)");
  }
  std::vector<Cube> cubes;
  for (int pass = 0; pass < (shifted ? 2 : 1); ++pass) {
    const double offset = pass == 0 ? 0.0 : 0.5;
    for (int level = 0; level <= level_max; ++level) {
      const std::int64_t per_axis = std::int64_t{1} << level;
      const double edge = std::ldexp(1.0, -level);
      if (dim == 1) {
        for (std::int64_t i = 0; i < per_axis; ++i) {
          cubes.push_back(Cube{1, {(static_cast<double>(i) + offset) * edge, 0.0}, edge});
        }
      } else {
        for (std::int64_t i = 0; i < per_axis; ++i) {
          for (std::int64_t j = 0; j < per_axis; ++j) {
            cubes.push_back(Cube{
                2, {(static_cast<double>(i) + offset) * edge, (static_cast<double>(j) + offset) * edge}, edge});
          }
        }
      }
    }
  }
  return cubes;
}

int dyadic_level(const Cube& cube) noexcept {
  int exponent = 0;
  const double mantissa = std::frexp(cube.edge, &exponent);
  if (mantissa != 0.5 || exponent > 1) return -1;
  return 1 - exponent;
}

}  // namespace lpq
