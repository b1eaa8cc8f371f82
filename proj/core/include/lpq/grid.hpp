#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lpq {

inline constexpr int kMaxDim = 2;
inline constexpr int kMinLog2Size = 3;

/// A point of R^n, n <= 2. Components past dim() of the owner are ignored.
using Point = std::array<double, kMaxDim>;
/// An integer lattice offset or index, n <= 2.
using Index = std::array<std::int64_t, kMaxDim>;

/// log2(size), or ConfigError unless size = 2^L with L >= 3.
int checked_log2_size(int size);
void check_dim(int dim);

/// Real samples of a periodic function on the N^n lattice {i/N} of [0,1)^n.
///
/// Values are stored row-major (last axis fastest). Indexing through at() is
/// periodic: any integer index is reduced mod N per axis.
class GridFunction {
 public:
  GridFunction(int dim, int size, std::vector<double> values);

  static GridFunction constant(int dim, int size, double value);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return size_; }
  int log2_size() const noexcept { return log2_size_; }
  double spacing() const noexcept { return 1.0 / size_; }
  std::size_t point_count() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  std::size_t flat_index(const Index& idx) const noexcept;
  double at(const Index& idx) const noexcept { return values_[flat_index(idx)]; }

  /// g(x) = f(x - offset/N), i.e. the samples rolled forward by `offset`.
  GridFunction shifted(const Index& offset) const;
  GridFunction scaled(double factor) const;
  /// a*this + b*other
  GridFunction combined(double a, const GridFunction& other, double b) const;

  bool same_shape(const GridFunction& other) const noexcept {
    return dim_ == other.dim_ && size_ == other.size_;
  }

 private:
  int dim_;
  int size_;
  int log2_size_;
  std::vector<double> values_;
};

/// Fourier coefficients on the same lattice, stored in FFT order per axis
/// (storage slot k holds frequency k for k < N/2 and k - N otherwise).
class SpectralFunction {
 public:
  SpectralFunction(int dim, int size, std::vector<std::complex<double>> coefficients);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return size_; }
  std::span<const std::complex<double>> data() const noexcept { return coefficients_; }
  std::span<std::complex<double>> data() noexcept { return coefficients_; }

  /// Coefficient at signed frequency xi, each component in [-N/2, N/2 - 1].
  std::complex<double> coefficient(const Index& xi) const;

  /// Signed frequency of storage slot k on an N-point axis.
  static std::int64_t frequency_of_slot(std::size_t slot, int size) noexcept {
    const auto k = static_cast<std::int64_t>(slot);
    return k < size / 2 ? k : k - size;
  }
  /// Signed frequency vector of a flat storage index.
  Index frequency_of(std::size_t flat) const noexcept;

 private:
  int dim_;
  int size_;
  std::vector<std::complex<double>> coefficients_;
};

/// fhat(xi) = N^{-n} sum_i f(x_i) exp(-2 pi i xi.x_i). With this scaling
/// h^n sum |f|^2 = sum |fhat|^2, and inverse_transform is the plain Fourier sum.
/// The result is exactly Hermitian: fhat(-xi) == conj(fhat(xi)).
SpectralFunction transform(const GridFunction& f);
/// Real part of the Fourier sum. Throws InvariantError when the imaginary
/// residue exceeds 1e-12 sum |fhat|.
GridFunction inverse_transform(const SpectralFunction& spectrum);

/// Closed axis-parallel cube [corner, corner + edge]^n.
struct Cube {
  int dim = 1;
  Point corner{};
  double edge = 1.0;

  static Cube unit(int dim) { return Cube{dim, Point{}, 1.0}; }

  Point center() const noexcept;
  bool contains(const Point& p) const noexcept;
  double volume() const noexcept;

  friend bool operator==(const Cube&, const Cube&) = default;
};

/// Same center, edge scaled by factor.
Cube dilate(const Cube& cube, double factor);

/// Lattice indices of a cube along one axis, before periodic wrapping.
/// Points lying exactly on a face carry weight 1/2.
struct AxisSpan {
  std::int64_t first = 0;
  std::int64_t last = -1;
  double first_weight = 1.0;
  double last_weight = 1.0;

  std::int64_t count() const noexcept { return last - first + 1; }
  double weight(std::int64_t i) const noexcept {
    double w = 1.0;
    if (i == first) w *= first_weight;
    if (i == last) w *= last_weight;
    return w;
  }
};

/// Lattice points of a closed cube with trapezoid face weights. Children of a
/// grid-aligned dyadic cube split both the point set and the weights exactly.
struct CubeLattice {
  int dim = 1;
  std::array<AxisSpan, kMaxDim> axes{};

  std::size_t point_count() const noexcept;
  double weight_sum() const noexcept;
};

/// Throws DomainError("degenerate cube") when no lattice point lies in the cube.
CubeLattice cube_lattice(const Cube& cube, int size);

/// Weighted mean of f over the lattice points of the cube.
double cube_mean(const GridFunction& f, const Cube& cube);
/// h^n sum_{x in I} w(x) f(x)^2, the squared discrete L^2(I) norm.
double l2_on_cube(const GridFunction& f, const Cube& cube);

/// Grid-aligned dyadic subcubes of [0,1)^n for levels 0..level_max, then (if
/// shifted) the same family translated by half an edge on every axis. The
/// shifted cubes may extend past 1 and are sampled periodically.
std::vector<Cube> enumerate_cubes(int dim, int log2_size, int level_max, bool shifted);

/// k if cube.edge == 2^-k exactly, otherwise -1.
int dyadic_level(const Cube& cube) noexcept;

}  // namespace lpq
