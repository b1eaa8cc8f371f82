#pragma once

// Slow reference implementations. None of these call into the library's
// lattice, transform or cube-tree code; they work from the definitions with
// plain loops so that agreement is evidence, not tautology.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "lpq/cubes.hpp"
#include "lpq/grid.hpp"

namespace oracle {

using lpq::Cube;
using lpq::DyadicCube;
using lpq::GridFunction;
using lpq::Point;

struct LatticePoint {
  std::int64_t i = 0;
  std::int64_t j = 0;
  double weight = 1.0;
  double x0 = 0.0;
  double x1 = 0.0;
};

inline double face_weight(double coord, double lo, double hi) {
  return (coord == lo || coord == hi) ? 0.5 : 1.0;
}

// Every lattice point i/N with lo <= i/N <= hi per axis, scanned over a wide
// index window; face points get 1/2 per axis.
inline std::vector<LatticePoint> lattice_points(const Cube& c, int size) {
  std::vector<LatticePoint> out;
  const double lo0 = c.corner[0], hi0 = c.corner[0] + c.edge;
  const auto from = static_cast<std::int64_t>(std::floor(lo0 * size)) - 2;
  const auto to = static_cast<std::int64_t>(std::ceil(hi0 * size)) + 2;
  for (std::int64_t i = from; i <= to; ++i) {
    const double x0 = static_cast<double>(i) / size;
    if (x0 < lo0 || x0 > hi0) continue;
    if (c.dim == 1) {
      out.push_back({i, 0, face_weight(x0, lo0, hi0), x0, 0.0});
      continue;
    }
    const double lo1 = c.corner[1], hi1 = c.corner[1] + c.edge;
    const auto from1 = static_cast<std::int64_t>(std::floor(lo1 * size)) - 2;
    const auto to1 = static_cast<std::int64_t>(std::ceil(hi1 * size)) + 2;
    for (std::int64_t j = from1; j <= to1; ++j) {
      const double x1 = static_cast<double>(j) / size;
      if (x1 < lo1 || x1 > hi1) continue;
      out.push_back({i, j, face_weight(x0, lo0, hi0) * face_weight(x1, lo1, hi1), x0, x1});
    }
  }
  return out;
}

inline double sample(const GridFunction& f, const LatticePoint& p) {
  const std::int64_t n = f.size();
  const auto wrap = [n](std::int64_t k) { return ((k % n) + n) % n; };
  const auto v = f.values();
  return f.dim() == 1 ? v[static_cast<std::size_t>(wrap(p.i))]
                      : v[static_cast<std::size_t>(wrap(p.i) * n + wrap(p.j))];
}

inline std::int64_t signed_freq(std::int64_t slot, std::int64_t n) { return slot < n / 2 ? slot : slot - n; }

// fhat in FFT order, N^-n normalized, O(N^{2n}).
inline std::vector<std::complex<double>> dft(const GridFunction& f) {
  const int n = f.size();
  const auto v = f.values();
  std::vector<std::complex<double>> out(v.size());
  const double two_pi = 2.0 * std::numbers::pi;
  if (f.dim() == 1) {
    for (int k = 0; k < n; ++k) {
      std::complex<double> acc = 0.0;
      for (int x = 0; x < n; ++x) acc += v[x] * std::polar(1.0, -two_pi * k * x / n);
      out[k] = acc / static_cast<double>(n);
    }
    return out;
  }
  for (int k0 = 0; k0 < n; ++k0) {
    for (int k1 = 0; k1 < n; ++k1) {
      std::complex<double> acc = 0.0;
      for (int x0 = 0; x0 < n; ++x0) {
        for (int x1 = 0; x1 < n; ++x1) {
          acc += v[x0 * n + x1] * std::polar(1.0, -two_pi * (static_cast<double>(k0) * x0 + static_cast<double>(k1) * x1) / n);
        }
      }
      out[k0 * n + k1] = acc / static_cast<double>(n * n);
    }
  }
  return out;
}

// Applies a radial multiplier m(|xi|) through the naive DFT and a naive inverse sum.
inline GridFunction filter(const GridFunction& f, const std::function<double(double)>& m) {
  const int n = f.size();
  const auto fhat = dft(f);
  std::vector<double> out(fhat.size(), 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  if (f.dim() == 1) {
    for (int x = 0; x < n; ++x) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const double xi = static_cast<double>(signed_freq(k, n));
        acc += m(std::abs(xi)) * fhat[k] * std::polar(1.0, two_pi * xi * x / n);
      }
      out[x] = acc.real();
    }
  } else {
    for (int x0 = 0; x0 < n; ++x0) {
      for (int x1 = 0; x1 < n; ++x1) {
        std::complex<double> acc = 0.0;
        for (int k0 = 0; k0 < n; ++k0) {
          for (int k1 = 0; k1 < n; ++k1) {
            const double a = static_cast<double>(signed_freq(k0, n));
            const double b = static_cast<double>(signed_freq(k1, n));
            acc += m(std::sqrt(a * a + b * b)) * fhat[k0 * n + k1] * std::polar(1.0, two_pi * (a * x0 + b * x1) / n);
          }
        }
        out[x0 * n + x1] = acc.real();
      }
    }
  }
  return GridFunction(f.dim(), n, std::move(out));
}

// The smooth cutoff written out again from its formula.
inline double chi(double r) {
  const auto eta = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return eta(2.0 - r) / (eta(2.0 - r) + eta(r - 1.0));
}

inline double psi(double r, int j) { return chi(r / std::pow(2.0, j)) - chi(r / std::pow(2.0, j - 1)); }

inline GridFunction band(const GridFunction& f, int j) {
  return filter(f, [j](double r) { return psi(r, j); });
}

inline double l2(const GridFunction& f, const Cube& c) {
  double acc = 0.0;
  for (const auto& p : lattice_points(c, f.size())) acc += p.weight * sample(f, p) * sample(f, p);
  return acc * std::pow(1.0 / f.size(), f.dim());
}

inline double q_alpha_cube(const GridFunction& f, double alpha, const Cube& c) {
  const auto pts = lattice_points(c, f.size());
  const int n = f.dim();
  double acc = 0.0;
  for (const auto& p : pts) {
    for (const auto& q : pts) {
      if (p.i == q.i && p.j == q.j) continue;
      const double dist = std::sqrt((p.x0 - q.x0) * (p.x0 - q.x0) + (p.x1 - q.x1) * (p.x1 - q.x1));
      const double d = sample(f, p) - sample(f, q);
      acc += p.weight * q.weight * d * d / std::pow(dist, 2.0 * alpha + n);
    }
  }
  const double h = 1.0 / f.size();
  return std::pow(c.edge, 2.0 * alpha - n) * std::pow(h, 2.0 * n) * acc;
}

inline double campanato_cube(const GridFunction& f, double lambda, const Cube& c) {
  const auto pts = lattice_points(c, f.size());
  double w = 0.0, s = 0.0;
  for (const auto& p : pts) {
    w += p.weight;
    s += p.weight * sample(f, p);
  }
  const double mean = s / w;
  double acc = 0.0;
  for (const auto& p : pts) acc += p.weight * (sample(f, p) - mean) * (sample(f, p) - mean);
  return std::pow(c.edge, -lambda) * std::pow(1.0 / f.size(), f.dim()) * acc;
}

// Bands j = 0 .. L+1 through the naive filter.
inline std::vector<GridFunction> all_bands(const GridFunction& f) {
  std::vector<GridFunction> out;
  for (int j = 0; j <= f.log2_size() + 1; ++j) out.push_back(band(f, j));
  return out;
}

inline double lp_morrey_cube(const std::vector<GridFunction>& bands, double alpha, const Cube& c) {
  const int level = static_cast<int>(std::lround(-std::log2(c.edge)));
  double acc = 0.0;
  for (int j = level; j < static_cast<int>(bands.size()); ++j) acc += std::pow(4.0, alpha * j) * l2(bands[j], c);
  return std::pow(c.edge, 2.0 * alpha - c.dim) * acc;
}

inline double dyadic_lp(const std::vector<GridFunction>& bands, double alpha, const Cube& c, int depth) {
  const int n = c.dim;
  const int level = static_cast<int>(std::lround(-std::log2(c.edge)));
  double total = 0.0;
  for (int k = 0; k <= depth; ++k) {
    const int per = 1 << k;
    const double e = c.edge / per;
    for (int a = 0; a < per; ++a) {
      for (int b = 0; b < (n == 2 ? per : 1); ++b) {
        const Cube J{n, {c.corner[0] + a * e, n == 2 ? c.corner[1] + b * e : 0.0}, e};
        double inner = 0.0;
        for (int j = level + k; j < static_cast<int>(bands.size()); ++j) inner += l2(bands[j], J);
        total += std::pow(2.0, (2.0 * alpha - n) * k) * inner / std::pow(e, n);
      }
    }
  }
  return total;
}

inline double morrey_besov(const std::vector<GridFunction>& bands, double alpha, double sigma,
                           const std::vector<Cube>& cubes) {
  double total = 0.0;
  for (int j = 0; j < static_cast<int>(bands.size()); ++j) {
    double best = 0.0;
    for (const auto& c : cubes) {
      best = std::max(best, std::pow(std::pow(c.edge, c.dim), -sigma / c.dim) * std::pow(4.0, alpha * j) * l2(bands[j], c));
    }
    total += best;
  }
  return std::sqrt(total);
}

// Brute-force LHS of the m-dilated double sum, pair by pair.
inline double lemma_lhs(const GridFunction& f, double alpha, double m, const Cube& c, int depth) {
  const int n = c.dim;
  double total = 0.0;
  for (int k = 0; k <= depth; ++k) {
    const int per = 1 << k;
    const double e = c.edge / per;
    for (int a = 0; a < per; ++a) {
      for (int b = 0; b < (n == 2 ? per : 1); ++b) {
        const double mid0 = c.corner[0] + (a + 0.5) * e;
        const double mid1 = n == 2 ? c.corner[1] + (b + 0.5) * e : 0.0;
        const Cube mJ{n, {mid0 - 0.5 * m * e, n == 2 ? mid1 - 0.5 * m * e : 0.0}, m * e};
        const auto pts = lattice_points(mJ, f.size());
        double acc = 0.0;
        for (const auto& p : pts) {
          for (const auto& q : pts) {
            const double d = sample(f, p) - sample(f, q);
            acc += p.weight * q.weight * d * d;
          }
        }
        const double hn = std::pow(1.0 / f.size(), n);
        total += std::pow(2.0, (2.0 * alpha - n) * k) * acc * hn * hn / std::pow(e, 2 * n);
      }
    }
  }
  return total;
}

// ---- dyadic tree ----

inline Cube geometry(const DyadicCube& q, const Cube& root) {
  const double e = root.edge / std::pow(2.0, q.level);
  return Cube{root.dim, {root.corner[0] + q.index[0] * e, root.corner[1] + q.index[1] * e}, e};
}

inline bool in_dilated(const DyadicCube& q, const Cube& root, const Point& p, double m) {
  const Cube g = geometry(q, root);
  for (int d = 0; d < root.dim; ++d) {
    const double mid = g.corner[d] + g.edge / 2;
    if (p[d] < mid - m * g.edge / 2 || p[d] > mid + m * g.edge / 2) return false;
  }
  return true;
}

// Every cube of levels 0..max_level, filtered by membership.
inline std::vector<DyadicCube> exhaustive_gamma(const Cube& root, const Point& x, const Point& y, double m,
                                                int max_level) {
  std::vector<DyadicCube> out;
  for (int k = 0; k <= max_level; ++k) {
    const std::int64_t per = std::int64_t{1} << k;
    for (std::int64_t a = 0; a < per; ++a) {
      for (std::int64_t b = 0; b < (root.dim == 2 ? per : 1); ++b) {
        const DyadicCube q{k, {a, b}};
        if (in_dilated(q, root, x, m) && in_dilated(q, root, y, m)) out.push_back(q);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool strictly_inside(const DyadicCube& inner, const DyadicCube& outer, const Cube& root) {
  if (inner.level <= outer.level) return false;
  const Cube a = geometry(inner, root), b = geometry(outer, root);
  for (int d = 0; d < root.dim; ++d) {
    if (a.corner[d] < b.corner[d] || a.corner[d] + a.edge > b.corner[d] + b.edge) return false;
  }
  return true;
}

// Members with no proper dyadic descendant in the set, by pairwise comparison.
inline std::vector<DyadicCube> minimal(const std::vector<DyadicCube>& gamma, const Cube& root) {
  std::vector<DyadicCube> out;
  for (const auto& q : gamma) {
    bool has_descendant = false;
    for (const auto& r : gamma) has_descendant = has_descendant || strictly_inside(r, q, root);
    if (!has_descendant) out.push_back(q);
  }
  return out;
}

// Applies the set definitions for each k directly: J meets I_k, misses
// I_0..I_{k-1}, and J is (kind 1) or is not (kind 2) inside I_{k+1}.
struct RingLabel {
  int k = -1;
  int kind = 0;
};

inline RingLabel ring_of(const DyadicCube& q, const Cube& root, const Point& x, const Point& y) {
  const int n = root.dim;
  const double dist = std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]));
  const double base = std::sqrt(static_cast<double>(n)) * dist;
  const auto shell = [&](int k) {
    const double e = base * std::pow(2.0, k);
    return Cube{n, {(x[0] + y[0]) / 2 - e / 2, n == 2 ? (x[1] + y[1]) / 2 - e / 2 : 0.0}, e};
  };
  const auto meets = [n](const Cube& a, const Cube& b) {
    for (int d = 0; d < n; ++d) {
      if (a.corner[d] + a.edge < b.corner[d] || b.corner[d] + b.edge < a.corner[d]) return false;
    }
    return true;
  };
  const auto within = [n](const Cube& a, const Cube& b) {
    for (int d = 0; d < n; ++d) {
      if (a.corner[d] < b.corner[d] || a.corner[d] + a.edge > b.corner[d] + b.edge) return false;
    }
    return true;
  };
  const Cube J = geometry(q, root);
  for (int k = 0; k < 2000; ++k) {
    bool earlier = false;
    for (int i = 0; i < k; ++i) earlier = earlier || meets(J, shell(i));
    if (earlier || !meets(J, shell(k))) continue;
    return {k, within(J, shell(k + 1)) ? 1 : 2};
  }
  return {};
}

}  // namespace oracle
