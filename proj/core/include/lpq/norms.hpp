#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpq/filterbank.hpp"
#include "lpq/grid.hpp"

namespace lpq {

enum class NormKind { q_alpha, campanato, lp_morrey, dyadic_lp, morrey_besov };

std::string_view to_string(NormKind kind) noexcept;

struct CubeValue {
  Cube cube;
  double value = 0.0;
};

/// Sup-type norm over a finite cube family. Each table entry is the square root
/// of that cube's quantity, so value == max over the table.
struct NormReport {
  NormKind kind = NormKind::q_alpha;
  double exponent = 0.0;  // alpha, or lambda for campanato
  double value = 0.0;
  Cube argmax;
  std::vector<CubeValue> table;
  std::vector<std::string> notes;
};

/// l(I)^{2 alpha - n} h^{2n} sum_{x != y in I} w(x) w(y) |f(x) - f(y)|^2 / |x - y|^{2 alpha + n}.
/// Distances are straight-line inside the cube; values are sampled periodically.
/// Returns 0 when the cube has fewer than two lattice points.
double q_alpha_cube(const GridFunction& f, double alpha, const Cube& cube);

/// l(I)^{-lambda} h^n sum_{x in I} w(x) |f(x) - f_I|^2.
double campanato_cube(const GridFunction& f, double lambda, const Cube& cube);

/// |I|^{-(1 - 2 alpha / n)} sum_{j >= -log2 l(I)} 2^{2 alpha j} ||Delta_j f||^2_{L^2(I)}.
double lp_morrey_cube(const BandDecomposition& bands, double alpha, const Cube& cube);

/// Lowest band j entering a cube's sum: ceil(-log2 l(I)).
int lowest_band(const Cube& cube) noexcept;

NormReport q_alpha(const GridFunction& f, double alpha, std::span<const Cube> cubes);
NormReport campanato(const GridFunction& f, double lambda, std::span<const Cube> cubes);
NormReport lp_morrey(const GridFunction& f, double alpha, std::span<const Cube> cubes,
                     const BandDecomposition& bands);

/// sum_{k=0}^{K} 2^{(2 alpha - n) k} sum_{J in D_k(I)} |J|^{-1} sum_{j >= -log2 l(J)} ||Delta_j f||^2_{L^2(J)}.
/// I must be dyadic; K <= L - level(I) - 3.
double dyadic_lp(const BandDecomposition& bands, double alpha, const Cube& cube, int depth);

/// The same quantity after exchanging the k and j sums:
/// |I|^{-1} sum_j w_j(K) ||Delta_j f||^2_{L^2(I)}, w_j(K) = sum_{k=0}^{min(K, j - level(I))} 2^{2 alpha k}.
double dyadic_lp_rearranged(const BandDecomposition& bands, double alpha, const Cube& cube, int depth);

/// w_j(K) for a band j that sits `offset` = j - level(I) octaves below the cube scale.
double fubini_weight(double alpha, int depth, int offset);

/// sup over cubes I in the family with K in range of sqrt(dyadic_lp(I, K)).
NormReport dyadic_lp_norm(const GridFunction& f, double alpha, std::span<const Cube> cubes, int depth,
                          const BandDecomposition& bands);

struct BandSupremum {
  int band = 0;
  double value = 0.0;  // sup_I |I|^{-sigma/n} 2^{2 alpha j} ||Delta_j f||^2_{L^2(I)}
  Cube argmax;
};

struct MorreyBesovReport {
  double alpha = 0.0;
  double sigma = 0.0;
  double value = 0.0;
  std::vector<BandSupremum> bands;
};

/// (sum_j (sup_I |I|^{-sigma/n} int_I (2^{alpha j} |Delta_j f|)^q)^{p/q})^{1/p}.
/// Only p = q = 2 is implemented; other exponents throw ConfigError.
MorreyBesovReport morrey_besov(const BandDecomposition& bands, double alpha, double sigma, double p, double q,
                               std::span<const Cube> cubes);

}  // namespace lpq
