#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpq/corpus.hpp"
#include "lpq/cubes.hpp"
#include "lpq/filterbank.hpp"
#include "lpq/grid.hpp"
#include "lpq/norms.hpp"

// Experiment harness: each check turns one norm comparison or lemma into a
// deterministic, reproducible report. A "bounded" relation is verified by
// recording the ratio over a population and its stability under refinement.
namespace lpq {

/// Relative discrepancies use max(|reference|, kDiscrepancyFloor) as denominator.
inline constexpr double kDiscrepancyFloor = 1e-300;
/// Norm values below this are treated as zero (constant input).
inline constexpr double kZeroNorm = 1e-10;
/// Per-doubling ratio drift above this flags a trend.
inline constexpr double kDriftLimit = 0.2;

/// The "sup over all cubes" family: dyadic levels 0..level_max, optionally
/// with the half-shifted copy. level_max < 0 selects L - 3.
struct CubeFamily {
  int level_max = -1;
  bool shifted = true;

  std::vector<Cube> cubes(int dim, int log2_size) const;
};

double relative_discrepancy(double value, double reference) noexcept;

struct EquivalenceRow {
  std::string id;
  int size = 0;
  double q_alpha = 0.0;
  double lp_morrey = 0.0;
  double ratio = 0.0;  // lp_morrey / q_alpha; 0 when both_zero
  bool both_zero = false;
  Cube q_argmax;
  Cube lp_argmax;
};

struct ResolutionTrend {
  std::string id;
  std::vector<double> ratios;         // one per size
  std::vector<double> drift;          // per-doubling relative change between consecutive sizes
  double max_drift = 0.0;
  bool monotone = false;
  bool flagged = false;               // max_drift > kDriftLimit
};

struct EquivalenceReport {
  double alpha = 0.0;
  std::vector<int> sizes;
  std::vector<EquivalenceRow> rows;
  std::vector<ResolutionTrend> trends;
  double c_low = 0.0;
  double c_high = 0.0;
  std::vector<std::string> notes;

  double spread() const noexcept { return c_low > 0.0 ? c_high / c_low : 0.0; }
};

/// Both sides of the Littlewood-Paley characterization for every (function, N).
EquivalenceReport equivalence_report(std::span<const CorpusSpec> corpus, double alpha, std::span<const int> sizes,
                                     const CubeFamily& family = {}, ProfileFamily profiles = ProfileFamily::exponential);

/// |dyadic_lp - dyadic_lp_rearranged| / max(dyadic_lp, floor).
double fubini_identity_check(const BandDecomposition& bands, double alpha, const Cube& cube, int depth);

struct FubiniSweep {
  std::size_t checks = 0;
  double max_discrepancy = 0.0;
  std::string worst_id;
  double worst_alpha = 0.0;
  Cube worst_cube;
  int worst_depth = 0;
};

/// Every function x alpha x dyadic cube of levels 0..max_cube_level x K in
/// 0..max_depth (skipping K out of range for a cube).
FubiniSweep fubini_sweep(std::span<const CorpusSpec> corpus, std::span<const double> alphas, int max_cube_level,
                         int max_depth);

/// sum_{k=0}^{K} 2^{(2 alpha - n) k} sum_{J in D_k(I)} |J|^{-2} h^{2n} sum_{x,y in mJ} w w |f(x) - f(y)|^2,
/// with mJ sampled periodically.
double lemma23_lhs(const GridFunction& f, double alpha, double m, const Cube& cube, int depth);

struct Lemma23Record {
  std::string id;  // filled by callers that sweep a corpus
  double alpha = 0.0;
  double m = 2.0;
  int depth = 0;
  double lhs = 0.0;
  double q_alpha = 0.0;
  double ratio = 0.0;  // lhs / (m^{2 alpha + 2n} q_alpha^2); 0 for constants
};

Lemma23Record lemma23_check(const GridFunction& f, double alpha, double m, const Cube& cube, int depth,
                            const CubeFamily& family = {});

struct DecayRecord {
  double alpha = 0.0;
  double m = 2.0;
  int dim = 1;
  std::vector<KernelEvaluation> rows;
  double slope = 0.0;                  // least squares of log k_full on log |x - y|
  double max_full_product = 0.0;       // max k_full |x-y|^{2 alpha + n}
  double max_allowed_product = 0.0;
  double max_full_over_allowed = 0.0;  // empirical constant of the Gamma / allowed comparison
  std::size_t max_second = 0;          // max_k #Gamma_k^(2)
  double max_first_normalized = 0.0;   // max_k #Gamma_k^(1) / m^n
  bool subset_ok = true;               // k_full >= k_allowed on every pair
};

DecayRecord kernel_decay_check(double alpha, double m, int dim, std::size_t pair_count, std::uint64_t seed,
                               int extra_levels = 0);

struct EmbeddingRow {
  std::string id;
  int size = 0;
  double q_alpha = 0.0;
  double morrey_besov = 0.0;
  double ratio = 0.0;  // q_alpha / morrey_besov
  bool excluded = false;
  bool violation = false;  // zero MB with nonzero Q_alpha
};

struct EmbeddingReport {
  double alpha = 0.0;
  std::vector<EmbeddingRow> rows;
  double max_ratio = 0.0;
  bool violation = false;
};

EmbeddingReport embedding_check(std::span<const CorpusSpec> corpus, double alpha, const CubeFamily& family = {});

}  // namespace lpq
