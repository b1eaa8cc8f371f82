#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lpq/grid.hpp"

namespace lpq {

enum class CorpusKind { constant, harmonic, gaussian_bump, smoothed_step, spectral_noise, schwartz_like };

std::string_view to_string(CorpusKind kind) noexcept;
CorpusKind corpus_kind_from_string(std::string_view name);

/// A deterministic test function. Fields not used by `kind` are ignored.
struct CorpusSpec {
  std::string id;
  CorpusKind kind = CorpusKind::constant;
  int dim = 1;
  int size = 64;
  std::uint64_t seed = 0;

  double value = 1.0;           // constant
  Index frequency{1, 0};        // harmonic: cos(2 pi xi0 . x)
  double width = 0.1;           // gaussian_bump, schwartz_like
  double sharpness = 40.0;      // smoothed_step
  double slope = 1.0;           // spectral_noise: |fhat(xi)| = |xi|^{-s - n/2}

  /// Copy with a different grid shape.
  CorpusSpec at(int new_dim, int new_size) const;
};

/// Samples the CorpusSpec on its grid. Every kind except constant has zero mean.
/// spectral_noise phases are a hash of (seed, xi), so a spec sampled at N and
/// 2N shares every frequency representable at N. Nyquist-line coefficients are zero.
GridFunction generate(const CorpusSpec& spec);

/// Members expected to have resolution-stable norms for this alpha:
/// spectral noise with slopes alpha + 0.2 and alpha + 0.4, two harmonics, two bumps.
std::vector<CorpusSpec> converged_corpus(int dim, int size, double alpha);

/// converged_corpus plus constant, smoothed_step and schwartz_like members.
std::vector<CorpusSpec> default_corpus(int dim, int size, double alpha);

}  // namespace lpq
