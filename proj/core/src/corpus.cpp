#include "lpq/corpus.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lpq/error.hpp"
#include "lpq/format.hpp"

namespace lpq {

std::string_view to_string(CorpusKind kind) noexcept {
  switch (kind) {
    case CorpusKind::constant: return "constant";
    case CorpusKind::harmonic: return "harmonic";
    case CorpusKind::gaussian_bump: return "gaussian_bump";
    case CorpusKind::smoothed_step: return "smoothed_step";
    case CorpusKind::spectral_noise: return "spectral_noise";
    case CorpusKind::schwartz_like: return "schwartz_like";
  }
  return "unknown";
}

CorpusKind corpus_kind_from_string(std::string_view name) {
  for (auto kind : {CorpusKind::constant, CorpusKind::harmonic, CorpusKind::gaussian_bump, CorpusKind::smoothed_step,
                    CorpusKind::spectral_noise, CorpusKind::schwartz_like}) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown corpus kind '" + std::string(name) + "'");
}

CorpusSpec CorpusSpec::at(int new_dim, int new_size) const {
  CorpusSpec copy = *this;
  copy.dim = new_dim;
  copy.size = new_size;
  return copy;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double phase_of(std::uint64_t seed, const Index& xi) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(xi[0]));
  h = splitmix64(h ^ static_cast<std::uint64_t>(xi[1]));
  return 2.0 * std::numbers::pi * static_cast<double>(h >> 11) * 0x1.0p-53;
}

// xi is the canonical member of {xi, -xi} when its first nonzero component is positive.
bool canonical(const Index& xi) noexcept { return xi[0] > 0 || (xi[0] == 0 && xi[1] > 0); }

template <class Fn>
std::vector<double> sample(int dim, int size, Fn&& fn) {
  const double h = 1.0 / size;
  std::vector<double> values;
  values.reserve(dim == 1 ? static_cast<std::size_t>(size) : static_cast<std::size_t>(size) * size);
  if (dim == 1) {
    for (int i = 0; i < size; ++i) values.push_back(fn(Point{i * h, 0.0}));
  } else {
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) values.push_back(fn(Point{i * h, j * h}));
    }
  }
  return values;
}

void remove_mean(std::vector<double>& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  for (double& v : values) v -= mean;
}

double squared_offset(const Point& x, int dim) noexcept {
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) r2 += (x[d] - 0.5) * (x[d] - 0.5);
  return r2;
}

GridFunction spectral_noise(const CorpusSpec& spec) {
  if (!(spec.slope > 0.0)) throw ConfigError("spectral_noise slope must be positive");
  const int n = spec.dim;
  const int size = spec.size;
  SpectralFunction spectrum(n, size, std::vector<std::complex<double>>(n == 1 ? size : size * size));
  auto data = spectrum.data();
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    const Index xi = spectrum.frequency_of(flat);
    bool nyquist = false;
    for (int d = 0; d < n; ++d) nyquist = nyquist || xi[d] == -size / 2;
    if (nyquist || (xi[0] == 0 && xi[1] == 0)) continue;
    const double radius = std::hypot(static_cast<double>(xi[0]), static_cast<double>(xi[1]));
    const double amplitude = std::pow(radius, -spec.slope - 0.5 * n);
    const bool is_canonical = canonical(xi);
    const Index key = is_canonical ? xi : Index{-xi[0], -xi[1]};
    const double theta = phase_of(spec.seed, key);
    data[flat] = std::polar(amplitude, is_canonical ? theta : -theta);
  }
  return inverse_transform(spectrum);
}

}  // namespace

GridFunction generate(const CorpusSpec& spec) {
  check_dim(spec.dim);
  checked_log2_size(spec.size);
  const int n = spec.dim;
  const double two_pi = 2.0 * std::numbers::pi;

  switch (spec.kind) {
    case CorpusKind::constant:
      return GridFunction::constant(n, spec.size, spec.value);

    case CorpusKind::harmonic: {
      bool zero = true;
      for (int d = 0; d < n; ++d) {
        zero = zero && spec.frequency[d] == 0;
        if (std::abs(spec.frequency[d]) > spec.size / 2) {
          throw ConfigError("harmonic frequency exceeds the Nyquist limit");
        }
      }
      if (zero) throw ConfigError("harmonic frequency must be nonzero");
      return GridFunction(n, spec.size, sample(n, spec.size, [&](const Point& x) {
                            double phase = 0.0;
                            for (int d = 0; d < n; ++d) phase += static_cast<double>(spec.frequency[d]) * x[d];
                            return std::cos(two_pi * phase);
                          }));
    }

    case CorpusKind::gaussian_bump: {
      if (!(spec.width > 0.0)) throw ConfigError("gaussian_bump width must be positive");
      auto values = sample(n, spec.size, [&](const Point& x) {
        return std::exp(-squared_offset(x, n) / (2.0 * spec.width * spec.width));
      });
      remove_mean(values);
      return GridFunction(n, spec.size, std::move(values));
    }

    case CorpusKind::smoothed_step: {
      if (!(spec.sharpness > 0.0)) throw ConfigError("smoothed_step sharpness must be positive");
      auto values = sample(n, spec.size, [&](const Point& x) {
        double v = 1.0;
        for (int d = 0; d < n; ++d) {
          v *= 0.5 * (std::tanh(spec.sharpness * (x[d] - 0.25)) - std::tanh(spec.sharpness * (x[d] - 0.75)));
        }
        return v;
      });
      remove_mean(values);
      return GridFunction(n, spec.size, std::move(values));
    }

    case CorpusKind::spectral_noise:
      return spectral_noise(spec);

    case CorpusKind::schwartz_like: {
      if (!(spec.width > 0.0)) throw ConfigError("schwartz_like width must be positive");
      auto values = sample(n, spec.size, [&](const Point& x) {
        return (x[0] - 0.5) / spec.width * std::exp(-squared_offset(x, n) / (2.0 * spec.width * spec.width));
      });
      remove_mean(values);
      return GridFunction(n, spec.size, std::move(values));
    }
  }
  throw ConfigError("unhandled corpus kind");
}

std::vector<CorpusSpec> converged_corpus(int dim, int size, double alpha) {
  std::vector<CorpusSpec> out;
  for (const auto& [offset, seed] : {std::pair{0.2, 11ULL}, std::pair{0.4, 23ULL}}) {
    CorpusSpec s;
    s.kind = CorpusKind::spectral_noise;
    s.slope = alpha + offset;
    s.seed = seed;
    s.id = "noise_s" + format_fixed(s.slope, 2);
    out.push_back(s);
  }
  for (std::int64_t freq : {1, 4}) {
    CorpusSpec s;
    s.kind = CorpusKind::harmonic;
    s.frequency = dim == 1 ? Index{freq, 0} : Index{freq, freq / 2};
    s.id = "harmonic_" + std::to_string(freq);
    out.push_back(s);
  }
  for (double width : {0.1, 0.05}) {
    CorpusSpec s;
    s.kind = CorpusKind::gaussian_bump;
    s.width = width;
    s.id = "bump_w" + format_fixed(width, 2);
    out.push_back(s);
  }
  for (auto& s : out) s = s.at(dim, size);
  return out;
}

std::vector<CorpusSpec> default_corpus(int dim, int size, double alpha) {
  auto out = converged_corpus(dim, size, alpha);
  CorpusSpec constant;
  constant.id = "constant";
  constant.kind = CorpusKind::constant;
  constant.value = 1.0;
  CorpusSpec step;
  step.id = "step_40";
  step.kind = CorpusKind::smoothed_step;
  step.sharpness = 40.0;
  CorpusSpec schwartz;
  schwartz.id = "schwartz";
  schwartz.kind = CorpusKind::schwartz_like;
  schwartz.width = 0.1;
  for (auto* s : {&constant, &step, &schwartz}) out.push_back(s->at(dim, size));
  return out;
}

}  // namespace lpq
