#include "lpq/filterbank.hpp"

#include <cmath>
#include <sstream>

#include "lpq/error.hpp"
#include "lpq/format.hpp"

namespace lpq {

namespace {

double eta(double t) noexcept { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth step from 1 (s <= 0) to 0 (s >= 1).
double transition(double s) noexcept {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double a = eta(1.0 - s);
  const double b = eta(s);
  return a / (a + b);
}

void check_band_range(int log2_size, int j_min) {
  if (j_min < 0 || j_min > log2_size) {
    throw ConfigError("j_min must lie in [0, L], got " + std::to_string(j_min));
  }
}

}  // namespace

double cutoff(double radius, ProfileFamily family) {
  switch (family) {
    case ProfileFamily::exponential:
      return transition(radius - 1.0);
    case ProfileFamily::log_exponential:
      return radius <= 1.0 ? 1.0 : transition(std::log2(radius));
  }
  return 0.0;
}

double band_multiplier(double radius, int band, ProfileFamily family) {
  const double scaled = std::ldexp(radius, -band);
  return cutoff(scaled, family) - cutoff(2.0 * scaled, family);
}

double modified_band_multiplier(double radius, int band, double alpha, ProfileFamily family) {
  if (radius == 0.0) return 0.0;
  return std::pow(std::ldexp(radius, -band), alpha) * band_multiplier(radius, band, family);
}

double lowpass_multiplier(double radius, int j_min, ProfileFamily family) {
  return cutoff(std::ldexp(radius, 1 - j_min), family);
}

std::vector<double> frequency_radii(int dim, int size) {
  check_dim(dim);
  const std::size_t total = dim == 1 ? static_cast<std::size_t>(size) : static_cast<std::size_t>(size) * size;
  std::vector<double> radii(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (dim == 1) {
      radii[flat] = std::abs(static_cast<double>(SpectralFunction::frequency_of_slot(flat, size)));
    } else {
      const auto a = static_cast<double>(SpectralFunction::frequency_of_slot(flat / size, size));
      const auto b = static_cast<double>(SpectralFunction::frequency_of_slot(flat % size, size));
      radii[flat] = std::sqrt(a * a + b * b);
    }
  }
  return radii;
}

std::vector<BandProfile> build_profiles(int dim, int log2_size, int j_min, ProfileFamily family) {
  check_band_range(log2_size, j_min);
  const int size = 1 << log2_size;
  const auto radii = frequency_radii(dim, size);

  std::vector<BandProfile> profiles;
  BandProfile low{j_min, BandKind::lowpass, 0.0, dim, size, std::vector<double>(radii.size())};
  for (std::size_t i = 0; i < radii.size(); ++i) low.multiplier[i] = lowpass_multiplier(radii[i], j_min, family);
  profiles.push_back(std::move(low));

  for (int j = j_min; j <= log2_size + 1; ++j) {
    BandProfile p{j, BandKind::standard, 0.0, dim, size, std::vector<double>(radii.size())};
    for (std::size_t i = 0; i < radii.size(); ++i) p.multiplier[i] = band_multiplier(radii[i], j, family);
    profiles.push_back(std::move(p));
  }
  return profiles;
}

BandProfile modified_profile(int dim, int log2_size, int band, double alpha, ProfileFamily family) {
  if (band < 0 || band > log2_size + 1) throw ConfigError("band index outside the built range");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    warn("modified operator with alpha = " + format_double(alpha) + " outside the regime (0, 1)");
  }
  const int size = 1 << log2_size;
  const auto radii = frequency_radii(dim, size);
  BandProfile p{band, BandKind::modified, alpha, dim, size, std::vector<double>(radii.size())};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    p.multiplier[i] = modified_band_multiplier(radii[i], band, alpha, family);
  }
  return p;
}

namespace {

GridFunction apply_multiplier(const SpectralFunction& spectrum, const std::vector<double>& multiplier) {
  SpectralFunction product = spectrum;
  auto data = product.data();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= multiplier[i];
  return inverse_transform(product);
}

void check_profile_shape(const GridFunction& f, const BandProfile& p) {
  if (p.dim != f.dim() || p.size != f.size() || p.multiplier.size() != f.point_count()) {
    throw ConfigError("band profile and grid function have different shapes");
  }
}

}  // namespace

GridFunction band_project(const GridFunction& f, const BandProfile& profile) {
  check_profile_shape(f, profile);
  return apply_multiplier(transform(f), profile.multiplier);
}

GridFunction band_project_modified(const GridFunction& f, int band, double alpha, ProfileFamily family) {
  return band_project(f, modified_profile(f.dim(), f.log2_size(), band, alpha, family));
}

const GridFunction& BandDecomposition::band(int j) const {
  if (!has_band(j)) {
    throw ConfigError("band " + std::to_string(j) + " not in decomposition [" + std::to_string(j_min) + ", " +
                      std::to_string(j_max) + "]");
  }
  return bands[static_cast<std::size_t>(j - j_min)];
}

BandDecomposition decompose(const GridFunction& f, int j_min, ProfileFamily family) {
  const auto profiles = build_profiles(f.dim(), f.log2_size(), j_min, family);
  const auto spectrum = transform(f);
  BandDecomposition out{j_min, f.log2_size() + 1, {}, apply_multiplier(spectrum, profiles.front().multiplier)};
  out.bands.reserve(profiles.size() - 1);
  for (std::size_t p = 1; p < profiles.size(); ++p) {
    out.bands.push_back(apply_multiplier(spectrum, profiles[p].multiplier));
  }
  return out;
}

std::string profiles_csv(const std::vector<BandProfile>& profiles) {
  if (profiles.empty()) return {};
  const int dim = profiles.front().dim;
  const int size = profiles.front().size;
  for (const auto& p : profiles) {
    if (p.dim != dim || p.size != size) throw ConfigError("profiles must share one grid shape");
  }
  std::ostringstream out;
  out << (dim == 1 ? "xi" : "xi0,xi1") << ",abs_xi";
  for (const auto& p : profiles) {
    switch (p.kind) {
      case BandKind::lowpass: out << ",lowpass"; break;
      case BandKind::standard: out << ",band_" << p.band; break;
      case BandKind::modified: out << ",modified_" << p.band; break;
    }
  }
  out << '\n';
  const auto radii = frequency_radii(dim, size);
  const SpectralFunction layout(dim, size, std::vector<std::complex<double>>(radii.size()));
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto xi = layout.frequency_of(i);
    out << xi[0];
    if (dim == 2) out << ',' << xi[1];
    out << ',' << format_double(radii[i]);
    for (const auto& p : profiles) out << ',' << format_double(p.multiplier[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace lpq
