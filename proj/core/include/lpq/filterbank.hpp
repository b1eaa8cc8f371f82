#pragma once

#include <string>
#include <vector>

#include "lpq/grid.hpp"

namespace lpq {

/// Shape of the radial cutoff chi, which equals 1 on |xi| <= 1 and 0 on |xi| >= 2.
enum class ProfileFamily {
  /// chi(r) = eta(2 - r) / (eta(2 - r) + eta(r - 1)), eta(t) = exp(-1/t) for t > 0.
  exponential,
  /// Same transition taken in log2 r, giving a differently shaped band.
  log_exponential,
};

enum class BandKind { standard, modified, lowpass };

double cutoff(double radius, ProfileFamily family = ProfileFamily::exponential);
/// psi_hat_j(xi) = chi(2^-j |xi|) - chi(2^{1-j} |xi|), supported in 2^{j-1} <= |xi| <= 2^{j+1}.
double band_multiplier(double radius, int band, ProfileFamily family = ProfileFamily::exponential);
/// |2^-j xi|^alpha psi_hat_j(xi); zero at xi = 0.
double modified_band_multiplier(double radius, int band, double alpha,
                                ProfileFamily family = ProfileFamily::exponential);
/// sum_{j < j_min} psi_hat_j = chi(2^{1 - j_min} |xi|).
double lowpass_multiplier(double radius, int j_min, ProfileFamily family = ProfileFamily::exponential);

/// A Fourier multiplier sampled on the grid frequencies, FFT order.
struct BandProfile {
  int band = 0;
  BandKind kind = BandKind::standard;
  double alpha = 0.0;  // modified kind only
  int dim = 1;
  int size = 8;
  std::vector<double> multiplier;
};

/// Euclidean |xi| of every grid frequency, FFT order.
std::vector<double> frequency_radii(int dim, int size);

/// Lowpass profile first, then standard profiles j = j_min .. L+1. At every
/// grid frequency the profiles sum to 1.
std::vector<BandProfile> build_profiles(int dim, int log2_size, int j_min,
                                        ProfileFamily family = ProfileFamily::exponential);

BandProfile modified_profile(int dim, int log2_size, int band, double alpha,
                             ProfileFamily family = ProfileFamily::exponential);

GridFunction band_project(const GridFunction& f, const BandProfile& profile);
/// Applies the multiplier |2^-j xi|^alpha psi_hat(2^-j xi). alpha outside (0,1) only warns.
GridFunction band_project_modified(const GridFunction& f, int band, double alpha,
                                   ProfileFamily family = ProfileFamily::exponential);

/// f = lowpass + sum_j bands[j - j_min].
struct BandDecomposition {
  int j_min = 0;
  int j_max = 0;
  std::vector<GridFunction> bands;
  GridFunction lowpass;

  bool has_band(int j) const noexcept { return j >= j_min && j <= j_max; }
  const GridFunction& band(int j) const;
};

BandDecomposition decompose(const GridFunction& f, int j_min,
                            ProfileFamily family = ProfileFamily::exponential);

/// One row per grid frequency: xi components, |xi|, then each profile's value.
std::string profiles_csv(const std::vector<BandProfile>& profiles);

}  // namespace lpq
