#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "jumphankel/weight.hpp"

namespace jumphankel {

/// Closed interval, ends may be infinite.
struct Interval {
  double lo;
  double hi;
};
/// Disjoint, increasing union of intervals.
using Region = std::vector<Interval>;

/// Region where the step factor of config equals 1. ConfigError("omega") unless
/// the factor only takes the values 0 and 1.
Region region_from_config(const JumpWeightConfig& config);
/// Indicator weight of a region (finite endpoints become jumps).
JumpWeightConfig config_from_region(const Region& region, Precision p = Precision());
bool region_contains(const Region& region, double x);
/// "lo:hi,lo:hi" with inf/-inf allowed. ConfigError("region") on bad input.
Region parse_region(const std::string& text);
std::string format_region(const Region& region);

struct SpectrumSample {
  int n = 0;
  std::vector<double> eigenvalues;  // ascending
  double trace = 0.0;               // Tr H, for the similarity check
};

/// One draw of an n x n Hermitian matrix with density ~ e^{-Tr H^2}.
/// EigFailure if the eigensolver does not converge.
SpectrumSample sample_spectrum(int n, std::mt19937_64& rng);

struct MCEstimate {
  long samples = 0;
  long hits = 0;
  double p_hat = 0.0;
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / samples)
};

/// Fractions of samples with every eigenvalue inside each region, all regions
/// on the same draws. Samples are split in fixed blocks whose seeds derive from
/// seed alone, so the result does not depend on threads (0 = hardware).
/// ConfigError("samples") below 10^4.
std::vector<MCEstimate> estimate_probabilities(int n, const std::vector<Region>& regions, long samples,
                                               std::uint64_t seed, unsigned threads = 0);
MCEstimate estimate_probability(int n, const Region& region, long samples, std::uint64_t seed,
                                unsigned threads = 0);

/// D_n(indicator weight) / D_n(Gaussian).
Real determinant_probability(const Region& region, int n, Precision p = Precision());

struct MCComparison {
  MCEstimate mc;
  double p_det = 0.0;
  double null_std_err = 0.0;  // sqrt(p_det (1 - p_det) / samples)
  double z_score = 0.0;       // |p_hat - p_det| / null_std_err
};
MCComparison compare_with_determinant(const MCEstimate& mc, const Real& p_det);

}  // namespace jumphankel
