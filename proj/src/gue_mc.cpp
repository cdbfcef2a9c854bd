#include "jumphankel/gue_mc.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "jumphankel/errors.hpp"
#include "jumphankel/opsys.hpp"

namespace jumphankel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kBlock = 1 << 14;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Region region_from_config(const JumpWeightConfig& config) {
  auto factor_ok = [](const Real& f) { return f.is_zero() || f == 1L; };
  Real f = config.omega()[0];
  if (!factor_ok(f)) throw ConfigError("omega", "omega_0 must be 0 or 1 for an indicator region");
  Region out;
  double start = -kInf;
  bool inside = f == 1L;
  for (int k = 1; k <= config.m(); ++k) {
    f = f + config.omega_jump(k);
    if (!factor_ok(f))
      throw ConfigError("omega", "partial sums of omega must stay in {0, 1} for an indicator region");
    const double t = config.t()[static_cast<size_t>(k - 1)].to_double();
    const bool now = f == 1L;
    if (now == inside) continue;
    if (now)
      start = t;
    else
      out.push_back({start, t});
    inside = now;
  }
  if (inside) out.push_back({start, kInf});
  return out;
}

JumpWeightConfig config_from_region(const Region& region, Precision p) {
  std::vector<Real> t, omega;
  omega.push_back(Real(!region.empty() && region.front().lo == -kInf ? 1L : 0L, p));
  for (const auto& iv : region) {
    if (iv.lo != -kInf) {
      t.push_back(Real(iv.lo, p));
      omega.push_back(Real(1L, p));
    }
    if (iv.hi != kInf) {
      t.push_back(Real(iv.hi, p));
      omega.push_back(Real(-1L, p));
    }
  }
  return JumpWeightConfig::make(std::move(t), std::move(omega), p);
}

bool region_contains(const Region& region, double x) {
  for (const auto& iv : region)
    if (iv.lo <= x && x <= iv.hi) return true;
  return false;
}

Region parse_region(const std::string& text) {
  Region out;
  std::stringstream ss(text);
  std::string piece;
  auto num = [](const std::string& s) {
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("region", "bad endpoint '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("region", "bad endpoint '" + s + "'");
    return v;
  };
  while (std::getline(ss, piece, ',')) {
    const auto colon = piece.find(':');
    if (colon == std::string::npos) throw ConfigError("region", "expected lo:hi, got '" + piece + "'");
    const Interval iv{num(piece.substr(0, colon)), num(piece.substr(colon + 1))};
    if (!(iv.lo < iv.hi)) throw ConfigError("region", "empty interval '" + piece + "'");
    if (!out.empty() && !(out.back().hi < iv.lo))
      throw ConfigError("region", "intervals must be disjoint and increasing");
    out.push_back(iv);
  }
  if (out.empty()) throw ConfigError("region", "no intervals");
  return out;
}

std::string format_region(const Region& region) {
  std::ostringstream os;
  os.precision(17);
  for (size_t i = 0; i < region.size(); ++i) {
    if (i) os << ',';
    os << region[i].lo << ':' << region[i].hi;
  }
  return os.str();
}

SpectrumSample sample_spectrum(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("sample_spectrum: n must be >= 1");
  std::normal_distribution<double> diag(0.0, std::sqrt(0.5)), off(0.0, 0.5);
  Eigen::MatrixXcd H(n, n);
  double trace = 0.0;
  for (int i = 0; i < n; ++i) {
    H(i, i) = diag(rng);
    trace += H(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      const double re = off(rng), im = off(rng);
      H(i, j) = {re, im};
      H(j, i) = {re, -im};
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EigFailure("eigensolver did not converge for n = " + std::to_string(n));
  SpectrumSample s{n, {}, trace};
  s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return s;
}

std::vector<MCEstimate> estimate_probabilities(int n, const std::vector<Region>& regions, long samples,
                                               std::uint64_t seed, unsigned threads) {
  if (samples < 10000) throw ConfigError("samples", "at least 10^4 samples are required");
  if (n < 1) throw ConfigError("n", "n must be >= 1");
  const long blocks = (samples + kBlock - 1) / kBlock;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, blocks));

  std::vector<std::vector<long>> block_hits(static_cast<size_t>(blocks), std::vector<long>(regions.size(), 0));
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  auto worker = [&]() {
    for (long b = next++; b < blocks && !failed; b = next++) {
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(b))));
      const long count = std::min(kBlock, samples - b * kBlock);
      auto& hits = block_hits[static_cast<size_t>(b)];
      for (long i = 0; i < count; ++i) {
        SpectrumSample s;
        // a failed solve is redrawn from the same stream
        for (int attempt = 0;; ++attempt) {
          try {
            s = sample_spectrum(n, rng);
            break;
          } catch (const EigFailure& e) {
            if (attempt == 8) {
              failed = true;
              failure = e.what();
              return;
            }
          }
        }
        for (size_t r = 0; r < regions.size(); ++r)
          if (std::all_of(s.eigenvalues.begin(), s.eigenvalues.end(),
                          [&](double x) { return region_contains(regions[r], x); }))
            ++hits[r];
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failed) throw EigFailure(failure);

  std::vector<MCEstimate> out(regions.size());
  for (size_t r = 0; r < regions.size(); ++r) {
    long hits = 0;
    for (const auto& bh : block_hits) hits += bh[r];
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    out[r] = {samples, hits, p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
  }
  return out;
}

MCEstimate estimate_probability(int n, const Region& region, long samples, std::uint64_t seed,
                                unsigned threads) {
  return estimate_probabilities(n, {region}, samples, seed, threads).front();
}

Real determinant_probability(const Region& region, int n, Precision p) {
  return hankel_det(n, config_from_region(region, p)) / hankel_det(n, JumpWeightConfig::pure_gaussian(p));
}

MCComparison compare_with_determinant(const MCEstimate& mc, const Real& p_det) {
  MCComparison c;
  c.mc = mc;
  c.p_det = p_det.to_double();
  c.null_std_err = std::sqrt(std::max(0.0, c.p_det * (1.0 - c.p_det)) / static_cast<double>(mc.samples));
  const double dev = std::abs(mc.p_hat - c.p_det);
  // a degenerate null (p_det 0 or 1) has to be hit exactly
  c.z_score = c.null_std_err > 0 ? dev / c.null_std_err : (dev < 1e-15 ? 0.0 : kInf);
  return c;
}

}  // namespace jumphankel
