#include "jumphankel/weight.hpp"

#include <sstream>

#include "jumphankel/errors.hpp"
#include "jumphankel/quadrature.hpp"

namespace jumphankel {

void JumpWeightConfig::validate(const std::vector<Real>& t, const std::vector<Real>& omega) {
  if (omega.size() != t.size() + 1)
    throw ConfigError("omega", "expected " + std::to_string(t.size() + 1) +
                                   " entries (m + 1), got " + std::to_string(omega.size()));
  for (size_t k = 0; k < t.size(); ++k) {
    if (!t[k].is_finite()) throw ConfigError("t", "entry " + std::to_string(k) + " is not finite");
    if (k > 0 && !(t[k - 1] < t[k]))
      throw ConfigError("t", "jump locations must be strictly increasing");
  }
  Real partial(omega.front().precision());
  bool any_positive = false;
  for (size_t l = 0; l < omega.size(); ++l) {
    if (!omega[l].is_finite())
      throw ConfigError("omega", "entry " + std::to_string(l) + " is not finite");
    partial = partial + omega[l];
    if (partial < 0L)
      throw ConfigError("omega", "partial sum omega_0 + ... + omega_" + std::to_string(l) +
                                     " is negative; the weight must be nonnegative");
    if (partial > 0L) any_positive = true;
  }
  if (!any_positive) throw ConfigError("omega", "weight vanishes identically");
}

JumpWeightConfig JumpWeightConfig::make(std::vector<Real> t, std::vector<Real> omega,
                                        Precision p) {
  for (auto& v : t) v = v.rounded_to(p);
  for (auto& v : omega) v = v.rounded_to(p);
  if (omega.empty()) throw ConfigError("omega", "must not be empty");
  validate(t, omega);
  return JumpWeightConfig(std::move(t), std::move(omega), p);
}

JumpWeightConfig JumpWeightConfig::make(const std::vector<double>& t,
                                        const std::vector<double>& omega, Precision p) {
  std::vector<Real> tt, ww;
  for (double v : t) tt.emplace_back(v, p);
  for (double v : omega) ww.emplace_back(v, p);
  return make(std::move(tt), std::move(ww), p);
}

JumpWeightConfig JumpWeightConfig::pure_gaussian(Precision p) {
  return make(std::vector<Real>{}, std::vector<Real>{Real(1L, p)}, p);
}

JumpWeightConfig JumpWeightConfig::shifted(const Real& s) const {
  JumpWeightConfig c = *this;
  for (auto& v : c.t_) v = (v + s).rounded_to(prec_);
  return c;
}

JumpWeightConfig JumpWeightConfig::with_jump(int k, const Real& tk) const {
  const size_t i = static_cast<size_t>(k - 1);
  if (i > 0 && !(t_[i - 1] < tk))
    throw StepCollision("moving t_" + std::to_string(k) + " to " + tk.to_string(12) +
                        " crosses t_" + std::to_string(k - 1));
  if (i + 1 < t_.size() && !(tk < t_[i + 1]))
    throw StepCollision("moving t_" + std::to_string(k) + " to " + tk.to_string(12) +
                        " crosses t_" + std::to_string(k + 1));
  JumpWeightConfig c = *this;
  c.t_[i] = tk.rounded_to(prec_);
  return c;
}

JumpWeightConfig JumpWeightConfig::scaled(const Real& c) const {
  if (!(c > 0L)) throw ConfigError("scale", "must be positive");
  JumpWeightConfig out = *this;
  for (auto& w : out.omega_) w = (w * c).rounded_to(prec_);
  return out;
}

std::string JumpWeightConfig::describe() const {
  std::ostringstream os;
  os << "m=" << m() << " t=(";
  for (size_t k = 0; k < t_.size(); ++k) os << (k ? "," : "") << t_[k].to_string(8);
  os << ") omega=(";
  for (size_t k = 0; k < omega_.size(); ++k) os << (k ? "," : "") << omega_[k].to_string(8);
  os << ") bits=" << prec_.bits();
  return os.str();
}

Real weight_eval(const Real& x, const JumpWeightConfig& config) {
  Real factor = config.omega()[0];
  for (int k = 1; k <= config.m(); ++k)
    if (config.t()[static_cast<size_t>(k - 1)] < x) factor = factor + config.omega_jump(k);
  return exp(-square(x)) * factor;
}

MomentTable moments(const JumpWeightConfig& config, unsigned max_order) {
  const Precision p = config.precision();
  MomentTable table{config, {}};
  table.mu.reserve(max_order + 1);
  std::vector<std::vector<Real>> tails;
  for (const Real& tk : config.t()) tails.push_back(gauss_tail_moments(max_order, tk));
  for (unsigned j = 0; j <= max_order; ++j) {
    Real mu = config.omega()[0] * gauss_full_moment(j, p);
    for (int k = 1; k <= config.m(); ++k)
      mu = mu + config.omega_jump(k) * tails[static_cast<size_t>(k - 1)][j];
    table.mu.push_back(std::move(mu));
  }
  return table;
}

Real moment_by_quadrature(const JumpWeightConfig& config, unsigned j, const Real& tol) {
  const Precision p = config.precision();
  std::vector<Real> cuts;
  cuts.push_back(Real::infinity(p, -1));
  for (const Real& tk : config.t()) cuts.push_back(tk);
  cuts.push_back(Real::infinity(p, +1));
  Real total(p);
  Real factor(p);
  for (size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    factor = factor + config.omega()[piece];
    if (factor.is_zero()) continue;
    auto f = [&](const Real& x) { return pow(x, static_cast<long>(j)) * exp(-square(x)); };
    total = total + factor * tanh_sinh_integrate(f, cuts[piece], cuts[piece + 1], tol).value;
  }
  return total;
}

}  // namespace jumphankel
