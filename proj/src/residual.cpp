#include "jumphankel/residual.hpp"

#include <algorithm>

namespace jumphankel {

void ResidualReport::add(std::string identity, int n, int k, const Real& lhs, const Real& rhs) {
  items_.push_back({std::move(identity), n, k, abs(lhs - rhs), max(abs(lhs), abs(rhs))});
}

void ResidualReport::add_scaled(std::string identity, int n, int k, const Real& residual,
                                const Real& scale) {
  items_.push_back({std::move(identity), n, k, abs(residual), abs(scale)});
}

void ResidualReport::append(const ResidualReport& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::vector<std::string> ResidualReport::identities() const {
  std::vector<std::string> names;
  for (const auto& r : items_)
    if (std::find(names.begin(), names.end(), r.identity) == names.end())
      names.push_back(r.identity);
  return names;
}

Real ResidualReport::max_abs(std::string_view identity) const {
  Real m;
  bool first = true;
  for (const auto& r : items_) {
    if (!identity.empty() && r.identity != identity) continue;
    if (first || m < r.abs) m = r.abs;
    first = false;
  }
  return m;
}

Real ResidualReport::max_rel(std::string_view identity) const {
  Real m;
  bool first = true;
  for (const auto& r : items_) {
    if (!identity.empty() && r.identity != identity) continue;
    Real v = r.rel();
    if (first || m < v) m = v;
    first = false;
  }
  return m;
}

}  // namespace jumphankel
