#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jumphankel/real.hpp"

namespace jumphankel {

/// One identity evaluated once: |lhs - rhs| together with the magnitude of the
/// largest term involved, so callers can judge it absolutely or relatively.
struct Residual {
  std::string identity;
  int n = -1;  // degree, -1 if not applicable
  int k = 0;   // jump channel (1-based), 0 if not applicable
  Real abs;
  Real scale;

  Real rel() const { return scale.is_zero() ? abs : abs / scale; }
};

class ResidualReport {
 public:
  /// Records |lhs - rhs| with scale max(|lhs|, |rhs|).
  void add(std::string identity, int n, int k, const Real& lhs, const Real& rhs);
  /// Records a residual whose scale was computed by the caller.
  void add_scaled(std::string identity, int n, int k, const Real& residual, const Real& scale);
  void append(const ResidualReport& other);

  const std::vector<Residual>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  /// Identity names in first-seen order.
  std::vector<std::string> identities() const;
  /// Maximum over entries whose identity matches (all entries if empty).
  Real max_abs(std::string_view identity = {}) const;
  Real max_rel(std::string_view identity = {}) const;

 private:
  std::vector<Residual> items_;
};

}  // namespace jumphankel
