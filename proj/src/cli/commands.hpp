#pragma once

#include "artifact.hpp"

namespace jumphankel::cli {

Artifact cmd_moments(const RunConfig& rc);
Artifact cmd_ops(const RunConfig& rc);
Artifact cmd_hankel(const RunConfig& rc);
Artifact cmd_ladder(const RunConfig& rc);
Artifact cmd_iterate(const RunConfig& rc);
Artifact cmd_verify(const RunConfig& rc);
Artifact cmd_sigma_pde(const RunConfig& rc);
Artifact cmd_riccati(const RunConfig& rc);
Artifact cmd_toda(const RunConfig& rc);
Artifact cmd_cpiv(const RunConfig& rc, bool second_order);
Artifact cmd_scan(const RunConfig& rc, unsigned threads);
Artifact cmd_mc_compare(const RunConfig& rc, unsigned threads);

}  // namespace jumphankel::cli
