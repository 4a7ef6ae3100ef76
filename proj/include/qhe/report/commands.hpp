#pragma once

#include "qhe/report/config.hpp"

namespace qhe::report {

// Each command writes into config.out_dir and returns 0 when every checked
// invariant holds, 1 otherwise. Invalid input raises ConfigError or DomainError.
int cmd_dispersion(const RunConfig& config);
int cmd_current(const RunConfig& config);
int cmd_cylinder(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_scaling(const RunConfig& config);

}  // namespace qhe::report
