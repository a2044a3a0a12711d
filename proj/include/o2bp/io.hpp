// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "o2bp/integrator.hpp"
#include "o2bp/montecarlo.hpp"

namespace o2bp::io {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_real(double value);

/// Writes `# <line>` for each metadata line.
void write_comment(std::ostream& os, const std::string& metadata);

/// Path CSV with header `t,x,y`.
void write_path_csv(std::ostream& os, const Path& path, const std::string& metadata);

/// Stationary samples as CSV with header `x,y`.
void write_samples_csv(std::ostream& os, const std::vector<mc::QuadrantPoint>& samples,
                       const std::string& metadata);

/// Hitting events as CSV with header `path_id,event,time`; one row per
/// observed event, in path order then corner, x_edge, y_edge.
void write_events_csv(std::ostream& os, const std::vector<EventTimes>& events,
                      const std::string& metadata);

} // namespace o2bp::io
