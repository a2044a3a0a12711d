// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#include "o2bp/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace o2bp::io {

std::string format_real(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_comment(std::ostream& os, const std::string& metadata)
{
    if (metadata.empty())
        return;
    std::istringstream lines(metadata);
    for (std::string line; std::getline(lines, line);)
        os << "# " << line << '\n';
}

void write_path_csv(std::ostream& os, const Path& path, const std::string& metadata)
{
    write_comment(os, metadata);
    os << "t,x,y\n";
    for (const auto& s : path.states)
        os << format_real(s.t) << ',' << format_real(s.x) << ',' << format_real(s.y) << '\n';
}

void write_samples_csv(std::ostream& os, const std::vector<mc::QuadrantPoint>& samples,
                       const std::string& metadata)
{
    write_comment(os, metadata);
    os << "x,y\n";
    for (const auto& q : samples)
        os << format_real(q.x) << ',' << format_real(q.y) << '\n';
}

void write_events_csv(std::ostream& os, const std::vector<EventTimes>& events,
                      const std::string& metadata)
{
    write_comment(os, metadata);
    os << "path_id,event,time\n";
    for (std::size_t i = 0; i < events.size(); ++i)
    {
        const auto& e = events[i];
        if (e.corner)
            os << i << ",corner," << format_real(*e.corner) << '\n';
        if (e.x_edge)
            os << i << ",x_edge," << format_real(*e.x_edge) << '\n';
        if (e.y_edge)
            os << i << ",y_edge," << format_real(*e.y_edge) << '\n';
    }
}

} // namespace o2bp::io
