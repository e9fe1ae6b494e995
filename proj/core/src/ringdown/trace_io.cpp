#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "detail/format.hpp"
#include "membranekit/ringdown.hpp"

namespace mkit::ringdown {

void write_trace(std::ostream& out, const TimeSeries& series) {
  out << "# t0=" << detail::format_double(series.t0) << " dt=" << detail::format_double(series.dt)
      << " n=" << series.size() << '\n';
  for (double v : series.samples) out << detail::format_double(v) << '\n';
  if (!out) throw Error("failed writing time-series trace");
}

TimeSeries read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("trace: empty input");
  TimeSeries series;
  std::size_t expected = 0;
  {
    std::string_view header = detail::trim(line);
    if (header.empty() || header.front() != '#') {
      throw ValidationError("trace line 1: expected '# t0=<s> dt=<s> n=<count>' header");
    }
    header.remove_prefix(1);
    bool have_t0 = false, have_dt = false, have_n = false;
    std::istringstream fields{std::string(header)};
    std::string token;
    while (fields >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw ValidationError("trace line 1: malformed field '" + token + "'");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      double parsed = 0.0;
      if (!detail::parse_double(value, parsed)) {
        throw ValidationError("trace line 1: bad number in '" + token + "'");
      }
      if (key == "t0") {
        series.t0 = parsed;
        have_t0 = true;
      } else if (key == "dt") {
        series.dt = parsed;
        have_dt = true;
      } else if (key == "n") {
        if (parsed < 0.0 || parsed != std::floor(parsed)) {
          throw ValidationError("trace line 1: n must be a non-negative integer");
        }
        expected = static_cast<std::size_t>(parsed);
        have_n = true;
      } else {
        throw ValidationError("trace line 1: unknown field '" + key + "'");
      }
    }
    if (!have_t0 || !have_dt || !have_n) {
      throw ValidationError("trace line 1: header needs t0, dt and n");
    }
    if (!(series.dt > 0.0)) throw ValidationError("trace line 1: dt must be positive");
  }
  series.samples.reserve(expected);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    double v = 0.0;
    if (!detail::parse_double(text, v) || !std::isfinite(v)) {
      throw ValidationError("trace line " + std::to_string(line_no) + ": not a finite number");
    }
    series.samples.push_back(v);
  }
  if (series.samples.size() != expected) {
    throw ValidationError("trace: header declares " + std::to_string(expected) +
                          " samples, found " + std::to_string(series.samples.size()));
  }
  return series;
}

}  // namespace mkit::ringdown
