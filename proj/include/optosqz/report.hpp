#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "optosqz/config.hpp"
#include "optosqz/sweep.hpp"

namespace optosqz {

// 9 significant digits; NaN as "nan", infinities as "inf"/"-inf".
std::string format_number(double v);

// Header: axis columns, then stable,max_re_eig,n_roots, then the measures
// in request order. Comma separated, '\n' terminated, no quoting.
void write_csv(const SweepResult& result, std::ostream& out);
std::vector<std::string> csv_header(const SweepResult& result);

// Array of objects keyed like the CSV header; NaN becomes null.
void write_json(const SweepResult& result, std::ostream& out);

// Flat key/value report of a single operating point. Values are already
// formatted; the order is stable.
struct PointReport {
  std::vector<std::pair<std::string, std::string>> entries;
  // Set when the point is stable but the covariance could not be computed.
  bool numerical_failure = false;
  std::string failure_message;
};

PointReport evaluate_point_report(const RunConfig& cfg);
void write_point_text(const PointReport& rep, std::ostream& out);
void write_point_json(const PointReport& rep, std::ostream& out);

}  // namespace optosqz
