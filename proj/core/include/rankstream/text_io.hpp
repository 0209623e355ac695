#pragma once

// Text formats: votes files, experiment CSVs and drift schedules as JSON.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rankstream/aggregation.hpp"
#include "rankstream/stream_harness.hpp"

namespace rankstream {

/// Malformed input; `line()` is 1-based, 0 when not line-oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One vote per line: `w;r1,r2,...,rn` or `r1,...,rn` (weight 1). Blank lines and
/// lines starting with '#' are skipped. All votes must share one size.
std::vector<WeightedVote> read_votes(std::istream& in);

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

/// Header `rho,run,step,since_drift,error`, one row per record.
void write_records_csv(std::ostream& out, std::span<const EvaluationRecord> records);

/// Header `rho,step,mean_error,ci_low,ci_high`.
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

/// `{"theta": t, "segments": [{"center": "1,2,3", "length": 100}, ...]}`
std::string schedule_to_json(const DriftSchedule& schedule);
/// Throws ParseError on malformed JSON or invalid contents.
DriftSchedule schedule_from_json(std::string_view text);

}  // namespace rankstream
