#include "rankstream/text_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace rankstream {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_weight(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
    throw ParseError(line, "malformed weight '" + std::string(field) + "'");
  }
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ParseError(line, "weight must be finite and non-negative, got '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

std::vector<WeightedVote> read_votes(std::istream& in) {
  std::vector<WeightedVote> votes;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    double weight = 1.0;
    std::string_view ranks = text;
    if (const auto semi = text.find(';'); semi != std::string_view::npos) {
      weight = parse_weight(trim(text.substr(0, semi)), line);
      ranks = trim(text.substr(semi + 1));
    }
    try {
      votes.push_back({Permutation::parse(ranks), weight});
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
    if (votes.back().ranking.size() != votes.front().ranking.size()) {
      throw ParseError(line, "vote has " + std::to_string(votes.back().ranking.size()) +
                                 " items, expected " +
                                 std::to_string(votes.front().ranking.size()));
    }
  }
  if (votes.empty()) throw ParseError(0, "votes file contains no votes");
  return votes;
}

std::string format_number(double value) {
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buffer.data(), end);
}

void write_records_csv(std::ostream& out, std::span<const EvaluationRecord> records) {
  out << "rho,run,step,since_drift,error\n";
  for (const auto& r : records) {
    out << format_number(r.rho) << ',' << r.run << ',' << r.step << ',' << r.since_drift << ','
        << r.error << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "rho,step,mean_error,ci_low,ci_high\n";
  for (const auto& r : rows) {
    out << format_number(r.rho) << ',' << r.step << ',' << format_number(r.mean_error) << ','
        << format_number(r.ci_low) << ',' << format_number(r.ci_high) << '\n';
  }
}

std::string schedule_to_json(const DriftSchedule& schedule) {
  nlohmann::json doc;
  doc["theta"] = schedule.theta;
  doc["segments"] = nlohmann::json::array();
  for (const auto& segment : schedule.segments) {
    doc["segments"].push_back({{"center", segment.center.to_string()}, {"length", segment.length}});
  }
  return doc.dump(2);
}

DriftSchedule schedule_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    DriftSchedule schedule;
    schedule.theta = doc.at("theta").get<double>();
    for (const auto& entry : doc.at("segments")) {
      const auto length = entry.at("length").get<long long>();
      if (length < 1) throw std::invalid_argument("segment length must be at least 1");
      schedule.segments.push_back({Permutation::parse(entry.at("center").get<std::string>()),
                                   static_cast<std::size_t>(length)});
    }
    schedule.validate();
    return schedule;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("schedule json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("schedule json: ") + e.what());
  }
}

}  // namespace rankstream
