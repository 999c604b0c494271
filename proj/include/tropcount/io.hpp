#pragma once

// Problem files, reports and catalog listings.
//
// Problem files are line based; see docs/problem-format.md for the grammar.
// Every numeric literal is an exact integer or fraction.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "tropcount/counting.hpp"
#include "tropcount/enumerate.hpp"
#include "tropcount/problem.hpp"

namespace tropcount {

inline constexpr std::string_view kProblemHeader = "tropcount-problem 1";
inline constexpr std::string_view kReportSchema = "tropcount-report/1";

/// Syntax or semantic error at a 1-based line and column of a problem file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses and fully validates a problem document. Throws ParseError for
/// syntax errors and invalid declarations, Error(Invalid) when the assembled
/// problem is ill-formed and Error(DimensionMismatch) when the conditions do
/// not balance the expected dimension.
Problem parse_problem(std::string_view document);

/// Reads and parses a file; an unreadable file is a ParseError at line 0.
Problem read_problem_file(const std::filesystem::path& path);

/// Canonical document; parse_problem(emit_problem(p)) == p for valid p.
std::string emit_problem(const Problem& p);

/// Multi-line description of a type (vertices, edges, ends, markings).
std::string format_type(const CombinatorialType& t);

std::string format_catalog(const TypeCatalog& catalog);

struct ReportOptions {
  /// Also report the count divided by |Aut(Delta)|.
  bool unlabeled = false;
};

std::string format_report_text(const CountReport& r, const ReportOptions& options = {});

/// JSON document with schema kReportSchema; all numbers are exact strings.
std::string format_report_json(const CountReport& r, const ReportOptions& options = {});

}  // namespace tropcount
