#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qres/qstate.hpp"

namespace qres::cli {

enum class Format { Table, Json, Csv };

using Fields = std::vector<std::pair<std::string, double>>;

// Output of compute, monitor and flow. Basis vectors are stored as rows.
struct Report {
  std::string tool = "qres";
  std::string version;
  std::uint64_t seed = 0;
  std::string command;
  std::string label;
  int dims_a = 0;
  int dims_b = 0;
  std::string quantifier;
  std::string destroyer;
  std::optional<double> value;  // nats
  std::vector<std::vector<Complex>> basis;
  std::vector<std::vector<Complex>> context_a;
  std::vector<std::vector<Complex>> context_b;
  Fields diagnostics;
  Fields checks;
  Fields ledger;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> warnings;

  bool operator==(const Report&) const = default;
};

std::vector<std::vector<Complex>> basis_rows(const ObservableBasis& basis);

// Infinite and NaN numbers encode as the strings "inf", "-inf", "nan".
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

void write_report(std::ostream& out, const Report& r, Format format);

}  // namespace qres::cli
