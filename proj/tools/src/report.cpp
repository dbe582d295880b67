#include "qres_cli/report.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qres/error.hpp"
#include "qres_cli/statefile.hpp"

namespace qres::cli {

namespace {

nlohmann::json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorKind::Parse, "report: expected a number");
}

nlohmann::json fields_json(const Fields& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, v] : f) out.push_back({{"name", k}, {"value", number(v)}});
  return out;
}

Fields fields_from(const nlohmann::json& j) {
  Fields out;
  for (const auto& e : j) out.emplace_back(e.at("name").get<std::string>(), number_from(e.at("value")));
  return out;
}

nlohmann::json vectors_json(const std::vector<std::vector<Complex>>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : vs) {
    nlohmann::json row = nlohmann::json::array();
    for (Complex z : v) row.push_back(complex_to_json(z));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Complex>> vectors_from(const nlohmann::json& j) {
  std::vector<std::vector<Complex>> out;
  for (const auto& row : j) {
    std::vector<Complex> v;
    for (const auto& z : row) v.push_back(complex_from_json(z, "report vector"));
    out.push_back(std::move(v));
  }
  return out;
}

std::string fmt(double v, int precision = 9) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string fmt_vector(const std::vector<Complex>& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s << ", ";
    s << std::setprecision(6) << v[i].real();
    if (v[i].imag() != 0.0) s << (v[i].imag() < 0 ? " - " : " + ") << std::abs(v[i].imag()) << 'i';
  }
  s << ')';
  return s.str();
}

void table_fields(std::ostream& out, const char* title, const Fields& f) {
  if (f.empty()) return;
  out << title << '\n';
  for (const auto& [k, v] : f) out << "  " << std::left << std::setw(28) << k << fmt(v, 12) << '\n';
}

void table_vectors(std::ostream& out, const char* title, const std::vector<std::vector<Complex>>& vs) {
  if (vs.empty()) return;
  out << title << '\n';
  for (std::size_t i = 0; i < vs.size(); ++i) out << "  |" << i << "> = " << fmt_vector(vs[i]) << '\n';
}

void csv_fields(std::ostream& out, const char* section, const Fields& f) {
  for (const auto& [k, v] : f) out << section << ',' << k << ',' << fmt(v, 17) << '\n';
}

}  // namespace

std::vector<std::vector<Complex>> basis_rows(const ObservableBasis& basis) {
  std::vector<std::vector<Complex>> out;
  for (int k = 0; k < basis.dim(); ++k) {
    const CVector v = basis.vector(k);
    out.emplace_back(v.data(), v.data() + v.size());
  }
  return out;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j{{"tool", r.tool},
                   {"version", r.version},
                   {"seed", r.seed},
                   {"command", r.command},
                   {"label", r.label},
                   {"dims", {r.dims_a, r.dims_b}}};
  if (!r.quantifier.empty()) j["quantifier"] = r.quantifier;
  if (!r.destroyer.empty()) j["destroyer"] = r.destroyer;
  if (r.value) j["value"] = {{"nats", number(*r.value)}, {"bits", number(*r.value / std::numbers::ln2)}};
  if (!r.basis.empty()) j["basis"] = vectors_json(r.basis);
  if (!r.context_a.empty() || !r.context_b.empty()) {
    j["context"] = {{"a", vectors_json(r.context_a)}, {"b", vectors_json(r.context_b)}};
  }
  if (!r.diagnostics.empty()) j["diagnostics"] = fields_json(r.diagnostics);
  if (!r.checks.empty()) j["checks"] = fields_json(r.checks);
  if (!r.ledger.empty()) j["ledger"] = fields_json(r.ledger);
  if (!r.columns.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
      nlohmann::json jr = nlohmann::json::array();
      for (double v : row) jr.push_back(number(v));
      rows.push_back(std::move(jr));
    }
    j["columns"] = r.columns;
    j["rows"] = std::move(rows);
  }
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  try {
    r.tool = j.at("tool").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.command = j.at("command").get<std::string>();
    r.label = j.at("label").get<std::string>();
    r.dims_a = j.at("dims").at(0).get<int>();
    r.dims_b = j.at("dims").at(1).get<int>();
    if (j.contains("quantifier")) r.quantifier = j["quantifier"].get<std::string>();
    if (j.contains("destroyer")) r.destroyer = j["destroyer"].get<std::string>();
    if (j.contains("value")) r.value = number_from(j["value"].at("nats"));
    if (j.contains("basis")) r.basis = vectors_from(j["basis"]);
    if (j.contains("context")) {
      r.context_a = vectors_from(j["context"].at("a"));
      r.context_b = vectors_from(j["context"].at("b"));
    }
    if (j.contains("diagnostics")) r.diagnostics = fields_from(j["diagnostics"]);
    if (j.contains("checks")) r.checks = fields_from(j["checks"]);
    if (j.contains("ledger")) r.ledger = fields_from(j["ledger"]);
    if (j.contains("columns")) {
      r.columns = j["columns"].get<std::vector<std::string>>();
      for (const auto& row : j.at("rows")) {
        std::vector<double> values;
        for (const auto& v : row) values.push_back(number_from(v));
        r.rows.push_back(std::move(values));
      }
    }
    if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("report: ") + e.what());
  }
  return r;
}

void write_report(std::ostream& out, const Report& r, Format format) {
  if (format == Format::Json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  if (format == Format::Csv) {
    if (!r.columns.empty()) {
      for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
      out << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt(row[i], 17);
        out << '\n';
      }
      return;
    }
    out << "section,name,value\n";
    out << "meta,seed," << r.seed << '\n';
    if (r.value) {
      out << "value,nats," << fmt(*r.value, 17) << '\n';
      out << "value,bits," << fmt(*r.value / std::numbers::ln2, 17) << '\n';
    }
    csv_fields(out, "ledger", r.ledger);
    csv_fields(out, "check", r.checks);
    csv_fields(out, "diagnostic", r.diagnostics);
    return;
  }

  out << r.tool << ' ' << r.version << "  seed " << r.seed << "  " << r.command;
  if (!r.label.empty()) out << "  state " << r.label;
  out << "  dims (" << r.dims_a << ',' << r.dims_b << ")\n";
  if (!r.quantifier.empty()) out << "quantifier  " << r.quantifier << '\n';
  if (!r.destroyer.empty()) out << "destroyer   " << r.destroyer << '\n';
  if (r.value) {
    out << "value       " << fmt(*r.value, 12) << " nats  (" << fmt(*r.value / std::numbers::ln2, 12)
        << " bits)\n";
  }
  table_vectors(out, "basis", r.basis);
  table_vectors(out, "context A", r.context_a);
  table_vectors(out, "context B", r.context_b);
  table_fields(out, "ledger", r.ledger);
  if (!r.columns.empty()) {
    for (const auto& c : r.columns) out << std::left << std::setw(20) << c;
    out << '\n';
    for (const auto& row : r.rows) {
      for (double v : row) out << std::left << std::setw(20) << fmt(v, 12);
      out << '\n';
    }
  }
  table_fields(out, "checks", r.checks);
  table_fields(out, "diagnostics", r.diagnostics);
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

}  // namespace qres::cli
