#include "qres_cli/statefile.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "qres/error.hpp"

namespace qres::cli {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

int parse_int(const std::string& text, const std::string& where) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    parse_error(where + ": expected an integer, got '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  parse_error(where + ": expected a number, got '" + text + "'");
}

CVector qubit_ket(const std::string& token) {
  const double h = 1.0 / std::sqrt(2.0);
  CVector v(2);
  if (token == "0") v << 1.0, 0.0;
  else if (token == "1") v << 0.0, 1.0;
  else if (token == "+") v << h, h;
  else if (token == "-") v << h, -h;
  else parse_error("product: unknown qubit label '" + token + "' (use 0, 1, + or -)");
  return v;
}

CMatrix parse_matrix_rows(const nlohmann::json& rows, int expected, const std::string& field) {
  if (!rows.is_array()) parse_error(field + ": expected an array of rows");
  if (static_cast<int>(rows.size()) != expected) {
    parse_error(field + ": expected " + std::to_string(expected) + " rows, got " +
                std::to_string(rows.size()));
  }
  CMatrix m(expected, expected);
  for (int i = 0; i < expected; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != expected) {
      parse_error(where + ": expected " + std::to_string(expected) + " entries");
    }
    for (int j = 0; j < expected; ++j) {
      m(i, j) = complex_from_json(row[static_cast<std::size_t>(j)],
                                  where + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

}  // namespace

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_error(where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

StateFile parse_state_file(const nlohmann::json& doc) {
  if (!doc.is_object()) parse_error("state file: expected an object");
  if (!doc.contains("dims")) parse_error("dims: missing");
  const auto& dims = doc["dims"];
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() ||
      !dims[1].is_number_integer()) {
    parse_error("dims: expected [d_a, d_b]");
  }
  const int da = dims[0].get<int>();
  const int db = dims[1].get<int>();
  if (da < 1 || db < 1 || da * db < 2) {
    throw Error(ErrorKind::DimensionMismatch, "dims: [" + std::to_string(da) + ", " +
                                                  std::to_string(db) + "] is not a valid system");
  }
  if (!doc.contains("matrix")) parse_error("matrix: missing");
  StateFile file;
  file.dims = Dims(da, db);
  file.matrix = parse_matrix_rows(doc["matrix"], da * db, "matrix");
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) parse_error("label: expected a string");
    file.label = doc["label"].get<std::string>();
  }
  return file;
}

StateFile read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("state file '" + path.string() + "': cannot open");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error("state file '" + path.string() + "': " + e.what());
  }
  return parse_state_file(doc);
}

nlohmann::json to_json(const StateFile& file) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < file.matrix.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < file.matrix.cols(); ++j) row.push_back(complex_to_json(file.matrix(i, j)));
    rows.push_back(std::move(row));
  }
  nlohmann::json doc{{"dims", {file.dims.a(), file.dims.b()}}, {"matrix", std::move(rows)}};
  if (!file.label.empty()) doc["label"] = file.label;
  return doc;
}

QState to_state(const StateFile& file) { return make_state(file.dims, file.matrix); }

StateFile from_state(const QState& s, std::string label) {
  return StateFile{s.dims(), s.matrix(), std::move(label)};
}

QState preset(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const double h = 1.0 / std::sqrt(2.0);

  if (name == "bell" || name == "ghz2") {
    if (!arg.empty()) parse_error("preset " + name + ": takes no argument");
    CVector v = CVector::Zero(4);
    v(0) = h;
    v(3) = h;
    return from_pure(Dims(2, 2), v);
  }
  if (name == "werner") {
    const double p = parse_double(arg, "preset werner");
    if (!(p >= 0.0 && p <= 1.0)) parse_error("preset werner: p must lie in [0, 1]");
    CVector v = CVector::Zero(4);
    v(0) = h;
    v(3) = h;
    const CMatrix m = p * (v * v.adjoint()) + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
    return make_state(Dims(2, 2), m);
  }
  if (name == "product") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) parse_error("preset product: expected product:a,b");
    const CVector v = kron(qubit_ket(arg.substr(0, comma)), qubit_ket(arg.substr(comma + 1)));
    return from_pure(Dims(2, 2), v);
  }
  if (name == "maxmixed") {
    const auto x = arg.find('x');
    if (x == std::string::npos) {
      const int d = parse_int(arg, "preset maxmixed");
      if (d < 2) throw Error(ErrorKind::DimensionMismatch, "preset maxmixed: d must be at least 2");
      return maximally_mixed(Dims(d, 1));
    }
    const int da = parse_int(arg.substr(0, x), "preset maxmixed");
    const int db = parse_int(arg.substr(x + 1), "preset maxmixed");
    if (da < 1 || db < 1 || da * db < 2) {
      throw Error(ErrorKind::DimensionMismatch, "preset maxmixed: invalid dims");
    }
    return maximally_mixed(Dims(da, db));
  }
  parse_error("unknown preset '" + spec + "'");
}

ObservableBasis parse_basis(const std::string& spec, int dim, Subsystem subsystem) {
  if (spec == "z") return computational_basis(dim, subsystem);
  if (spec == "fourier" || spec == "x") return fourier_basis(dim, subsystem);

  std::ifstream in(spec);
  if (!in) parse_error("basis: '" + spec + "' is neither z, x, fourier nor a readable file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error("basis file '" + spec + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("vectors")) parse_error("basis file: vectors missing");
  const auto& rows = doc["vectors"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "basis file: expected " + std::to_string(dim) + " vectors");
  }
  CMatrix cols(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const auto& vec = rows[static_cast<std::size_t>(k)];
    const std::string where = "vectors[" + std::to_string(k) + "]";
    if (!vec.is_array() || static_cast<int>(vec.size()) != dim) {
      throw Error(ErrorKind::DimensionMismatch, where + ": expected " + std::to_string(dim) + " entries");
    }
    for (int i = 0; i < dim; ++i) {
      cols(i, k) = complex_from_json(vec[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
    }
  }
  return ObservableBasis(cols, subsystem);
}

}  // namespace qres::cli
