#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "qres/qstate.hpp"

namespace qres::cli {

// On-disk state: {"dims": [d_a, d_b], "matrix": [[[re, im], ...], ...], "label": "..."}.
struct StateFile {
  Dims dims{2, 1};
  CMatrix matrix;
  std::string label;
};

// Throws Error(Parse) naming the offending field, row and column.
StateFile parse_state_file(const nlohmann::json& doc);
StateFile read_state_file(const std::filesystem::path& path);
nlohmann::json to_json(const StateFile& file);

QState to_state(const StateFile& file);
StateFile from_state(const QState& s, std::string label = {});

// bell, ghz2, werner:p, product:a,b (a, b in {0,1,+,-}), maxmixed:d,
// maxmixed:AxB.
QState preset(const std::string& spec);

// z, x, fourier, or a path to {"vectors": [[[re, im], ...], ...]} whose rows
// are the basis vectors. x is the Fourier basis for dim > 2.
ObservableBasis parse_basis(const std::string& spec, int dim, Subsystem subsystem);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace qres::cli
