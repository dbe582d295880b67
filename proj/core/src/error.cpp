#include "qres/error.hpp"

namespace qres {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotBipartite: return "NotBipartite";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::WrongDimensions: return "WrongDimensions";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::UnknownPairing: return "UnknownPairing";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace qres
