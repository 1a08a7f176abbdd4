#include "ttstar/error.hpp"

namespace ttstar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Reference: return "reference";
    case ErrorKind::Type: return "type";
    case ErrorKind::Substitution: return "substitution";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Freshness: return "freshness";
    case ErrorKind::Incompatibility: return "incompatibility";
    case ErrorKind::Gated: return "gated";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::SizeCap: return "size-cap";
    case ErrorKind::Replay: return "replay";
    case ErrorKind::Model: return "model";
  }
  return "unknown";
}

}  // namespace ttstar
