#include "editscore/error.hpp"

namespace editscore {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kParse: return "parse_error";
    case ErrorKind::kSchema: return "schema_error";
    case ErrorKind::kRange: return "range_error";
    case ErrorKind::kDuplicate: return "duplicate_error";
    case ErrorKind::kOrphan: return "orphan_error";
    case ErrorKind::kInconsistent: return "inconsistency_error";
    case ErrorKind::kPrecondition: return "precondition_error";
    case ErrorKind::kNumeric: return "numeric_error";
    case ErrorKind::kSingularDesign: return "singular_design";
    case ErrorKind::kIo: return "io_error";
  }
  return "error";
}

std::string Provenance::str() const {
  if (file.empty()) return {};
  if (line == 0) return file;
  return file + ":" + std::to_string(line);
}

namespace {

std::string compose(const std::string& message, const Provenance& where) {
  if (where.empty()) return message;
  return where.str() + ": " + message;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, Provenance where)
    : std::runtime_error(compose(message, where)),
      kind_(kind),
      where_(std::move(where)),
      detail_(message) {}

void fail(ErrorKind kind, const std::string& message, Provenance where) {
  throw Error(kind, message, std::move(where));
}

}  // namespace editscore
