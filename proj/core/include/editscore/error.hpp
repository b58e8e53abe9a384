#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace editscore {

enum class ErrorKind {
  kParse,
  kSchema,
  kRange,
  kDuplicate,
  kOrphan,
  kInconsistent,
  kPrecondition,
  kNumeric,
  kSingularDesign,
  kIo,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Location of an offending input record. An empty file means "not from a file".
struct Provenance {
  std::string file;
  std::size_t line = 0;

  bool empty() const noexcept { return file.empty(); }
  std::string str() const;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, Provenance where = {});

  ErrorKind kind() const noexcept { return kind_; }
  const Provenance& where() const noexcept { return where_; }
  // Message without the provenance prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  Provenance where_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, Provenance where = {});

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::kPrecondition, message);
}

}  // namespace editscore
