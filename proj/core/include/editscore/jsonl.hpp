#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "editscore/error.hpp"
#include "editscore/types.hpp"

namespace editscore::jsonl {

// One value of a flat JSON object. Nested objects are not part of any record
// schema; arrays may hold numbers or strings.
struct Field {
  enum class Kind { kNull, kBool, kInteger, kFloat, kString, kNumberArray, kStringArray };

  Kind kind = Kind::kNull;
  std::string text;  // raw number text for kInteger/kFloat, value for kString
  bool boolean = false;
  std::int64_t integer = 0;
  double number = 0.0;
  std::vector<double> numbers;
  std::vector<std::string> strings;
};

std::string_view to_string(Field::Kind kind) noexcept;

class Record {
 public:
  Provenance where;

  const Field* find(std::string_view key) const noexcept;
  bool contains(std::string_view key) const noexcept { return find(key) != nullptr; }
  const std::vector<std::pair<std::string, Field>>& fields() const noexcept { return fields_; }

  // Typed accessors; a missing or mistyped required key is a schema error.
  std::string string(std::string_view key) const;
  std::optional<std::string> optional_string(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  std::optional<Decimal> optional_decimal(std::string_view key) const;
  std::vector<double> number_array(std::string_view key) const;
  std::vector<std::string> string_array(std::string_view key) const;

  // Keys outside `allowed`. Strict callers reject them; lenient callers warn.
  std::vector<std::string> unknown_keys(std::initializer_list<std::string_view> allowed) const;

  void add(std::string key, Field value);

 private:
  std::vector<std::pair<std::string, Field>> fields_;
};

// Parses one line holding a single flat JSON object.
Record parse_line(std::string_view line, Provenance where);

// Parses newline-delimited objects; blank lines are skipped.
std::vector<Record> read(std::istream& in, const std::string& source_name);
std::vector<Record> read_file(const std::filesystem::path& path);

// Compact JSON serialization helpers used by the canonical writers.
std::string quote(std::string_view s);

class ObjectWriter {
 public:
  ObjectWriter& string(std::string_view key, std::string_view value);
  ObjectWriter& raw(std::string_view key, std::string_view json_text);
  ObjectWriter& integer(std::string_view key, std::int64_t value);
  ObjectWriter& number(std::string_view key, double value);
  ObjectWriter& numbers(std::string_view key, const std::vector<double>& values);
  std::string str() const { return body_ + "}"; }

 private:
  void key(std::string_view k);
  std::string body_ = "{";
  bool first_ = true;
};

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace editscore::jsonl
