#include "editscore/jsonl.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>

#include <nlohmann/json.hpp>

namespace editscore::jsonl {

using json = nlohmann::json;

std::string_view to_string(Field::Kind kind) noexcept {
  switch (kind) {
    case Field::Kind::kNull: return "null";
    case Field::Kind::kBool: return "boolean";
    case Field::Kind::kInteger: return "integer";
    case Field::Kind::kFloat: return "float";
    case Field::Kind::kString: return "string";
    case Field::Kind::kNumberArray: return "number array";
    case Field::Kind::kStringArray: return "string array";
  }
  return "?";
}

namespace {

// SAX consumer for a single flat object. Keeps the raw text of floating-point
// numbers, which the DOM parser would discard.
class FlatHandler : public nlohmann::json_sax<json> {
 public:
  explicit FlatHandler(Record& out) : out_(out) {}

  bool null() override { return scalar(Field{}); }
  bool boolean(bool v) override {
    Field f;
    f.kind = Field::Kind::kBool;
    f.boolean = v;
    return scalar(std::move(f));
  }
  bool number_integer(number_integer_t v) override { return integer_value(v); }
  bool number_unsigned(number_unsigned_t v) override {
    if (v > static_cast<number_unsigned_t>(std::numeric_limits<std::int64_t>::max())) {
      return error("integer too large");
    }
    return integer_value(static_cast<std::int64_t>(v));
  }
  bool number_float(number_float_t v, const string_t& s) override {
    if (in_array_) return array_number(v);
    Field f;
    f.kind = Field::Kind::kFloat;
    f.number = v;
    f.text = s;
    return scalar(std::move(f));
  }
  bool string(string_t& s) override {
    if (in_array_) {
      if (!array_.numbers.empty()) return error("mixed array for key '" + key_ + "'");
      array_.kind = Field::Kind::kStringArray;
      array_.strings.push_back(s);
      return true;
    }
    Field f;
    f.kind = Field::Kind::kString;
    f.text = s;
    return scalar(std::move(f));
  }
  bool binary(binary_t&) override { return error("binary values are not supported"); }

  bool start_object(std::size_t) override {
    if (depth_ != 0 || in_array_) return error("nested objects are not supported (key '" + key_ + "')");
    ++depth_;
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    --depth_;
    done_ = true;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ != 1 || in_array_) return error("nested arrays are not supported");
    in_array_ = true;
    array_ = Field{};
    array_.kind = Field::Kind::kNumberArray;
    return true;
  }
  bool end_array() override {
    in_array_ = false;
    return put(std::move(array_));
  }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    message_ = "malformed JSON at byte " + std::to_string(position) + ": " + ex.what();
    return false;
  }

  const std::string& message() const noexcept { return message_; }
  bool done() const noexcept { return done_; }

 private:
  bool integer_value(std::int64_t v) {
    if (in_array_) return array_number(static_cast<double>(v));
    Field f;
    f.kind = Field::Kind::kInteger;
    f.integer = v;
    f.number = static_cast<double>(v);
    f.text = std::to_string(v);
    return scalar(std::move(f));
  }
  bool array_number(double v) {
    if (!array_.strings.empty()) return error("mixed array for key '" + key_ + "'");
    array_.numbers.push_back(v);
    return true;
  }
  bool scalar(Field f) {
    if (depth_ != 1) return error("expected a JSON object");
    if (in_array_) return error("arrays may hold only numbers or strings (key '" + key_ + "')");
    return put(std::move(f));
  }
  bool put(Field f) {
    if (out_.contains(key_)) return error("duplicate key '" + key_ + "'");
    out_.add(key_, std::move(f));
    return true;
  }
  bool error(std::string msg) {
    message_ = std::move(msg);
    return false;
  }

  Record& out_;
  int depth_ = 0;
  bool in_array_ = false;
  bool done_ = false;
  std::string key_;
  Field array_;
  std::string message_;
};

}  // namespace

const Field* Record::find(std::string_view key) const noexcept {
  for (const auto& [k, v] : fields_) {
    if (k == key) return &v;
  }
  return nullptr;
}

void Record::add(std::string key, Field value) { fields_.emplace_back(std::move(key), std::move(value)); }

namespace {

const Field& required(const Record& r, std::string_view key) {
  const Field* f = r.find(key);
  if (f == nullptr) fail(ErrorKind::kSchema, "missing required key '" + std::string(key) + "'", r.where);
  return *f;
}

[[noreturn]] void wrong_type(const Record& r, std::string_view key, const Field& f,
                             std::string_view expected) {
  fail(ErrorKind::kSchema,
       "key '" + std::string(key) + "' must be " + std::string(expected) + ", got " +
           std::string(to_string(f.kind)),
       r.where);
}

}  // namespace

std::string Record::string(std::string_view key) const {
  const Field& f = required(*this, key);
  if (f.kind != Field::Kind::kString) wrong_type(*this, key, f, "a string");
  return f.text;
}

std::optional<std::string> Record::optional_string(std::string_view key) const {
  const Field* f = find(key);
  if (f == nullptr || f->kind == Field::Kind::kNull) return std::nullopt;
  if (f->kind != Field::Kind::kString) wrong_type(*this, key, *f, "a string");
  return f->text;
}

std::int64_t Record::integer(std::string_view key) const {
  const Field& f = required(*this, key);
  if (f.kind != Field::Kind::kInteger) wrong_type(*this, key, f, "an integer");
  return f.integer;
}

std::optional<Decimal> Record::optional_decimal(std::string_view key) const {
  const Field* f = find(key);
  if (f == nullptr || f->kind == Field::Kind::kNull) return std::nullopt;
  if (f->kind != Field::Kind::kFloat && f->kind != Field::Kind::kInteger) {
    wrong_type(*this, key, *f, "a number");
  }
  return Decimal{f->text, f->number};
}

std::vector<double> Record::number_array(std::string_view key) const {
  const Field& f = required(*this, key);
  if (f.kind != Field::Kind::kNumberArray) wrong_type(*this, key, f, "an array of numbers");
  return f.numbers;
}

std::vector<std::string> Record::string_array(std::string_view key) const {
  const Field& f = required(*this, key);
  // An empty array parses as a number array.
  if (f.kind == Field::Kind::kNumberArray && f.numbers.empty()) return {};
  if (f.kind != Field::Kind::kStringArray) wrong_type(*this, key, f, "an array of strings");
  return f.strings;
}

std::vector<std::string> Record::unknown_keys(std::initializer_list<std::string_view> allowed) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : fields_) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) out.push_back(k);
  }
  return out;
}

Record parse_line(std::string_view line, Provenance where) {
  Record record;
  record.where = where;
  FlatHandler handler(record);
  const bool ok = json::sax_parse(line.begin(), line.end(), &handler);
  if (!ok) fail(ErrorKind::kParse, handler.message(), std::move(where));
  if (!handler.done()) fail(ErrorKind::kParse, "expected a JSON object", std::move(where));
  return record;
}

std::vector<Record> read(std::istream& in, const std::string& source_name) {
  std::vector<Record> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    records.push_back(parse_line(line, Provenance{source_name, line_no}));
  }
  return records;
}

std::vector<Record> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  return read(in, path.string());
}

std::string quote(std::string_view s) { return json(std::string(s)).dump(); }

void ObjectWriter::key(std::string_view k) {
  if (!first_) body_ += ',';
  first_ = false;
  body_ += quote(k);
  body_ += ':';
}

ObjectWriter& ObjectWriter::string(std::string_view k, std::string_view value) {
  key(k);
  body_ += quote(value);
  return *this;
}

ObjectWriter& ObjectWriter::raw(std::string_view k, std::string_view json_text) {
  key(k);
  body_ += json_text;
  return *this;
}

ObjectWriter& ObjectWriter::integer(std::string_view k, std::int64_t value) {
  key(k);
  body_ += std::to_string(value);
  return *this;
}

ObjectWriter& ObjectWriter::number(std::string_view k, double value) {
  key(k);
  body_ += format_double(value);
  return *this;
}

ObjectWriter& ObjectWriter::numbers(std::string_view k, const std::vector<double>& values) {
  key(k);
  body_ += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) body_ += ',';
    body_ += format_double(values[i]);
  }
  body_ += ']';
  return *this;
}

std::string format_double(double value) { return Decimal::from_double(value).text; }

}  // namespace editscore::jsonl
