#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spreadline {

using EntityId = std::string;

// Base for every error raised by the library. `stage` names the pipeline
// step that failed so the CLI can report it.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message) : Error("schema", message) {}
};

// A malformed input row. `row` is the zero-based data row index (header excluded).
class RowError : public Error {
 public:
  RowError(std::size_t row, const std::string& message)
      : Error("ingest", "row " + std::to_string(row) + ": " + message), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

class DataError : public Error {
 public:
  DataError(std::string stage, const std::string& message) : Error(std::move(stage), message) {}
};

class LayoutError : public Error {
 public:
  explicit LayoutError(const std::string& message) : Error("layout", message) {}
};

class StyleError : public Error {
 public:
  explicit StyleError(const std::string& message) : Error("render", message) {}
};

class InstanceTooLarge : public Error {
 public:
  explicit InstanceTooLarge(const std::string& message) : Error("metrics", message) {}
};

enum class TimeKind : std::uint8_t { kInteger, kDate };

// Opaque ordinal on the time axis. Dates are stored as days since 1970-01-01.
struct Timestamp {
  std::int64_t ordinal = 0;
  TimeKind kind = TimeKind::kInteger;

  friend bool operator==(const Timestamp& a, const Timestamp& b) { return a.ordinal == b.ordinal; }
  friend std::strong_ordering operator<=>(const Timestamp& a, const Timestamp& b) {
    return a.ordinal <=> b.ordinal;
  }

  std::string label() const;
};

// Accepts a signed integer or an ISO date (YYYY-MM-DD). Returns nullopt otherwise.
std::optional<Timestamp> parse_timestamp(std::string_view text);

enum class Compartment : std::uint8_t { kTop, kBottom };
enum class Direction : std::uint8_t { kToEgo, kFromEgo };

std::string_view to_string(Compartment c);

}  // namespace spreadline
