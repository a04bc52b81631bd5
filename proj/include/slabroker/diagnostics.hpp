#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace slabroker {

struct SourcePos {
  int line = 0;  // 1-based; 0 = unknown
  int col = 0;
};

// Single error type for the whole toolkit. The kind drives CLI exit codes,
// the message carries the human diagnostic, and pos/file locate it when the
// error originates from an input file.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    syntax,
    unknown_unit,
    dimension_mismatch,
    contradiction,
    unbound_variable,
    duplicate_id,
    duplicate_entry,
    schema,
    unit_mismatch,
    unknown_region,
    not_mapped,
    missing_metric,
    missing_config,
    division_by_zero,
    non_finite_value,
    out_of_order_sample,
    negative_cost,
    step_limit,
    io,
  };

  Error(Kind kind, std::string message, SourcePos pos = {}, std::string file = {})
      : std::runtime_error(decorate(message, pos, file)),
        kind_(kind),
        pos_(pos),
        file_(std::move(file)),
        message_(std::move(message)) {}

  Kind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& file() const { return file_; }
  const std::string& message() const { return message_; }

 private:
  static std::string decorate(const std::string& message, SourcePos pos,
                              const std::string& file) {
    std::string out;
    if (!file.empty()) out += file + ":";
    if (pos.line > 0) {
      out += std::to_string(pos.line);
      if (pos.col > 0) out += ":" + std::to_string(pos.col);
      out += ":";
    }
    if (!out.empty()) out += " ";
    return out + message;
  }

  Kind kind_;
  SourcePos pos_;
  std::string file_;
  std::string message_;
};

}  // namespace slabroker
