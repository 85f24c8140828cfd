// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace lcq {

/// Formats with the archival float contract: 17 significant digits in JSON
/// (exact double round-trip), 9 in CSV.
std::string format_json_double(double v);
std::string format_csv_double(double v);

/// Minimal deterministic JSON writer: keys emitted in insertion order,
/// doubles through format_json_double, so identical inputs produce
/// byte-identical documents. Non-finite doubles encode as null.
class JsonWriter {
public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array(const std::string& key = "");
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& field(const std::string& k, double v);
  JsonWriter& field(const std::string& k, const std::string& v);
  JsonWriter& field(const std::string& k, long long v);
  JsonWriter& field(const std::string& k, bool v);
  /// Splices an already-serialized JSON value in place.
  JsonWriter& raw(const std::string& fragment);
  std::string str() const { return out_; }

private:
  void pre_value();
  std::string out_;
  std::vector<bool> first_stack_;
};

/// CSV with a fixed header; numeric cells via format_csv_double.
class CsvWriter {
public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void row_numeric(const std::vector<double>& cells);
  std::string str() const { return out_; }

private:
  std::size_t width_;
  std::string out_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace lcq
