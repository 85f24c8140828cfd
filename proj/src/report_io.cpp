// SPDX-License-Identifier: Apache-2.0
#include "lcq/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "lcq/errors.hpp"

namespace lcq {

std::string format_json_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_csv_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void JsonWriter::pre_value() {
  if (!first_stack_.empty()) {
    if (!first_stack_.back()) out_ += ",";
    first_stack_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  pre_value();
  out_ += "{";
  first_stack_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += "}";
  first_stack_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& k) {
  if (!k.empty()) key(k);
  pre_value();
  out_ += "[";
  first_stack_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += "]";
  first_stack_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  pre_value();
  out_ += "\"" + k + "\":";
  if (!first_stack_.empty()) first_stack_.back() = true;  // value follows, no comma
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  pre_value();
  out_ += format_json_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  pre_value();
  out_ += "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += "\"";
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(long long v) {
  pre_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  pre_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, double v) { return key(k).value(v); }
JsonWriter& JsonWriter::field(const std::string& k, const std::string& v) {
  return key(k).value(v);
}
JsonWriter& JsonWriter::field(const std::string& k, long long v) { return key(k).value(v); }
JsonWriter& JsonWriter::field(const std::string& k, bool v) { return key(k).value(v); }

JsonWriter& JsonWriter::raw(const std::string& fragment) {
  pre_value();
  out_ += fragment;
  return *this;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) : width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ",";
    out_ += header[i];
  }
  out_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw Error("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ",";
    out_ += cells[i];
  }
  out_ += "\n";
}

void CsvWriter::row_numeric(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double v : cells) s.push_back(format_csv_double(v));
  row(s);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace lcq
