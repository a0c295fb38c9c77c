// SPDX-License-Identifier: Apache-2.0
//
// Deterministic rendering of reports. All floating-point values are printed
// with 12 significant digits; identical inputs yield byte-identical output.

#pragma once

#include <string>
#include <vector>

#include "analyzer.hpp"

namespace crsp {

enum class OutputFormat { Json, Csv, Text };

OutputFormat parse_format(const std::string& name);
const char* format_name(OutputFormat f);

/// %.12g formatting used for every floating-point value in reports.
std::string format_double(double v);

/// Small JSON writer with insertion-ordered keys and %.12g numbers.
class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array(const std::string& key);
  void begin_array();  // element of an enclosing array
  void end_array();
  void field(const std::string& key, const std::string& value);
  void field(const std::string& key, const char* value);
  void field(const std::string& key, double value);
  void field(const std::string& key, std::uint64_t value);
  void field(const std::string& key, bool value);
  void null_field(const std::string& key);
  void object_field(const std::string& key);  // begin nested object
  void element(double value);
  void element(const std::string& value);
  std::string str() const { return out_; }

 private:
  void separator();
  void key_prefix(const std::string& key);
  std::string out_;
  std::vector<bool> first_in_scope_;
};

std::string escape_json(const std::string& s);

std::string render_report(const PowerReport& report, OutputFormat format);
std::string render_sweep(const std::vector<PowerReport>& rows, const std::string& parameter,
                         OutputFormat format);
std::string render_entropy_table(const std::vector<EntropyRow>& rows, OutputFormat format);
std::string render_catalog(OutputFormat format);

}  // namespace crsp
