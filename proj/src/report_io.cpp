// SPDX-License-Identifier: Apache-2.0

#include "report_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace crsp {

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw std::invalid_argument("unknown output format '" + name + "' (expected json, csv or text)");
}

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JsonWriter
// ---------------------------------------------------------------------------

void JsonWriter::separator() {
  if (first_in_scope_.empty()) return;
  if (first_in_scope_.back()) {
    first_in_scope_.back() = false;
  } else {
    out_ += ",";
  }
  out_ += "\n";
  out_.append(2 * first_in_scope_.size(), ' ');
}

void JsonWriter::key_prefix(const std::string& key) {
  separator();
  out_ += "\"" + escape_json(key) + "\": ";
}

void JsonWriter::begin_object() {
  if (!first_in_scope_.empty()) separator();
  out_ += "{";
  first_in_scope_.push_back(true);
}

void JsonWriter::end_object() {
  const bool was_empty = first_in_scope_.back();
  first_in_scope_.pop_back();
  if (!was_empty) {
    out_ += "\n";
    out_.append(2 * first_in_scope_.size(), ' ');
  }
  out_ += "}";
}

void JsonWriter::begin_array(const std::string& key) {
  key_prefix(key);
  out_ += "[";
  first_in_scope_.push_back(true);
}

void JsonWriter::begin_array() {
  separator();
  out_ += "[";
  first_in_scope_.push_back(true);
}

void JsonWriter::end_array() {
  const bool was_empty = first_in_scope_.back();
  first_in_scope_.pop_back();
  if (!was_empty) {
    out_ += "\n";
    out_.append(2 * first_in_scope_.size(), ' ');
  }
  out_ += "]";
}

void JsonWriter::field(const std::string& key, const std::string& value) {
  key_prefix(key);
  out_ += "\"" + escape_json(value) + "\"";
}

void JsonWriter::field(const std::string& key, const char* value) {
  field(key, std::string(value));
}

void JsonWriter::field(const std::string& key, double value) {
  key_prefix(key);
  out_ += format_double(value);
}

void JsonWriter::field(const std::string& key, std::uint64_t value) {
  key_prefix(key);
  out_ += std::to_string(value);
}

void JsonWriter::field(const std::string& key, bool value) {
  key_prefix(key);
  out_ += value ? "true" : "false";
}

void JsonWriter::null_field(const std::string& key) {
  key_prefix(key);
  out_ += "null";
}

void JsonWriter::object_field(const std::string& key) {
  key_prefix(key);
  out_ += "{";
  first_in_scope_.push_back(true);
}

void JsonWriter::element(double value) {
  separator();
  out_ += format_double(value);
}

void JsonWriter::element(const std::string& value) {
  separator();
  out_ += "\"" + escape_json(value) + "\"";
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

namespace {

void write_report_fields(JsonWriter& w, const PowerReport& r) {
  w.field("protocol", r.protocol);
  w.field("summary", r.summary);
  w.object_field("params");
  for (const auto& [key, value] : r.params) w.field(key, value);
  w.end_object();
  w.field("dimension", static_cast<std::uint64_t>(r.dimension));
  w.field("ensemble", r.ensemble);
  w.field("samples", static_cast<std::uint64_t>(r.samples));
  w.field("seed", r.seed);
  if (r.ncf_analytic)
    w.field("ncf_analytic", *r.ncf_analytic);
  else
    w.null_field("ncf_analytic");
  w.field("ncf_mc", r.ncf_mc);
  w.field("ncf_mc_stderr", r.ncf_mc_stderr);
  w.field("average_ncf", r.average_ncf);
  w.field("control_power", r.power);
  w.field("classical_limit", r.limit_classical);
  w.field("power_bound", r.bound);
  w.field("verdict", verdict_name(r.verdict_value));
  w.field("verdict_tolerance", r.verdict_tolerance);
  w.begin_array("controller_entropies");
  for (double s : r.controller_entropies) w.element(s);
  w.end_array();
  w.field("entropy_required", r.entropy_required);
  w.field("entropy_verdict", r.entropy_pass ? "pass" : "fail");
  if (r.success_probability)
    w.field("success_probability", *r.success_probability);
  else
    w.null_field("success_probability");
}

std::string report_text(const PowerReport& r) {
  std::ostringstream os;
  os << "protocol: " << r.protocol << "\n";
  os << "summary: " << r.summary << "\n";
  for (const auto& [key, value] : r.params)
    os << "param " << key << ": " << format_double(value) << "\n";
  os << "dimension: " << r.dimension << "\n";
  os << "ensemble: " << r.ensemble << "\n";
  os << "samples: " << r.samples << "\n";
  os << "seed: " << r.seed << "\n";
  os << "ncf_analytic: " << (r.ncf_analytic ? format_double(*r.ncf_analytic) : "n/a") << "\n";
  os << "ncf_mc: " << format_double(r.ncf_mc) << " (stderr " << format_double(r.ncf_mc_stderr)
     << ")\n";
  os << "average_ncf: " << format_double(r.average_ncf) << "\n";
  os << "control_power: " << format_double(r.power) << "\n";
  os << "classical_limit: " << format_double(r.limit_classical) << "\n";
  os << "power_bound: " << format_double(r.bound) << "\n";
  os << "verdict: " << verdict_name(r.verdict_value) << " (tolerance "
     << format_double(r.verdict_tolerance) << ")\n";
  os << "controller_entropies:";
  for (double s : r.controller_entropies) os << " " << format_double(s);
  os << "\n";
  os << "entropy_required: " << format_double(r.entropy_required) << "\n";
  os << "entropy_verdict: " << (r.entropy_pass ? "pass" : "fail") << "\n";
  os << "success_probability: "
     << (r.success_probability ? format_double(*r.success_probability) : "n/a") << "\n";
  return os.str();
}

std::string report_csv(const PowerReport& r) {
  std::ostringstream os;
  os << "field,value\n";
  os << "protocol," << r.protocol << "\n";
  for (const auto& [key, value] : r.params) os << key << "," << format_double(value) << "\n";
  os << "dimension," << r.dimension << "\n";
  os << "ensemble," << r.ensemble << "\n";
  os << "samples," << r.samples << "\n";
  os << "seed," << r.seed << "\n";
  os << "ncf_analytic," << (r.ncf_analytic ? format_double(*r.ncf_analytic) : "") << "\n";
  os << "ncf_mc," << format_double(r.ncf_mc) << "\n";
  os << "ncf_mc_stderr," << format_double(r.ncf_mc_stderr) << "\n";
  os << "average_ncf," << format_double(r.average_ncf) << "\n";
  os << "control_power," << format_double(r.power) << "\n";
  os << "classical_limit," << format_double(r.limit_classical) << "\n";
  os << "power_bound," << format_double(r.bound) << "\n";
  os << "verdict," << verdict_name(r.verdict_value) << "\n";
  os << "verdict_tolerance," << format_double(r.verdict_tolerance) << "\n";
  for (std::size_t i = 0; i < r.controller_entropies.size(); ++i)
    os << "controller_entropy_" << i << "," << format_double(r.controller_entropies[i]) << "\n";
  os << "entropy_required," << format_double(r.entropy_required) << "\n";
  os << "entropy_verdict," << (r.entropy_pass ? "pass" : "fail") << "\n";
  os << "success_probability,"
     << (r.success_probability ? format_double(*r.success_probability) : "") << "\n";
  return os.str();
}

}  // namespace

std::string render_report(const PowerReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      JsonWriter w;
      w.begin_object();
      write_report_fields(w, report);
      w.end_object();
      return w.str() + "\n";
    }
    case OutputFormat::Csv: return report_csv(report);
    case OutputFormat::Text: return report_text(report);
  }
  throw std::logic_error("render_report: unknown format");
}

std::string render_sweep(const std::vector<PowerReport>& rows, const std::string& parameter,
                         OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: {
      std::ostringstream os;
      os << "param,ncf_analytic,ncf_mc,stderr,power,bound,verdict\n";
      for (const auto& r : rows) {
        os << format_double(r.params.at(parameter)) << ","
           << (r.ncf_analytic ? format_double(*r.ncf_analytic) : "") << ","
           << format_double(r.ncf_mc) << "," << format_double(r.ncf_mc_stderr) << ","
           << format_double(r.power) << "," << format_double(r.bound) << ","
           << verdict_name(r.verdict_value) << "\n";
      }
      return os.str();
    }
    case OutputFormat::Json: {
      JsonWriter w;
      w.begin_object();
      w.field("parameter", parameter);
      w.begin_array("rows");
      for (const auto& r : rows) {
        w.begin_object();
        w.field("param", r.params.at(parameter));
        write_report_fields(w, r);
        w.end_object();
      }
      w.end_array();
      w.end_object();
      return w.str() + "\n";
    }
    case OutputFormat::Text: {
      std::ostringstream os;
      os << "param\tncf_analytic\tncf_mc\tstderr\tpower\tbound\tverdict\n";
      for (const auto& r : rows) {
        os << format_double(r.params.at(parameter)) << "\t"
           << (r.ncf_analytic ? format_double(*r.ncf_analytic) : "n/a") << "\t"
           << format_double(r.ncf_mc) << "\t" << format_double(r.ncf_mc_stderr) << "\t"
           << format_double(r.power) << "\t" << format_double(r.bound) << "\t"
           << verdict_name(r.verdict_value) << "\n";
      }
      return os.str();
    }
  }
  throw std::logic_error("render_sweep: unknown format");
}

std::string render_entropy_table(const std::vector<EntropyRow>& rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      JsonWriter w;
      w.begin_object();
      w.begin_array("rows");
      for (const auto& r : rows) {
        w.begin_object();
        w.field("channel", r.channel);
        w.begin_array("entropies");
        for (double s : r.entropies) w.element(s);
        w.end_array();
        w.begin_array("classified");
        for (const auto& c : r.classified) w.element(c);
        w.end_array();
        w.end_object();
      }
      w.end_array();
      w.end_object();
      return w.str() + "\n";
    }
    case OutputFormat::Csv: {
      std::ostringstream os;
      os << "channel,s_a,s_b,s_c,class_a,class_b,class_c\n";
      for (const auto& r : rows) {
        os << r.channel;
        for (double s : r.entropies) os << "," << format_double(s);
        for (const auto& c : r.classified) os << "," << c;
        os << "\n";
      }
      return os.str();
    }
    case OutputFormat::Text: {
      std::ostringstream os;
      os << "channel\tS_A\tS_B\tS_C\tpattern\n";
      for (const auto& r : rows) {
        os << r.channel;
        for (double s : r.entropies) os << "\t" << format_double(s);
        os << "\t(";
        for (std::size_t i = 0; i < r.classified.size(); ++i) {
          if (i) os << ",";
          os << r.classified[i];
        }
        os << ")\n";
      }
      return os.str();
    }
  }
  throw std::logic_error("render_entropy_table: unknown format");
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

namespace {

struct ChannelEntry {
  const char* id;
  const char* summary;
  const char* params;
};

// Sorted by id.
const ChannelEntry kChannels[] = {
    {"bell", "two-qubit Bell state", "variant in {phi+, phi-, psi+, psi-}"},
    {"brown", "five-qubit Brown state", "none"},
    {"gbell", "generalized two-qudit Bell state", "d >= 2, k in [0, d), l in [0, d)"},
    {"ggc", "generalized GHZ-class qudit state", "d normalized coefficients, M >= 1 controllers"},
    {"ghz", "n-party GHZ state", "n >= 2"},
    {"ms3", "three-qubit maximal-slice channel", "c > 0, d with c^2 + d^2 = 1"},
    {"ms4", "four-qubit maximal-slice channel", "c > 0, d with c^2 + d^2 = 1"},
    {"pghz", "partially entangled GHZ state", "a, b with a^2 + b^2 = 1, M >= 0 controllers"},
};

}  // namespace

std::string render_catalog(OutputFormat format) {
  const auto protocols = protocol_schemas();
  switch (format) {
    case OutputFormat::Json: {
      JsonWriter w;
      w.begin_object();
      w.begin_array("channels");
      for (const auto& c : kChannels) {
        w.begin_object();
        w.field("id", c.id);
        w.field("summary", c.summary);
        w.field("params", c.params);
        w.end_object();
      }
      w.end_array();
      w.begin_array("protocols");
      for (const auto& p : protocols) {
        w.begin_object();
        w.field("id", p.id);
        w.field("summary", p.summary);
        w.field("params", p.params);
        w.field("dimension", p.dimension);
        w.end_object();
      }
      w.end_array();
      w.end_object();
      return w.str() + "\n";
    }
    case OutputFormat::Csv: {
      std::ostringstream os;
      os << "kind,id,summary,params,dimension\n";
      for (const auto& c : kChannels)
        os << "channel," << c.id << ",\"" << c.summary << "\",\"" << c.params << "\",\n";
      for (const auto& p : protocols)
        os << "protocol," << p.id << ",\"" << p.summary << "\",\"" << p.params << "\",\""
           << p.dimension << "\"\n";
      return os.str();
    }
    case OutputFormat::Text: {
      std::ostringstream os;
      os << "channels:\n";
      for (const auto& c : kChannels)
        os << "  " << c.id << "  " << c.summary << "  [" << c.params << "]\n";
      os << "protocols:\n";
      for (const auto& p : protocols)
        os << "  " << p.id << "  " << p.summary << "  [" << p.params << "]  " << p.dimension
           << "\n";
      return os.str();
    }
  }
  throw std::logic_error("render_catalog: unknown format");
}

}  // namespace crsp
