#include "dyw/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace dyw {
namespace {

using nlohmann::json;

[[noreturn]] void fail_schema(const std::string& what) {
  throw std::invalid_argument("dyw: " + what);
}

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    fail_schema(std::string("missing or non-numeric field \"") + key + "\"");
  return j.at(key).get<double>();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("dyw: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof())
    throw std::runtime_error("dyw: read failure on " + path.string());
  return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("dyw: cannot open " + path.string());
  out << text;
  out.flush();
  if (!out.good()) throw std::runtime_error("dyw: write failure on " + path.string());
}

bool has_extension(const std::filesystem::path& path, const char* ext) {
  std::string e = path.extension().string();
  std::transform(e.begin(), e.end(), e.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return e == ext;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v))
    throw std::invalid_argument("dyw: refusing to serialize NaN/infinity");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{})
    throw std::runtime_error("dyw: float formatting failed");
  return std::string(buf, res.ptr);
}

std::string report_to_json_string(const Report& report) {
  std::string out = "{\"name\":\"" + escape_json(report.name) + "\"";
  out += ",\"scalars\":{";
  bool first = true;
  for (const auto& [key, value] : report.scalars) {
    if (!first) out += ',';
    first = false;
    out += '"' + escape_json(key) + "\":" + format_double(value);
  }
  out += "},\"flags\":{";
  first = true;
  for (const auto& [key, value] : report.flags) {
    if (!first) out += ',';
    first = false;
    out += '"' + escape_json(key) + "\":";
    out += value ? "true" : "false";
  }
  out += '}';
  if (report.argmax) {
    out += ",\"argmax\":[" + std::to_string(report.argmax->level) + ',' +
           std::to_string(report.argmax->index) + ']';
  }
  out += ",\"metadata\":{\"seed\":" + std::to_string(report.seed) +
         ",\"depth\":" + std::to_string(report.depth) + ",\"timestamp\":\"" +
         escape_json(report.timestamp) + "\"}}";
  return out;
}

Report report_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail_schema(std::string("report parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("name") || !j.at("name").is_string())
    fail_schema("report needs a string \"name\"");
  Report r;
  r.name = j.at("name").get<std::string>();
  if (j.contains("scalars")) {
    const json& s = j.at("scalars");
    if (!s.is_object()) fail_schema("\"scalars\" must be an object");
    for (const auto& [key, value] : s.items()) {
      if (!value.is_number()) fail_schema("scalar \"" + key + "\" not numeric");
      r.scalars[key] = value.get<double>();
    }
  }
  if (j.contains("flags")) {
    const json& f = j.at("flags");
    if (!f.is_object()) fail_schema("\"flags\" must be an object");
    for (const auto& [key, value] : f.items()) {
      if (!value.is_boolean()) fail_schema("flag \"" + key + "\" not boolean");
      r.flags[key] = value.get<bool>();
    }
  }
  if (j.contains("argmax") && !j.at("argmax").is_null()) {
    const json& a = j.at("argmax");
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() ||
        !a[1].is_number_integer())
      fail_schema("\"argmax\" must be [level, index]");
    r.argmax = NodeRef{a[0].get<int>(), a[1].get<std::int64_t>()};
  }
  if (j.contains("metadata")) {
    const json& m = j.at("metadata");
    if (!m.is_object()) fail_schema("\"metadata\" must be an object");
    if (m.contains("seed")) r.seed = m.at("seed").get<std::uint64_t>();
    if (m.contains("depth")) r.depth = m.at("depth").get<int>();
    if (m.contains("timestamp"))
      r.timestamp = m.at("timestamp").get<std::string>();
  }
  return r;
}

std::string weight_to_json_string(const DyadicWeight& w) {
  std::string out = "{\"depth\":" + std::to_string(w.depth()) +
                    ",\"root_length\":" + format_double(w.root_length()) +
                    ",\"leaves\":[";
  const auto& leaves = w.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (i) out += ',';
    out += format_double(leaves[i]);
  }
  out += "]}";
  return out;
}

DyadicWeight weight_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail_schema(std::string("weight parse error: ") + e.what());
  }
  if (!j.is_object()) fail_schema("weight file must be a JSON object");
  if (!j.contains("leaves") || !j.at("leaves").is_array())
    fail_schema("weight needs a \"leaves\" array");
  std::vector<double> leaves;
  leaves.reserve(j.at("leaves").size());
  for (const json& v : j.at("leaves")) {
    if (!v.is_number()) fail_schema("leaf entries must be numbers");
    const double d = v.get<double>();
    if (!std::isfinite(d) || d <= 0.0)
      fail_schema("leaf entries must be finite and positive");
    leaves.push_back(d);
  }
  double root_length = 1.0;
  if (j.contains("root_length")) root_length = number_field(j, "root_length");
  DyadicWeight w(std::move(leaves), root_length);
  if (j.contains("depth")) {
    const double declared = number_field(j, "depth");
    if (declared != static_cast<double>(w.depth()))
      fail_schema("declared depth does not match leaf count");
  }
  return w;
}

void write_report(const Report& report, const std::filesystem::path& path) {
  write_text_file(path, report_to_json_string(report) + "\n");
}

Report read_report(const std::filesystem::path& path) {
  return report_from_json_string(read_text_file(path));
}

void write_weight(const DyadicWeight& w, const std::filesystem::path& path) {
  if (has_extension(path, ".csv")) {
    std::string out;
    for (double v : w.leaves()) out += format_double(v) + "\n";
    write_text_file(path, out);
    return;
  }
  if (has_extension(path, ".json")) {
    write_text_file(path, weight_to_json_string(w) + "\n");
    return;
  }
  throw std::invalid_argument("dyw: weight files must end in .json or .csv");
}

DyadicWeight read_weight(const std::filesystem::path& path) {
  if (has_extension(path, ".csv")) {
    const std::string text = read_text_file(path);
    std::vector<double> leaves;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      std::string line = text.substr(pos, end - pos);
      pos = end + 1;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                               line.back() == '\t'))
        line.pop_back();
      std::size_t start = 0;
      while (start < line.size() && (line[start] == ' ' || line[start] == '\t'))
        ++start;
      line.erase(0, start);
      if (line.empty()) continue;
      double v = 0.0;
      const auto res = std::from_chars(line.data(), line.data() + line.size(), v);
      if (res.ec != std::errc{} || res.ptr != line.data() + line.size())
        fail_schema("CSV weight line is not a number: \"" + line + "\"");
      if (!std::isfinite(v) || v <= 0.0)
        fail_schema("CSV weight entries must be finite and positive");
      leaves.push_back(v);
    }
    return DyadicWeight(std::move(leaves));
  }
  if (has_extension(path, ".json"))
    return weight_from_json_string(read_text_file(path));
  throw std::invalid_argument("dyw: weight files must end in .json or .csv");
}

std::string summarize(const std::vector<Report>& reports) {
  std::set<std::string> keys;
  for (const Report& r : reports)
    for (const auto& [key, value] : r.scalars) keys.insert(key);
  std::string out = "name";
  for (const std::string& k : keys) out += ',' + csv_field(k);
  out += "\r\n";
  for (const Report& r : reports) {
    out += csv_field(r.name);
    for (const std::string& k : keys) {
      out += ',';
      const auto it = r.scalars.find(k);
      if (it != r.scalars.end()) out += format_double(it->second);
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace dyw
