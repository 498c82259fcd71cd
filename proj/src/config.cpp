#include "faudit/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace faudit {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

bool valid_name(const std::string& s, bool allow_dot) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                    (allow_dot && c == '.');
    if (!ok) return false;
  }
  return true;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : value) {
    if (c == ',') {
      parts.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(trim(current));
  return parts;
}

[[noreturn]] void value_fail(const std::string& where, const char* what, const std::string& got,
                             int line) {
  std::string msg = where + ": expected " + what + ", got '" + got + "'";
  if (line > 0) msg += " (line " + std::to_string(line) + ")";
  throw ValidationError(msg);
}

double parse_double(const std::string& text, const std::string& where, int line) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    value_fail(where, "a real number", s, line);
  return value;
}

int parse_int(const std::string& text, const std::string& where, int line) {
  const std::string s = trim(text);
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    value_fail(where, "an integer", s, line);
  return value;
}

}  // namespace

ConfigDoc ConfigDoc::parse(const std::string& text) {
  ConfigDoc doc;
  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  Section* current = nullptr;

  while (std::getline(stream, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;

    if (s[0] == '[') {
      if (s.back() != ']') parse_fail(line, "unterminated section header '" + s + "'");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (!valid_name(name, true))
        parse_fail(line, "invalid section name '" + name + "'");
      if (doc.find(name) != nullptr)
        parse_fail(line, "duplicate section [" + name + "]");
      doc.sections_.push_back(Section{name, line, {}, false});
      current = &doc.sections_.back();
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) parse_fail(line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!valid_name(key, false)) parse_fail(line, "invalid key '" + key + "'");
    if (current == nullptr) parse_fail(line, "key '" + key + "' outside any [section]");
    for (const Entry& entry : current->entries)
      if (entry.key == key)
        parse_fail(line, "duplicate key '" + key + "' in [" + current->name + "]");
    current->entries.push_back(Entry{key, value, line, false});
  }
  return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void ConfigDoc::set(const std::string& dotted_key, const std::string& value) {
  const std::size_t dot = dotted_key.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == dotted_key.size())
    throw ValidationError("override key must look like section.key, got '" + dotted_key + "'");
  const std::string section_name = dotted_key.substr(0, dot);
  const std::string key = dotted_key.substr(dot + 1);
  if (!valid_name(section_name, true) || !valid_name(key, false))
    throw ValidationError("override key must look like section.key, got '" + dotted_key + "'");

  for (Section& section : sections_) {
    if (section.name != section_name) continue;
    for (Entry& entry : section.entries) {
      if (entry.key == key) {
        entry.value = value;
        return;
      }
    }
    section.entries.push_back(Entry{key, value, 0, false});
    return;
  }
  sections_.push_back(Section{section_name, 0, {Entry{key, value, 0, false}}, false});
}

const ConfigDoc::Section* ConfigDoc::find(const std::string& name) const {
  for (const Section& section : sections_)
    if (section.name == name) return &section;
  return nullptr;
}

std::string ConfigDoc::canonical() const {
  std::string out;
  bool first = true;
  for (const Section& section : sections_) {
    if (!first) out += "\n";
    first = false;
    out += "[" + section.name + "]\n";
    for (const Entry& entry : section.entries)
      out += entry.key + " = " + entry.value + "\n";
  }
  return out;
}

const ConfigDoc::Entry* SectionReader::lookup(const std::string& key, bool required) const {
  if (section_ == nullptr) {
    if (required)
      throw ValidationError("missing section [" + name_ + "] (needed for key '" + key + "')");
    return nullptr;
  }
  for (const ConfigDoc::Entry& entry : section_->entries) {
    if (entry.key == key) {
      entry.consumed = true;
      return &entry;
    }
  }
  if (required)
    throw ValidationError("[" + name_ + "]: missing required key '" + key + "'");
  return nullptr;
}

std::string SectionReader::require_string(const std::string& key) const {
  return lookup(key, true)->value;
}

std::optional<std::string> SectionReader::optional_string(const std::string& key) const {
  const auto* entry = lookup(key, false);
  if (entry == nullptr) return std::nullopt;
  return entry->value;
}

double SectionReader::require_double(const std::string& key) const {
  const auto* entry = lookup(key, true);
  return parse_double(entry->value, "[" + name_ + "]." + key, entry->line);
}

std::optional<double> SectionReader::optional_double(const std::string& key) const {
  const auto* entry = lookup(key, false);
  if (entry == nullptr) return std::nullopt;
  return parse_double(entry->value, "[" + name_ + "]." + key, entry->line);
}

int SectionReader::require_int(const std::string& key) const {
  const auto* entry = lookup(key, true);
  return parse_int(entry->value, "[" + name_ + "]." + key, entry->line);
}

std::optional<int> SectionReader::optional_int(const std::string& key) const {
  const auto* entry = lookup(key, false);
  if (entry == nullptr) return std::nullopt;
  return parse_int(entry->value, "[" + name_ + "]." + key, entry->line);
}

std::optional<bool> SectionReader::optional_bool(const std::string& key) const {
  const auto* entry = lookup(key, false);
  if (entry == nullptr) return std::nullopt;
  const std::string v = trim(entry->value);
  if (v == "true") return true;
  if (v == "false") return false;
  throw ValidationError("[" + name_ + "]." + key + ": expected true or false, got '" + v +
                        "' (line " + std::to_string(entry->line) + ")");
}

Vector SectionReader::require_vector(const std::string& key) const {
  const auto* entry = lookup(key, true);
  const std::string where = "[" + name_ + "]." + key;
  const auto parts = split_commas(entry->value);
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = parse_double(parts[i], where, entry->line);
  return v;
}

std::optional<Vector> SectionReader::optional_vector(const std::string& key) const {
  if (lookup(key, false) == nullptr) return std::nullopt;
  return require_vector(key);
}

std::optional<std::vector<double>> SectionReader::optional_doubles(const std::string& key) const {
  const auto* entry = lookup(key, false);
  if (entry == nullptr) return std::nullopt;
  const std::string where = "[" + name_ + "]." + key;
  std::vector<double> values;
  for (const std::string& part : split_commas(entry->value))
    values.push_back(parse_double(part, where, entry->line));
  return values;
}

std::optional<std::vector<int>> SectionReader::optional_ints(const std::string& key) const {
  const auto* entry = lookup(key, false);
  if (entry == nullptr) return std::nullopt;
  const std::string where = "[" + name_ + "]." + key;
  std::vector<int> values;
  for (const std::string& part : split_commas(entry->value))
    values.push_back(parse_int(part, where, entry->line));
  return values;
}

std::optional<Seed> SectionReader::optional_seed(const std::string& key) const {
  const auto* entry = lookup(key, false);
  if (entry == nullptr) return std::nullopt;
  const std::string s = trim(entry->value);
  Seed value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ValidationError("[" + name_ + "]." + key + ": expected a non-negative seed, got '" +
                          s + "' (line " + std::to_string(entry->line) + ")");
  return value;
}

std::vector<std::pair<std::string, std::string>> SectionReader::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  if (section_ == nullptr) return out;
  for (const ConfigDoc::Entry& entry : section_->entries) {
    entry.consumed = true;
    out.emplace_back(entry.key, entry.value);
  }
  return out;
}

double parse_real(const std::string& text, const std::string& where) {
  return parse_double(text, where, 0);
}

Vector parse_real_vector(const std::string& text, const std::string& where) {
  const auto parts = split_commas(text);
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = parse_double(parts[i], where, 0);
  return v;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  return split_commas(text);
}

std::vector<double> parse_axis(const std::string& text, const std::string& where) {
  const std::string s = trim(text);
  if (s.rfind("linspace(", 0) == 0) {
    if (s.back() != ')')
      throw ValidationError(where + ": unterminated linspace expression '" + s + "'");
    const auto parts = split_commas(s.substr(9, s.size() - 10));
    if (parts.size() != 3)
      throw ValidationError(where + ": linspace needs (start, stop, count), got '" + s + "'");
    const double start = parse_double(parts[0], where, 0);
    const double stop = parse_double(parts[1], where, 0);
    const int count = parse_int(parts[2], where, 0);
    if (count < 2) throw ValidationError(where + ": linspace count must be >= 2");
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      values[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
    return values;
  }
  std::vector<double> values;
  for (const std::string& part : split_commas(s))
    values.push_back(parse_double(part, where, 0));
  return values;
}

SectionReader ConfigReader::section(const std::string& name) const {
  const ConfigDoc::Section* section = doc_.find(name);
  if (section != nullptr) section->touched = true;
  return SectionReader(section, name);
}

void ConfigReader::finish() const {
  std::string complaints;
  for (const ConfigDoc::Section& section : doc_.sections()) {
    if (!section.touched) {
      if (!complaints.empty()) complaints += "; ";
      complaints += "unknown section [" + section.name + "]";
      if (section.line > 0) complaints += " (line " + std::to_string(section.line) + ")";
      continue;
    }
    for (const ConfigDoc::Entry& entry : section.entries) {
      if (entry.consumed) continue;
      if (!complaints.empty()) complaints += "; ";
      complaints += "unknown key '" + entry.key + "' in [" + section.name + "]";
      if (entry.line > 0) complaints += " (line " + std::to_string(entry.line) + ")";
    }
  }
  if (!complaints.empty()) throw ValidationError(complaints);
}

}  // namespace faudit
