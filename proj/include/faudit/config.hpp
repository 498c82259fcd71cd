#pragma once

#include "faudit/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace faudit {

/// Parsed line-oriented config document: [section] headers, key = value
/// entries, full-line # comments. Section and entry order is preserved;
/// duplicate sections or duplicate keys within a section are parse errors,
/// as is any content outside a section.
class ConfigDoc {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
    mutable bool consumed = false;
  };

  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
    mutable bool touched = false;
  };

  static ConfigDoc parse(const std::string& text);
  static ConfigDoc parse_file(const std::filesystem::path& path);

  /// Applies a "section.key=value" style override (the argument here is just
  /// "section.key"; the value comes separately). Splits at the last dot, so
  /// dotted section names like platform.table work. Replaces an existing
  /// value in place or appends the key / the section at the end.
  void set(const std::string& dotted_key, const std::string& value);

  const Section* find(const std::string& name) const;
  const std::vector<Section>& sections() const { return sections_; }

  /// Re-emits the document, overrides included, in a form that parses back
  /// to the same document.
  std::string canonical() const;

 private:
  std::vector<Section> sections_;
};

class ConfigReader;

/// Typed access to one section. Every successful read marks its key
/// consumed; ConfigReader::finish() then rejects anything never read.
class SectionReader {
 public:
  bool exists() const { return section_ != nullptr; }
  const std::string& name() const { return name_; }

  std::string require_string(const std::string& key) const;
  std::optional<std::string> optional_string(const std::string& key) const;
  double require_double(const std::string& key) const;
  std::optional<double> optional_double(const std::string& key) const;
  int require_int(const std::string& key) const;
  std::optional<int> optional_int(const std::string& key) const;
  std::optional<bool> optional_bool(const std::string& key) const;
  std::optional<Seed> optional_seed(const std::string& key) const;
  Vector require_vector(const std::string& key) const;
  std::optional<Vector> optional_vector(const std::string& key) const;
  std::optional<std::vector<double>> optional_doubles(const std::string& key) const;
  std::optional<std::vector<int>> optional_ints(const std::string& key) const;

  /// All entries in declaration order, marked consumed. For table-like
  /// sections where keys are data (lookup tokens, pair labels).
  std::vector<std::pair<std::string, std::string>> entries() const;

 private:
  friend class ConfigReader;
  SectionReader(const ConfigDoc::Section* section, std::string name)
      : section_(section), name_(std::move(name)) {}

  const ConfigDoc::Entry* lookup(const std::string& key, bool required) const;

  const ConfigDoc::Section* section_;
  std::string name_;
};

/// Standalone value parsers for entries whose keys are data (lookup tables,
/// pair lists, grid axes). `where` names the offending key in errors.
double parse_real(const std::string& text, const std::string& where);
Vector parse_real_vector(const std::string& text, const std::string& where);
std::vector<std::string> parse_string_list(const std::string& text);

/// Grid axis values: either a comma-separated list or linspace(a, b, n).
std::vector<double> parse_axis(const std::string& text, const std::string& where);

class ConfigReader {
 public:
  explicit ConfigReader(const ConfigDoc& doc) : doc_(doc) {}

  /// Missing sections are fine at access time; require_* on a missing
  /// section throws a ValidationError naming it.
  SectionReader section(const std::string& name) const;

  /// Throws ValidationError listing every key and section the builders never
  /// consumed. Call once after all reads.
  void finish() const;

 private:
  const ConfigDoc& doc_;
};

}  // namespace faudit
