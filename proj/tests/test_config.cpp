#include "faudit/config.hpp"

#include <doctest.h>

using namespace faudit;

namespace {

const char* kSample =
    "# run setup\n"
    "[audit]\n"
    "family = gaussian1d\n"
    "epsilon = 0.05\n"
    "m = 100\n"
    "seed = 42\n"
    "\n"
    "[platform.table]\n"
    "x = 0, 1\n"
    "x_prime = 0.5, 1\n";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("parsing keeps order, lines and values") {
  const ConfigDoc doc = ConfigDoc::parse(kSample);
  REQUIRE(doc.sections().size() == 2);
  CHECK(doc.sections()[0].name == "audit");
  CHECK(doc.sections()[0].line == 2);
  CHECK(doc.sections()[1].name == "platform.table");
  REQUIRE(doc.sections()[0].entries.size() == 4);
  CHECK(doc.sections()[0].entries[0].key == "family");
  CHECK(doc.sections()[0].entries[0].value == "gaussian1d");
  CHECK(doc.sections()[0].entries[0].line == 3);
  CHECK(doc.find("audit") != nullptr);
  CHECK(doc.find("nope") == nullptr);

  const ConfigDoc::Section* table = doc.find("platform.table");
  REQUIRE(table != nullptr);
  CHECK(table->entries[1].value == "0.5, 1");
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(ConfigDoc::parse("[a]\nkey\n"),
                       doctest::Contains("line 2: expected 'key = value'"), ParseError);
  CHECK_THROWS_WITH_AS(ConfigDoc::parse("[a\n"), doctest::Contains("unterminated"), ParseError);
  CHECK_THROWS_WITH_AS(ConfigDoc::parse("[]\n"), doctest::Contains("invalid section name"),
                       ParseError);
  CHECK_THROWS_WITH_AS(ConfigDoc::parse("[a b]\n"), doctest::Contains("invalid section name"),
                       ParseError);
  CHECK_THROWS_WITH_AS(ConfigDoc::parse("k = 1\n"), doctest::Contains("outside any [section]"),
                       ParseError);
  CHECK_THROWS_WITH_AS(ConfigDoc::parse("[a]\nk = 1\nk = 2\n"),
                       doctest::Contains("line 3: duplicate key 'k' in [a]"), ParseError);
  CHECK_THROWS_WITH_AS(ConfigDoc::parse("[a]\n[b]\n[a]\n"),
                       doctest::Contains("duplicate section [a]"), ParseError);
  CHECK_THROWS_WITH_AS(ConfigDoc::parse("[a]\nbad key = 1\n"),
                       doctest::Contains("invalid key"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  const ConfigDoc doc = ConfigDoc::parse("\n# top\n[a]\n  # indented comment\n\nk = 1\n");
  REQUIRE(doc.sections().size() == 1);
  REQUIRE(doc.sections()[0].entries.size() == 1);
  CHECK(doc.sections()[0].entries[0].value == "1");
}

TEST_CASE("overrides replace or append") {
  ConfigDoc doc = ConfigDoc::parse(kSample);
  doc.set("audit.epsilon", "0.1");
  CHECK(doc.find("audit")->entries[1].value == "0.1");

  doc.set("audit.alpha", "0.2");
  CHECK(doc.find("audit")->entries.back().key == "alpha");

  doc.set("platform.table.x", "3, 2");
  CHECK(doc.find("platform.table")->entries[0].value == "3, 2");

  doc.set("fresh.key", "v");
  CHECK(doc.find("fresh") != nullptr);

  CHECK_THROWS_AS(doc.set("nodot", "v"), ValidationError);
  CHECK_THROWS_AS(doc.set(".key", "v"), ValidationError);
  CHECK_THROWS_AS(doc.set("trailing.", "v"), ValidationError);
}

TEST_CASE("canonical text round-trips, overrides included") {
  ConfigDoc doc = ConfigDoc::parse(kSample);
  doc.set("audit.epsilon", "0.125");
  const std::string text = doc.canonical();
  const ConfigDoc reparsed = ConfigDoc::parse(text);
  CHECK(reparsed.canonical() == text);
  CHECK(reparsed.find("audit")->entries[1].value == "0.125");
  // raw value strings survive byte-for-byte
  CHECK(reparsed.find("platform.table")->entries[0].value == "0, 1");
}

TEST_CASE("typed section reads") {
  const ConfigDoc doc = ConfigDoc::parse(
      "[s]\n"
      "name = alice\n"
      "x = 2.5\n"
      "n = 7\n"
      "flag = true\n"
      "off = false\n"
      "seed = 18446744073709551615\n"
      "v = 1, 2.5, -3\n"
      "ids = 1, 2, 3\n");
  const ConfigReader cfg(doc);
  const SectionReader s = cfg.section("s");
  CHECK(s.exists());
  CHECK(s.require_string("name") == "alice");
  CHECK(s.require_double("x") == 2.5);
  CHECK(s.require_int("n") == 7);
  CHECK(*s.optional_bool("flag"));
  CHECK_FALSE(*s.optional_bool("off"));
  CHECK(*s.optional_seed("seed") == 18446744073709551615ULL);
  const Vector v = s.require_vector("v");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.0);
  CHECK(v[2] == -3.0);
  CHECK(s.optional_ints("ids")->size() == 3);
  CHECK_FALSE(s.optional_double("absent").has_value());
  cfg.finish();  // everything consumed

  CHECK_THROWS_WITH_AS(s.require_double("name"),
                       doctest::Contains("expected a real number, got 'alice' (line 2)"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(s.require_string("missing"),
                       doctest::Contains("missing required key 'missing'"), ValidationError);

  const SectionReader gone = cfg.section("gone");
  CHECK_FALSE(gone.exists());
  CHECK_FALSE(gone.optional_double("x").has_value());
  CHECK(gone.entries().empty());
  CHECK_THROWS_WITH_AS(gone.require_double("x"), doctest::Contains("missing section [gone]"),
                       ValidationError);
}

TEST_CASE("value parse failures name the key and line") {
  const ConfigDoc doc = ConfigDoc::parse("[s]\nx = abc\nflag = yes\nseed = -4\nn = 1.5\n");
  const ConfigReader cfg(doc);
  const SectionReader s = cfg.section("s");
  CHECK_THROWS_WITH_AS(s.require_double("x"), doctest::Contains("[s].x"), ValidationError);
  CHECK_THROWS_WITH_AS(s.optional_bool("flag"), doctest::Contains("true or false"),
                       ValidationError);
  CHECK_THROWS_AS(s.optional_seed("seed"), ValidationError);
  CHECK_THROWS_AS(s.require_int("n"), ValidationError);
}

TEST_CASE("finish flags anything never consumed") {
  const ConfigDoc doc = ConfigDoc::parse("[used]\nk = 1\nstray = 2\n\n[never]\nx = 1\n");
  const ConfigReader cfg(doc);
  cfg.section("used").require_int("k");
  CHECK_THROWS_WITH_AS(cfg.finish(),
                       doctest::Contains("unknown key 'stray' in [used] (line 3)"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(cfg.finish(), doctest::Contains("unknown section [never] (line 5)"),
                       ValidationError);
}

TEST_CASE("entries consume a whole table section") {
  const ConfigDoc doc = ConfigDoc::parse("[table]\na = 1\nb = 2\n");
  const ConfigReader cfg(doc);
  const auto entries = cfg.section("table").entries();
  REQUIRE(entries.size() == 2);
  CHECK(entries[0] == std::pair<std::string, std::string>{"a", "1"});
  CHECK(entries[1].second == "2");
  cfg.finish();
}

TEST_CASE("standalone value parsers") {
  CHECK(parse_real(" 2.5 ", "w") == 2.5);
  CHECK_THROWS_WITH_AS(parse_real("x", "w"), doctest::Contains("w: expected a real number"),
                       ValidationError);
  const Vector v = parse_real_vector("1, 2, 3", "w");
  CHECK(v.size() == 3);
  CHECK(parse_string_list("a, b , c") == std::vector<std::string>{"a", "b", "c"});

  const auto axis = parse_axis("linspace(0, 1, 5)", "w");
  REQUIRE(axis.size() == 5);
  CHECK(axis[0] == 0.0);
  CHECK(axis[2] == 0.5);
  CHECK(axis[4] == 1.0);
  CHECK(parse_axis("1, 4, 16", "w") == std::vector<double>{1.0, 4.0, 16.0});
  CHECK_THROWS_AS(parse_axis("linspace(0, 1)", "w"), ValidationError);
  CHECK_THROWS_AS(parse_axis("linspace(0, 1, 1)", "w"), ValidationError);
  CHECK_THROWS_AS(parse_axis("linspace(0, 1, 5", "w"), ValidationError);
}

}  // TEST_SUITE
