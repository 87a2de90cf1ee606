#include <doctest.h>

#include "colorbasis/error.hpp"
#include "colorbasis/lexicon.hpp"
#include "helpers.hpp"

using namespace colorbasis;

namespace {
TranslationTable table_of(std::vector<LexEntry> rows) { return TranslationTable(std::move(rows)); }
}  // namespace

TEST_CASE("duplicate rows collapse") {
  testing::TempDir dir("lex");
  const auto p = dir.write("lex.tsv", "deu\trot\tred\ndeu\trot\tred\n");
  const auto load = load_lexicon(p);
  CHECK(load.table.size() == 1);
  CHECK(load.report.duplicates == 1);
}

TEST_CASE("one word with two glosses") {
  testing::TempDir dir("lex");
  const auto load = load_lexicon(dir.write("lex.tsv", "spa\trojo\tred\nspa\trojo\truddy\n"));
  CHECK(load.table.size() == 2);
  CHECK(load.table.backward("rojo", "spa") == std::set<std::string>{"red", "ruddy"});
}

TEST_CASE("short rows are skipped and counted") {
  testing::TempDir dir("lex");
  const auto load = load_lexicon(dir.write("lex.tsv", "deu\trot\tred\ndeu\tblau\n"));
  CHECK(load.report.rows_skipped == 1);
  CHECK(load.table.size() == 1);
  CHECK_FALSE(load.report.warnings.empty());
}

TEST_CASE("lexicon load errors") {
  testing::TempDir dir("lex");
  CHECK_THROWS_AS(load_lexicon(dir.path() / "absent.tsv"), DataError);
  CHECK_THROWS_AS(load_lexicon(dir.write("empty.tsv", "x\ty\n")), DataError);
}

TEST_CASE("entries are normalized") {
  const auto t = table_of({{"deu", "gru\xCC\x88n", "Green"}, {"deu", "", "red"}});
  REQUIRE(t.size() == 1);
  CHECK(t.entries()[0].word == "grün");
  CHECK(t.entries()[0].gloss == "green");
  CHECK(t.contains_word("deu", "grün"));
}

TEST_CASE("forward lookup") {
  const auto t = table_of({{"deu", "rot", "red"},
                           {"ita", "rosso", "red"},
                           {"ita", "vermiglio", "red"}});
  CHECK(translate(t, "red", "deu") == std::set<std::string>{"rot"});
  CHECK(translate(t, "red", "xyz").empty());
  CHECK(translate(t, "red", "ita") == std::set<std::string>{"rosso", "vermiglio"});
}

TEST_CASE("backward lookup is scoped to a language") {
  const auto t = table_of({{"deu", "rot", "red"},
                           {"deu", "rot", "rust"},
                           {"nld", "rot", "rotten"}});
  CHECK(back_translate(t, "rot", "deu") == std::set<std::string>{"red", "rust"});
  CHECK(back_translate(t, "rot", "nld") == std::set<std::string>{"rotten"});
  CHECK(back_translate(t, "nope", "deu").empty());
}

TEST_CASE("forward and backward agree on every edge") {
  const auto t = table_of({{"deu", "rot", "red"}, {"deu", "rot", "rust"}, {"deu", "dunkel", "dark"},
                           {"fra", "rouge", "red"}});
  for (const auto& e : t.entries()) {
    CHECK(t.forward(e.gloss, e.language).count(e.word) == 1);
    CHECK(t.backward(e.word, e.language).count(e.gloss) == 1);
  }
}

TEST_CASE("round trip records and sets") {
  const auto t = table_of({{"deu", "rot", "red"}, {"deu", "rot", "rust"}});
  const auto recs = round_trip(t, "red", "deu");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0] == RoundTripRecord{"red", "deu", "rot", {"red", "rust"}});
  CHECK(round_trip_set(recs) == std::set<std::string>{"red", "rust"});
  CHECK(round_trip(t, "blue", "deu").empty());

  const auto u = table_of({{"xx", "a", "red"}, {"xx", "b", "red"}, {"xx", "b", "crimson"}});
  CHECK(round_trip_set(round_trip(u, "red", "xx")) == std::set<std::string>{"red", "crimson"});
}

TEST_CASE("round_trip_all orders by color, language, word") {
  const auto t = table_of({{"b", "y", "red"}, {"a", "x", "red"}, {"a", "w", "blue"}});
  const auto recs = round_trip_all(t, parse_seeds("red *\nblue *\n"));
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].language == "a");
  CHECK(recs[1].language == "b");
  CHECK(recs[2].color == "blue");
}

TEST_CASE("seed list parsing") {
  const auto colors = parse_seeds("# comment\nwhite *\nRed *\nblue * @4\ncrimson\n");
  REQUIRE(colors.size() == 4);
  CHECK(colors[0].bk_stage == 1);
  CHECK(colors[1].term == "red");
  CHECK(colors[1].bk_stage == 2);
  CHECK(colors[2].bk_stage == 4);
  CHECK_FALSE(colors[3].is_basic);
  CHECK_FALSE(colors[3].bk_stage.has_value());
  CHECK_THROWS_AS(parse_seeds("beige @3\n"), ConfigError);
  CHECK_THROWS_AS(parse_seeds("red *\nred *\n"), ConfigError);
  CHECK_THROWS_AS(parse_seeds("teal *\n"), ConfigError);
}

TEST_CASE("default stages") {
  CHECK(default_bk_stage("white") == 1);
  CHECK(default_bk_stage("black") == 1);
  CHECK(default_bk_stage("red") == 2);
  CHECK(default_bk_stage("green") == 3);
  CHECK(default_bk_stage("yellow") == 3);
  CHECK(default_bk_stage("blue") == 4);
  CHECK(default_bk_stage("brown") == 5);
  for (auto c : {"purple", "pink", "orange", "grey"}) CHECK(default_bk_stage(c) == 6);
  CHECK_FALSE(default_bk_stage("beige").has_value());
}

TEST_CASE("exactly eleven basic terms") {
  std::string text = "white *\nblack *\nred *\ngreen *\nyellow *\nblue *\nbrown *\n"
                     "purple *\npink *\norange *\n";
  CHECK_THROWS_AS(validate_seeds(parse_seeds(text)), ConfigError);
  text += "grey *\nbeige\n";
  CHECK_NOTHROW(validate_seeds(parse_seeds(text)));
}
