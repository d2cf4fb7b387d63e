#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "tim/errors.hpp"
#include "tim/geoparse.hpp"
#include "tim/text.hpp"

using namespace tim;
using testutil::TempDir;
using testutil::write_file;

namespace {

Gazetteer demo_gazetteer() {
    return build_gazetteer({
        {"Legnicka", ToponymKind::street, 51.1200, 16.9900, ToponymSource::osm},
        {"Grabiszyńska", ToponymKind::street, 51.0950, 16.9800, ToponymSource::osm},
        {"Legnicka / Milenijna", ToponymKind::intersection, 51.1220, 16.9750,
         ToponymSource::manual},
        {"Kwiska", ToponymKind::stop, 51.1250, 16.9650, ToponymSource::gtfs},
        {"pl. Grunwaldzki", ToponymKind::stop, 51.1104, 17.0601, ToponymSource::gtfs},
    });
}

Post text_post(const std::string& text) {
    Post p;
    p.id = "p";
    p.published_at = 1678086900;
    p.text = text;
    return p;
}

}  // namespace

TEST_CASE("edit_distance basics") {
    CHECK(edit_distance("", "") == 0);
    CHECK(edit_distance("abc", "") == 3);
    CHECK(edit_distance("", "abc") == 3);
    CHECK(edit_distance("kot", "kot") == 0);
    CHECK(edit_distance("kot", "kto") == 2);
    CHECK(edit_distance("kitten", "sitting") == 3);
    CHECK(edit_distance("kasprowicza", "kasprowicze") == 1);
}

TEST_CASE("edit_distance counts codepoints, not bytes") {
    CHECK(edit_distance("świdnicka", "swidnicka") == 1);
    CHECK(edit_distance("łódź", "lodz") == 3);
    CHECK(edit_distance("pętla", "petla") == 1);
}

TEST_CASE("toponym_score truncates the entry to absorb suffixes") {
    CHECK(toponym_score("legnicka", "legnicka") == doctest::Approx(0.0));
    CHECK(toponym_score("legnickiej", "legnicka") == doctest::Approx(0.3));
    CHECK(toponym_score("grunwaldzkim", "grunwaldzki") == doctest::Approx(1.0 / 12.0));
    CHECK(toponym_score("grabiszyńskiej", "grabiszyńska") == doctest::Approx(3.0 / 14.0));
    // Truncating "kasprowicze" by one character makes it a prefix.
    CHECK(toponym_score("kasprowicz", "kasprowicze") == doctest::Approx(0.0));
}

TEST_CASE("toponym_score never truncates the entry away") {
    // Entry "abc": t=2 still leaves one character, an exact match for "a".
    CHECK(toponym_score("a", "abc") == doctest::Approx(0.0));
    // Entry "ab": t stops at 1, so the score cannot reach the empty entry.
    CHECK(toponym_score("x", "ab") == doctest::Approx(1.0));
    CHECK(toponym_score("", "") == doctest::Approx(0.0));
}

TEST_CASE("detect_mentions finds a trigger-anchored capitalized run") {
    auto lex = default_trigger_lexicon();
    auto mentions = detect_mentions("Awaria na ul. Legnickiej", lex);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].surface == std::vector<std::string>{"Legnickiej"});
    CHECK(mentions[0].trigger == "ul");
    CHECK(mentions[0].begin == 14);
    CHECK(mentions[0].end == 24);
}

TEST_CASE("detect_mentions emits every prefix of the run, longest first") {
    auto lex = default_trigger_lexicon();
    auto mentions = detect_mentions("Stoimy na ul. Legnickiej. Tramwaje czekają", lex);
    REQUIRE(mentions.size() == 2);
    CHECK(mentions[0].surface == std::vector<std::string>{"Legnickiej", "Tramwaje"});
    CHECK(mentions[1].surface == std::vector<std::string>{"Legnickiej"});
}

TEST_CASE("detect_mentions spans multiword names after an intersection trigger") {
    auto lex = default_trigger_lexicon();
    auto mentions = detect_mentions("Kolizja na skrzyżowaniu Legnicka / Milenijna", lex);
    REQUIRE(mentions.size() == 2);
    CHECK(mentions[0].surface == std::vector<std::string>{"Legnicka", "Milenijna"});
    CHECK(mentions[0].trigger == "skrzyżowaniu");
    CHECK(mentions[1].surface == std::vector<std::string>{"Legnicka"});
}

TEST_CASE("detect_mentions respects max_span and digit-bearing tokens") {
    TriggerLexicon lex;
    lex.triggers = {{"przy"}};
    lex.max_span = 2;
    auto mentions = detect_mentions("przy Alfa Beta Gamma Delta", lex);
    REQUIRE(mentions.size() == 2);
    CHECK(mentions[0].surface == std::vector<std::string>{"Alfa", "Beta"});

    lex.max_span = 4;
    auto digits = detect_mentions("przy Legnickiej 14", lex);
    REQUIRE(digits.size() == 2);
    CHECK(digits[0].surface == std::vector<std::string>{"Legnickiej", "14"});
}

TEST_CASE("detect_mentions yields nothing without a following name") {
    auto lex = default_trigger_lexicon();
    CHECK(detect_mentions("awaria na pętli", lex).empty());
    CHECK(detect_mentions("ul. legnickiej", lex).empty());  // lowercase name
    CHECK(detect_mentions("Legnicka bez triggera", lex).empty());
    CHECK(detect_mentions("", lex).empty());
}

TEST_CASE("multi-token triggers match as a sequence") {
    TriggerLexicon lex;
    lex.triggers = {{"w", "rejonie"}};
    lex.max_span = 4;
    auto mentions = detect_mentions("Utrudnienia w rejonie Kwiskiej", lex);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].trigger == "w rejonie");
    CHECK(mentions[0].surface == std::vector<std::string>{"Kwiskiej"});
}

TEST_CASE("match_toponym resolves inflected street names") {
    Gazetteer gaz = demo_gazetteer();
    SpatialMention m;
    m.surface = {"Legnickiej"};
    auto r = match_toponym(m, gaz, kDefaultMatchThreshold);
    REQUIRE(r.has_value());
    CHECK(r->toponym.name == "Legnicka");
    CHECK(r->toponym.kind == ToponymKind::street);
    CHECK(r->score == doctest::Approx(0.3));
}

TEST_CASE("match_toponym returns nothing above the threshold") {
    Gazetteer gaz = demo_gazetteer();
    SpatialMention m;
    m.surface = {"Xyzqw"};
    CHECK_FALSE(match_toponym(m, gaz, kDefaultMatchThreshold).has_value());
    m.surface = {"Legnickiej"};
    CHECK_FALSE(match_toponym(m, gaz, 0.2).has_value());
    CHECK(match_toponym(m, gaz, 0.3).has_value());  // inclusive boundary
}

TEST_CASE("match_toponym prefers stops, then intersections, then streets on ties") {
    Gazetteer gaz = build_gazetteer({
        {"Dworcowa", ToponymKind::street, 51.0, 17.0, ToponymSource::osm},
        {"Dworcowa", ToponymKind::stop, 51.1, 17.1, ToponymSource::gtfs},
        {"Dworcowa", ToponymKind::intersection, 51.2, 17.2, ToponymSource::manual},
    });
    SpatialMention m;
    m.surface = {"Dworcowa"};
    auto r = match_toponym(m, gaz, 0.3);
    REQUIRE(r.has_value());
    CHECK(r->toponym.kind == ToponymKind::stop);

    Gazetteer no_stop = build_gazetteer({
        {"Dworcowa", ToponymKind::street, 51.0, 17.0, ToponymSource::osm},
        {"Dworcowa", ToponymKind::intersection, 51.2, 17.2, ToponymSource::manual},
    });
    auto r2 = match_toponym(m, no_stop, 0.3);
    REQUIRE(r2.has_value());
    CHECK(r2->toponym.kind == ToponymKind::intersection);
}

TEST_CASE("match_toponym breaks full ties by name") {
    Gazetteer gaz = build_gazetteer({
        {"Bkw", ToponymKind::stop, 51.0, 17.0, ToponymSource::gtfs},
        {"Akw", ToponymKind::stop, 51.1, 17.1, ToponymSource::gtfs},
    });
    SpatialMention m;
    m.surface = {"Ckw"};  // distance 1 to both
    auto r = match_toponym(m, gaz, 0.5);
    REQUIRE(r.has_value());
    CHECK(r->toponym.name == "Akw");
}

TEST_CASE("match_toponym requires a gazetteer") {
    Gazetteer empty;
    SpatialMention m;
    m.surface = {"Legnickiej"};
    CHECK_THROWS_AS(match_toponym(m, empty, 0.3), InputError);
}

TEST_CASE("matched scores never exceed the threshold") {
    Gazetteer gaz = demo_gazetteer();
    std::mt19937_64 rng(21);
    const std::string alphabet = "aeiklmnorstwz";
    for (int i = 0; i < 500; ++i) {
        std::string word;
        size_t len = 3 + rng() % 10;
        for (size_t j = 0; j < len; ++j) word += alphabet[rng() % alphabet.size()];
        word[0] = static_cast<char>(word[0] - 'a' + 'A');
        SpatialMention m;
        m.surface = {word};
        auto r = match_toponym(m, gaz, kDefaultMatchThreshold);
        if (r) CHECK(r->score <= kDefaultMatchThreshold);
    }
}

TEST_CASE("geocode_post orders locations by first mention and deduplicates") {
    Gazetteer gaz = demo_gazetteer();
    auto lex = default_trigger_lexicon();

    auto locs = geocode_post(
        text_post("Awaria na ul. Legnickiej. Objazd przez pętlę do pętli Kwiska"), gaz, lex, 0.3);
    REQUIRE(locs.size() == 2);
    CHECK(locs[0].lat == doctest::Approx(51.1200));
    CHECK(locs[0].source_kind == ToponymKind::street);
    CHECK(locs[1].lat == doctest::Approx(51.1250));
    CHECK(locs[1].source_kind == ToponymKind::stop);

    auto dup = geocode_post(text_post("Na ul. Legnickiej i znowu na ul. Legnickiej"), gaz, lex,
                            0.3);
    CHECK(dup.size() == 1);
}

TEST_CASE("geocode_post keeps the best confidence for repeated matches") {
    Gazetteer gaz = demo_gazetteer();
    auto lex = default_trigger_lexicon();
    // "Legnicka" scores 0, "Legnickiej" scores 0.3; the exact form wins.
    auto locs = geocode_post(text_post("Na ul. Legnickiej oraz przy ul. Legnicka"), gaz, lex, 0.3);
    REQUIRE(locs.size() == 1);
    CHECK(locs[0].confidence == doctest::Approx(1.0));
}

TEST_CASE("geocode_post returns nothing for unmatched text") {
    Gazetteer gaz = demo_gazetteer();
    auto lex = default_trigger_lexicon();
    CHECK(geocode_post(text_post("Utrudnienia bez wskazania miejsca"), gaz, lex, 0.3).empty());
}

TEST_CASE("trigger files load token sequences and reject empties") {
    TempDir dir;
    std::string path = dir.file("triggers.txt");
    write_file(path, "# komentarz\nul\nprzy przystanku\n\npętli\n");
    TriggerLexicon lex = load_triggers(path, 3);
    CHECK(lex.max_span == 3);
    REQUIRE(lex.triggers.size() == 3);
    CHECK(lex.triggers[1] == std::vector<std::string>{"przy", "przystanku"});

    write_file(path, "# tylko komentarz\n");
    CHECK_THROWS_AS(load_triggers(path, 3), InputError);
    CHECK_THROWS_AS(load_triggers(dir.file("nope.txt"), 3), InputError);
}
