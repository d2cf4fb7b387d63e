#include <doctest.h>

#include "tim/text.hpp"
#include "tim/unicode.hpp"

using namespace tim;

TEST_CASE("tokenize splits on non-alphanumerics and lowercases") {
    CHECK(tokenize("Zderzenie na ul. Legnickiej #AlertMPK") ==
          std::vector<std::string>{"zderzenie", "na", "ul", "legnickiej", "alertmpk"});
    CHECK(tokenize("linii 4 i 23") == std::vector<std::string>{"linii", "4", "i", "23"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("!!! ... ---") == std::vector<std::string>{});
    CHECK(tokenize("a,b;c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("tokenize keeps Polish diacritics") {
    CHECK(tokenize("Świdnicką pętlę ŁÓDŹ") ==
          std::vector<std::string>{"świdnicką", "pętlę", "łódź"});
}

TEST_CASE("scan_tokens reports byte offsets and shape flags") {
    auto toks = scan_tokens("Na ul. Legnickiej 14");
    REQUIRE(toks.size() == 4);

    CHECK(toks[0].lower == "na");
    CHECK(toks[0].begin == 0);
    CHECK(toks[0].end == 2);
    CHECK(toks[0].capitalized);
    CHECK_FALSE(toks[0].has_digit);

    CHECK(toks[1].lower == "ul");
    CHECK_FALSE(toks[1].capitalized);

    CHECK(toks[2].lower == "legnickiej");
    CHECK(toks[2].begin == 7);
    CHECK(toks[2].end == 17);
    CHECK(toks[2].capitalized);

    CHECK(toks[3].lower == "14");
    CHECK(toks[3].has_digit);
    CHECK_FALSE(toks[3].capitalized);
}

TEST_CASE("scan_tokens offsets stay byte-accurate through multibyte letters") {
    // 'Ś' encodes as two bytes, so the token spans 10 bytes.
    auto toks = scan_tokens("pl. Świdnicka!");
    REQUIRE(toks.size() == 2);
    CHECK(toks[1].lower == "świdnicka");
    CHECK(toks[1].begin == 4);
    CHECK(toks[1].end == 14);
    CHECK(toks[1].capitalized);
}

TEST_CASE("scan_tokens flags digit-bearing mixed tokens") {
    auto toks = scan_tokens("linia A4");
    REQUIRE(toks.size() == 2);
    CHECK(toks[1].lower == "a4");
    CHECK(toks[1].capitalized);
    CHECK(toks[1].has_digit);
}

TEST_CASE("normalize_name lowercases, collapses whitespace, strips generic prefixes") {
    CHECK(normalize_name("ul. Legnicka") == "legnicka");
    CHECK(normalize_name("UL. LEGNICKA") == "legnicka");
    CHECK(normalize_name("pl Grunwaldzki") == "grunwaldzki");
    CHECK(normalize_name("al. Hallera") == "hallera");
    CHECK(normalize_name("  Plac   Grunwaldzki ") == "plac grunwaldzki");
    CHECK(normalize_name("Legnicka") == "legnicka");
    CHECK(normalize_name("Świdnicka") == "świdnicka");
}

TEST_CASE("normalize_name strips stacked prefixes but only at the front") {
    CHECK(normalize_name("ul. pl. Teatralny") == "teatralny");
    CHECK(normalize_name("Nowa ul. Legnicka") == "nowa ul. legnicka");
    // A prefix with nothing after it survives; the name must not vanish.
    CHECK(normalize_name("ul.") == "ul.");
    CHECK(normalize_name("ul") == "ul");
}

TEST_CASE("normalize_name idempotence") {
    for (const char* s : {"ul. Legnicka", "Plac Grunwaldzki", "  pl.   Bema  ", "Świdnicka 8"}) {
        auto once = normalize_name(s);
        CHECK(normalize_name(once) == once);
    }
}

TEST_CASE("lowercase handles ASCII and covered non-ASCII ranges") {
    CHECK(lowercase("WROCŁAW") == "wrocław");
    CHECK(lowercase("ĄĘŚĆŻŹŃÓŁ") == "ąęśćżźńół");
    CHECK(lowercase("MiXeD 42") == "mixed 42");
}

TEST_CASE("utf8 decode flags invalid bytes with replacement chars") {
    std::string bad = "ab";
    bad.push_back(static_cast<char>(0xFF));
    bad += "cd";
    auto cps = utf8_decode(bad);
    REQUIRE(cps.size() == 5);
    CHECK(cps[2] == 0xFFFD);
}
