// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "core/errors.hpp"
#include "core/search_index.hpp"
#include "core/text.hpp"

using namespace trustyweb;

TEST_CASE("unicode whitespace splitting") {
    auto words = split_unicode_whitespace("alpha  beta\tgamma\ndelta");
    REQUIRE(words.size() == 4);
    CHECK(words[0] == "alpha");
    CHECK(words[3] == "delta");

    // NBSP (U+00A0), EN SPACE (U+2002), IDEOGRAPHIC SPACE (U+3000)
    auto u = split_unicode_whitespace("a\xc2\xa0"
                                      "b\xe2\x80\x82"
                                      "c\xe3\x80\x80"
                                      "d");
    REQUIRE(u.size() == 4);
    CHECK(u[1] == "b");

    CHECK(split_unicode_whitespace("").empty());
    CHECK(split_unicode_whitespace("   \t\n").empty());
}

TEST_CASE("arabic text splits on spaces and survives folding unchanged") {
    // bismillah in Arabic script: four words
    std::string bismillah =
        "\xd8\xa8\xd8\xb3\xd9\x85 \xd8\xa7\xd9\x84\xd9\x84\xd9\x87 "
        "\xd8\xa7\xd9\x84\xd8\xb1\xd8\xad\xd9\x85\xd9\x86 "
        "\xd8\xa7\xd9\x84\xd8\xb1\xd8\xad\xd9\x8a\xd9\x85";
    auto words = split_unicode_whitespace(bismillah);
    CHECK(words.size() == 4);
    auto tokens = tokenize(bismillah);
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0] == words[0]); // no case-folding effect on Arabic
}

TEST_CASE("tokenize folds ASCII case") {
    auto tokens = tokenize("Alpha BETA gamma");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == "alpha");
    CHECK(tokens[1] == "beta");
    CHECK(tokens[2] == "gamma");
}

TEST_CASE("html_to_text strips tags") {
    auto text = html_to_text("<h1>Title</h1><p>body words</p>");
    auto tokens = tokenize(text);
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == "title");
    CHECK(tokens[1] == "body");
}

TEST_CASE("rfc3339 formatting identity") {
    auto tp = parse_rfc3339("2020-01-01T00:00:00Z");
    CHECK(format_rfc3339(tp) == "2020-01-01T00:00:00Z");
}

TEST_CASE("rfc3339 parsing accepts offsets and fractions") {
    auto utc = parse_rfc3339("2020-06-15T12:30:45Z");
    auto offset = parse_rfc3339("2020-06-15T14:30:45+02:00");
    CHECK(utc == offset);
    auto frac = parse_rfc3339("2020-06-15T12:30:45.123Z");
    CHECK(format_rfc3339(frac) == "2020-06-15T12:30:45Z");
}

TEST_CASE("rfc3339 parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_rfc3339("2020-06-15"), Error);
    CHECK_THROWS_AS(parse_rfc3339("2020-13-01T00:00:00Z"), Error);
    CHECK_THROWS_AS(parse_rfc3339("2020-06-15T12:30:45"), Error);
    CHECK_THROWS_AS(parse_rfc3339("yesterday"), Error);
}

TEST_CASE("base64 round-trip") {
    for (std::string s : {std::string(""), std::string("a"), std::string("ab"),
                          std::string("abc"), std::string("\x00\xff\x10", 3)}) {
        CHECK(base64_decode(base64_encode(s)) == s);
    }
    CHECK(base64_encode("abc") == "YWJj");
    CHECK_THROWS_AS(base64_decode("!!!"), Error);
}
