// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "core/errors.hpp"
#include "core/uri.hpp"

using namespace trustyweb;

namespace {

// oracle digests, computed externally
constexpr const char* kEmptyHex =
    "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
constexpr const char* kAbcHex =
    "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad";
constexpr const char* kAbdHex =
    "a52d159f262b2c6ddb724a61840befc36eb30c88877a4030b65cbe86298449c9";

} // namespace

TEST_CASE("classify: digest-final-segment URIs are trusty") {
    auto c = classify_uri(
        "https://www.example.com/"
        "803dee27b5a9ddf866112eac2f8a34e5bd83ca08015ec4acaaffeba25a378352");
    REQUIRE(is_trusty(c));
    auto u = std::get<TrustyUri>(c);
    CHECK(u.scheme == "https");
    CHECK(u.authority == "www.example.com");
    CHECK(u.prefix_path == "");
    CHECK(u.digest.to_hex() ==
          "803dee27b5a9ddf866112eac2f8a34e5bd83ca08015ec4acaaffeba25a378352");
}

TEST_CASE("classify: ordinary pages and near-misses are plain") {
    CHECK_FALSE(is_trusty(classify_uri("https://www.example.com/index.html")));
    // 63 hex chars: wrong length
    CHECK_FALSE(is_trusty(classify_uri(
        std::string("https://h/a/") + std::string(63, 'a'))));
    // 65 hex chars
    CHECK_FALSE(is_trusty(classify_uri(
        std::string("https://h/") + std::string(65, 'a'))));
    // uppercase hex is not the canonical form
    CHECK_FALSE(is_trusty(classify_uri(
        std::string("https://h/") + std::string(64, 'A'))));
    // query and fragment disqualify
    CHECK_FALSE(is_trusty(classify_uri(
        std::string("https://h/") + std::string(64, 'a') + "?x=1")));
    CHECK_FALSE(is_trusty(classify_uri(
        std::string("https://h/") + std::string(64, 'a') + "#frag")));
}

TEST_CASE("classify throws on unparseable input") {
    CHECK_THROWS_AS(classify_uri("not a uri"), Error);
    CHECK_THROWS_AS(classify_uri("http://"), Error);
    CHECK_THROWS_AS(classify_uri(""), Error);
}

TEST_CASE("authority-less schemes classify as plain") {
    CHECK_FALSE(is_trusty(classify_uri("mailto:someone@example.com")));
    CHECK_FALSE(is_trusty(classify_uri("urn:isbn:0451450523")));
}

TEST_CASE("mint embeds the content digest as the final segment") {
    auto u = mint("https://h/", std::string_view(""));
    CHECK(u.to_string() == std::string("https://h/") + kEmptyHex);

    auto v = mint("https://www.example.com/", std::string_view("abc"));
    CHECK(v.to_string() == std::string("https://www.example.com/") + kAbcHex);

    auto w = mint("http://h:8080/articles/", std::string_view("abc"));
    CHECK(w.to_string() == std::string("http://h:8080/articles/") + kAbcHex);
    CHECK(w.prefix_path == "/articles");
}

TEST_CASE("mint output classifies as trusty and verifies") {
    auto u = mint("https://h/", std::string_view("abc"));
    CHECK(is_trusty(classify_uri(u.to_string())));
    CHECK(verify(u, std::string_view("abc")).match);
}

TEST_CASE("mint rejects malformed bases") {
    CHECK_THROWS_AS(mint("ftp://h/", std::string_view("x")), Error);
    CHECK_THROWS_AS(mint("h/path", std::string_view("x")), Error);
    CHECK_THROWS_AS(mint("https://h/?q=1", std::string_view("x")), Error);
    // base already ending in a digest segment
    CHECK_THROWS_AS(mint(std::string("https://h/") + kAbcHex, std::string_view("x")),
                    Error);
}

TEST_CASE("verify reports both digests on mismatch") {
    TrustyUri u;
    u.scheme = "https";
    u.authority = "h";
    u.digest = *Digest::from_hex(kAbcHex);
    auto outcome = verify(u, std::string_view("abd"));
    CHECK_FALSE(outcome.match);
    CHECK(outcome.expected.to_hex() == kAbcHex);
    CHECK(outcome.actual.to_hex() == kAbdHex);
}

TEST_CASE("mint/verify tamper detection") {
    std::string content = "the content body";
    auto u = mint("https://h/", content);
    CHECK(verify(u, content).match);
    auto tampered = content;
    tampered[0] ^= 0x01;
    CHECK_FALSE(verify(u, tampered).match);
}

TEST_CASE("parse/serialize round-trip over random trusty URIs") {
    std::mt19937 rng(99);
    const char* prefixes[] = {"", "/a", "/a/b", "/x-y/z.w"};
    for (int i = 0; i < 200; ++i) {
        TrustyUri u;
        u.scheme = (rng() & 1) ? "https" : "http";
        u.authority = "host" + std::to_string(rng() % 100) +
                      ((rng() & 1) ? ":" + std::to_string(1024 + rng() % 60000) : "");
        u.prefix_path = prefixes[rng() % 4];
        std::string content = std::to_string(rng());
        u.digest = compute_digest(content);
        auto parsed = TrustyUri::parse(u.to_string());
        REQUIRE(parsed.has_value());
        CHECK(*parsed == u);
    }
}

TEST_CASE("reference resolution follows the standard examples") {
    const std::string base = "http://a/b/c/d;p?q";
    CHECK(resolve_reference(base, "g") == "http://a/b/c/g");
    CHECK(resolve_reference(base, "./g") == "http://a/b/c/g");
    CHECK(resolve_reference(base, "g/") == "http://a/b/c/g/");
    CHECK(resolve_reference(base, "/g") == "http://a/g");
    CHECK(resolve_reference(base, "//g") == "http://g");
    CHECK(resolve_reference(base, "?y") == "http://a/b/c/d;p?y");
    CHECK(resolve_reference(base, "../g") == "http://a/b/g");
    CHECK(resolve_reference(base, "../../g") == "http://a/g");
    CHECK(resolve_reference(base, "g#s") == "http://a/b/c/g#s");
    CHECK(resolve_reference(base, "http://x/y") == "http://x/y");
}

TEST_CASE("authority normalization lowercases and elides default ports") {
    CHECK(normalize_authority("EXAMPLE.com") == "example.com");
    CHECK(normalize_authority("example.com:80") == "example.com");
    CHECK(normalize_authority("example.com:443") == "example.com");
    CHECK(normalize_authority("example.com:8080") == "example.com:8080");
    CHECK(normalize_authority("127.0.0.1:9001") == "127.0.0.1:9001");
}
