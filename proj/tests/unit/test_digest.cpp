// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "core/digest.hpp"
#include "core/errors.hpp"
#include "support/sha256_ref.hpp"

using namespace trustyweb;
using testsupport::sha256_ref_hex;

namespace {

// FIPS 180-4 example messages plus the one-million-'a' extension case.
struct KnownVector {
    std::string message;
    const char* digest;
};

std::vector<KnownVector> known_vectors() {
    return {
        {"", "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"},
        {"abc", "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"},
        {"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
         "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1"},
        {"abcdefghbcdefghicdefghijdefghijkefghijklfghijklmghijklmnhijklmno"
         "ijklmnopjklmnopqklmnopqrlmnopqrsmnopqrstnopqrstu",
         "cf5b16a778af8380036ce59e7b0492370b249b11e8f07a51afac45037afee9d1"},
        {std::string(1000000, 'a'),
         "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0"},
    };
}

// Deterministic short messages, byte i = (i*37+11) & 0xff; digests frozen
// from an external oracle before the implementation existed.
struct PatternVector {
    std::size_t len;
    const char* digest;
};

constexpr PatternVector kPatternVectors[] = {
    {1, "e7cf46a078fed4fafd0b5e3aff144802b853f8ae459a4f0c14add3314b7cc3a6"},
    {2, "cdc63a6325d5fa92515578c0b418e6eeec1c6d085937a24fc43c2126ea517457"},
    {7, "e759cdfe6d8119afd0dccf1b85394ff66d02636fd01db3189dae43e91e3c1385"},
    {8, "ada1a184226d6b2fd6a3728f3c5411d6651f387a6365d84fee8972f8fe55dba9"},
    {31, "0cc420417cb6a768e632bf1be8d1f197c9c0e9dd1dd2021e3bd37c46cee0516f"},
    {32, "83b7a8ed859053c81d818870fab1f8b1ae44d06a98a9665d369a8fd7d2838ded"},
    {55, "2900465fcb533e05a158fd2b3be0e5e3b03740d83060aa3580e0d98a96bf2384"},
    {56, "31454ff48ef36af2f08fd511bdc37d9d5855ac23e992e5ff5445cb6b7674a674"},
    {63, "5f6401b96532c36de4e65beec0409b69b1d181864c8009b7a04f43e5d56350d1"},
    {64, "94eb5de4943613fd048dc93393ab06877405faa39c11f53e9386083339833e7e"},
};

std::string pattern_message(std::size_t len) {
    std::string m(len, '\0');
    for (std::size_t i = 0; i < len; ++i) {
        m[i] = static_cast<char>((i * 37 + 11) & 0xff);
    }
    return m;
}

std::string random_bytes(std::mt19937& rng, std::size_t len) {
    std::string out(len, '\0');
    for (auto& c : out) c = static_cast<char>(rng() & 0xff);
    return out;
}

} // namespace

TEST_CASE("compute_digest matches the known vector set") {
    for (const auto& v : known_vectors()) {
        CAPTURE(v.message.size());
        CHECK(compute_digest(v.message).to_hex() == v.digest);
        CHECK(sha256_ref_hex(v.message) == v.digest);
    }
}

TEST_CASE("compute_digest matches the frozen pattern vectors") {
    for (const auto& v : kPatternVectors) {
        auto msg = pattern_message(v.len);
        CAPTURE(v.len);
        CHECK(compute_digest(msg).to_hex() == v.digest);
        CHECK(sha256_ref_hex(msg) == v.digest);
    }
}

TEST_CASE("implementation and reference oracle agree on random inputs") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<std::size_t> len_dist(0, 4096);
    for (int i = 0; i < 300; ++i) {
        auto msg = random_bytes(rng, len_dist(rng));
        CHECK(compute_digest(msg).to_hex() == sha256_ref_hex(msg));
    }
}

TEST_CASE("determinism across calls") {
    auto msg = pattern_message(1234);
    CHECK(compute_digest(msg) == compute_digest(msg));
}

TEST_CASE("single-octet change flips the digest") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto msg = random_bytes(rng, 1 + rng() % 512);
        auto mutated = msg;
        std::size_t pos = rng() % mutated.size();
        mutated[pos] = static_cast<char>(mutated[pos] ^ (1 + rng() % 255));
        CHECK(compute_digest(msg) != compute_digest(mutated));
    }
}

TEST_CASE("streaming digest equals whole-buffer digest for every chunk size") {
    auto msg = pattern_message(100000);
    auto expected = compute_digest(msg);
    for (std::size_t chunk : {std::size_t(1), std::size_t(7), std::size_t(4096),
                              std::size_t(65536)}) {
        std::istringstream in(msg);
        CHECK(compute_digest_streaming(in, chunk) == expected);
    }
}

TEST_CASE("streaming over 1 MiB of zeros equals the buffer digest") {
    std::string zeros(1 << 20, '\0');
    std::istringstream in(zeros);
    CHECK(compute_digest_streaming(in, 4096) == compute_digest(zeros));
}

TEST_CASE("streaming rejects chunk size zero") {
    std::istringstream in("x");
    CHECK_THROWS_AS(compute_digest_streaming(in, 0), Error);
}

TEST_CASE("digest_file streams the file contents") {
    auto path = std::filesystem::temp_directory_path() / "trustyweb-digest-test.bin";
    auto msg = pattern_message(30000);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << msg;
    }
    CHECK(digest_file(path).to_hex() == compute_digest(msg).to_hex());
    CHECK(digest_file(path, 1).to_hex() == compute_digest(msg).to_hex());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(digest_file(path), Error);
}

TEST_CASE("hex round-trip and strictness") {
    auto d = compute_digest(std::string_view("abc"));
    auto hex = d.to_hex();
    CHECK(hex.size() == 64);
    REQUIRE(Digest::from_hex(hex).has_value());
    CHECK(*Digest::from_hex(hex) == d);

    CHECK_FALSE(Digest::from_hex(hex.substr(1)).has_value());
    auto upper = hex;
    upper[0] = static_cast<char>(std::toupper(upper[0] == '0' ? 'a' : upper[0]));
    // canonical form is lowercase only
    if (upper != hex) CHECK_FALSE(Digest::from_hex(upper).has_value());
    auto bad = hex;
    bad[10] = 'g';
    CHECK_FALSE(Digest::from_hex(bad).has_value());
}

TEST_CASE("sha256 state is single-use") {
    Sha256 h;
    h.update("abc", 3);
    (void)h.finish();
    CHECK_THROWS_AS(h.update("x", 1), Error);
    CHECK_THROWS_AS(h.finish(), Error);
}
