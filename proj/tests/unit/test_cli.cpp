// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "harness/corpus_fixture.hpp"

namespace fs = std::filesystem;

#ifndef TRUSTY_CLI_PATH
#error "TRUSTY_CLI_PATH must point at the trusty binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(TRUSTY_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        static unsigned c = 0;
        path = fs::temp_directory_path() /
               (std::string("trustyweb-") + tag + "-" + std::to_string(::getpid()) + "-" +
                std::to_string(c++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

constexpr const char* kEmptyHex =
    "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";

} // namespace

TEST_CASE("mint of an empty file prints the oracle URI") {
    TempDir dir("cli1");
    auto file = dir.path / "empty.txt";
    std::ofstream(file).flush();

    auto r = run_cli("mint --base https://h/ " + file.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == std::string("https://h/") + kEmptyHex + "\n");
}

TEST_CASE("verify exits 0 on match and 3 on mismatch") {
    TempDir dir("cli2");
    auto file = dir.path / "c.txt";
    std::ofstream(file) << "abc";

    auto minted = run_cli("mint --base https://h/ " + file.string());
    REQUIRE(minted.exit_code == 0);
    std::string uri = minted.out.substr(0, minted.out.size() - 1);

    CHECK(run_cli("verify " + uri + " " + file.string()).exit_code == 0);

    auto tampered = dir.path / "t.txt";
    std::ofstream(tampered) << "abd";
    CHECK(run_cli("verify " + uri + " " + tampered.string()).exit_code == 3);
}

TEST_CASE("json output is a single well-formed document on stdout") {
    TempDir dir("cli3");
    auto file = dir.path / "x.txt";
    std::ofstream(file) << "x";
    auto r = run_cli("--output json mint --base https://h/ " + file.string());
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("uri"));
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("mint").exit_code == 1);            // missing required
    CHECK(run_cli("no-such-command").exit_code == 1); // unknown subcommand
    CHECK(run_cli("").exit_code == 1);                // subcommand required
}

TEST_CASE("missing files exit 2") {
    CHECK(run_cli("mint --base https://h/ /definitely/not/here").exit_code == 2);
}

TEST_CASE("ingest reports canonical counts") {
    TempDir dir("cli4");
    auto corpus = dir.path / "canonical.txt";
    testsupport::write_synthetic_canonical_corpus(corpus);
    auto r = run_cli("--output json ingest " + corpus.string() + " --stats");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("surah_count") == 114);
    CHECK(j.at("ayah_count") == 6236);
    CHECK(j.at("total_words").get<std::size_t>() > 0);
}

TEST_CASE("ingest of a malformed corpus exits 2") {
    TempDir dir("cli5");
    auto corpus = dir.path / "bad.txt";
    std::ofstream(corpus) << "1|1\n";
    CHECK(run_cli("ingest " + corpus.string()).exit_code == 2);
}

TEST_CASE("resolve exits 5 when nothing can be trusted") {
    // unreachable source: the search yields nothing, so the verdict is
    // Untrusted and the trace still prints
    auto r = run_cli("resolve --source 127.0.0.1:1 sometoken");
    CHECK(r.exit_code == 5);
    CHECK(r.out.find("\"search\"") != std::string::npos);
    CHECK(r.out.find("NotFoundAnywhere") != std::string::npos);
}

TEST_CASE("bench emits a table row per unit kind") {
    TempDir dir("cli6");
    auto corpus = dir.path / "toy.txt";
    testsupport::write_toy_corpus(corpus);
    auto r = run_cli("--output json bench " + corpus.string() + " --reps 2 --mode in_memory");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 3);
    for (const auto& row : j) {
        CHECK(row.at("digest_consistency") == true);
    }
}
