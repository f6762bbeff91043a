// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace trustyweb {

enum class UnitKind { Ayah, Surah, FullText };

const char* to_string(UnitKind k);

struct CorpusUnit {
    UnitKind kind = UnitKind::Ayah;
    int surah_no = 0; // 1..114
    int ayah_no = 0;  // 0 when kind != Ayah
    std::string text; // UTF-8
};

struct CorpusStats {
    std::size_t surah_count = 0;
    std::size_t ayah_count = 0;
    std::size_t total_words = 0;
    std::size_t distinct_words = 0;

    nlohmann::json to_json() const;
};

struct Corpus {
    std::vector<CorpusUnit> units; // ayahs in file order, then surahs, then full text
    CorpusStats stats;

    std::vector<CorpusUnit> of_kind(UnitKind k) const;
    std::string full_text_digest_hex() const;
};

// Parses pipe-delimited `surah|ayah|text` lines (text may itself contain
// pipes). Surah units are their ayahs joined by single spaces, in order;
// the full-text unit is all ayahs joined the same way. Word counts use
// Unicode-whitespace splitting. Throws MalformedLine (with the line
// number) and NonMonotoneOrdering.
Corpus ingest_corpus(const std::filesystem::path& path);

enum class BenchMode { InMemory, StreamingFromFile };

struct BenchResult {
    UnitKind kind = UnitKind::Ayah;
    double min_ms = 0;
    double max_ms = 0;
    double mean_ms = 0;
    std::size_t n = 0; // timed samples (units x repetitions)
    bool digest_consistency = false;

    nlohmann::json to_json() const;
};

// Times digest computation per unit (median over repetitions after one
// warm-up pass) and aggregates per kind. digest_consistency asserts that
// the streamed digest equals the in-memory digest for every unit.
std::vector<BenchResult> bench_hash(const std::vector<CorpusUnit>& units, int repetitions,
                                    BenchMode mode);

std::string bench_table(const std::vector<BenchResult>& results);

// Whole-buffer hashing vs 1-octet-chunk streaming over the same bytes.
struct ChunkContrast {
    std::size_t bytes = 0;
    double whole_ms = 0;
    double chunked_ms = 0;
    double ratio = 0; // chunked / whole

    nlohmann::json to_json() const;
};

ChunkContrast measure_chunk_contrast(std::size_t bytes, int repetitions = 3);

struct CorpusPublishSummary {
    std::size_t published = 0; // newly created records
    std::size_t existing = 0;  // idempotent re-publishes
    std::size_t failed = 0;    // per-ayah publish failures
    std::string first_error;
    std::string full_text_uri;

    nlohmann::json to_json() const;
};

// Publishes every unit as text/plain with the parent chain
// Ayah -> its Surah -> FullText -> publisher root. Idempotent. Failures on
// the chain prerequisites (full text, surahs) abort; per-ayah failures are
// collected and rethrown with the summary after the run.
CorpusPublishSummary publish_corpus(const Corpus& corpus, const std::string& endpoint,
                                    const std::string& author, int timeout_ms = 5000);

} // namespace trustyweb
