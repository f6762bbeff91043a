// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "core/digest.hpp"
#include "core/errors.hpp"
#include "core/resource.hpp"
#include "core/store_server.hpp"
#include "core/text.hpp"

namespace fs = std::filesystem;

namespace trustyweb {

const char* to_string(UnitKind k) {
    switch (k) {
    case UnitKind::Ayah: return "Ayah";
    case UnitKind::Surah: return "Surah";
    case UnitKind::FullText: return "FullText";
    }
    return "?";
}

nlohmann::json CorpusStats::to_json() const {
    return {
        {"surah_count", surah_count},
        {"ayah_count", ayah_count},
        {"total_words", total_words},
        {"distinct_words", distinct_words},
    };
}

std::vector<CorpusUnit> Corpus::of_kind(UnitKind k) const {
    std::vector<CorpusUnit> out;
    for (const auto& u : units) {
        if (u.kind == k) out.push_back(u);
    }
    return out;
}

std::string Corpus::full_text_digest_hex() const {
    for (const auto& u : units) {
        if (u.kind == UnitKind::FullText) return compute_digest(u.text).to_hex();
    }
    return "";
}

Corpus ingest_corpus(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open corpus: " + path.string());

    Corpus corpus;
    std::map<int, std::vector<std::string>> surah_texts; // ordered by surah number
    std::map<int, int> last_ayah;
    std::set<std::string> distinct;

    std::string line;
    std::size_t line_no = 0;
    bool first_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first_line && line.size() >= 3 &&
            static_cast<unsigned char>(line[0]) == 0xef &&
            static_cast<unsigned char>(line[1]) == 0xbb &&
            static_cast<unsigned char>(line[2]) == 0xbf) {
            line.erase(0, 3); // UTF-8 BOM
        }
        first_line = false;
        if (line.empty()) continue;

        auto p1 = line.find('|');
        auto p2 = p1 == std::string::npos ? std::string::npos : line.find('|', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos) {
            throw Error(Errc::malformed_line,
                        "line " + std::to_string(line_no) + ": expected surah|ayah|text");
        }
        std::string surah_field = line.substr(0, p1);
        std::string ayah_field = line.substr(p1 + 1, p2 - p1 - 1);
        std::string text = line.substr(p2 + 1);

        int surah_no = 0;
        int ayah_no = 0;
        try {
            std::size_t used = 0;
            surah_no = std::stoi(surah_field, &used);
            if (used != surah_field.size()) throw std::invalid_argument("");
            ayah_no = std::stoi(ayah_field, &used);
            if (used != ayah_field.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw Error(Errc::malformed_line,
                        "line " + std::to_string(line_no) + ": non-numeric surah/ayah");
        }
        if (surah_no < 1 || surah_no > 114 || ayah_no < 1) {
            throw Error(Errc::malformed_line,
                        "line " + std::to_string(line_no) + ": surah/ayah out of range");
        }
        auto [it, fresh] = last_ayah.emplace(surah_no, 0);
        if (ayah_no <= it->second) {
            throw Error(Errc::non_monotone_ordering,
                        "line " + std::to_string(line_no) + ": ayah numbers must ascend");
        }
        it->second = ayah_no;
        (void)fresh;

        corpus.units.push_back({UnitKind::Ayah, surah_no, ayah_no, text});
        surah_texts[surah_no].push_back(text);

        auto words = split_unicode_whitespace(text);
        corpus.stats.total_words += words.size();
        for (auto& w : words) distinct.insert(std::move(w));
        ++corpus.stats.ayah_count;
    }
    if (in.bad()) throw Error(Errc::io, "read failure on " + path.string());

    std::string full_text;
    for (const auto& [surah_no, texts] : surah_texts) {
        std::string joined;
        for (std::size_t i = 0; i < texts.size(); ++i) {
            if (i) joined += ' ';
            joined += texts[i];
        }
        if (!full_text.empty()) full_text += ' ';
        full_text += joined;
        corpus.units.push_back({UnitKind::Surah, surah_no, 0, std::move(joined)});
    }
    corpus.units.push_back({UnitKind::FullText, 0, 0, std::move(full_text)});

    corpus.stats.surah_count = surah_texts.size();
    corpus.stats.distinct_words = distinct.size();
    return corpus;
}

nlohmann::json BenchResult::to_json() const {
    return {
        {"unit_kind", to_string(kind)},
        {"min_ms", min_ms},
        {"max_ms", max_ms},
        {"mean_ms", mean_ms},
        {"n", n},
        {"digest_consistency", digest_consistency},
    };
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double time_once(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

std::vector<BenchResult> bench_hash(const std::vector<CorpusUnit>& units, int repetitions,
                                    BenchMode mode) {
    if (repetitions < 1) throw Error(Errc::invalid_argument, "repetitions must be >= 1");
    if (units.empty()) throw Error(Errc::invalid_argument, "no units to bench");

    static std::atomic<unsigned> bench_seq{0};
    fs::path tmp_dir = fs::temp_directory_path() / "trustyweb-bench";
    fs::create_directories(tmp_dir);
    fs::path tmp_file = tmp_dir / ("unit-" + std::to_string(getpid()) + "-" +
                                   std::to_string(bench_seq++) + ".bin");

    struct Agg {
        std::vector<double> unit_medians;
        std::size_t samples = 0;
        bool consistent = true;
    };
    std::map<UnitKind, Agg> agg;

    for (const auto& unit : units) {
        Digest in_memory = compute_digest(unit.text);

        {
            std::ofstream out(tmp_file, std::ios::binary | std::ios::trunc);
            if (!out) throw Error(Errc::io, "cannot write " + tmp_file.string());
            out.write(unit.text.data(), static_cast<std::streamsize>(unit.text.size()));
        }
        {
            std::ifstream check(tmp_file, std::ios::binary);
            Digest streamed = compute_digest_streaming(check, 65536);
            if (streamed != in_memory) agg[unit.kind].consistent = false;
        }

        auto run = [&] {
            if (mode == BenchMode::InMemory) {
                volatile auto byte = compute_digest(unit.text).bytes[0];
                (void)byte;
            } else {
                std::ifstream in(tmp_file, std::ios::binary);
                if (!in) throw Error(Errc::io, "cannot reopen " + tmp_file.string());
                volatile auto byte = compute_digest_streaming(in, 65536).bytes[0];
                (void)byte;
            }
        };

        run(); // warm-up pass, excluded
        std::vector<double> samples;
        samples.reserve(static_cast<std::size_t>(repetitions));
        for (int r = 0; r < repetitions; ++r) samples.push_back(time_once(run));

        auto& a = agg[unit.kind];
        a.unit_medians.push_back(median(std::move(samples)));
        a.samples += static_cast<std::size_t>(repetitions);
    }

    std::error_code ec;
    fs::remove(tmp_file, ec);

    std::vector<BenchResult> results;
    for (const auto& [kind, a] : agg) {
        BenchResult r;
        r.kind = kind;
        r.n = a.samples;
        r.digest_consistency = a.consistent;
        r.min_ms = *std::min_element(a.unit_medians.begin(), a.unit_medians.end());
        r.max_ms = *std::max_element(a.unit_medians.begin(), a.unit_medians.end());
        double sum = 0;
        for (double m : a.unit_medians) sum += m;
        r.mean_ms = sum / static_cast<double>(a.unit_medians.size());
        results.push_back(r);
    }
    std::sort(results.begin(), results.end(), [](const BenchResult& a, const BenchResult& b) {
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    return results;
}

std::string bench_table(const std::vector<BenchResult>& results) {
    std::ostringstream out;
    out << "kind      min_ms        max_ms        mean_ms       n       consistent\n";
    for (const auto& r : results) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-9s %-13.6f %-13.6f %-13.6f %-7zu %s\n",
                      to_string(r.kind), r.min_ms, r.max_ms, r.mean_ms, r.n,
                      r.digest_consistency ? "yes" : "NO");
        out << line;
    }
    return out.str();
}

nlohmann::json ChunkContrast::to_json() const {
    return {
        {"bytes", bytes},
        {"whole_buffer_ms", whole_ms},
        {"one_octet_chunks_ms", chunked_ms},
        {"ratio", ratio},
    };
}

ChunkContrast measure_chunk_contrast(std::size_t bytes, int repetitions) {
    std::string data(bytes, '\0');
    std::mt19937 rng(0x7275'7374u);
    for (auto& c : data) c = static_cast<char>(rng() & 0xff);

    auto whole = [&] {
        volatile auto b = compute_digest(data).bytes[0];
        (void)b;
    };
    auto chunked = [&] {
        std::istringstream in(data);
        volatile auto b = compute_digest_streaming(in, 1).bytes[0];
        (void)b;
    };

    whole();
    chunked();
    double best_whole = 0;
    double best_chunked = 0;
    for (int r = 0; r < repetitions; ++r) {
        double w = time_once(whole);
        double c = time_once(chunked);
        if (r == 0 || w < best_whole) best_whole = w;
        if (r == 0 || c < best_chunked) best_chunked = c;
    }

    ChunkContrast out;
    out.bytes = bytes;
    out.whole_ms = best_whole;
    out.chunked_ms = best_chunked;
    out.ratio = best_whole > 0 ? best_chunked / best_whole : 0;
    return out;
}

nlohmann::json CorpusPublishSummary::to_json() const {
    nlohmann::json j = {
        {"published", published},
        {"existing", existing},
        {"failed", failed},
        {"full_text_uri", full_text_uri},
    };
    if (!first_error.empty()) j["first_error"] = first_error;
    return j;
}

CorpusPublishSummary publish_corpus(const Corpus& corpus, const std::string& endpoint,
                                    const std::string& author, int timeout_ms) {
    CorpusPublishSummary summary;

    auto post = [&](const std::string& text, const std::string& parent) {
        Resource r = Resource::from_text(text, "text/plain; charset=utf-8");
        auto result =
            StoreServer::publish_remote(endpoint, r, author, parent, false, timeout_ms);
        if (result.created) ++summary.published;
        else ++summary.existing;
        return result.record.at("uri").get<std::string>();
    };

    // chain prerequisites first; a failure here aborts the run
    std::string full_uri;
    for (const auto& u : corpus.units) {
        if (u.kind == UnitKind::FullText) {
            full_uri = post(u.text, "root");
            break;
        }
    }
    summary.full_text_uri = full_uri;

    std::map<int, std::string> surah_uris;
    for (const auto& u : corpus.units) {
        if (u.kind == UnitKind::Surah) {
            surah_uris[u.surah_no] = post(u.text, full_uri);
        }
    }
    for (const auto& u : corpus.units) {
        if (u.kind == UnitKind::Ayah) {
            try {
                post(u.text, surah_uris.at(u.surah_no));
            } catch (const Error& e) {
                ++summary.failed;
                if (summary.first_error.empty()) summary.first_error = e.what();
            }
        }
    }
    if (summary.failed > 0) {
        throw Error(Errc::network,
                    std::to_string(summary.failed) + " unit(s) failed to publish (" +
                        std::to_string(summary.published) + " published, " +
                        std::to_string(summary.existing) + " existing); first error: " +
                        summary.first_error);
    }
    return summary;
}

} // namespace trustyweb
