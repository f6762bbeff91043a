// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every criterion and prints one PASS/FAIL line
// per criterion. Exit code 0 iff all pass.

#include <arpa/inet.h>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include "core/corpus.hpp"
#include "core/crawler.hpp"
#include "core/digest.hpp"
#include "core/errors.hpp"
#include "core/resolver.hpp"
#include "core/search_index.hpp"
#include "core/store.hpp"
#include "core/store_server.hpp"
#include "core/trust.hpp"
#include "core/validator.hpp"
#include "harness/corpus_fixture.hpp"
#include "harness/fixture_network.hpp"
#include "support/sha256_ref.hpp"

using namespace trustyweb;
namespace fs = std::filesystem;

#ifndef TRUSTY_CLI_PATH
#error "TRUSTY_CLI_PATH must point at the trusty binary"
#endif
#ifndef TRUSTY_GOLDEN_DIR
#error "TRUSTY_GOLDEN_DIR must point at tests/golden"
#endif

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw CheckFailure(what);
}

fs::path scratch_root() {
    static fs::path root = [] {
        auto p = fs::temp_directory_path() /
                 ("trustyweb-acceptance-" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return root;
}

std::string random_bytes(std::mt19937& rng, std::size_t len) {
    std::string out(len, '\0');
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        std::uint32_t w = rng();
        std::memcpy(&out[i], &w, 4);
    }
    for (; i < len; ++i) out[i] = static_cast<char>(rng() & 0xff);
    return out;
}

// ---- criterion 1: digest oracle equivalence ------------------------------

void criterion_digest_oracle() {
    struct Vector {
        std::string msg;
        const char* hex;
    };
    std::vector<Vector> vectors = {
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
    for (std::size_t len = 0; len <= 64; ++len) {
        std::string m(len, '\0');
        for (std::size_t i = 0; i < len; ++i) m[i] = static_cast<char>((i * 37 + 11) & 0xff);
        vectors.push_back({m, nullptr});
    }
    for (const auto& v : vectors) {
        auto impl = compute_digest(v.msg).to_hex();
        auto ref = testsupport::sha256_ref_hex(v.msg);
        require(impl == ref, "implementation disagrees with reference oracle");
        if (v.hex) require(impl == v.hex, "known vector mismatch");
    }

    std::mt19937 rng(20260811);
    std::uniform_int_distribution<std::size_t> len_dist(0, 1 << 20);
    for (int i = 0; i < 1000; ++i) {
        auto msg = random_bytes(rng, len_dist(rng));
        require(compute_digest(msg).to_hex() == testsupport::sha256_ref_hex(msg),
                "random-input disagreement at iteration " + std::to_string(i));
    }
}

// ---- criterion 2: roundtrip + tamper property -----------------------------

void criterion_roundtrip_tamper() {
    std::mt19937 rng(777);
    std::uniform_int_distribution<std::size_t> len_dist(1, 1024);
    const char* bases[] = {"https://h/", "http://pub.example:8080/items/",
                           "https://www.example.com/a/b/"};
    for (int i = 0; i < 10000; ++i) {
        auto content = random_bytes(rng, len_dist(rng));
        auto uri = mint(bases[rng() % 3], content);
        require(verify(uri, content).match, "roundtrip failure at " + std::to_string(i));

        auto mutated = content;
        std::size_t pos = rng() % mutated.size();
        mutated[pos] = static_cast<char>(mutated[pos] ^ (1 + rng() % 255));
        require(!verify(uri, mutated).match, "tamper undetected at " + std::to_string(i));
    }
}

// ---- criterion 3: streaming equivalence -----------------------------------

void criterion_streaming_equivalence() {
    auto dir = scratch_root() / "streaming";
    fs::create_directories(dir);
    auto corpus_path = dir / "canonical.txt";
    testsupport::write_synthetic_canonical_corpus(corpus_path);
    auto corpus = ingest_corpus(corpus_path);

    const std::size_t chunks[] = {1, 7, 4096, 65536};

    // corpus full text, from memory and from a file
    for (const auto& unit : corpus.of_kind(UnitKind::FullText)) {
        auto expected = compute_digest(unit.text);
        auto file = dir / "fulltext.bin";
        std::ofstream(file, std::ios::binary) << unit.text;
        for (auto chunk : chunks) {
            std::istringstream in(unit.text);
            require(compute_digest_streaming(in, chunk) == expected,
                    "corpus streaming mismatch at chunk " + std::to_string(chunk));
            require(digest_file(file, chunk) == expected,
                    "corpus file-streaming mismatch at chunk " + std::to_string(chunk));
        }
    }

    std::mt19937 rng(31337);
    for (int i = 0; i < 3; ++i) {
        auto blob = random_bytes(rng, 256 * 1024 + static_cast<std::size_t>(rng() % 1024));
        auto file = dir / ("blob" + std::to_string(i) + ".bin");
        std::ofstream(file, std::ios::binary) << blob;
        auto expected = compute_digest(blob);
        for (auto chunk : chunks) {
            require(digest_file(file, chunk) == expected,
                    "file streaming mismatch at chunk " + std::to_string(chunk));
        }
    }
}

// ---- criterion 4: corpus counts --------------------------------------------

void criterion_corpus_counts() {
    fs::path corpus_path;
    bool synthetic = false;
    if (const char* env = std::getenv("TRUSTY_CORPUS"); env && *env) {
        corpus_path = env;
    } else {
        corpus_path = scratch_root() / "canonical.txt";
        testsupport::write_synthetic_canonical_corpus(corpus_path);
        synthetic = true;
    }
    auto corpus = ingest_corpus(corpus_path);
    require(corpus.stats.surah_count == 114,
            "surah_count = " + std::to_string(corpus.stats.surah_count));
    require(corpus.stats.ayah_count == 6236,
            "ayah_count = " + std::to_string(corpus.stats.ayah_count));

    // word counts are dataset-edition dependent: reported, not gated
    std::cout << "       [info] corpus=" << (synthetic ? "synthetic" : corpus_path.string())
              << " total_words=" << corpus.stats.total_words
              << " (canonical edition: 78245)"
              << " distinct_words=" << corpus.stats.distinct_words
              << " (canonical edition: 14870)\n";
    auto full_digest = corpus.full_text_digest_hex();
    std::cout << "       [info] full_text_digest=" << full_digest
              << (full_digest ==
                          "5c79fc50b16917aeb6e153f51d1c92c1abbef2f43ea5d3a96cdb643617ee70f0"
                      ? " (matches the known edition digest)"
                      : " (matching 5c79fc50... requires that edition's exact bytes)")
              << "\n";
}

// ---- criterion 5: publish-once + triple tamper detection -------------------

void criterion_publish_once() {
    auto dir = scratch_root() / "publish-once";
    Store store(dir / "store", "http://placeholder/");
    StoreServer server(store);
    server.bind("127.0.0.1", 0);
    store.set_base_uri("http://" + server.authority() + "/");
    server.start();

    auto page = Resource::from_text("<p>immutable article</p>", "text/html; charset=utf-8");
    auto first = store.publish(page, "alice", ParentLink::root(store.base_uri()));
    auto again = store.publish(page, "alice", ParentLink::root(store.base_uri()));
    require(first.created && !again.created, "idempotent republish created a record");
    require(store.record_count() == 1, "store size changed on republish");
    require(first.record.uri == again.record.uri, "idempotent republish changed the URI");

    auto modified = Resource::from_text("<p>immutable article v2</p>",
                                        "text/html; charset=utf-8");
    auto second = store.publish(modified, "alice",
                                ParentLink::internal(first.record.uri.to_string()));
    require(second.created && second.record.uri != first.record.uri,
            "modified content did not get a new URI");

    // tampering mirror serves flipped bytes under the original URI
    testsupport::MirrorHost mirror(store);
    mirror.bind_and_start("127.0.0.1");
    mirror.set_tampering(true);
    TrustyUri mirrored = first.record.uri;
    mirrored.authority = mirror.authority();

    // detection 1: verify
    auto res = http_get(mirrored.to_string());
    require(res.status == 200, "mirror unreachable");
    require(!verify(mirrored, res.body).match, "verify missed the tampering");

    // detection 2: the crawler's rejected list
    SearchIndex index(dir / "index");
    auto report = crawl(index, {mirrored}, 5);
    require(report.indexed == 0 && report.rejected.size() == 1,
            "crawler did not reject the tampered page");
    require(report.rejected[0].uri == mirrored.to_string(), "wrong rejected URI");

    // detection 3: a validator in directive mode
    Validator validator(dir / "validator", "acceptance");
    auto vreport = validator.validate_fetch(mirrored);
    require(!vreport.match, "validator missed the tampering");

    mirror.stop();
    server.stop();
}

// ---- criterion 6: trust matrix ----------------------------------------------

void criterion_trust_matrix() {
    TrustContext ctx;
    ctx.trusted_sources.insert("s1");
    ctx.trusted_hosts.insert("h1");
    TrustyUri uri;
    uri.scheme = "http";
    uri.authority = "h1";
    uri.digest = compute_digest(std::string_view("m"));

    auto expect = [&](const char* s, const char* h, Verdict v, Action a, CaseLabel c) {
        auto d = assess(s, h, uri, ctx);
        require(d.verdict == v && d.required_action == a && d.rationale == c,
                std::string("matrix cell (") + s + "," + h + ") wrong");
    };
    expect("s1", "h1", Verdict::Trusted, Action::None, CaseLabel::SourceHostTrusted);
    expect("s1", "h2", Verdict::TrustedUriContentUnverified, Action::LocalDigestCheck,
           CaseLabel::SourceOnlyTrusted);
    expect("s2", "h1", Verdict::Trusted, Action::None, CaseLabel::HostOnlyTrusted);
    expect("s2", "h2", Verdict::Untrusted, Action::RevalidateViaTrusted,
           CaseLabel::NeitherTrusted);

    auto rank = [](Verdict v) {
        return v == Verdict::Trusted ? 2 : v == Verdict::TrustedUriContentUnverified ? 1 : 0;
    };
    std::mt19937 rng(4242);
    for (int i = 0; i < 2000; ++i) {
        TrustContext base;
        for (int k = 0; k < 2; ++k) {
            if (rng() & 1) base.trusted_sources.insert("s" + std::to_string(rng() % 4));
            if (rng() & 1) base.trusted_hosts.insert("h" + std::to_string(rng() % 4));
        }
        std::string s = "s" + std::to_string(rng() % 4);
        std::string h = "h" + std::to_string(rng() % 4);
        auto before = assess(s, h, uri, base);

        TrustContext grown = base;
        if (rng() & 1) grown.trusted_sources.insert("s" + std::to_string(rng() % 4));
        else grown.trusted_hosts.insert("h" + std::to_string(rng() % 4));
        auto after = assess(s, h, uri, grown);
        require(rank(after.verdict) >= rank(before.verdict),
                "context growth downgraded a verdict");
        require((before.verdict == Verdict::Trusted) ==
                    (before.required_action == Action::None),
                "verdict/action coupling violated");
    }
}

// ---- criterion 7: golden scenarios -----------------------------------------

std::string read_golden(const std::string& name) {
    std::ifstream in(fs::path(TRUSTY_GOLDEN_DIR) / name);
    require(in.good(), "missing golden " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_golden_scenarios() {
    testsupport::FixtureNetwork net(scratch_root() / "scenarios");
    auto roles = net.role_map();

    const std::pair<const char*, const char*> cases[] = {
        {"A", "scenario_a.jsonl"},   {"B", "scenario_b.jsonl"},
        {"C", "scenario_c.jsonl"},   {"C!", "scenario_c_tampered.jsonl"},
        {"D", "scenario_d.jsonl"},   {"E", "scenario_e.jsonl"},
        {"E!", "scenario_e_tampered.jsonl"},
    };
    for (const auto& [name, golden] : cases) {
        auto trace = net.run_scenario(name);
        auto normalized = testsupport::normalize_trace(trace, roles);
        require(normalized == read_golden(golden),
                std::string("scenario ") + name + " diverges from its golden");
    }

    // tampering variants must never end Trusted holding tampered bytes
    for (const char* name : {"C!", "E!"}) {
        auto trace = net.run_scenario(name);
        require(trace.trusted(), std::string(name) + " should recover via the trusted pair");
        auto canonical = name[0] == 'C' ? testsupport::fixture_body_c()
                                        : testsupport::fixture_body_e();
        require(trace.content && std::string(trace.content->text()) == canonical,
                std::string(name) + " carried tampered bytes");
        auto uri = TrustyUri::parse(trace.uri);
        require(uri && verify(*uri, trace.content->content).match,
                std::string(name) + " content does not verify");
    }
}

// ---- criterion 8: quorum behavior -------------------------------------------

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
    CmdResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    require(pipe != nullptr, "popen failed");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void criterion_quorum() {
    testsupport::FixtureNetwork net(scratch_root() / "quorum");
    auto uri = net.uri_e_at_h1();
    std::vector<std::string> validators;
    for (std::size_t i = 0; i < net.validator_count(); ++i) {
        validators.push_back(net.validator_authority(i));
    }

    auto clean = quorum_validate(uri, validators);
    require(clean.threshold == 2 && clean.agreeing == 3 && clean.accepted,
            "0 corrupted: expected 3/2 accepted");

    net.mirror().set_tampering(true);
    net.validator(0).map_host(net.h1(), net.h2());
    auto one = quorum_validate(uri, validators);
    require(one.agreeing == 2 && one.accepted, "1 corrupted: expected 2/2 accepted");

    net.validator(1).map_host(net.h1(), net.h2());
    auto two = quorum_validate(uri, validators);
    require(two.agreeing == 1 && !two.accepted, "2 corrupted: expected rejection");

    // the CLI maps a rejected quorum to exit code 4
    auto cli = run_cmd(std::string(TRUSTY_CLI_PATH) + " validate --validators " +
                       validators[0] + "," + validators[1] + "," + validators[2] + " " +
                       uri.to_string());
    require(cli.exit_code == 4, "CLI validate exit was " + std::to_string(cli.exit_code));
}

// ---- criterion 9: timing properties -----------------------------------------

void criterion_timing() {
    auto corpus_path = scratch_root() / "bench.txt";
    testsupport::write_synthetic_canonical_corpus(corpus_path);
    auto corpus = ingest_corpus(corpus_path);

    auto results = bench_hash(corpus.units, 20, BenchMode::InMemory);
    double ayah_max = 0, surah_max = 0, full_max = 0;
    for (const auto& r : results) {
        require(r.digest_consistency, "digest_consistency failed");
        if (r.kind == UnitKind::Ayah) ayah_max = r.max_ms;
        if (r.kind == UnitKind::Surah) surah_max = r.max_ms;
        if (r.kind == UnitKind::FullText) full_max = r.max_ms;
    }
    std::cout << "       [info] max_ms ayah=" << ayah_max << " surah=" << surah_max
              << " fulltext=" << full_max << "\n";
    require(full_max >= surah_max && surah_max >= ayah_max,
            "hash-time ordering FullText >= Surah >= Ayah violated");

    // streaming mode must stay consistent too (surahs + full text keep it quick)
    std::vector<CorpusUnit> larger = corpus.of_kind(UnitKind::Surah);
    larger.push_back(corpus.of_kind(UnitKind::FullText).front());
    for (const auto& r : bench_hash(larger, 3, BenchMode::StreamingFromFile)) {
        require(r.digest_consistency, "streaming-mode digest_consistency failed");
    }

    auto contrast = measure_chunk_contrast(1 << 20, 3);
    std::cout << "       [info] whole=" << contrast.whole_ms
              << "ms chunked=" << contrast.chunked_ms << "ms ratio=" << contrast.ratio
              << "\n";
    require(contrast.ratio >= 5.0,
            "whole-buffer speedup below 5x (ratio " + std::to_string(contrast.ratio) + ")");
}

// ---- criterion 10: end-to-end CLI pipeline -----------------------------------

struct Spawned {
    pid_t pid = -1;
    int port = 0;
};

int pick_free_port() {
    int fd = socket(AF_INET, SOCK_STREAM, 0);
    require(fd >= 0, "socket() failed");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    require(bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0, "bind failed");
    socklen_t len = sizeof(addr);
    getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    int port = ntohs(addr.sin_port);
    close(fd);
    return port;
}

Spawned spawn_cli(const std::vector<std::string>& args) {
    Spawned s;
    pid_t pid = fork();
    require(pid >= 0, "fork failed");
    if (pid == 0) {
        int devnull = open("/dev/null", O_WRONLY);
        if (devnull >= 0) {
            dup2(devnull, STDOUT_FILENO);
            dup2(devnull, STDERR_FILENO);
            close(devnull);
        }
        std::vector<char*> argv;
        static std::string bin = TRUSTY_CLI_PATH;
        argv.push_back(bin.data());
        std::vector<std::string> copy = args;
        for (auto& a : copy) argv.push_back(a.data());
        argv.push_back(nullptr);
        execv(argv[0], argv.data());
        _exit(127);
    }
    s.pid = pid;
    return s;
}

void stop_cli(Spawned& s) {
    if (s.pid > 0) {
        kill(s.pid, SIGTERM);
        int status = 0;
        waitpid(s.pid, &status, 0);
        s.pid = -1;
    }
}

bool wait_for_port(int port, int attempts = 50) {
    for (int i = 0; i < attempts; ++i) {
        auto res = http_get("http://127.0.0.1:" + std::to_string(port) + "/status", 500);
        if (res.status != 0) return true;
        usleep(100 * 1000);
    }
    return false;
}

void criterion_end_to_end() {
    auto dir = scratch_root() / "e2e";
    fs::create_directories(dir);
    std::string cli = TRUSTY_CLI_PATH;

    auto corpus_path = dir / "toy.txt";
    testsupport::write_toy_corpus(corpus_path);

    int store_port = pick_free_port();
    std::string store_auth = "127.0.0.1:" + std::to_string(store_port);
    auto store_proc = spawn_cli({"serve-store", "--listen", store_auth, "--base",
                                 "http://" + store_auth + "/", "--data",
                                 (dir / "store").string()});
    require(wait_for_port(store_port), "store service did not come up");

    try {
        // publish the corpus
        auto publish = run_cmd(cli + " --output json publish-corpus " +
                               corpus_path.string() + " --store http://" + store_auth);
        require(publish.exit_code == 0, "publish-corpus exited " +
                                            std::to_string(publish.exit_code));

        // an article embedding trusty links to both ayahs
        auto d1 = compute_digest(std::string_view("A B")).to_hex();
        auto d2 = compute_digest(std::string_view("B C")).to_hex();
        auto article_path = dir / "article.html";
        std::ofstream(article_path)
            << "<html><body><p>quran article collection</p>"
            << "<a href=\"/" << d1 << "\">first ayah</a>"
            << "<a href=\"/" << d2 << "\">second ayah</a></body></html>";
        auto published = run_cmd(cli + " --output json publish --store http://" +
                                 store_auth + " --author alice " + article_path.string());
        require(published.exit_code == 0, "publish exited " +
                                              std::to_string(published.exit_code));
        auto article_uri =
            nlohmann::json::parse(published.out).at("uri").get<std::string>();

        // crawl from the article and query the index
        auto seeds_path = dir / "seeds.txt";
        std::ofstream(seeds_path) << article_uri << "\n";
        auto crawled = run_cmd(cli + " --output json crawl --index " +
                               (dir / "index").string() + " --seeds " +
                               seeds_path.string() + " --budget 10");
        require(crawled.exit_code == 0, "crawl exited " + std::to_string(crawled.exit_code));
        require(nlohmann::json::parse(crawled.out).at("indexed") == 3,
                "expected 3 indexed pages");

        auto searched = run_cmd(cli + " --output json search --index " +
                                (dir / "index").string() + " collection");
        require(searched.exit_code == 0, "search exited " +
                                             std::to_string(searched.exit_code));
        auto hits = nlohmann::json::parse(searched.out);
        require(hits.size() == 1 && hits[0].at("uri") == article_uri,
                "search did not return the article");

        // serve the index and resolve under an S+H+ context
        int index_port = pick_free_port();
        std::string index_auth = "127.0.0.1:" + std::to_string(index_port);
        auto index_proc = spawn_cli({"serve-index", "--listen", index_auth, "--index",
                                     (dir / "index").string()});
        require(wait_for_port(index_port), "index service did not come up");

        try {
            auto ctx_path = dir / "ctx.json";
            std::ofstream(ctx_path) << nlohmann::json{
                {"trusted_sources", {index_auth}},
                {"trusted_hosts", {store_auth}},
                {"validators", nlohmann::json::array()},
                {"sources", {index_auth}}}.dump();

            auto resolved = run_cmd(cli + " --config " + ctx_path.string() +
                                    " resolve collection");
            require(resolved.exit_code == 0,
                    "resolve exited " + std::to_string(resolved.exit_code));
            auto trace_path = dir / "trace.jsonl";
            std::ofstream(trace_path) << resolved.out;

            auto navigated = run_cmd(cli + " --config " + ctx_path.string() +
                                     " navigate " + trace_path.string() + " 0");
            require(navigated.exit_code == 0,
                    "navigate exited " + std::to_string(navigated.exit_code));
            auto nav_trace = ResolutionTrace::from_jsonl(navigated.out);
            require(nav_trace.trusted(), "navigation did not end Trusted");
            require(nav_trace.content &&
                        std::string(nav_trace.content->text()) == "A B",
                    "navigated content is not the first ayah");

            stop_cli(index_proc);
        } catch (...) {
            stop_cli(index_proc);
            throw;
        }
        stop_cli(store_proc);
    } catch (...) {
        stop_cli(store_proc);
        throw;
    }
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void()> fn;
    };
    const Criterion criteria[] = {
        {1, "digest-oracle-equivalence", criterion_digest_oracle},
        {2, "roundtrip-and-tamper-property", criterion_roundtrip_tamper},
        {3, "streaming-equivalence", criterion_streaming_equivalence},
        {4, "corpus-counts", criterion_corpus_counts},
        {5, "publish-once-and-tamper-detection", criterion_publish_once},
        {6, "trust-matrix", criterion_trust_matrix},
        {7, "golden-scenarios", criterion_golden_scenarios},
        {8, "quorum-behavior", criterion_quorum},
        {9, "timing-properties", criterion_timing},
        {10, "end-to-end-pipeline", criterion_end_to_end},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        try {
            c.fn();
            std::printf("PASS %2d %s\n", c.id, c.name);
        } catch (const std::exception& e) {
            std::printf("FAIL %2d %s: %s\n", c.id, c.name, e.what());
            ++failures;
        }
        std::fflush(stdout);
    }

    std::error_code ec;
    fs::remove_all(scratch_root(), ec);

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
