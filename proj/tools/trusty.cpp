// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0
//
// trusty - command-line front end over the trustyweb C API.
//
// Exit codes: 0 success / Match / accepted / Trusted; 1 usage error;
// 2 I/O or network error; 3 digest mismatch; 4 quorum rejected;
// 5 resolution not Trusted.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <trustyweb/trustyweb.h>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitRejected = 4;
constexpr int kExitUntrusted = 5;

struct Global {
    std::string config;
    std::string output = "text";
    bool verbose = false;
};

void diag(const Global& g, const std::string& msg) {
    if (g.verbose) std::cerr << "trusty: " << msg << "\n";
}

int fail(const std::string& what) {
    std::cerr << "trusty: " << what;
    const char* detail = tw_last_error();
    if (detail && *detail) std::cerr << ": " << detail;
    std::cerr << "\n";
    return kExitIo;
}

std::string read_file(const std::string& path, bool* ok) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        *ok = false;
        return {};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    *ok = !in.bad();
    return buf.str();
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { tw_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

std::string guess_media_type(const std::string& path) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "html" || ext == "htm") return "text/html; charset=utf-8";
    if (ext == "txt") return "text/plain; charset=utf-8";
    if (ext == "json") return "application/json";
    return "application/octet-stream";
}

// Config JSON may carry resolver extras next to the trust context:
//   {"trusted_sources": [...], "trusted_hosts": [...], "validators": [...],
//    "sources": ["search endpoints the client knows"]}
std::vector<std::string> config_sources(const std::string& config_path) {
    if (config_path.empty()) return {};
    bool ok = true;
    auto text = read_file(config_path, &ok);
    if (!ok) return {};
    try {
        auto j = json::parse(text);
        return j.value("sources", std::vector<std::string>{});
    } catch (const json::exception&) {
        return {};
    }
}

std::vector<const char*> to_argv(const std::vector<std::string>& v) {
    std::vector<const char*> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(s.c_str());
    return out;
}

void print_json_or_text(const Global& g, const std::string& json_text,
                        const std::string& text) {
    if (g.output == "json") std::cout << json_text << "\n";
    else std::cout << text;
}

volatile std::sig_atomic_t g_stop = 0;

void handle_signal(int) {
    g_stop = 1;
}

int wait_for_signal() {
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_stop) {
        struct timespec ts{0, 200 * 1000 * 1000};
        nanosleep(&ts, nullptr);
    }
    return kExitOk;
}

tw_context* load_context_or_empty(const Global& g) {
    tw_context* ctx = nullptr;
    if (!g.config.empty()) {
        if (tw_context_load(g.config.c_str(), &ctx) != TW_OK) return nullptr;
    } else {
        tw_context_parse("{}", &ctx);
    }
    return ctx;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trusty - content-addressed web provenance toolkit"};
    app.require_subcommand(1);

    Global g;
    app.add_option("--config", g.config, "Trust context JSON file")
        ->envname("TRUSTY_CONFIG");
    app.add_option("--output", g.output, "Output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->envname("TRUSTY_OUTPUT");
    app.add_flag("--verbose", g.verbose, "Diagnostics on stderr")
        ->envname("TRUSTY_VERBOSE");

    // mint
    std::string mint_base;
    std::string mint_file;
    auto* cmd_mint = app.add_subcommand("mint", "Mint the trusty URI for a file");
    cmd_mint->add_option("--base", mint_base, "Base URI (scheme://authority/prefix/)")
        ->required()
        ->envname("TRUSTY_BASE");
    cmd_mint->add_option("file", mint_file, "Content file")->required();

    // verify
    std::string verify_uri;
    std::string verify_file;
    auto* cmd_verify = app.add_subcommand("verify", "Verify content against a trusty URI");
    cmd_verify->add_option("uri", verify_uri, "Trusty URI")->required();
    cmd_verify->add_option("file", verify_file, "Content file (fetches the URI when absent)");

    // publish
    std::string pub_store, pub_author, pub_parent, pub_file, pub_media;
    bool pub_external = false;
    auto* cmd_publish = app.add_subcommand("publish", "Publish a file to a store endpoint");
    cmd_publish->add_option("--store", pub_store, "Store endpoint (http://host:port)")
        ->required()
        ->envname("TRUSTY_STORE");
    cmd_publish->add_option("--author", pub_author, "Author id")
        ->required()
        ->envname("TRUSTY_AUTHOR");
    cmd_publish->add_option("--parent", pub_parent, "Parent trusty URI (default: root)");
    cmd_publish->add_flag("--parent-external", pub_external,
                          "Parent lives outside the target store");
    cmd_publish->add_option("--media-type", pub_media, "Content media type");
    cmd_publish->add_option("file", pub_file, "Content file")->required();

    // serve-store
    std::string ss_listen = "127.0.0.1:8080";
    std::string ss_base, ss_data;
    auto* cmd_serve_store = app.add_subcommand("serve-store", "Run the publisher store service");
    cmd_serve_store->add_option("--listen", ss_listen, "host:port (port 0 = ephemeral)")
        ->envname("TRUSTY_LISTEN");
    cmd_serve_store->add_option("--base", ss_base, "Base URI minted into trusty URIs")
        ->required()
        ->envname("TRUSTY_BASE");
    cmd_serve_store->add_option("--data", ss_data, "Storage root directory")
        ->required()
        ->envname("TRUSTY_DATA");

    // serve-validator
    std::string sv_listen = "127.0.0.1:8090";
    std::string sv_data;
    std::vector<std::string> sv_maps;
    auto* cmd_serve_validator = app.add_subcommand("serve-validator", "Run a validator service");
    cmd_serve_validator->add_option("--listen", sv_listen, "host:port (port 0 = ephemeral)")
        ->envname("TRUSTY_LISTEN");
    cmd_serve_validator->add_option("--data", sv_data, "Seen-ledger directory")
        ->required()
        ->envname("TRUSTY_DATA");
    cmd_serve_validator->add_option("--map", sv_maps,
                                    "authority=target remap for directive fetches");

    // serve-index
    std::string si_listen = "127.0.0.1:8085";
    std::string si_dir;
    auto* cmd_serve_index = app.add_subcommand("serve-index", "Serve a crawled search index");
    cmd_serve_index->add_option("--listen", si_listen, "host:port (port 0 = ephemeral)")
        ->envname("TRUSTY_LISTEN");
    cmd_serve_index->add_option("--index", si_dir, "Index directory")
        ->required()
        ->envname("TRUSTY_INDEX");

    // crawl
    std::string crawl_dir, crawl_seeds;
    int crawl_budget = 100;
    auto* cmd_crawl = app.add_subcommand("crawl", "Crawl seed URIs into a verified index");
    cmd_crawl->add_option("--index", crawl_dir, "Index directory")
        ->required()
        ->envname("TRUSTY_INDEX");
    cmd_crawl->add_option("--seeds", crawl_seeds, "Seed file, one trusty URI per line")
        ->required()
        ->envname("TRUSTY_SEEDS");
    cmd_crawl->add_option("--budget", crawl_budget, "Maximum fetches")
        ->envname("TRUSTY_BUDGET");

    // search
    std::string search_dir;
    std::vector<std::string> search_terms;
    auto* cmd_search = app.add_subcommand("search", "Query a crawled index");
    cmd_search->add_option("--index", search_dir, "Index directory")
        ->required()
        ->envname("TRUSTY_INDEX");
    cmd_search->add_option("terms", search_terms, "Query terms")->required();

    // validate
    std::string val_uri;
    std::string val_validators;
    int val_threshold = 0;
    auto* cmd_validate = app.add_subcommand("validate", "Quorum-validate a trusty URI");
    cmd_validate->add_option("--validators", val_validators, "Comma-separated authorities")
        ->required()
        ->envname("TRUSTY_VALIDATORS");
    cmd_validate->add_option("--threshold", val_threshold, "Agreement threshold (default majority)");
    cmd_validate->add_option("uri", val_uri, "Trusty URI")->required();

    // resolve
    std::string res_query, res_via;
    bool res_paranoid = false;
    std::vector<std::string> res_sources;
    auto* cmd_resolve = app.add_subcommand("resolve", "Resolve terms or a trusty URI to trusted content");
    cmd_resolve->add_flag("--paranoid", res_paranoid,
                          "Never fetch from untrusted hosts before revalidation");
    cmd_resolve->add_option("--via", res_via, "Source authority the query/URI goes through");
    cmd_resolve->add_option("--source", res_sources,
                            "Known search endpoints (also read from config 'sources')");
    cmd_resolve->add_option("query", res_query, "Search terms or trusty URI")->required();

    // navigate
    std::string nav_trace;
    std::size_t nav_index = 0;
    bool nav_paranoid = false;
    std::vector<std::string> nav_sources;
    auto* cmd_navigate = app.add_subcommand("navigate", "Follow a trusty link of a resolved trace");
    cmd_navigate->add_flag("--paranoid", nav_paranoid, "See resolve --paranoid");
    cmd_navigate->add_option("--source", nav_sources, "Known search endpoints");
    cmd_navigate->add_option("trace", nav_trace, "Trace file from resolve")->required();
    cmd_navigate->add_option("link-index", nav_index, "Trusty link ordinal")->required();

    // ingest
    std::string ing_file;
    bool ing_stats = false;
    auto* cmd_ingest = app.add_subcommand("ingest", "Parse a surah|ayah|text corpus");
    cmd_ingest->add_option("corpus", ing_file, "Corpus file")->required();
    cmd_ingest->add_flag("--stats", ing_stats, "Print corpus statistics");

    // bench
    std::string bench_file;
    std::string bench_mode = "in_memory";
    int bench_reps = 5;
    auto* cmd_bench = app.add_subcommand("bench", "Hash-timing benchmark over a corpus");
    cmd_bench->add_option("corpus", bench_file, "Corpus file")->required();
    cmd_bench->add_option("--reps", bench_reps, "Repetitions per unit");
    cmd_bench->add_option("--mode", bench_mode, "in_memory or streaming_from_file")
        ->check(CLI::IsMember({"in_memory", "streaming_from_file"}));

    // publish-corpus
    std::string pc_file, pc_store, pc_author = "corpus";
    auto* cmd_publish_corpus = app.add_subcommand("publish-corpus",
                                                  "Publish corpus units with chained parents");
    cmd_publish_corpus->add_option("corpus", pc_file, "Corpus file")->required();
    cmd_publish_corpus->add_option("--store", pc_store, "Store endpoint")
        ->required()
        ->envname("TRUSTY_STORE");
    cmd_publish_corpus->add_option("--author", pc_author, "Author id")
        ->envname("TRUSTY_AUTHOR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (cmd_mint->parsed()) {
        bool ok = true;
        auto content = read_file(mint_file, &ok);
        if (!ok) return fail("cannot read " + mint_file);
        OwnedString uri;
        if (tw_mint(mint_base.c_str(), reinterpret_cast<const uint8_t*>(content.data()),
                    content.size(), &uri.ptr) != TW_OK) {
            return fail("mint failed");
        }
        print_json_or_text(g, json{{"uri", uri.str()}}.dump(), uri.str() + "\n");
        return kExitOk;
    }

    if (cmd_verify->parsed()) {
        int match = 0;
        char expected[TW_HEX_DIGEST_LEN];
        char actual[TW_HEX_DIGEST_LEN];
        int rc;
        if (!verify_file.empty()) {
            rc = tw_verify_file(verify_uri.c_str(), verify_file.c_str(), &match, expected,
                                actual);
        } else {
            diag(g, "no file given; fetching " + verify_uri);
            rc = tw_verify_fetch(verify_uri.c_str(), 5000, &match, expected, actual);
        }
        if (rc != TW_OK) return fail("verify failed");
        json j = {{"match", match == 1}, {"expected", expected}, {"actual", actual}};
        print_json_or_text(g, j.dump(),
                           match ? std::string("Match\n")
                                 : "Mismatch\n  expected " + std::string(expected) +
                                       "\n  actual   " + std::string(actual) + "\n");
        return match ? kExitOk : kExitMismatch;
    }

    if (cmd_publish->parsed()) {
        bool ok = true;
        auto content = read_file(pub_file, &ok);
        if (!ok) return fail("cannot read " + pub_file);
        if (pub_media.empty()) pub_media = guess_media_type(pub_file);
        int created = 0;
        OwnedString record;
        if (tw_publish_http(pub_store.c_str(),
                            reinterpret_cast<const uint8_t*>(content.data()), content.size(),
                            pub_media.c_str(), pub_author.c_str(),
                            pub_parent.empty() ? nullptr : pub_parent.c_str(),
                            pub_external ? 1 : 0, 5000, &created, &record.ptr) != TW_OK) {
            return fail("publish failed");
        }
        diag(g, created ? "created new record" : "idempotent re-publish");
        std::string text = record.str() + "\n";
        print_json_or_text(g, record.str(), text);
        return kExitOk;
    }

    if (cmd_serve_store->parsed()) {
        auto colon = ss_listen.rfind(':');
        if (colon == std::string::npos) return fail("--listen must be host:port");
        tw_store* store = nullptr;
        if (tw_store_open(ss_data.c_str(), ss_base.c_str(), &store) != TW_OK) {
            return fail("cannot open store");
        }
        tw_server* server = nullptr;
        if (tw_store_serve(store, ss_listen.substr(0, colon).c_str(),
                           std::stoi(ss_listen.substr(colon + 1)), &server) != TW_OK) {
            tw_store_close(store);
            return fail("cannot serve store");
        }
        std::cout << "listening on " << ss_listen.substr(0, colon) << ":"
                  << tw_server_port(server) << std::endl;
        int rc = wait_for_signal();
        tw_server_stop(server);
        tw_store_close(store);
        return rc;
    }

    if (cmd_serve_validator->parsed()) {
        auto colon = sv_listen.rfind(':');
        if (colon == std::string::npos) return fail("--listen must be host:port");
        tw_validator* validator = nullptr;
        if (tw_validator_open(sv_data.c_str(), &validator) != TW_OK) {
            return fail("cannot open validator");
        }
        for (const auto& m : sv_maps) {
            auto eq = m.find('=');
            if (eq == std::string::npos) {
                tw_validator_close(validator);
                std::cerr << "trusty: --map expects authority=target\n";
                return kExitUsage;
            }
            tw_validator_map_host(validator, m.substr(0, eq).c_str(),
                                  m.substr(eq + 1).c_str());
        }
        tw_server* server = nullptr;
        if (tw_validator_serve(validator, sv_listen.substr(0, colon).c_str(),
                               std::stoi(sv_listen.substr(colon + 1)), &server) != TW_OK) {
            tw_validator_close(validator);
            return fail("cannot serve validator");
        }
        std::cout << "listening on " << sv_listen.substr(0, colon) << ":"
                  << tw_server_port(server) << std::endl;
        int rc = wait_for_signal();
        tw_server_stop(server);
        tw_validator_close(validator);
        return rc;
    }

    if (cmd_serve_index->parsed()) {
        auto colon = si_listen.rfind(':');
        if (colon == std::string::npos) return fail("--listen must be host:port");
        tw_index* index = nullptr;
        if (tw_index_open(si_dir.c_str(), &index) != TW_OK) return fail("cannot open index");
        tw_server* server = nullptr;
        if (tw_index_serve(index, si_listen.substr(0, colon).c_str(),
                           std::stoi(si_listen.substr(colon + 1)), &server) != TW_OK) {
            tw_index_close(index);
            return fail("cannot serve index");
        }
        std::cout << "listening on " << si_listen.substr(0, colon) << ":"
                  << tw_server_port(server) << std::endl;
        int rc = wait_for_signal();
        tw_server_stop(server);
        tw_index_close(index);
        return rc;
    }

    if (cmd_crawl->parsed()) {
        bool ok = true;
        auto seeds_text = read_file(crawl_seeds, &ok);
        if (!ok) return fail("cannot read " + crawl_seeds);
        std::vector<std::string> seeds;
        std::istringstream in(seeds_text);
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (!line.empty() && line[0] != '#') seeds.push_back(line);
        }
        if (seeds.empty()) {
            std::cerr << "trusty: seed file has no URIs\n";
            return kExitUsage;
        }
        tw_index* index = nullptr;
        if (tw_index_open(crawl_dir.c_str(), &index) != TW_OK) return fail("cannot open index");
        auto argv_seeds = to_argv(seeds);
        OwnedString report;
        int rc = tw_index_crawl(index, argv_seeds.data(), argv_seeds.size(), crawl_budget,
                                &report.ptr);
        tw_index_close(index);
        if (rc != TW_OK) return fail("crawl failed");
        auto j = json::parse(report.str());
        std::ostringstream text;
        text << "indexed " << j["indexed"] << ", rejected " << j["rejected"].size()
             << ", errors " << j["errors"].size() << ", pending " << j["pending"].size()
             << "\n";
        print_json_or_text(g, report.str(), text.str());
        return kExitOk;
    }

    if (cmd_search->parsed()) {
        std::string terms;
        for (const auto& t : search_terms) {
            if (!terms.empty()) terms += ' ';
            terms += t;
        }
        tw_index* index = nullptr;
        if (tw_index_open(search_dir.c_str(), &index) != TW_OK) return fail("cannot open index");
        OwnedString results;
        int rc = tw_index_query(index, terms.c_str(), &results.ptr);
        tw_index_close(index);
        if (rc != TW_OK) return fail("query failed");
        auto j = json::parse(results.str());
        std::ostringstream text;
        for (const auto& hit : j) {
            text << hit["uri"].get<std::string>() << "  score=" << hit["score"]
                 << "  verified_at=" << hit["verified_at"].get<std::string>() << "\n";
        }
        print_json_or_text(g, results.str(), text.str());
        return kExitOk;
    }

    if (cmd_validate->parsed()) {
        std::vector<std::string> validators;
        std::istringstream in(val_validators);
        std::string part;
        while (std::getline(in, part, ',')) {
            if (!part.empty()) validators.push_back(part);
        }
        if (validators.empty()) {
            std::cerr << "trusty: --validators needs at least one authority\n";
            return kExitUsage;
        }
        auto argv_validators = to_argv(validators);
        int accepted = 0;
        OwnedString outcome;
        if (tw_quorum_validate(val_uri.c_str(), argv_validators.data(),
                               argv_validators.size(), val_threshold, 5000, &accepted,
                               &outcome.ptr) != TW_OK) {
            return fail("quorum validation failed");
        }
        auto j = json::parse(outcome.str());
        std::ostringstream text;
        text << (accepted ? "accepted" : "rejected") << " (" << j["agreeing"] << "/"
             << j["threshold"] << " agreeing)\n";
        print_json_or_text(g, outcome.str(), text.str());
        return accepted ? kExitOk : kExitRejected;
    }

    if (cmd_resolve->parsed() || cmd_navigate->parsed()) {
        tw_context* ctx = load_context_or_empty(g);
        if (!ctx) return fail("cannot load config " + g.config);
        auto sources = cmd_resolve->parsed() ? res_sources : nav_sources;
        for (const auto& s : config_sources(g.config)) sources.push_back(s);
        auto argv_sources = to_argv(sources);

        int trusted = 0;
        OwnedString trace;
        int rc;
        if (cmd_resolve->parsed()) {
            rc = tw_resolve(ctx, argv_sources.data(), argv_sources.size(), res_query.c_str(),
                            res_via.empty() ? nullptr : res_via.c_str(),
                            res_paranoid ? 1 : 0, &trusted, &trace.ptr);
        } else {
            bool ok = true;
            auto trace_text = read_file(nav_trace, &ok);
            if (!ok) {
                tw_context_free(ctx);
                return fail("cannot read " + nav_trace);
            }
            rc = tw_navigate(ctx, argv_sources.data(), argv_sources.size(),
                             trace_text.c_str(), nav_index, nav_paranoid ? 1 : 0, &trusted,
                             &trace.ptr);
        }
        tw_context_free(ctx);
        if (rc == TW_ERANGE) {
            std::cerr << "trusty: " << tw_last_error() << "\n";
            return kExitUsage;
        }
        if (rc != TW_OK) return fail("resolution failed");
        // traces are JSON lines in both output modes
        std::cout << trace.str();
        if (g.output == "text") {
            std::cerr << (trusted ? "verdict: Trusted" : "verdict: not Trusted") << "\n";
        }
        return trusted ? kExitOk : kExitUntrusted;
    }

    if (cmd_ingest->parsed()) {
        tw_corpus* corpus = nullptr;
        if (tw_corpus_load(ing_file.c_str(), &corpus) != TW_OK) {
            return fail("ingest failed");
        }
        OwnedString stats;
        tw_corpus_stats(corpus, &stats.ptr);
        tw_corpus_free(corpus);
        auto j = json::parse(stats.str());
        std::ostringstream text;
        text << "surah_count " << j["surah_count"] << "\n"
             << "ayah_count " << j["ayah_count"] << "\n";
        if (ing_stats) {
            text << "total_words " << j["total_words"] << "\n"
                 << "distinct_words " << j["distinct_words"] << "\n"
                 << "full_text_digest " << j["full_text_digest"].get<std::string>() << "\n";
        }
        print_json_or_text(g, stats.str(), text.str());
        return kExitOk;
    }

    if (cmd_bench->parsed()) {
        tw_corpus* corpus = nullptr;
        if (tw_corpus_load(bench_file.c_str(), &corpus) != TW_OK) {
            return fail("ingest failed");
        }
        OwnedString results;
        int rc = tw_corpus_bench(corpus, bench_reps, bench_mode.c_str(), &results.ptr);
        tw_corpus_free(corpus);
        if (rc != TW_OK) return fail("bench failed");
        auto j = json::parse(results.str());
        std::ostringstream text;
        text << "kind      min_ms        max_ms        mean_ms       n       consistent\n";
        for (const auto& r : j) {
            char line[160];
            std::snprintf(line, sizeof(line), "%-9s %-13.6f %-13.6f %-13.6f %-7zu %s\n",
                          r["unit_kind"].get<std::string>().c_str(),
                          r["min_ms"].get<double>(), r["max_ms"].get<double>(),
                          r["mean_ms"].get<double>(), r["n"].get<std::size_t>(),
                          r["digest_consistency"].get<bool>() ? "yes" : "NO");
            text << line;
        }
        print_json_or_text(g, results.str(), text.str());
        return kExitOk;
    }

    if (cmd_publish_corpus->parsed()) {
        tw_corpus* corpus = nullptr;
        if (tw_corpus_load(pc_file.c_str(), &corpus) != TW_OK) {
            return fail("ingest failed");
        }
        size_t published = 0;
        OwnedString summary;
        int rc = tw_corpus_publish(corpus, pc_store.c_str(), pc_author.c_str(), 5000,
                                   &published, &summary.ptr);
        tw_corpus_free(corpus);
        if (rc != TW_OK) return fail("publish-corpus failed");
        auto j = json::parse(summary.str());
        std::ostringstream text;
        text << "published " << j["published"] << " new, " << j["existing"]
             << " existing\nfull text: " << j["full_text_uri"].get<std::string>() << "\n";
        print_json_or_text(g, summary.str(), text.str());
        return kExitOk;
    }

    return kExitUsage;
}
