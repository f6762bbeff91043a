// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "trustyweb/trustyweb.h"

#include <cstring>
#include <memory>
#include <string>

#include "core/corpus.hpp"
#include "core/crawler.hpp"
#include "core/digest.hpp"
#include "core/errors.hpp"
#include "core/http_util.hpp"
#include "core/index_server.hpp"
#include "core/resolver.hpp"
#include "core/search_index.hpp"
#include "core/store.hpp"
#include "core/store_server.hpp"
#include "core/trust.hpp"
#include "core/validator.hpp"

using namespace trustyweb;

namespace {

thread_local std::string g_last_error;

int status_from(Errc code) {
    switch (code) {
    case Errc::parse: return TW_EPARSE;
    case Errc::io: return TW_EIO;
    case Errc::network: return TW_ENET;
    case Errc::not_found: return TW_ENOTFOUND;
    case Errc::integrity_failure: return TW_EINTEGRITY;
    case Errc::provable_collision: return TW_ECOLLISION;
    case Errc::parent_not_found: return TW_EPARENT;
    case Errc::clock_skew: return TW_ECLOCKSKEW;
    case Errc::all_validators_unreachable: return TW_EUNREACHABLE;
    case Errc::link_index_out_of_range: return TW_ERANGE;
    case Errc::propagation_from_untrusted: return TW_EUNTRUSTED;
    case Errc::untrusted_attestor: return TW_EUNTRUSTED;
    case Errc::crawl_empty: return TW_ECRAWL;
    case Errc::malformed_line: return TW_EPARSE;
    case Errc::non_monotone_ordering: return TW_EPARSE;
    case Errc::charset: return TW_EPARSE;
    case Errc::fetch_failed: return TW_ENET;
    case Errc::invalid_argument: return TW_EINVAL;
    default: return TW_ERR;
    }
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TW_ERR;
    } catch (...) {
        g_last_error = "unknown failure";
        return TW_ERR;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

void copy_hex(char out[TW_HEX_DIGEST_LEN], const Digest& d) {
    if (!out) return;
    auto hex = d.to_hex();
    std::memcpy(out, hex.data(), 64);
    out[64] = '\0';
}

TrustyUri parse_trusty_or_throw(const char* uri) {
    if (!uri) throw Error(Errc::invalid_argument, "null URI");
    auto parsed = TrustyUri::parse(uri);
    if (!parsed) throw Error(Errc::parse, std::string("not a trusty URI: ") + uri);
    return *parsed;
}

std::span<const std::uint8_t> as_span(const uint8_t* data, size_t len) {
    static const std::uint8_t empty = 0;
    if (!data && len == 0) return {&empty, 0};
    if (!data) throw Error(Errc::invalid_argument, "null data with nonzero length");
    return {data, len};
}

ParentLink parent_link_for(const std::string& base_uri, const char* parent_uri,
                           int parent_external) {
    if (!parent_uri || std::strlen(parent_uri) == 0 ||
        std::strcmp(parent_uri, "root") == 0) {
        return ParentLink::root(base_uri);
    }
    if (!TrustyUri::parse(parent_uri)) {
        throw Error(Errc::parse, std::string("parent is not a trusty URI: ") + parent_uri);
    }
    return parent_external ? ParentLink::external(parent_uri)
                           : ParentLink::internal(parent_uri);
}

} // namespace

struct tw_store {
    std::unique_ptr<Store> store;
};

struct tw_index {
    std::unique_ptr<SearchIndex> index;
};

struct tw_server {
    std::unique_ptr<StoreServer> store_server;
    std::unique_ptr<IndexServer> index_server;
    std::unique_ptr<ValidatorServer> validator_server;
    int port = 0;
};

struct tw_context {
    TrustContext ctx;
};

struct tw_validator {
    std::unique_ptr<Validator> validator;
};

struct tw_corpus {
    Corpus corpus;
};

extern "C" {

const char* tw_version(void) {
    return "0.1.0";
}

const char* tw_last_error(void) {
    return g_last_error.c_str();
}

void tw_string_free(char* s) {
    std::free(s);
}

void tw_bytes_free(uint8_t* p) {
    std::free(p);
}

int tw_sha256_hex(const uint8_t* data, size_t len, char out_hex[TW_HEX_DIGEST_LEN]) {
    return guarded([&] {
        if (!out_hex) throw Error(Errc::invalid_argument, "null output");
        copy_hex(out_hex, compute_digest(as_span(data, len)));
        return TW_OK;
    });
}

int tw_sha256_file_hex(const char* path, size_t chunk_size,
                       char out_hex[TW_HEX_DIGEST_LEN]) {
    return guarded([&] {
        if (!path || !out_hex) throw Error(Errc::invalid_argument, "null argument");
        copy_hex(out_hex, digest_file(path, chunk_size ? chunk_size : 65536));
        return TW_OK;
    });
}

int tw_mint(const char* base_uri, const uint8_t* data, size_t len, char** out_uri) {
    return guarded([&] {
        if (!base_uri || !out_uri) throw Error(Errc::invalid_argument, "null argument");
        *out_uri = dup_string(mint(base_uri, as_span(data, len)).to_string());
        return TW_OK;
    });
}

int tw_mint_file(const char* base_uri, const char* path, char** out_uri) {
    return guarded([&] {
        if (!base_uri || !path || !out_uri) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        TrustyUri uri = mint(base_uri, std::string_view{});
        uri.digest = digest_file(path);
        *out_uri = dup_string(uri.to_string());
        return TW_OK;
    });
}

int tw_uri_classify(const char* uri) {
    return guarded([&] {
        if (!uri) throw Error(Errc::invalid_argument, "null URI");
        return is_trusty(classify_uri(uri)) ? 1 : 0;
    });
}

static int verify_common(const char* trusty_uri, std::span<const std::uint8_t> content,
                         int* out_match, char out_expected[TW_HEX_DIGEST_LEN],
                         char out_actual[TW_HEX_DIGEST_LEN]) {
    auto uri = parse_trusty_or_throw(trusty_uri);
    auto outcome = verify(uri, content);
    if (out_match) *out_match = outcome.match ? 1 : 0;
    copy_hex(out_expected, outcome.expected);
    copy_hex(out_actual, outcome.actual);
    return TW_OK;
}

int tw_verify_bytes(const char* trusty_uri, const uint8_t* data, size_t len,
                    int* out_match, char out_expected[TW_HEX_DIGEST_LEN],
                    char out_actual[TW_HEX_DIGEST_LEN]) {
    return guarded([&] {
        return verify_common(trusty_uri, as_span(data, len), out_match, out_expected,
                             out_actual);
    });
}

int tw_verify_file(const char* trusty_uri, const char* path, int* out_match,
                   char out_expected[TW_HEX_DIGEST_LEN],
                   char out_actual[TW_HEX_DIGEST_LEN]) {
    return guarded([&] {
        if (!path) throw Error(Errc::invalid_argument, "null path");
        auto uri = parse_trusty_or_throw(trusty_uri);
        auto actual = digest_file(path);
        if (out_match) *out_match = actual == uri.digest ? 1 : 0;
        copy_hex(out_expected, uri.digest);
        copy_hex(out_actual, actual);
        return TW_OK;
    });
}

int tw_verify_fetch(const char* trusty_uri, int timeout_ms, int* out_match,
                    char out_expected[TW_HEX_DIGEST_LEN],
                    char out_actual[TW_HEX_DIGEST_LEN]) {
    return guarded([&] {
        auto uri = parse_trusty_or_throw(trusty_uri);
        auto res = http_get(uri.to_string(), timeout_ms > 0 ? timeout_ms : 5000);
        if (res.status != 200) {
            throw Error(Errc::network,
                        "fetch failed: " + std::string(trusty_uri) +
                            (res.status ? " (HTTP " + std::to_string(res.status) + ")"
                                        : " (unreachable)"));
        }
        return verify_common(trusty_uri, res.body, out_match, out_expected, out_actual);
    });
}

int tw_store_open(const char* data_dir, const char* base_uri, tw_store** out) {
    return guarded([&] {
        if (!data_dir || !base_uri || !out) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        // validate base eagerly so mint failures surface at open time
        mint(base_uri, std::string_view{});
        auto handle = std::make_unique<tw_store>();
        handle->store = std::make_unique<Store>(data_dir, base_uri);
        *out = handle.release();
        return TW_OK;
    });
}

void tw_store_close(tw_store* store) {
    delete store;
}

int tw_store_publish(tw_store* store, const uint8_t* content, size_t len,
                     const char* media_type, const char* author,
                     const char* parent_uri, int parent_external,
                     int* out_created, char** out_record_json) {
    return guarded([&] {
        if (!store || !author) throw Error(Errc::invalid_argument, "null argument");
        Resource r;
        auto span = as_span(content, len);
        r.content.assign(span.begin(), span.end());
        r.media_type = media_type && *media_type ? media_type : "application/octet-stream";
        auto parent = parent_link_for(store->store->base_uri(), parent_uri, parent_external);
        auto result = store->store->publish(r, author, parent);
        if (out_created) *out_created = result.created ? 1 : 0;
        if (out_record_json) *out_record_json = dup_string(result.record.to_json().dump());
        return TW_OK;
    });
}

int tw_store_fetch(tw_store* store, const char* digest_hex, uint8_t** out_content,
                   size_t* out_len, char** out_record_json) {
    return guarded([&] {
        if (!store || !digest_hex) throw Error(Errc::invalid_argument, "null argument");
        auto digest = Digest::from_hex(digest_hex);
        if (!digest) throw Error(Errc::parse, "digest must be 64 lowercase hex chars");
        auto fetched = store->store->fetch(*digest);
        if (out_content) {
            auto* buf = static_cast<uint8_t*>(std::malloc(fetched.resource.content.size()));
            std::memcpy(buf, fetched.resource.content.data(), fetched.resource.content.size());
            *out_content = buf;
        }
        if (out_len) *out_len = fetched.resource.content.size();
        if (out_record_json) *out_record_json = dup_string(fetched.record.to_json().dump());
        return TW_OK;
    });
}

int tw_store_chain(tw_store* store, const char* digest_hex, char** out_json_array) {
    return guarded([&] {
        if (!store || !digest_hex || !out_json_array) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        auto digest = Digest::from_hex(digest_hex);
        if (!digest) throw Error(Errc::parse, "digest must be 64 lowercase hex chars");
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& record : store->store->chain_of(*digest)) {
            arr.push_back(record.to_json());
        }
        *out_json_array = dup_string(arr.dump());
        return TW_OK;
    });
}

int tw_store_count(tw_store* store, size_t* out_count) {
    return guarded([&] {
        if (!store || !out_count) throw Error(Errc::invalid_argument, "null argument");
        *out_count = store->store->record_count();
        return TW_OK;
    });
}

int tw_store_serve(tw_store* store, const char* host, int port, tw_server** out) {
    return guarded([&] {
        if (!store || !host || !out) throw Error(Errc::invalid_argument, "null argument");
        auto handle = std::make_unique<tw_server>();
        handle->store_server = std::make_unique<StoreServer>(*store->store);
        handle->port = handle->store_server->bind(host, port);
        handle->store_server->start();
        *out = handle.release();
        return TW_OK;
    });
}

int tw_publish_http(const char* endpoint, const uint8_t* content, size_t len,
                    const char* media_type, const char* author,
                    const char* parent_uri, int parent_external, int timeout_ms,
                    int* out_created, char** out_record_json) {
    return guarded([&] {
        if (!endpoint || !author) throw Error(Errc::invalid_argument, "null argument");
        Resource r;
        auto span = as_span(content, len);
        r.content.assign(span.begin(), span.end());
        r.media_type = media_type && *media_type ? media_type : "application/octet-stream";
        auto result = StoreServer::publish_remote(
            endpoint, r, author, parent_uri ? parent_uri : "", parent_external != 0,
            timeout_ms > 0 ? timeout_ms : 5000);
        if (out_created) *out_created = result.created ? 1 : 0;
        if (out_record_json) *out_record_json = dup_string(result.record.dump());
        return TW_OK;
    });
}

int tw_server_port(const tw_server* server) {
    return server ? server->port : TW_EINVAL;
}

void tw_server_stop(tw_server* server) {
    if (!server) return;
    if (server->store_server) server->store_server->stop();
    if (server->index_server) server->index_server->stop();
    if (server->validator_server) server->validator_server->stop();
    delete server;
}

int tw_index_open(const char* dir, tw_index** out) {
    return guarded([&] {
        if (!dir || !out) throw Error(Errc::invalid_argument, "null argument");
        auto handle = std::make_unique<tw_index>();
        handle->index = std::make_unique<SearchIndex>(dir);
        *out = handle.release();
        return TW_OK;
    });
}

void tw_index_close(tw_index* index) {
    delete index;
}

int tw_index_crawl(tw_index* index, const char* const* seed_uris, size_t n_seeds,
                   int budget, char** out_report_json) {
    return guarded([&] {
        if (!index || !seed_uris) throw Error(Errc::invalid_argument, "null argument");
        std::vector<TrustyUri> seeds;
        for (size_t i = 0; i < n_seeds; ++i) {
            seeds.push_back(parse_trusty_or_throw(seed_uris[i]));
        }
        auto report = crawl(*index->index, seeds, budget);
        if (out_report_json) *out_report_json = dup_string(report.to_json().dump());
        return TW_OK;
    });
}

int tw_index_query(tw_index* index, const char* terms, char** out_results_json) {
    return guarded([&] {
        if (!index || !terms || !out_results_json) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& hit : index->index->query(terms)) arr.push_back(hit.to_json());
        *out_results_json = dup_string(arr.dump());
        return TW_OK;
    });
}

int tw_index_status(tw_index* index, char** out_json) {
    return guarded([&] {
        if (!index || !out_json) throw Error(Errc::invalid_argument, "null argument");
        *out_json = dup_string(index->index->stats().dump());
        return TW_OK;
    });
}

int tw_index_serve(tw_index* index, const char* host, int port, tw_server** out) {
    return guarded([&] {
        if (!index || !host || !out) throw Error(Errc::invalid_argument, "null argument");
        auto handle = std::make_unique<tw_server>();
        handle->index_server = std::make_unique<IndexServer>(*index->index);
        handle->port = handle->index_server->bind(host, port);
        handle->index_server->start();
        *out = handle.release();
        return TW_OK;
    });
}

int tw_context_load(const char* path, tw_context** out) {
    return guarded([&] {
        if (!path || !out) throw Error(Errc::invalid_argument, "null argument");
        auto handle = std::make_unique<tw_context>();
        handle->ctx = TrustContext::load(path);
        *out = handle.release();
        return TW_OK;
    });
}

int tw_context_parse(const char* json, tw_context** out) {
    return guarded([&] {
        if (!json || !out) throw Error(Errc::invalid_argument, "null argument");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(json);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::parse, std::string("bad context JSON: ") + e.what());
        }
        auto handle = std::make_unique<tw_context>();
        handle->ctx = TrustContext::from_json(j);
        *out = handle.release();
        return TW_OK;
    });
}

void tw_context_free(tw_context* ctx) {
    delete ctx;
}

int tw_assess(const tw_context* ctx, const char* source_authority,
              const char* host_authority, const char* trusty_uri,
              char** out_decision_json) {
    return guarded([&] {
        if (!ctx || !source_authority || !host_authority || !out_decision_json) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        auto uri = parse_trusty_or_throw(trusty_uri);
        auto decision = assess(source_authority, host_authority, uri, ctx->ctx);
        *out_decision_json = dup_string(decision.to_json().dump());
        return TW_OK;
    });
}

int tw_context_promote_host(tw_context* ctx, const char* host, const char* attestor) {
    return guarded([&] {
        if (!ctx || !host || !attestor) throw Error(Errc::invalid_argument, "null argument");
        ctx->ctx = promote_host(ctx->ctx, host, attestor);
        return TW_OK;
    });
}

int tw_validator_open(const char* data_dir, tw_validator** out) {
    return guarded([&] {
        if (!data_dir || !out) throw Error(Errc::invalid_argument, "null argument");
        auto handle = std::make_unique<tw_validator>();
        handle->validator = std::make_unique<Validator>(data_dir);
        *out = handle.release();
        return TW_OK;
    });
}

void tw_validator_close(tw_validator* validator) {
    delete validator;
}

int tw_validator_map_host(tw_validator* validator, const char* authority,
                          const char* target_authority) {
    return guarded([&] {
        if (!validator || !authority || !target_authority) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        validator->validator->map_host(authority, target_authority);
        return TW_OK;
    });
}

int tw_validator_serve(tw_validator* validator, const char* host, int port,
                       tw_server** out) {
    return guarded([&] {
        if (!validator || !host || !out) throw Error(Errc::invalid_argument, "null argument");
        auto handle = std::make_unique<tw_server>();
        handle->validator_server = std::make_unique<ValidatorServer>(*validator->validator);
        handle->port = handle->validator_server->bind(host, port);
        handle->validator_server->start();
        *out = handle.release();
        return TW_OK;
    });
}

int tw_validate_bytes(tw_validator* validator, const char* trusty_uri,
                      const uint8_t* data, size_t len, char** out_report_json) {
    return guarded([&] {
        if (!validator || !out_report_json) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        auto uri = parse_trusty_or_throw(trusty_uri);
        auto report = validator->validator->validate_bytes(uri, as_span(data, len));
        *out_report_json = dup_string(report.to_json().dump());
        return TW_OK;
    });
}

int tw_quorum_validate(const char* trusty_uri, const char* const* validator_authorities,
                       size_t n_validators, int threshold, int timeout_ms,
                       int* out_accepted, char** out_outcome_json) {
    return guarded([&] {
        if (!validator_authorities) throw Error(Errc::invalid_argument, "null argument");
        auto uri = parse_trusty_or_throw(trusty_uri);
        std::vector<std::string> validators(validator_authorities,
                                            validator_authorities + n_validators);
        auto outcome = quorum_validate(
            uri, validators,
            threshold > 0 ? std::optional<std::size_t>(static_cast<std::size_t>(threshold))
                          : std::nullopt,
            timeout_ms > 0 ? timeout_ms : 5000);
        if (out_accepted) *out_accepted = outcome.accepted ? 1 : 0;
        if (out_outcome_json) *out_outcome_json = dup_string(outcome.to_json().dump());
        return TW_OK;
    });
}

static ResolverOptions make_options(const char* const* source_endpoints, size_t n_sources,
                                    int paranoid) {
    ResolverOptions options;
    for (size_t i = 0; i < n_sources; ++i) {
        if (source_endpoints && source_endpoints[i]) {
            options.sources.emplace_back(source_endpoints[i]);
        }
    }
    options.paranoid = paranoid != 0;
    return options;
}

int tw_resolve(const tw_context* ctx, const char* const* source_endpoints,
               size_t n_sources, const char* query_or_uri, const char* via_source,
               int paranoid, int* out_trusted, char** out_trace_jsonl) {
    return guarded([&] {
        if (!ctx || !query_or_uri) throw Error(Errc::invalid_argument, "null argument");
        Resolver resolver(ctx->ctx, make_options(source_endpoints, n_sources, paranoid));
        auto trace = resolver.resolve(query_or_uri, via_source ? via_source : "");
        if (out_trusted) *out_trusted = trace.trusted() ? 1 : 0;
        if (out_trace_jsonl) *out_trace_jsonl = dup_string(trace.to_jsonl());
        return TW_OK;
    });
}

int tw_navigate(const tw_context* ctx, const char* const* source_endpoints,
                size_t n_sources, const char* trace_jsonl, size_t link_index,
                int paranoid, int* out_trusted, char** out_trace_jsonl) {
    return guarded([&] {
        if (!ctx || !trace_jsonl) throw Error(Errc::invalid_argument, "null argument");
        auto from = ResolutionTrace::from_jsonl(trace_jsonl);
        Resolver resolver(ctx->ctx, make_options(source_endpoints, n_sources, paranoid));
        auto trace = resolver.navigate(from, link_index);
        if (out_trusted) *out_trusted = trace.trusted() ? 1 : 0;
        if (out_trace_jsonl) *out_trace_jsonl = dup_string(trace.to_jsonl());
        return TW_OK;
    });
}

int tw_corpus_load(const char* path, tw_corpus** out) {
    return guarded([&] {
        if (!path || !out) throw Error(Errc::invalid_argument, "null argument");
        auto handle = std::make_unique<tw_corpus>();
        handle->corpus = ingest_corpus(path);
        *out = handle.release();
        return TW_OK;
    });
}

void tw_corpus_free(tw_corpus* corpus) {
    delete corpus;
}

int tw_corpus_stats(const tw_corpus* corpus, char** out_stats_json) {
    return guarded([&] {
        if (!corpus || !out_stats_json) throw Error(Errc::invalid_argument, "null argument");
        auto j = corpus->corpus.stats.to_json();
        j["full_text_digest"] = corpus->corpus.full_text_digest_hex();
        *out_stats_json = dup_string(j.dump());
        return TW_OK;
    });
}

int tw_corpus_bench(const tw_corpus* corpus, int repetitions, const char* mode,
                    char** out_results_json) {
    return guarded([&] {
        if (!corpus || !mode || !out_results_json) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        BenchMode m;
        if (std::strcmp(mode, "in_memory") == 0) m = BenchMode::InMemory;
        else if (std::strcmp(mode, "streaming_from_file") == 0) m = BenchMode::StreamingFromFile;
        else throw Error(Errc::invalid_argument, std::string("unknown bench mode: ") + mode);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : bench_hash(corpus->corpus.units, repetitions, m)) {
            arr.push_back(r.to_json());
        }
        *out_results_json = dup_string(arr.dump());
        return TW_OK;
    });
}

int tw_bench_chunk_contrast(size_t bytes, int repetitions, char** out_json) {
    return guarded([&] {
        if (!out_json) throw Error(Errc::invalid_argument, "null argument");
        auto contrast = measure_chunk_contrast(bytes, repetitions > 0 ? repetitions : 3);
        *out_json = dup_string(contrast.to_json().dump());
        return TW_OK;
    });
}

int tw_corpus_publish(const tw_corpus* corpus, const char* endpoint,
                      const char* author, int timeout_ms, size_t* out_published,
                      char** out_summary_json) {
    return guarded([&] {
        if (!corpus || !endpoint || !author) {
            throw Error(Errc::invalid_argument, "null argument");
        }
        auto summary = publish_corpus(corpus->corpus, endpoint, author,
                                      timeout_ms > 0 ? timeout_ms : 5000);
        if (out_published) *out_published = summary.published;
        if (out_summary_json) *out_summary_json = dup_string(summary.to_json().dump());
        return TW_OK;
    });
}

} // extern "C"
