/*
 * trustyweb - content-addressed web provenance toolkit
 *
 * C API over the trustyweb core. All functions return TW_OK (0) on success
 * or a negative tw_status; tw_last_error() describes the most recent
 * failure on the calling thread. Strings returned through char** are
 * heap-allocated and must be released with tw_string_free(); buffers
 * returned through uint8_t** with tw_bytes_free(). Handles are opaque and
 * must be released with their matching close/free function.
 *
 * Copyright 2026 trustyweb contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef TRUSTYWEB_H
#define TRUSTYWEB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tw_status {
    TW_OK = 0,
    TW_ERR = -1,               /* unclassified failure */
    TW_EINVAL = -2,            /* invalid argument / precondition violation */
    TW_EPARSE = -3,            /* malformed URI, JSON, corpus line, ... */
    TW_EIO = -4,               /* file system failure */
    TW_ENET = -5,              /* network failure */
    TW_ENOTFOUND = -6,         /* unknown digest / record */
    TW_EINTEGRITY = -7,        /* stored bytes no longer match their digest */
    TW_ECOLLISION = -8,        /* same digest, different bytes */
    TW_EPARENT = -9,           /* parent not found at publish time */
    TW_ECLOCKSKEW = -10,       /* client timestamp outside tolerance */
    TW_EUNREACHABLE = -11,     /* all validators unreachable */
    TW_ERANGE = -12,           /* link index out of range */
    TW_EUNTRUSTED = -13,       /* propagation from a non-trusted parent */
    TW_ECRAWL = -14            /* all crawl seeds failed */
} tw_status;

/* 64 hex chars + NUL */
#define TW_HEX_DIGEST_LEN 65

typedef struct tw_store tw_store;
typedef struct tw_index tw_index;
typedef struct tw_server tw_server;
typedef struct tw_context tw_context;
typedef struct tw_validator tw_validator;
typedef struct tw_corpus tw_corpus;

const char* tw_version(void);

/* Thread-local message for the last failing call on this thread. */
const char* tw_last_error(void);

void tw_string_free(char* s);
void tw_bytes_free(uint8_t* p);

/* ---- digests and trusty URIs ---------------------------------------- */

int tw_sha256_hex(const uint8_t* data, size_t len, char out_hex[TW_HEX_DIGEST_LEN]);

/* Streams the file in chunk_size reads (0 = default 64 KiB). */
int tw_sha256_file_hex(const char* path, size_t chunk_size,
                       char out_hex[TW_HEX_DIGEST_LEN]);

int tw_mint(const char* base_uri, const uint8_t* data, size_t len, char** out_uri);
int tw_mint_file(const char* base_uri, const char* path, char** out_uri);

/* 1 = trusty, 0 = plain, TW_EPARSE on unparseable input */
int tw_uri_classify(const char* uri);

/* out_match: 1 on digest match, 0 otherwise. expected/actual may be NULL. */
int tw_verify_bytes(const char* trusty_uri, const uint8_t* data, size_t len,
                    int* out_match, char out_expected[TW_HEX_DIGEST_LEN],
                    char out_actual[TW_HEX_DIGEST_LEN]);
int tw_verify_file(const char* trusty_uri, const char* path, int* out_match,
                   char out_expected[TW_HEX_DIGEST_LEN],
                   char out_actual[TW_HEX_DIGEST_LEN]);

/* Fetches the URI over HTTP and verifies the body. */
int tw_verify_fetch(const char* trusty_uri, int timeout_ms, int* out_match,
                    char out_expected[TW_HEX_DIGEST_LEN],
                    char out_actual[TW_HEX_DIGEST_LEN]);

/* ---- publisher store ------------------------------------------------- */

int tw_store_open(const char* data_dir, const char* base_uri, tw_store** out);
void tw_store_close(tw_store* store);

/* parent_uri: NULL or "root" publishes a first resource (publisher root).
 * out_created: 1 when a new record was created, 0 on idempotent re-publish.
 * out_record_json receives the PublicationRecord. */
int tw_store_publish(tw_store* store, const uint8_t* content, size_t len,
                     const char* media_type, const char* author,
                     const char* parent_uri, int parent_external,
                     int* out_created, char** out_record_json);

int tw_store_fetch(tw_store* store, const char* digest_hex, uint8_t** out_content,
                   size_t* out_len, char** out_record_json);

int tw_store_chain(tw_store* store, const char* digest_hex, char** out_json_array);

int tw_store_count(tw_store* store, size_t* out_count);

/* port 0 binds an ephemeral port. */
int tw_store_serve(tw_store* store, const char* host, int port, tw_server** out);

/* POST /publish against a remote store endpoint ("http://host:port"). */
int tw_publish_http(const char* endpoint, const uint8_t* content, size_t len,
                    const char* media_type, const char* author,
                    const char* parent_uri, int parent_external, int timeout_ms,
                    int* out_created, char** out_record_json);

/* ---- servers ---------------------------------------------------------- */

int tw_server_port(const tw_server* server);

/* Stops the server and releases the handle. Stop all servers over a store,
 * index or validator before closing that handle. */
void tw_server_stop(tw_server* server);

/* ---- search index ------------------------------------------------------ */

int tw_index_open(const char* dir, tw_index** out);
void tw_index_close(tw_index* index);

int tw_index_crawl(tw_index* index, const char* const* seed_uris, size_t n_seeds,
                   int budget, char** out_report_json);
int tw_index_query(tw_index* index, const char* terms, char** out_results_json);
int tw_index_status(tw_index* index, char** out_json);
int tw_index_serve(tw_index* index, const char* host, int port, tw_server** out);

/* ---- trust context and decisions --------------------------------------- */

int tw_context_load(const char* path, tw_context** out);
int tw_context_parse(const char* json, tw_context** out);
void tw_context_free(tw_context* ctx);

int tw_assess(const tw_context* ctx, const char* source_authority,
              const char* host_authority, const char* trusty_uri,
              char** out_decision_json);

/* One-hop attestation; mutates the handle. */
int tw_context_promote_host(tw_context* ctx, const char* host, const char* attestor);

/* ---- validator service and quorum --------------------------------------- */

int tw_validator_open(const char* data_dir, tw_validator** out);
void tw_validator_close(tw_validator* validator);

/* Remaps an authority for directive-mode fetches (proxy / fixture use). */
int tw_validator_map_host(tw_validator* validator, const char* authority,
                          const char* target_authority);

int tw_validator_serve(tw_validator* validator, const char* host, int port,
                       tw_server** out);

int tw_validate_bytes(tw_validator* validator, const char* trusty_uri,
                      const uint8_t* data, size_t len, char** out_report_json);

/* threshold <= 0 selects the majority default (n/2 + 1).
 * out_accepted: 1 when the quorum accepted. */
int tw_quorum_validate(const char* trusty_uri, const char* const* validator_authorities,
                       size_t n_validators, int threshold, int timeout_ms,
                       int* out_accepted, char** out_outcome_json);

/* ---- client resolver ----------------------------------------------------- */

/* source_endpoints: search-service authorities the client knows about.
 * via_source: where the query goes / where a direct URI came from (may be
 * NULL). out_trusted: 1 when the final verdict is Trusted. The transcript
 * is returned as JSON lines. */
int tw_resolve(const tw_context* ctx, const char* const* source_endpoints,
               size_t n_sources, const char* query_or_uri, const char* via_source,
               int paranoid, int* out_trusted, char** out_trace_jsonl);

int tw_navigate(const tw_context* ctx, const char* const* source_endpoints,
                size_t n_sources, const char* trace_jsonl, size_t link_index,
                int paranoid, int* out_trusted, char** out_trace_jsonl);

/* ---- corpus ingest / bench / publish ------------------------------------- */

int tw_corpus_load(const char* path, tw_corpus** out);
void tw_corpus_free(tw_corpus* corpus);

int tw_corpus_stats(const tw_corpus* corpus, char** out_stats_json);

/* mode: "in_memory" or "streaming_from_file". */
int tw_corpus_bench(const tw_corpus* corpus, int repetitions, const char* mode,
                    char** out_results_json);

/* Whole-buffer hashing vs 1-octet-chunk streaming over `bytes` random bytes. */
int tw_bench_chunk_contrast(size_t bytes, int repetitions, char** out_json);

int tw_corpus_publish(const tw_corpus* corpus, const char* endpoint,
                      const char* author, int timeout_ms, size_t* out_published,
                      char** out_summary_json);

#ifdef __cplusplus
}
#endif

#endif /* TRUSTYWEB_H */
