// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/resource.hpp"
#include "core/trust.hpp"
#include "core/uri.hpp"

namespace trustyweb {

// One protocol message in a resolution transcript.
// action: search | resultSet | request | response | check | validate
// peer: the counterparty authority ("local" for the client's own check)
// note: non-normative annotation (digest-verified, mismatch, unreachable...)
struct TraceStep {
    std::string action;
    std::string peer;
    std::string subject;
    std::string note;

    nlohmann::json to_json() const;
    static TraceStep from_json(const nlohmann::json& j);
};

struct ResolutionTrace {
    std::vector<TraceStep> steps;
    TrustDecision final_decision;
    std::string uri;         // resolved trusty URI text, "" if none was chosen
    std::string source_attr; // authority the URI binding came from, "" unknown
    bool binding_trusted = false;
    bool digest_verified = false;
    std::optional<Resource> content;
    std::optional<std::string> error; // NotFoundAnywhere | UntrustedUnverifiable

    bool trusted() const { return final_decision.verdict == Verdict::Trusted; }

    // JSON lines: one step per line, then a tail object carrying the final
    // decision and (when present) the verified content.
    std::string to_jsonl() const;
    static ResolutionTrace from_jsonl(std::string_view text);
};

struct ResolverOptions {
    std::vector<std::string> sources; // search endpoints (authorities), in preference order
    bool paranoid = false;            // never fetch from untrusted hosts before revalidation
    int timeout_ms = 5000;
};

// Executes the trust-decision protocol: fetch, local check, revalidation
// via a trusted source and host, validator quorum. Every resolution yields
// a transcript; a Trusted verdict always implies digest-verified content.
class Resolver {
public:
    Resolver(TrustContext ctx, ResolverOptions options);

    // query_or_uri: a trusty URI resolves directly (via_source attributes
    // where the URI text came from); anything else is treated as search
    // terms sent to via_source or the first configured source.
    ResolutionTrace resolve(const std::string& query_or_uri,
                            const std::string& via_source = "");

    // Follows the link_index-th trusty link of a Trusted trace, with the
    // URI binding pre-trusted and no search step.
    ResolutionTrace navigate(const ResolutionTrace& from, std::size_t link_index);

    const TrustContext& context() const { return ctx_; }

private:
    struct Intent {
        bool is_query = false;
        std::string terms;
    };

    struct FetchOutcome {
        bool responded = false;
        bool verified = false;
        Resource resource;
    };

    ResolutionTrace resolve_uri(const TrustyUri& uri, const std::string& via_source,
                                bool binding_trusted, const Intent& intent,
                                ResolutionTrace trace);
    FetchOutcome fetch_step(ResolutionTrace& trace, const TrustyUri& uri);
    bool revalidate_via_trusted(ResolutionTrace& trace, const TrustyUri& uri,
                                const Intent& intent);
    bool quorum_step(ResolutionTrace& trace, const TrustyUri& uri,
                     const FetchOutcome& prior_fetch);
    std::optional<TrustyUri> search_source(ResolutionTrace& trace, const std::string& source,
                                           const Intent& intent, const TrustyUri* lookup_uri);
    void finish_trusted(ResolutionTrace& trace, Resource content);

    TrustContext ctx_;
    ResolverOptions options_;
};

} // namespace trustyweb
