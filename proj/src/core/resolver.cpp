// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/resolver.hpp"

#include <sstream>

#include "core/errors.hpp"
#include "core/http_util.hpp"
#include "core/text.hpp"
#include "core/validator.hpp"

namespace trustyweb {

nlohmann::json TraceStep::to_json() const {
    nlohmann::json j = {{"action", action}, {"peer", peer}, {"subject", subject}};
    if (!note.empty()) j["note"] = note;
    return j;
}

TraceStep TraceStep::from_json(const nlohmann::json& j) {
    TraceStep s;
    s.action = j.at("action").get<std::string>();
    s.peer = j.at("peer").get<std::string>();
    s.subject = j.at("subject").get<std::string>();
    s.note = j.value("note", "");
    return s;
}

std::string ResolutionTrace::to_jsonl() const {
    std::string out;
    for (const auto& step : steps) {
        out += step.to_json().dump();
        out += '\n';
    }
    nlohmann::json tail = {
        {"final", final_decision.to_json()},
        {"uri", uri},
        {"source", source_attr},
        {"binding_trusted", binding_trusted},
        {"digest_verified", digest_verified},
    };
    if (content) {
        tail["media_type"] = content->media_type;
        tail["content_b64"] = base64_encode(content->text());
    }
    if (error) tail["error"] = *error;
    out += tail.dump();
    out += '\n';
    return out;
}

ResolutionTrace ResolutionTrace::from_jsonl(std::string_view text) {
    ResolutionTrace trace;
    std::istringstream in{std::string(text)};
    std::string line;
    bool saw_tail = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::parse, "bad trace line: " + std::string(e.what()));
        }
        try {
            if (j.contains("final")) {
                trace.final_decision = TrustDecision::from_json(j.at("final"));
                trace.uri = j.value("uri", "");
                trace.source_attr = j.value("source", "");
                trace.binding_trusted = j.value("binding_trusted", false);
                trace.digest_verified = j.value("digest_verified", false);
                if (j.contains("content_b64")) {
                    Resource r;
                    auto bytes = base64_decode(j.at("content_b64").get<std::string>());
                    r.content.assign(bytes.begin(), bytes.end());
                    r.media_type = j.value("media_type", "application/octet-stream");
                    trace.content = std::move(r);
                }
                if (j.contains("error")) trace.error = j.at("error").get<std::string>();
                saw_tail = true;
            } else {
                trace.steps.push_back(TraceStep::from_json(j));
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::parse, "bad trace line: " + std::string(e.what()));
        }
    }
    if (!saw_tail) throw Error(Errc::parse, "trace has no final record");
    return trace;
}

Resolver::Resolver(TrustContext ctx, ResolverOptions options)
    : ctx_(std::move(ctx)), options_(std::move(options)) {}

ResolutionTrace Resolver::resolve(const std::string& query_or_uri,
                                  const std::string& via_source) {
    // direct trusty URI input skips the search step
    if (auto uri = TrustyUri::parse(query_or_uri)) {
        return resolve_uri(*uri, via_source, false, Intent{}, ResolutionTrace{});
    }
    if (parse_uri(query_or_uri)) {
        throw Error(Errc::invalid_argument,
                    "plain URIs are not resolvable trust subjects: " + query_or_uri);
    }

    // search-term input: the chosen engine first, then any other known one
    std::vector<std::string> candidates;
    if (!via_source.empty()) candidates.push_back(via_source);
    for (const auto& s : options_.sources) {
        bool seen = false;
        for (const auto& c : candidates) {
            if (normalize_authority(c) == normalize_authority(s)) seen = true;
        }
        if (!seen) candidates.push_back(s);
    }
    if (candidates.empty()) {
        throw Error(Errc::invalid_argument, "no source endpoint configured");
    }

    ResolutionTrace trace;
    Intent intent{true, query_or_uri};
    for (const auto& source : candidates) {
        auto hit = search_source(trace, source, intent, nullptr);
        if (hit) {
            return resolve_uri(*hit, source, false, intent, std::move(trace));
        }
    }
    trace.final_decision = {Verdict::Untrusted,
                            !ctx_.trusted_sources.empty() && !ctx_.trusted_hosts.empty()
                                ? Action::RevalidateViaTrusted
                                : Action::ValidatorQuorum,
                            CaseLabel::NeitherTrusted};
    trace.error = "NotFoundAnywhere";
    return trace;
}

ResolutionTrace Resolver::navigate(const ResolutionTrace& from, std::size_t link_index) {
    if (!from.content) {
        throw Error(Errc::propagation_from_untrusted, "trace carries no content");
    }
    // trace files are untrusted input: re-verify content against its URI
    auto from_uri = TrustyUri::parse(from.uri);
    if (!from_uri || !verify(*from_uri, from.content->content).match) {
        throw Error(Errc::integrity_failure, "trace content does not match its URI");
    }
    LinkSet links = extract_links(*from.content, from.uri);
    auto bindings = propagate(from.final_decision, links); // enforces Trusted parent
    if (link_index >= links.trusty_links.size()) {
        throw Error(Errc::link_index_out_of_range,
                    "link index " + std::to_string(link_index) + " out of range (" +
                        std::to_string(links.trusty_links.size()) + " trusty links)");
    }
    const TrustyUri& target = links.trusty_links[link_index];
    (void)bindings;
    return resolve_uri(target, from.source_attr, true, Intent{}, ResolutionTrace{});
}

std::optional<TrustyUri> Resolver::search_source(ResolutionTrace& trace,
                                                 const std::string& source,
                                                 const Intent& intent,
                                                 const TrustyUri* lookup_uri) {
    std::string peer = normalize_authority(source);
    std::string subject = lookup_uri ? lookup_uri->to_string() : intent.terms;
    std::string url = lookup_uri
                          ? "http://" + source + "/lookup?digest=" + lookup_uri->digest.to_hex()
                          : "http://" + source + "/search?q=" + url_encode(intent.terms);

    TraceStep search{"search", peer, subject, ""};
    auto res = http_get(url, options_.timeout_ms);
    if (res.status != 200) {
        search.note = res.status == 0 ? "unreachable" : "HTTP " + std::to_string(res.status);
        trace.steps.push_back(std::move(search));
        return std::nullopt;
    }
    trace.steps.push_back(std::move(search));

    std::optional<TrustyUri> hit;
    try {
        auto arr = nlohmann::json::parse(res.body.begin(), res.body.end());
        for (const auto& item : arr) {
            auto uri = TrustyUri::parse(item.value("uri", ""));
            if (!uri) continue; // sources may return junk; only trusty refs count
            hit = *uri;
            break;
        }
    } catch (const nlohmann::json::exception&) {
        hit = std::nullopt;
    }
    trace.steps.push_back({"resultSet", peer, hit ? hit->to_string() : "", ""});
    return hit;
}

Resolver::FetchOutcome Resolver::fetch_step(ResolutionTrace& trace, const TrustyUri& uri) {
    std::string peer = normalize_authority(uri.authority);
    std::string subject = uri.to_string();

    FetchOutcome out;
    auto res = http_get(subject, options_.timeout_ms);
    if (res.status == 0) {
        trace.steps.push_back({"request", peer, subject, "unreachable"});
        return out;
    }
    trace.steps.push_back({"request", peer, subject, ""});
    if (res.status != 200) {
        trace.steps.push_back({"response", peer, subject, "HTTP " + std::to_string(res.status)});
        return out;
    }
    out.responded = true;
    out.resource.content = std::move(res.body);
    out.resource.media_type =
        res.content_type.empty() ? "application/octet-stream" : res.content_type;
    out.verified = verify(uri, out.resource.content).match;
    // verification here is the resolver's always-on self-check, not a
    // protocol message; it rides on the response as an annotation
    trace.steps.push_back(
        {"response", peer, subject, out.verified ? "digest-verified" : "digest-mismatch"});
    return out;
}

void Resolver::finish_trusted(ResolutionTrace& trace, Resource content) {
    trace.final_decision.verdict = Verdict::Trusted;
    trace.final_decision.required_action = Action::None;
    trace.content = std::move(content);
    trace.digest_verified = true;
}

bool Resolver::revalidate_via_trusted(ResolutionTrace& trace, const TrustyUri& uri,
                                      const Intent& intent) {
    std::vector<std::string> candidates = options_.sources;
    if (!trace.source_attr.empty()) {
        bool seen = false;
        for (const auto& c : candidates) {
            if (normalize_authority(c) == trace.source_attr) seen = true;
        }
        if (!seen) candidates.push_back(trace.source_attr);
    }
    for (const auto& source : candidates) {
        if (!ctx_.has_source(source)) continue;

        auto hit = intent.is_query ? search_source(trace, source, intent, nullptr)
                                   : search_source(trace, source, Intent{}, &uri);
        if (!hit) continue;
        if (!intent.is_query && hit->digest != uri.digest) continue;

        // bytes must come from a trusted host
        if (ctx_.has_host(hit->authority)) {
            auto fetched = fetch_step(trace, *hit);
            if (fetched.verified) {
                trace.uri = hit->to_string();
                finish_trusted(trace, std::move(fetched.resource));
                return true;
            }
        }
        for (const auto& host : ctx_.trusted_hosts) {
            if (host == normalize_authority(hit->authority)) continue;
            TrustyUri candidate;
            candidate.scheme = uri.scheme;
            candidate.authority = host;
            candidate.prefix_path = "";
            candidate.digest = hit->digest;
            auto fetched = fetch_step(trace, candidate);
            if (fetched.verified) {
                trace.uri = candidate.to_string();
                finish_trusted(trace, std::move(fetched.resource));
                return true;
            }
        }
    }
    return false;
}

bool Resolver::quorum_step(ResolutionTrace& trace, const TrustyUri& uri,
                           const FetchOutcome& prior_fetch) {
    if (ctx_.validators.empty()) return false;

    QuorumOutcome outcome;
    try {
        outcome = quorum_validate(uri, ctx_.validators, std::nullopt, options_.timeout_ms);
    } catch (const Error&) {
        for (const auto& v : ctx_.validators) {
            trace.steps.push_back({"validate", normalize_authority(v), uri.to_string(),
                                   "unreachable"});
        }
        return false;
    }

    for (const auto& v : ctx_.validators) {
        std::string note = "unreachable";
        std::string norm = normalize_authority(v);
        for (const auto& report : outcome.reports) {
            if (normalize_authority(report.validator_id) == norm) {
                note = report.match ? "match" : "mismatch";
                break;
            }
        }
        for (const auto& [validator, reason] : outcome.failures) {
            if (normalize_authority(validator) == norm) {
                note = reason;
                break;
            }
        }
        trace.steps.push_back({"validate", norm, uri.to_string(), note});
    }

    if (!outcome.accepted) return false;

    if (prior_fetch.verified) {
        finish_trusted(trace, prior_fetch.resource);
        return true;
    }
    auto fetched = fetch_step(trace, uri);
    if (fetched.verified) {
        finish_trusted(trace, std::move(fetched.resource));
        return true;
    }
    return false;
}

ResolutionTrace Resolver::resolve_uri(const TrustyUri& uri, const std::string& via_source,
                                      bool binding_trusted, const Intent& intent,
                                      ResolutionTrace trace) {
    trace.uri = uri.to_string();
    trace.source_attr = via_source.empty() ? "" : normalize_authority(via_source);
    trace.binding_trusted = binding_trusted;

    TrustDecision decision = assess(trace.source_attr, uri.authority, uri, ctx_);
    trace.final_decision = decision;

    bool host_untrusted = !ctx_.has_host(uri.authority);
    FetchOutcome candidate;

    switch (decision.verdict) {
    case Verdict::Trusted: {
        candidate = fetch_step(trace, uri);
        if (candidate.verified) {
            finish_trusted(trace, std::move(candidate.resource));
            return trace;
        }
        break;
    }
    case Verdict::TrustedUriContentUnverified: {
        if (!(options_.paranoid && host_untrusted)) {
            candidate = fetch_step(trace, uri);
            if (candidate.responded) {
                // the required LocalDigestCheck, as an explicit protocol step
                trace.steps.push_back({"check", "local", uri.to_string(),
                                       candidate.verified ? "match" : "mismatch"});
                if (candidate.verified) {
                    finish_trusted(trace, std::move(candidate.resource));
                    return trace;
                }
            }
        }
        break;
    }
    case Verdict::Untrusted: {
        // the orange sequence fetches from the untrusted host first; the
        // bytes are only a candidate, trust needs the revalidation below
        if (!(options_.paranoid && host_untrusted)) {
            candidate = fetch_step(trace, uri);
        }
        break;
    }
    }

    bool has_trusted_pair = !ctx_.trusted_sources.empty() && !ctx_.trusted_hosts.empty();
    if (has_trusted_pair && revalidate_via_trusted(trace, uri, intent)) {
        return trace;
    }
    if (quorum_step(trace, uri, candidate)) {
        return trace;
    }

    trace.final_decision.verdict = Verdict::Untrusted;
    // Trusted <=> None must hold for the final decision too
    trace.final_decision.required_action =
        decision.required_action == Action::None
            ? (has_trusted_pair ? Action::RevalidateViaTrusted : Action::ValidatorQuorum)
            : decision.required_action;
    trace.error = "UntrustedUnverifiable";
    return trace;
}

} // namespace trustyweb
