// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/resource.hpp"
#include "core/uri.hpp"

namespace trustyweb {

// The client's trust state: which search services (sources) and which
// content servers (hosts) it trusts, plus known validator endpoints.
// Value-semantic so protocol runs are replayable.
struct TrustContext {
    std::set<std::string> trusted_sources; // normalized authorities
    std::set<std::string> trusted_hosts;   // normalized authorities
    std::vector<std::string> validators;   // validator authorities

    bool has_source(std::string_view authority) const;
    bool has_host(std::string_view authority) const;

    nlohmann::json to_json() const;
    static TrustContext from_json(const nlohmann::json& j);
    static TrustContext load(const std::filesystem::path& path);
};

enum class Verdict { Trusted, TrustedUriContentUnverified, Untrusted };
enum class Action { None, LocalDigestCheck, RevalidateViaTrusted, ValidatorQuorum };
enum class CaseLabel { SourceHostTrusted, SourceOnlyTrusted, HostOnlyTrusted, NeitherTrusted,
                       LinkPropagation };

const char* to_string(Verdict v);
const char* to_string(Action a);
const char* to_string(CaseLabel c); // "S+H+", "S+H-", "S-H+", "S-H-", "LinkPropagation"

struct TrustDecision {
    Verdict verdict = Verdict::Untrusted;
    Action required_action = Action::RevalidateViaTrusted;
    CaseLabel rationale = CaseLabel::NeitherTrusted;

    nlohmann::json to_json() const;
    static TrustDecision from_json(const nlohmann::json& j);
    bool operator==(const TrustDecision&) const = default;
};

// The four-case matrix over (source trusted?, host trusted?):
//   S+H+  -> Trusted, no action
//   S+H-  -> URI binding trusted, content unverified; local digest check
//            (revalidation via a trusted pair is the configured alternative)
//   S-H+  -> Trusted, no action
//   S-H-  -> Untrusted; revalidate via trusted source+host, falling back to
//            a validator quorum when the context holds no trusted pair
// Only trusty URIs are ever assessed.
TrustDecision assess(std::string_view source_authority, std::string_view host_authority,
                     const TrustyUri& uri, const TrustContext& ctx);

enum class LinkTrust { UriBindingTrusted };

// Marks every trusty link of a Trusted parent as binding-trusted. The
// binding (URI -> digest) inherits trust; fetched content still needs
// assess + digest verification. Throws PropagationFromUntrusted unless the
// parent verdict is exactly Trusted.
std::map<std::string, LinkTrust> propagate(const TrustDecision& parent_decision,
                                           const LinkSet& parent_links);

// One-hop attestation: a trusted host vouches for another. Returns a new
// context; throws UntrustedAttestor.
TrustContext promote_host(const TrustContext& ctx, std::string_view host,
                          std::string_view attestor);

} // namespace trustyweb
