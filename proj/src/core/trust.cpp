// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/trust.hpp"

#include <fstream>

#include "core/errors.hpp"

namespace trustyweb {

bool TrustContext::has_source(std::string_view authority) const {
    return trusted_sources.count(normalize_authority(authority)) > 0;
}

bool TrustContext::has_host(std::string_view authority) const {
    return trusted_hosts.count(normalize_authority(authority)) > 0;
}

nlohmann::json TrustContext::to_json() const {
    return {
        {"trusted_sources", trusted_sources},
        {"trusted_hosts", trusted_hosts},
        {"validators", validators},
    };
}

TrustContext TrustContext::from_json(const nlohmann::json& j) {
    TrustContext ctx;
    for (const auto& s : j.value("trusted_sources", std::vector<std::string>{})) {
        ctx.trusted_sources.insert(normalize_authority(s));
    }
    for (const auto& h : j.value("trusted_hosts", std::vector<std::string>{})) {
        ctx.trusted_hosts.insert(normalize_authority(h));
    }
    ctx.validators = j.value("validators", std::vector<std::string>{});
    return ctx;
}

TrustContext TrustContext::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open trust context: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, "bad trust context JSON: " + std::string(e.what()));
    }
    return from_json(j);
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Trusted: return "Trusted";
    case Verdict::TrustedUriContentUnverified: return "TrustedUriContentUnverified";
    case Verdict::Untrusted: return "Untrusted";
    }
    return "?";
}

const char* to_string(Action a) {
    switch (a) {
    case Action::None: return "None";
    case Action::LocalDigestCheck: return "LocalDigestCheck";
    case Action::RevalidateViaTrusted: return "RevalidateViaTrusted";
    case Action::ValidatorQuorum: return "ValidatorQuorum";
    }
    return "?";
}

const char* to_string(CaseLabel c) {
    switch (c) {
    case CaseLabel::SourceHostTrusted: return "S+H+";
    case CaseLabel::SourceOnlyTrusted: return "S+H-";
    case CaseLabel::HostOnlyTrusted: return "S-H+";
    case CaseLabel::NeitherTrusted: return "S-H-";
    case CaseLabel::LinkPropagation: return "LinkPropagation";
    }
    return "?";
}

namespace {

Verdict verdict_from_string(const std::string& s) {
    if (s == "Trusted") return Verdict::Trusted;
    if (s == "TrustedUriContentUnverified") return Verdict::TrustedUriContentUnverified;
    if (s == "Untrusted") return Verdict::Untrusted;
    throw Error(Errc::parse, "unknown verdict: " + s);
}

Action action_from_string(const std::string& s) {
    if (s == "None") return Action::None;
    if (s == "LocalDigestCheck") return Action::LocalDigestCheck;
    if (s == "RevalidateViaTrusted") return Action::RevalidateViaTrusted;
    if (s == "ValidatorQuorum") return Action::ValidatorQuorum;
    throw Error(Errc::parse, "unknown action: " + s);
}

CaseLabel case_from_string(const std::string& s) {
    if (s == "S+H+") return CaseLabel::SourceHostTrusted;
    if (s == "S+H-") return CaseLabel::SourceOnlyTrusted;
    if (s == "S-H+") return CaseLabel::HostOnlyTrusted;
    if (s == "S-H-") return CaseLabel::NeitherTrusted;
    if (s == "LinkPropagation") return CaseLabel::LinkPropagation;
    throw Error(Errc::parse, "unknown case label: " + s);
}

} // namespace

nlohmann::json TrustDecision::to_json() const {
    return {
        {"verdict", to_string(verdict)},
        {"required_action", to_string(required_action)},
        {"rationale", to_string(rationale)},
    };
}

TrustDecision TrustDecision::from_json(const nlohmann::json& j) {
    TrustDecision d;
    d.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    d.required_action = action_from_string(j.at("required_action").get<std::string>());
    d.rationale = case_from_string(j.at("rationale").get<std::string>());
    return d;
}

TrustDecision assess(std::string_view source_authority, std::string_view host_authority,
                     const TrustyUri& /*uri*/, const TrustContext& ctx) {
    bool source_trusted = ctx.has_source(source_authority);
    bool host_trusted = ctx.has_host(host_authority);

    if (source_trusted && host_trusted) {
        return {Verdict::Trusted, Action::None, CaseLabel::SourceHostTrusted};
    }
    if (source_trusted) {
        return {Verdict::TrustedUriContentUnverified, Action::LocalDigestCheck,
                CaseLabel::SourceOnlyTrusted};
    }
    if (host_trusted) {
        return {Verdict::Trusted, Action::None, CaseLabel::HostOnlyTrusted};
    }
    bool has_trusted_pair = !ctx.trusted_sources.empty() && !ctx.trusted_hosts.empty();
    return {Verdict::Untrusted,
            has_trusted_pair ? Action::RevalidateViaTrusted : Action::ValidatorQuorum,
            CaseLabel::NeitherTrusted};
}

std::map<std::string, LinkTrust> propagate(const TrustDecision& parent_decision,
                                           const LinkSet& parent_links) {
    if (parent_decision.verdict != Verdict::Trusted) {
        throw Error(Errc::propagation_from_untrusted,
                    "cannot propagate link trust from a non-Trusted parent");
    }
    std::map<std::string, LinkTrust> out;
    for (const auto& link : parent_links.trusty_links) {
        out.emplace(link.to_string(), LinkTrust::UriBindingTrusted);
    }
    return out;
}

TrustContext promote_host(const TrustContext& ctx, std::string_view host,
                          std::string_view attestor) {
    if (!ctx.has_host(attestor)) {
        throw Error(Errc::untrusted_attestor,
                    "attestor is not a trusted host: " + std::string(attestor));
    }
    TrustContext next = ctx;
    next.trusted_hosts.insert(normalize_authority(host));
    return next;
}

} // namespace trustyweb
