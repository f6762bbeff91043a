// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/resource.hpp"

#include <algorithm>
#include <cctype>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace trustyweb {

namespace {

std::string media_type_base(std::string_view media_type) {
    auto semi = media_type.find(';');
    std::string base(media_type.substr(0, semi));
    while (!base.empty() && base.back() == ' ') base.pop_back();
    return ascii_lower(base);
}

std::string media_type_charset(std::string_view media_type) {
    auto lower = ascii_lower(media_type);
    auto pos = lower.find("charset=");
    if (pos == std::string::npos) return "";
    std::string cs = lower.substr(pos + 8);
    auto end = cs.find_first_of("; \t");
    if (end != std::string::npos) cs.resize(end);
    if (!cs.empty() && cs.front() == '"') cs.erase(0, 1);
    if (!cs.empty() && cs.back() == '"') cs.pop_back();
    return cs;
}

// Minimal entity decoding; hrefs commonly escape '&' only.
std::string decode_amp(std::string href) {
    std::string::size_type pos = 0;
    while ((pos = href.find("&amp;", pos)) != std::string::npos) {
        href.replace(pos, 5, "&");
        ++pos;
    }
    return href;
}

} // namespace

Resource Resource::from_text(std::string_view body, std::string media_type) {
    Resource r;
    r.content.assign(body.begin(), body.end());
    r.media_type = std::move(media_type);
    return r;
}

bool is_html_media_type(std::string_view media_type) {
    auto base = media_type_base(media_type);
    return base == "text/html" || base == "application/xhtml+xml";
}

bool is_text_media_type(std::string_view media_type) {
    return media_type_base(media_type).rfind("text/", 0) == 0;
}

LinkSet extract_links(const Resource& resource, const std::string& base_uri) {
    LinkSet links;
    if (!is_html_media_type(resource.media_type)) {
        return links;
    }
    auto charset = media_type_charset(resource.media_type);
    if (!charset.empty() && charset != "utf-8" && charset != "us-ascii" && charset != "ascii") {
        throw Error(Errc::charset, "undecodable charset: " + charset);
    }

    std::string_view html = resource.text();
    std::size_t i = 0;
    while (i < html.size()) {
        auto lt = html.find('<', i);
        if (lt == std::string_view::npos) break;
        // anchor open tag: "<a" followed by whitespace or tag end
        if (lt + 1 >= html.size() ||
            (html[lt + 1] != 'a' && html[lt + 1] != 'A')) {
            i = lt + 1;
            continue;
        }
        if (lt + 2 < html.size()) {
            char after = html[lt + 2];
            if (!std::isspace(static_cast<unsigned char>(after)) && after != '>' && after != '/') {
                i = lt + 1;
                continue;
            }
        }
        auto gt = html.find('>', lt);
        if (gt == std::string_view::npos) break;
        std::string_view tag = html.substr(lt, gt - lt + 1);

        // locate href attribute inside the tag
        std::string tag_lower = ascii_lower(tag);
        auto href_pos = tag_lower.find("href");
        std::string value;
        bool found = false;
        while (href_pos != std::string::npos && !found) {
            std::size_t k = href_pos + 4;
            while (k < tag.size() && std::isspace(static_cast<unsigned char>(tag[k]))) ++k;
            if (k < tag.size() && tag[k] == '=') {
                ++k;
                while (k < tag.size() && std::isspace(static_cast<unsigned char>(tag[k]))) ++k;
                if (k < tag.size() && (tag[k] == '"' || tag[k] == '\'')) {
                    char quote = tag[k];
                    auto close = tag.find(quote, k + 1);
                    if (close != std::string_view::npos) {
                        value = std::string(tag.substr(k + 1, close - k - 1));
                        found = true;
                    }
                } else {
                    std::size_t end = k;
                    while (end < tag.size() && !std::isspace(static_cast<unsigned char>(tag[end])) &&
                           tag[end] != '>') {
                        ++end;
                    }
                    if (end > k) {
                        value = std::string(tag.substr(k, end - k));
                        found = true;
                    }
                }
            }
            if (!found) href_pos = tag_lower.find("href", href_pos + 4);
        }

        if (found && !value.empty()) {
            value = decode_amp(value);
            try {
                std::string absolute = resolve_reference(base_uri, value);
                ClassifiedUri c = classify_uri(absolute);
                if (auto* t = std::get_if<TrustyUri>(&c)) {
                    links.trusty_links.push_back(*t);
                } else {
                    links.plain_links.push_back(std::get<PlainUri>(c));
                }
            } catch (const Error&) {
                // unresolvable href: best-effort scan keeps going
            }
        }
        i = gt + 1;
    }
    return links;
}

nlohmann::json PublicationMeta::to_json() const {
    return {
        {"published_at", published_at},
        {"parent", parent.uri},
        {"author_id", author_id},
    };
}

PublicationMeta build_chain_entry(const Resource& /*content*/, const ParentLink& parent,
                                  const std::string& author,
                                  std::chrono::system_clock::time_point now) {
    PublicationMeta meta;
    meta.published_at = format_rfc3339(now);
    meta.parent = parent;
    meta.author_id = author;
    return meta;
}

} // namespace trustyweb
