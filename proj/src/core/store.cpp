// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/store.hpp"

#include <fstream>
#include <mutex>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace fs = std::filesystem;

namespace trustyweb {

namespace {

std::vector<std::uint8_t> read_all(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + p.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(Errc::io, "read failure on " + p.string());
    return data;
}

void write_atomically(const fs::path& p, const void* data, std::size_t len) {
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::storage_failure, "cannot write " + tmp.string());
        out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
        if (!out) throw Error(Errc::storage_failure, "write failure on " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec) throw Error(Errc::storage_failure, "rename failed: " + p.string());
}

ParentLink parent_from_record_json(const nlohmann::json& j) {
    std::string parent = j.at("meta").at("parent").get<std::string>();
    bool external = j.value("parent_external", false);
    bool trusty = TrustyUri::parse(parent).has_value();
    if (!trusty) return ParentLink::root(parent);
    return external ? ParentLink::external(parent) : ParentLink::internal(parent);
}

} // namespace

nlohmann::json PublicationRecord::to_json() const {
    return {
        {"digest", digest.to_hex()},
        {"uri", uri.to_string()},
        {"meta", meta.to_json()},
        {"media_type", media_type},
        {"size", size},
        {"parent_external", parent_external},
    };
}

PublicationRecord PublicationRecord::from_json(const nlohmann::json& j) {
    PublicationRecord r;
    auto digest = Digest::from_hex(j.at("digest").get<std::string>());
    auto uri = TrustyUri::parse(j.at("uri").get<std::string>());
    if (!digest || !uri) {
        throw Error(Errc::parse, "malformed publication record");
    }
    r.digest = *digest;
    r.uri = *uri;
    r.meta.published_at = j.at("meta").at("published_at").get<std::string>();
    r.meta.author_id = j.at("meta").at("author_id").get<std::string>();
    r.meta.parent = parent_from_record_json(j);
    r.media_type = j.at("media_type").get<std::string>();
    r.size = j.at("size").get<std::uint64_t>();
    r.parent_external = j.value("parent_external", false);
    return r;
}

Store::Store(fs::path root, std::string base_uri)
    : root_(std::move(root)), base_uri_(std::move(base_uri)) {
    fs::create_directories(root_ / "objects");
}

void Store::set_base_uri(std::string base_uri) {
    std::unique_lock lock(mutex_);
    base_uri_ = std::move(base_uri);
}

fs::path Store::object_path(const Digest& d) const {
    auto hex = d.to_hex();
    return root_ / "objects" / hex.substr(0, 2) / (hex + ".bin");
}

fs::path Store::record_path(const Digest& d) const {
    auto hex = d.to_hex();
    return root_ / "objects" / hex.substr(0, 2) / (hex + ".json");
}

PublicationRecord Store::load_record(const Digest& d) const {
    auto p = record_path(d);
    if (!fs::exists(p)) throw Error(Errc::not_found, "no record for " + d.to_hex());
    auto raw = read_all(p);
    return PublicationRecord::from_json(
        nlohmann::json::parse(raw.begin(), raw.end()));
}

Store::PublishResult Store::publish(const Resource& resource, const std::string& author,
                                    const ParentLink& parent,
                                    const std::optional<std::string>& client_published_at) {
    std::unique_lock lock(mutex_);

    auto now = std::chrono::system_clock::now();
    if (client_published_at) {
        auto claimed = parse_rfc3339(*client_published_at);
        auto delta = claimed > now ? claimed - now : now - claimed;
        if (delta > kClockSkewTolerance) {
            throw Error(Errc::clock_skew,
                        "client timestamp outside tolerance: " + *client_published_at);
        }
    }

    if (parent.kind == ParentLink::Kind::Internal) {
        auto parent_uri = TrustyUri::parse(parent.uri);
        if (!parent_uri) {
            throw Error(Errc::parse, "parent is not a trusty URI: " + parent.uri);
        }
        if (!fs::exists(record_path(parent_uri->digest))) {
            throw Error(Errc::parent_not_found, "unknown parent: " + parent.uri);
        }
    }

    Digest digest = compute_digest(resource.content);
    auto obj = object_path(digest);

    if (fs::exists(obj)) {
        auto stored = read_all(obj);
        if (stored != resource.content) {
            // same digest, different bytes: must never overwrite silently
            throw Error(Errc::provable_collision,
                        "digest collision detected for " + digest.to_hex());
        }
        return {load_record(digest), false};
    }

    PublicationRecord record;
    record.digest = digest;
    record.uri = mint(base_uri_, resource.content);
    record.meta = build_chain_entry(resource, parent, author, now);
    record.media_type = resource.media_type;
    record.size = resource.size();
    record.parent_external = parent.kind == ParentLink::Kind::External;

    fs::create_directories(obj.parent_path());
    write_atomically(obj, resource.content.data(), resource.content.size());
    auto record_json = record.to_json().dump(2);
    write_atomically(record_path(digest), record_json.data(), record_json.size());
    append_author_index(author, digest.to_hex());

    return {record, true};
}

void Store::append_author_index(const std::string& author, const std::string& digest_hex) {
    auto p = root_ / "authors.json";
    nlohmann::json idx = nlohmann::json::object();
    if (fs::exists(p)) {
        auto raw = read_all(p);
        idx = nlohmann::json::parse(raw.begin(), raw.end());
    }
    idx[author].push_back(digest_hex);
    auto text = idx.dump(2);
    write_atomically(p, text.data(), text.size());
}

Store::Fetched Store::fetch(const Digest& digest) const {
    std::shared_lock lock(mutex_);
    auto obj = object_path(digest);
    if (!fs::exists(obj)) throw Error(Errc::not_found, "no object " + digest.to_hex());
    auto bytes = read_all(obj);
    // tamper self-check: never serve bytes that no longer match their key
    if (compute_digest(bytes) != digest) {
        throw Error(Errc::integrity_failure,
                    "stored bytes no longer match digest " + digest.to_hex());
    }
    auto record = load_record(digest);
    Resource r;
    r.content = std::move(bytes);
    r.media_type = record.media_type;
    return {std::move(r), std::move(record)};
}

std::vector<PublicationRecord> Store::chain_of(const Digest& digest) const {
    std::shared_lock lock(mutex_);
    std::vector<PublicationRecord> chain;
    Digest cursor = digest;
    while (true) {
        if (!fs::exists(record_path(cursor))) {
            if (chain.empty()) throw Error(Errc::not_found, "no record " + cursor.to_hex());
            break;
        }
        auto record = load_record(cursor);
        chain.push_back(record);
        const auto& parent = chain.back().meta.parent;
        if (parent.kind != ParentLink::Kind::Internal) break;
        cursor = TrustyUri::parse(parent.uri)->digest;
    }
    return chain;
}

bool Store::contains(const Digest& digest) const {
    std::shared_lock lock(mutex_);
    return fs::exists(record_path(digest));
}

std::size_t Store::record_count() const {
    std::shared_lock lock(mutex_);
    std::size_t n = 0;
    auto objects = root_ / "objects";
    if (!fs::exists(objects)) return 0;
    for (const auto& entry : fs::recursive_directory_iterator(objects)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") ++n;
    }
    return n;
}

std::vector<std::string> Store::author_digests(const std::string& author) const {
    std::shared_lock lock(mutex_);
    auto p = root_ / "authors.json";
    if (!fs::exists(p)) return {};
    auto raw = read_all(p);
    auto idx = nlohmann::json::parse(raw.begin(), raw.end());
    if (!idx.contains(author)) return {};
    return idx[author].get<std::vector<std::string>>();
}

} // namespace trustyweb
