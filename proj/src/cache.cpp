#include "quiverbps/cache.hpp"

#include <cstdio>
#include <fstream>

#include "quiverbps/errors.hpp"

namespace qbps {

ResultCache::ResultCache(std::string path) : path_(std::move(path)) {
    entries_ = nlohmann::json::object();
    std::ifstream in(path_);
    if (!in) return;
    nlohmann::json parsed = nlohmann::json::parse(in, nullptr, false);
    if (parsed.is_object())
        entries_ = std::move(parsed);
    else
        dirty_ = true;  // corrupt file: start empty, rewrite on save
}

std::optional<nlohmann::json> ResultCache::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return *it;
}

void ResultCache::put(const std::string& key, nlohmann::json value) {
    auto it = entries_.find(key);
    if (it != entries_.end() && *it == value) return;
    entries_[key] = std::move(value);
    dirty_ = true;
}

void ResultCache::save() {
    if (!dirty_) return;
    std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw resource_error("cannot write cache file " + tmp, 0);
        out << entries_.dump(2) << '\n';
    }
    if (std::rename(tmp.c_str(), path_.c_str()) != 0)
        throw resource_error("cannot rename cache file into place at " + path_, 0);
    dirty_ = false;
}

std::string cache_key(std::uint64_t quiver_hash, const std::string& dim_text,
                      const std::string& cls_text, const std::string& method,
                      const std::string& extra) {
    std::string key =
        std::to_string(quiver_hash) + "|" + dim_text + "|" + cls_text + "|" + method;
    if (!extra.empty()) key += "|" + extra;
    return key;
}

}  // namespace qbps
