#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace qbps {

// Disk cache for expensive counting results, keyed by strings of the form
// "<quiver-hash>|<dim>|<class>|<method>[|extra]".  A hit must be bit-identical
// to recomputation, so values are stored in canonical (sorted-key) JSON.  A
// corrupt or unreadable file is treated as empty and rewritten on save.
class ResultCache {
public:
    explicit ResultCache(std::string path);

    std::optional<nlohmann::json> get(const std::string& key) const;
    void put(const std::string& key, nlohmann::json value);

    const std::string& path() const { return path_; }
    bool dirty() const { return dirty_; }
    void save();  // write-through via temp file + rename

private:
    std::string path_;
    nlohmann::json entries_;
    bool dirty_ = false;
};

std::string cache_key(std::uint64_t quiver_hash, const std::string& dim_text,
                      const std::string& cls_text, const std::string& method,
                      const std::string& extra = "");

}  // namespace qbps
