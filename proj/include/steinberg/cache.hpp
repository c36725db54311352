#pragma once

// On-disk cache for homology results, keyed by building manifest lines plus
// a format version. Artifacts are written atomically (temp file + rename)
// so concurrent instances can share a cache directory.

#include <unistd.h>

#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

namespace steinberg {

inline constexpr int kCacheFormatVersion = 1;

class ArtifactCache {
public:
    ArtifactCache() = default;

    explicit ArtifactCache(std::string dir) : dir_(std::move(dir)), enabled_(!dir_.empty()) {
        if (enabled_) std::filesystem::create_directories(dir_);
    }

    bool enabled() const { return enabled_; }

    std::optional<nlohmann::json> get(const std::string& key) const {
        if (!enabled_) return std::nullopt;
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception&) {
            return std::nullopt;
        }
        if (!doc.is_object() || doc.value("format_version", -1) != kCacheFormatVersion ||
            doc.value("key", "") != key)
            return std::nullopt;
        return doc["value"];
    }

    void put(const std::string& key, const nlohmann::json& value) const {
        if (!enabled_) return;
        nlohmann::json doc{{"format_version", kCacheFormatVersion}, {"key", key}, {"value", value}};
        static std::atomic<uint64_t> counter{0};
        std::filesystem::path target = path_for(key);
        std::filesystem::path tmp =
            target.string() + ".tmp." + std::to_string(::getpid()) + "." +
            std::to_string(counter.fetch_add(1));
        {
            std::ofstream out(tmp);
            out << doc.dump(2) << '\n';
        }
        std::filesystem::rename(tmp, target);
    }

private:
    std::filesystem::path path_for(const std::string& key) const {
        // sanitized key plus a hash suffix to keep names unique and safe
        std::string name;
        for (char c : key)
            name += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.')
                        ? c : '_';
        if (name.size() > 120) name.resize(120);
        uint64_t h = 1469598103934665603ull;
        for (char c : key) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        std::ostringstream os;
        os << name << '.' << std::hex << h << ".json";
        return dir_ / os.str();
    }

    std::filesystem::path dir_;
    bool enabled_ = false;
};

}  // namespace steinberg
