#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

namespace hkw {

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t basis = 0xcbf29ce484222325ULL)
{
    std::uint64_t h = basis;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// 128-bit key from two FNV-1a passes over the canonical (key-sorted, compact) query
inline std::string cache_key(const nlohmann::json& query)
{
    nlohmann::json q = query;
    if (q.is_object()) q.erase("format");
    const std::string c = q.dump();
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(fnv1a64(c)),
                  static_cast<unsigned long long>(fnv1a64(c, 0x84222325cbf29ce4ULL)));
    return buf;
}

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    // Directory from the HKW_CACHE_DIR environment variable, if set.
    static std::optional<ResultCache> from_env()
    {
        const char* d = std::getenv("HKW_CACHE_DIR");
        if (!d || !*d) return std::nullopt;
        return ResultCache(d);
    }

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(const nlohmann::json& query) const { return dir_ / (cache_key(query) + ".json"); }

    // Absent entries give nullopt; corrupt ones too, with `warning` set.
    std::optional<nlohmann::json> lookup(const nlohmann::json& query, std::string* warning = nullptr) const
    {
        auto path = path_for(query);
        std::ifstream in(path);
        if (!in) return std::nullopt;
        try {
            nlohmann::json e = nlohmann::json::parse(in);
            nlohmann::json q = query;
            q.erase("format");
            if (e.at("query") != q) throw std::runtime_error("query mismatch (hash collision)");
            return e.at("result");
        } catch (const std::exception& ex) {
            if (warning) *warning = "corrupt cache entry " + path.string() + ": " + ex.what();
            return std::nullopt;
        }
    }

    // Write to a temporary file in the same directory, then rename over the target.
    void store(const nlohmann::json& query, const nlohmann::json& result) const
    {
        std::filesystem::create_directories(dir_);
        nlohmann::json q = query;
        q.erase("format");
        nlohmann::json e{{"query", q}, {"result", result}};
        auto path = path_for(query);
        std::ostringstream tag;
        tag << ".tmp." << std::hex << fnv1a64(path.string() + std::to_string(reinterpret_cast<std::uintptr_t>(&e)));
        auto tmp = path;
        tmp += tag.str();
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
            out << e.dump(1) << "\n";
            if (!out) throw std::runtime_error("short write to cache file " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

private:
    std::filesystem::path dir_;
};

} // namespace hkw
