#include "rsmoment/cache.hpp"
#include "rsmoment/value.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace rsm {

std::string cache_dir() {
    const char* env = std::getenv("RSMOMENT_CACHE");
    std::string dir = (env && *env) ? env : ".rsmoment-cache";
    std::error_code ec;
    fs::create_directories(dir, ec);
    return dir;
}

std::optional<std::string> cache_read(const std::string& name) {
    fs::path p = fs::path(cache_dir()) / name;
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void cache_write(const std::string& name, const std::string& content) {
    fs::path dir = cache_dir();
    fs::path tmp = dir / (name + ".tmp");
    fs::path final_path = dir / name;
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::io_error, "cannot write cache file " + tmp.string());
        out << content;
    }
    std::error_code ec;
    fs::rename(tmp, final_path, ec);
    if (ec) throw Error(ErrorKind::io_error, "cache rename failed: " + ec.message());
}

std::vector<CacheEntry> cache_list() {
    std::vector<CacheEntry> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(cache_dir(), ec)) {
        if (!e.is_regular_file()) continue;
        out.push_back({e.path().filename().string(), static_cast<unsigned long long>(e.file_size())});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

void cache_clear() {
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(cache_dir(), ec)) {
        if (e.is_regular_file()) fs::remove(e.path(), ec);
    }
}

} // namespace rsm
