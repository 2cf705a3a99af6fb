#ifndef RSMOMENT_CACHE_HPP
#define RSMOMENT_CACHE_HPP

// Deterministic on-disk cache. Directory from RSMOMENT_CACHE, default
// .rsmoment-cache/; writes go through a temp file followed by a rename.

#include <optional>
#include <string>
#include <vector>

namespace rsm {

std::string cache_dir();
std::optional<std::string> cache_read(const std::string& name);
void cache_write(const std::string& name, const std::string& content);

struct CacheEntry {
    std::string name;
    unsigned long long bytes;
};
std::vector<CacheEntry> cache_list();
void cache_clear();

} // namespace rsm

#endif
