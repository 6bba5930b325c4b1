#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wb {

// Line-oriented "key = value" file with [section] headers and '#' comments.
// Used for the technology library, module inventories, and run configs.

struct KvSection {
    std::string name; // "" for keys before the first header
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const;
    // Throws DataError if the key is absent.
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
};

struct KvFile {
    std::string path;
    std::vector<KvSection> sections;

    const KvSection* find(const std::string& name) const;
};

KvFile parse_kv_file(const std::string& path);
KvFile parse_kv_text(const std::string& text, const std::string& label);

// Strict numeric parsing: the whole token must convert. Throws DataError
// with the given context on failure.
double parse_double(const std::string& token, const std::string& context);
long long parse_int(const std::string& token, const std::string& context);
std::uint64_t parse_u64(const std::string& token, const std::string& context);

// Split "a,b,c" into trimmed tokens, dropping empties.
std::vector<std::string> split_list(const std::string& text, char sep = ',');
std::string trim(const std::string& s);

} // namespace wb
