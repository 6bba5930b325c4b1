#include "wb/kvfile.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wb/errors.hpp"

namespace wb {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, sep)) {
        token = trim(token);
        if (!token.empty()) out.push_back(token);
    }
    return out;
}

bool KvSection::has(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return true;
    return false;
}

const std::string& KvSection::get(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    throw DataError("missing key '" + key + "' in section [" + name + "]");
}

std::string KvSection::get_or(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return fallback;
}

const KvSection* KvFile::find(const std::string& name) const {
    for (const auto& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

KvFile parse_kv_text(const std::string& text, const std::string& label) {
    KvFile file;
    file.path = label;
    file.sections.push_back(KvSection{"", {}});
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw DataError(label + ":" + std::to_string(line_no) + ": malformed section header");
            file.sections.push_back(KvSection{trim(line.substr(1, line.size() - 2)), {}});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError(label + ":" + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw DataError(label + ":" + std::to_string(line_no) + ": empty key");
        if (file.sections.back().has(key))
            throw DataError(label + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                            "' in section [" + file.sections.back().name + "]");
        file.sections.back().entries.emplace_back(key, value);
    }
    return file;
}

KvFile parse_kv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kv_text(buf.str(), path);
}

double parse_double(const std::string& token, const std::string& context) {
    const std::string t = trim(token);
    if (!t.empty()) {
        const char* begin = t.c_str();
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin + t.size()) return v;
    }
    throw DataError(context + ": not a number: '" + token + "'");
}

long long parse_int(const std::string& token, const std::string& context) {
    const std::string t = trim(token);
    if (!t.empty()) {
        const char* begin = t.c_str();
        char* end = nullptr;
        long long v = std::strtoll(begin, &end, 10);
        if (end == begin + t.size()) return v;
    }
    throw DataError(context + ": not an integer: '" + token + "'");
}

std::uint64_t parse_u64(const std::string& token, const std::string& context) {
    const std::string t = trim(token);
    if (!t.empty() && t.front() != '-') {
        const char* begin = t.c_str();
        char* end = nullptr;
        unsigned long long v = std::strtoull(begin, &end, 10);
        if (end == begin + t.size()) return v;
    }
    throw DataError(context + ": not an unsigned integer: '" + token + "'");
}

} // namespace wb
