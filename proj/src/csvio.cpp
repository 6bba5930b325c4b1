#include "wb/csvio.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wb/errors.hpp"
#include "wb/kvfile.hpp"
#include "wb/version.hpp"

#ifdef _WIN32
#include <process.h>
#else
#include <unistd.h>
#endif

namespace wb {

void atomic_write(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    static std::atomic<unsigned> counter{0};
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw DataError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw DataError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(trim(cell));
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string csv_stamp(std::uint64_t seed, const std::string& config_hash) {
    std::ostringstream out;
    out << "# workbench " << kVersion << " seed=" << seed << " config=" << config_hash;
    return out.str();
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_sci9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

std::string to_hex(const std::uint8_t* data, std::size_t n) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xF]);
    }
    return out;
}

static int hex_nibble(char c, const std::string& context) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DataError(context + ": invalid hex digit '" + std::string(1, c) + "'");
}

std::vector<std::uint8_t> from_hex(const std::string& hex, const std::string& context) {
    if (hex.size() % 2 != 0) throw DataError(context + ": odd-length hex string");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::uint8_t((hex_nibble(hex[2 * i], context) << 4) |
                              hex_nibble(hex[2 * i + 1], context));
    return out;
}

} // namespace wb
