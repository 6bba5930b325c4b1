#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wb {

// Write `text` to `path` atomically (temp file + rename) so concurrent
// invocations in one output directory never interleave.
void atomic_write(const std::string& path, const std::string& text);

std::string read_file(const std::string& path);

// Parse a CSV file into rows of string cells. Lines starting with '#'
// and blank lines are skipped. No quoting support: the bundled data and
// every emitted report use plain comma-separated cells.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

// Leading comment line stamped on every emitted CSV:
// "# workbench <version> seed=<seed> config=<hash>".
std::string csv_stamp(std::uint64_t seed, const std::string& config_hash);

// FNV-1a 64-bit hash, hex-encoded; used to fingerprint resolved configs.
std::string fnv1a_hex(const std::string& text);

// Shortest-round-trip style formatting for doubles ("%.17g"): re-runs
// must produce byte-identical files.
std::string fmt_double(double v);

// Scientific notation with 9 significant digits (I-V curve format).
std::string fmt_sci9(double v);

std::string to_hex(const std::uint8_t* data, std::size_t n);
std::vector<std::uint8_t> from_hex(const std::string& hex, const std::string& context);

} // namespace wb
