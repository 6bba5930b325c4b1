#include "wb/katan.hpp"

#include "wb/errors.hpp"

namespace wb::katan {
namespace {

// Irregular-update schedule: bit i+1 of the 8-bit LFSR round counter
// a[n] = a[n-3] ^ a[n-5] ^ a[n-7] ^ a[n-8], seeded all-ones.
struct IrTable {
    std::uint8_t bits[kRounds];
};

constexpr IrTable make_ir() {
    IrTable t{};
    std::uint8_t a[kRounds + 9] = {};
    for (int i = 0; i < 8; ++i) a[i] = 1;
    for (int n = 8; n < kRounds + 9; ++n)
        a[n] = std::uint8_t(a[n - 3] ^ a[n - 5] ^ a[n - 7] ^ a[n - 8]);
    for (int i = 0; i < kRounds; ++i) t.bits[i] = a[i + 1];
    return t;
}

constexpr IrTable kIr = make_ir();

} // namespace

int Key::bit(int i) const {
    // Bit 0 is the least significant bit of the 80-bit value; bytes are
    // stored big-endian (bytes[0] = bits 79..72).
    return (bytes[9 - i / 8] >> (i % 8)) & 1;
}

int ir_bit(int round) {
    if (round < 0 || round >= kRounds) throw ConfigError("ir_bit: round outside 0..253");
    return kIr.bits[round];
}

std::array<std::uint8_t, 2 * kRounds> expand_key(const Key& key) {
    std::array<std::uint8_t, 2 * kRounds> k{};
    for (int i = 0; i < 80; ++i) k[i] = std::uint8_t(key.bit(i));
    for (int i = 80; i < 2 * kRounds; ++i)
        k[i] = std::uint8_t(k[i - 80] ^ k[i - 61] ^ k[i - 50] ^ k[i - 13]);
    return k;
}

State load_state(std::uint32_t plaintext) {
    State s;
    s.l2 = plaintext & 0x7FFFF;                  // bits 0..18
    s.l1 = std::uint16_t((plaintext >> 19) & 0x1FFF); // bits 19..31
    s.round_index = 0;
    return s;
}

std::uint32_t unload_state(const State& s) {
    return (std::uint32_t(s.l1 & 0x1FFF) << 19) | (s.l2 & 0x7FFFF);
}

State katan_round(const State& s, int k_a, int k_b) {
    if (s.round_index >= kRounds) throw ConfigError("katan_round: state exhausted after 254 rounds");
    const int ir = kIr.bits[s.round_index];
    const std::uint16_t l1 = s.l1;
    const std::uint32_t l2 = s.l2;
    const int fa = ((l1 >> 12) ^ (l1 >> 7) ^ ((l1 >> 8) & (l1 >> 5)) ^ ((l1 >> 3) & ir) ^ k_a) & 1;
    const int fb = ((l2 >> 18) ^ (l2 >> 7) ^ ((l2 >> 12) & (l2 >> 10)) ^ ((l2 >> 8) & (l2 >> 3)) ^
                    k_b) & 1;
    State out;
    out.l1 = std::uint16_t(((l1 << 1) | fb) & 0x1FFF);
    out.l2 = ((l2 << 1) | std::uint32_t(fa)) & 0x7FFFF;
    out.round_index = s.round_index + 1;
    return out;
}

std::uint32_t encrypt(std::uint32_t plaintext, const Key& key) {
    const auto k = expand_key(key);
    State s = load_state(plaintext);
    for (int r = 0; r < kRounds; ++r) s = katan_round(s, k[2 * r], k[2 * r + 1]);
    return unload_state(s);
}

} // namespace wb::katan
