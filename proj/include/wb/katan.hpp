#pragma once

#include <array>
#include <cstdint>

namespace wb::katan {

// KATAN32: 32-bit block split into a 13-bit register L1 and a 19-bit
// register L2, 80-bit key, 254 rounds of AND/XOR feedback. Bit 0 of the
// plaintext loads L2[0]; bit 19 loads L1[0]. Each round shifts both
// registers by one, inserting the cross-coupled feedback bits at index 0.

inline constexpr int kRounds = 254;

struct State {
    std::uint16_t l1 = 0; // low 13 bits used
    std::uint32_t l2 = 0; // low 19 bits used
    int round_index = 0;  // rounds applied so far, 0..254
};

struct Key {
    std::array<std::uint8_t, 10> bytes{}; // big-endian: bytes[0] holds bits 79..72
    int bit(int i) const;                 // key bit i, 0 = least significant
};

// Irregular-update bit for a round, generated by the 8-bit LFSR round
// counter (all-ones seed).
int ir_bit(int round);

// Two subkey bits per round: bits [2*round] and [2*round + 1] of the
// LFSR-expanded key stream k[i] = k[i-80] ^ k[i-61] ^ k[i-50] ^ k[i-13].
std::array<std::uint8_t, 2 * kRounds> expand_key(const Key& key);

State load_state(std::uint32_t plaintext);
std::uint32_t unload_state(const State& s);

// One round with explicit subkey bits; exposed for per-round leakage
// tapping. Throws ConfigError once round_index reaches 254.
State katan_round(const State& s, int k_a, int k_b);

std::uint32_t encrypt(std::uint32_t plaintext, const Key& key);

} // namespace wb::katan
