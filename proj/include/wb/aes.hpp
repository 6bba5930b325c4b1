#pragma once

#include <array>
#include <cstdint>

namespace wb::aes {

// 4x4 byte matrix in column-major order: element (row r, column c) is
// state[4*c + r], matching the flat byte order of the block.
using State = std::array<std::uint8_t, 16>;

// Byte substitution: multiplicative inverse in GF(2^8) mod x^8+x^4+x^3+x+1
// followed by the affine map. Tables are computed from that algebra at
// compile time, not transcribed.
std::uint8_t sbox(std::uint8_t b);
std::uint8_t inv_sbox(std::uint8_t b);

void sub_bytes(State& s);
void shift_rows(State& s);
void mix_columns(State& s);
void inv_mix_columns(State& s);
void add_round_key(State& s, const State& round_key);

// One full round: SubBytes, ShiftRows, MixColumns, AddRoundKey.
State aes_round(State s, const State& round_key);

// 6 + key_bits/32 for 128/192/256-bit keys; ConfigError otherwise.
int num_rounds(int key_bits);

// Standalone S-Box engine: sixteen parallel substitutions of
// plaintext XOR key - the attacked first-round intermediate.
State sbox_engine(const State& plaintext, const State& key);

} // namespace wb::aes
