#include "wb/aes.hpp"

#include "wb/errors.hpp"

namespace wb::aes {
namespace {

// GF(2^8) multiplication modulo x^8 + x^4 + x^3 + x + 1.
constexpr std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t r = 0;
    for (int i = 0; i < 8; ++i) {
        if (b & 1) r ^= a;
        std::uint8_t hi = a & 0x80;
        a = std::uint8_t(a << 1);
        if (hi) a ^= 0x1B;
        b >>= 1;
    }
    return r;
}

constexpr std::uint8_t affine(std::uint8_t x) {
    // b XOR rot1..rot4(b) XOR 0x63, bitwise.
    std::uint8_t r = 0x63;
    for (int shift = 0; shift < 5; ++shift)
        r ^= std::uint8_t((x << shift) | (x >> (8 - shift)));
    return r;
}

struct Tables {
    std::uint8_t fwd[256];
    std::uint8_t inv[256];
};

constexpr Tables make_tables() {
    Tables t{};
    // Multiplicative inverses by exhaustive search (0 maps to 0).
    std::uint8_t ginv[256] = {};
    for (int a = 1; a < 256; ++a)
        for (int b = 1; b < 256; ++b)
            if (gmul(std::uint8_t(a), std::uint8_t(b)) == 1) {
                ginv[a] = std::uint8_t(b);
                break;
            }
    for (int x = 0; x < 256; ++x) t.fwd[x] = affine(ginv[x]);
    for (int x = 0; x < 256; ++x) t.inv[t.fwd[x]] = std::uint8_t(x);
    return t;
}

constexpr Tables kTables = make_tables();

} // namespace

std::uint8_t sbox(std::uint8_t b) { return kTables.fwd[b]; }
std::uint8_t inv_sbox(std::uint8_t b) { return kTables.inv[b]; }

void sub_bytes(State& s) {
    for (auto& b : s) b = kTables.fwd[b];
}

void shift_rows(State& s) {
    // Row r (elements s[4c + r]) rotates left by r columns.
    State t = s;
    for (int r = 1; r < 4; ++r)
        for (int c = 0; c < 4; ++c) s[4 * c + r] = t[4 * ((c + r) % 4) + r];
}

void mix_columns(State& s) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t a0 = s[4 * c], a1 = s[4 * c + 1], a2 = s[4 * c + 2], a3 = s[4 * c + 3];
        s[4 * c + 0] = std::uint8_t(gmul(a0, 2) ^ gmul(a1, 3) ^ a2 ^ a3);
        s[4 * c + 1] = std::uint8_t(a0 ^ gmul(a1, 2) ^ gmul(a2, 3) ^ a3);
        s[4 * c + 2] = std::uint8_t(a0 ^ a1 ^ gmul(a2, 2) ^ gmul(a3, 3));
        s[4 * c + 3] = std::uint8_t(gmul(a0, 3) ^ a1 ^ a2 ^ gmul(a3, 2));
    }
}

void inv_mix_columns(State& s) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t a0 = s[4 * c], a1 = s[4 * c + 1], a2 = s[4 * c + 2], a3 = s[4 * c + 3];
        s[4 * c + 0] = std::uint8_t(gmul(a0, 14) ^ gmul(a1, 11) ^ gmul(a2, 13) ^ gmul(a3, 9));
        s[4 * c + 1] = std::uint8_t(gmul(a0, 9) ^ gmul(a1, 14) ^ gmul(a2, 11) ^ gmul(a3, 13));
        s[4 * c + 2] = std::uint8_t(gmul(a0, 13) ^ gmul(a1, 9) ^ gmul(a2, 14) ^ gmul(a3, 11));
        s[4 * c + 3] = std::uint8_t(gmul(a0, 11) ^ gmul(a1, 13) ^ gmul(a2, 9) ^ gmul(a3, 14));
    }
}

void add_round_key(State& s, const State& round_key) {
    for (int i = 0; i < 16; ++i) s[i] ^= round_key[i];
}

State aes_round(State s, const State& round_key) {
    sub_bytes(s);
    shift_rows(s);
    mix_columns(s);
    add_round_key(s, round_key);
    return s;
}

int num_rounds(int key_bits) {
    if (key_bits != 128 && key_bits != 192 && key_bits != 256)
        throw ConfigError("num_rounds: key length must be 128, 192, or 256 bits");
    return 6 + key_bits / 32;
}

State sbox_engine(const State& plaintext, const State& key) {
    State out;
    for (int i = 0; i < 16; ++i) out[i] = kTables.fwd[plaintext[i] ^ key[i]];
    return out;
}

} // namespace wb::aes
