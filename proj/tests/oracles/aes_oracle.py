#!/usr/bin/env python3
"""Independent AES oracle: builds the S-box algebraically (GF(2^8)
inverse + affine map), checks the standard anchors, and freezes a
single-round vector for the fixed test state/key.

Writes tests/data/sbox_table.csv and tests/data/aes_round_vectors.csv.
"""

import csv
import os


def gmul(a, b):
    p = 0
    for _ in range(8):
        if b & 1:
            p ^= a
        hi = a & 0x80
        a = (a << 1) & 0xFF
        if hi:
            a ^= 0x1B
        b >>= 1
    return p


def ginv(a):
    if a == 0:
        return 0
    for x in range(1, 256):
        if gmul(a, x) == 1:
            return x
    raise AssertionError


def affine(b):
    r = 0
    for i in range(8):
        bit = ((b >> i) ^ (b >> ((i + 4) % 8)) ^ (b >> ((i + 5) % 8))
               ^ (b >> ((i + 6) % 8)) ^ (b >> ((i + 7) % 8)) ^ (0x63 >> i)) & 1
        r |= bit << i
    return r


SBOX = [affine(ginv(x)) for x in range(256)]


def sub_bytes(s):
    return [SBOX[b] for b in s]


def shift_rows(s):
    # column-major state: s[c*4+r]
    out = [0] * 16
    for r in range(4):
        for c in range(4):
            out[c * 4 + r] = s[((c + r) % 4) * 4 + r]
    return out


def mix_columns(s):
    out = [0] * 16
    for c in range(4):
        col = s[c * 4:c * 4 + 4]
        out[c * 4 + 0] = gmul(col[0], 2) ^ gmul(col[1], 3) ^ col[2] ^ col[3]
        out[c * 4 + 1] = col[0] ^ gmul(col[1], 2) ^ gmul(col[2], 3) ^ col[3]
        out[c * 4 + 2] = col[0] ^ col[1] ^ gmul(col[2], 2) ^ gmul(col[3], 3)
        out[c * 4 + 3] = gmul(col[0], 3) ^ col[1] ^ col[2] ^ gmul(col[3], 2)
    return out


def aes_round(s, rk):
    s = sub_bytes(s)
    s = shift_rows(s)
    s = mix_columns(s)
    return [a ^ b for a, b in zip(s, rk)]


def main():
    assert SBOX[0x00] == 0x63
    assert SBOX[0x01] == 0x7C
    assert SBOX[0x53] == 0xED
    assert sorted(SBOX) == list(range(256))
    mc = mix_columns([0xDB, 0x13, 0x53, 0x45] + [0] * 12)[:4]
    assert mc == [0x8E, 0x4D, 0xA1, 0xBC], mc
    print("sbox + mixcolumns anchors OK")

    here = os.path.dirname(__file__)
    with open(os.path.normpath(os.path.join(here, "..", "data", "sbox_table.csv")), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["input", "output"])
        for x in range(256):
            w.writerow(["%02x" % x, "%02x" % SBOX[x]])

    # Fixed single-round vector (state/key chosen arbitrarily, frozen).
    state = [0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77,
             0x88, 0x99, 0xAA, 0xBB, 0xCC, 0xDD, 0xEE, 0xFF]
    rkey = [0x0F, 0x15, 0x71, 0xC9, 0x47, 0xD9, 0xE8, 0x59,
            0x0C, 0xB7, 0xAD, 0xD6, 0xAF, 0x7F, 0x67, 0x98]
    out = aes_round(state, rkey)
    print("round out:", " ".join("%02x" % b for b in out))
    with open(os.path.normpath(os.path.join(here, "..", "data", "aes_round_vectors.csv")), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["input", "key", "output"])
        w.writerow(["".join("%02x" % b for b in state),
                    "".join("%02x" % b for b in rkey),
                    "".join("%02x" % b for b in out)])
    print("vectors written")


if __name__ == "__main__":
    main()
