#!/usr/bin/env python3
"""Regenerates the frozen SHA3-512 known-answer files in this directory.

Digests are produced by the system OpenSSL (`openssl dgst -sha3-512`), an
implementation independent of this project. The checked-in files are frozen;
rerun this script only to extend the vector set.

Message conventions:
  short file : explicit hex messages, every byte length 0..255
  long file  : generated content, "Gen = affine <len>" means
               byte[j] = (17*j + 11*len + 1) mod 256, and
               "Gen = repeat-a <len>" means <len> copies of 0x61.
"""

import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent


def openssl_sha3_512(data: bytes) -> str:
    out = subprocess.run(
        ["openssl", "dgst", "-sha3-512", "-r"],
        input=data, capture_output=True, check=True,
    )
    return out.stdout.split()[0].decode()


def affine(length: int) -> bytes:
    return bytes((17 * j + 11 * length + 1) & 0xFF for j in range(length))


def main() -> int:
    version = subprocess.run(["openssl", "version"], capture_output=True,
                             check=True).stdout.decode().strip()

    short_path = HERE / "sha3_512_short_kat.txt"
    with short_path.open("w") as f:
        f.write(f"# SHA3-512 short-message known answers, digests from {version}\n")
        for n in range(256):
            msg = affine(n)
            f.write(f"Len = {8 * n}\n")
            f.write(f"Msg = {msg.hex()}\n")
            f.write(f"MD = {openssl_sha3_512(msg)}\n")
    print(f"wrote {short_path}")

    long_path = HERE / "sha3_512_long_kat.txt"
    with long_path.open("w") as f:
        f.write(f"# SHA3-512 long-message known answers, digests from {version}\n")
        for n in (300, 404, 576, 1000, 4096, 40400, 65536, 1048576):
            f.write(f"Gen = affine {n}\n")
            f.write(f"MD = {openssl_sha3_512(affine(n))}\n")
        f.write("Gen = repeat-a 1000000\n")
        f.write(f"MD = {openssl_sha3_512(b'a' * 1000000)}\n")
    print(f"wrote {long_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
