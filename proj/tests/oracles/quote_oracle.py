#!/usr/bin/env python3
# Copyright 2026 The Attseq Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reader for the quote wire format.

Parses a quote from its documented layout, recomputes report_data and the signing digest
with hashlib, and checks the Ed25519 signature against the PCK subject key from a
collateral JSON file. Prints the derived values; with --check it also compares them to the
golden report_data file and exits non-zero on any disagreement.

usage: quote_oracle.py QUOTE.bin COLLATERAL.json [--check REPORT_DATA.hex]
"""
import hashlib
import json
import struct
import sys

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric.ed25519 import Ed25519PublicKey


class Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.data):
            raise ValueError("truncated")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def u(self, fmt):
        size = struct.calcsize(fmt)
        return struct.unpack(fmt, self.take(size))[0]


def parse(data):
    r = Reader(data)
    q = {}
    q["version"] = r.u("<H")
    q["key_type"] = r.u("<H")
    q["qe_vendor_id"] = r.take(16)
    header_end = r.pos
    q["mrenclave"] = r.take(32)
    q["mrsigner"] = r.take(32)
    q["isv_svn"] = r.u("<H")
    q["tcb_status"] = r.u("<B")
    q["report_data"] = r.take(32)
    meta_start = r.pos
    q["block_hash"] = r.take(32)
    q["block_height"] = r.u("<Q")
    q["state_root"] = r.take(32)
    q["l1_origin"] = r.take(32)
    q["timestamp"] = r.u("<Q")
    q["nonce"] = r.u("<Q")
    key_len = r.u("<I")
    q["prover_pubkey"] = r.take(key_len)
    signed_end = r.pos
    q["pck_serial"] = r.u("<Q")
    q["fmspc"] = r.take(6)
    sig_len = r.u("<I")
    q["signature"] = r.take(sig_len)
    pad_len = r.u("<I")
    padding = r.take(pad_len)
    if any(padding) or r.pos != len(data):
        raise ValueError("bad padding")
    q["signed_bytes"] = data[:signed_end]
    q["header_len"] = header_end
    q["metadata_offset"] = meta_start
    return q


def lp(b):
    return struct.pack("<I", len(b)) + b


def report_data(q):
    u64 = lambda v: lp(struct.pack("<Q", v))
    blob = (lp(q["block_hash"]) + u64(q["block_height"]) + lp(q["state_root"]) + lp(q["l1_origin"]) +
            u64(q["timestamp"]) + u64(q["nonce"]) + lp(q["prover_pubkey"]))
    return hashlib.sha256(blob).digest()


def main(argv):
    if len(argv) < 3:
        print(__doc__)
        return 2
    data = open(argv[1], "rb").read()
    collateral = json.load(open(argv[2]))
    q = parse(data)
    rd = report_data(q)
    digest = hashlib.sha256(q["signed_bytes"]).digest()
    key = bytes.fromhex(collateral["pck_cert"]["subject_pubkey"])
    try:
        Ed25519PublicKey.from_public_bytes(key).verify(q["signature"], digest)
        sig_ok = True
    except InvalidSignature:
        sig_ok = False

    print(f"size {len(data)}")
    print(f"version {q['version']}")
    print(f"height {q['block_height']}")
    print(f"nonce {q['nonce']}")
    print(f"timestamp {q['timestamp']}")
    print(f"embedded_report_data {q['report_data'].hex()}")
    print(f"computed_report_data {rd.hex()}")
    print(f"signing_digest {digest.hex()}")
    print(f"sequencer 0x{hashlib.sha256(q['prover_pubkey']).digest()[:20].hex()}")
    print(f"signature_valid {sig_ok}")

    if len(argv) == 5 and argv[3] == "--check":
        golden = open(argv[4]).read().strip()
        failures = []
        if rd != q["report_data"]:
            failures.append("embedded report_data differs from recomputation")
        if rd.hex() != golden:
            failures.append("recomputed report_data differs from golden file")
        if not sig_ok:
            failures.append("signature does not verify under the PCK subject key")
        for f in failures:
            print("FAIL", f)
        return 1 if failures else 0
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
