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

"""Reference values for the quote-size gas curve and the contract deployment table.

Written separately from the C++ gas model: exact rational interpolation, floored once.
With --check PATH_TO_ATTSEQ it also compares against `attseq gas-table`.
"""
import subprocess
import sys
from fractions import Fraction
from math import floor

# Quote size (bytes) -> gas, cumulative verification + verifier registration.
CALIBRATION = [
    (512, 8_636_467),
    (1024, 9_136_467),
    (2048, 10_407_443),
    (4096, 12_690_007),
    (6144, 13_820_092),
    (8192, 14_550_541),
    (10240, 15_199_581),
]

DEPLOYMENT = {
    "PCCS Router": 2_352_196,
    "DCAP Attestation": 3_296_655,
    "V3 Quote Verifier": 3_696_655,
    "V4 Quote Verifier": 4_650_134,
    "PCS DAO": 2_014_168,
    "PCK DAO": 2_928_849,
    "FMSPC TCB DAO": 2_339_367,
    "Enclave Identity DAO": 1_693_126,
    "DAO Storage": 438_565,
    "Verification": 322_250,
}

VERIFY_4KB = 8_014_059
SET_VERIFIER = 4_544_335


def gas(size):
    for (x0, y0), (x1, y1) in zip(CALIBRATION, CALIBRATION[1:]):
        if x0 <= size <= x1:
            return floor(Fraction(y0) + Fraction(y1 - y0) * Fraction(size - x0, x1 - x0))
    raise ValueError(f"size {size} out of range")


PROBE_SIZES = [512, 513, 700, 1024, 1500, 2048, 3072, 4000, 4096, 5000, 6144, 7000, 8192, 9000, 10239, 10240]


def main():
    table = {s: gas(s) for s in PROBE_SIZES}
    for s, g in table.items():
        print(f"{s},{g}")
    print(f"deploy_total,{sum(DEPLOYMENT.values())}")
    print(f"recurring_total,{VERIFY_4KB + SET_VERIFIER}")
    print(f"split_offset,{gas(4096) - VERIFY_4KB}")

    if len(sys.argv) == 3 and sys.argv[1] == "--check":
        sizes = ",".join(str(s) for s in PROBE_SIZES)
        out = subprocess.run([sys.argv[2], "gas-table", "--sizes", sizes], capture_output=True, text=True, check=True)
        rows = [line.split(",") for line in out.stdout.strip().splitlines()[1:]]
        got = {int(s): int(g) for s, g in rows}
        bad = {s: (got.get(s), g) for s, g in table.items() if got.get(s) != g}
        if bad:
            print(f"MISMATCH (size: (attseq, oracle)): {bad}")
            return 1
        print("attseq gas-table agrees with the oracle")
    return 0


if __name__ == "__main__":
    sys.exit(main())
