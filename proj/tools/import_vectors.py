#!/usr/bin/env python3
# Copyright 2026 The pqe2 Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Imports published conformance vectors into data/kat/.

Sources:
  --crypto-vectors  unpacked `cryptography_vectors` package (PyPI). Provides
                    the pq-crystals ML-KEM KAT files, NIST CAVS GCM files,
                    RFC 4231 and RFC 7748 vectors.
  --acvp            directory holding the NIST ACVP-Server
                    ML-KEM-keyGen-FIPS203 / ML-KEM-encapDecap-FIPS203 folders
                    (shipped in the kyber-py sdist under assets/).

All output uses the same line-oriented `key = hex` record layout as the
upstream .rsp files so one parser handles everything.
"""

import argparse
import json
import pathlib
import re

MLKEM_RECORDS_PER_SET = 20


def import_mlkem_rsp(src: pathlib.Path, out: pathlib.Path) -> None:
    for level in (512, 768, 1024):
        text = (src / "asymmetric" / "MLKEM" / f"kat_MLKEM_{level}.rsp").read_text()
        records = [r.strip() for r in re.split(r"\n(?=count = )", text) if r.strip()]
        body = "\n\n".join(records[:MLKEM_RECORDS_PER_SET])
        header = (
            f"# ML-KEM-{level} known-answer vectors (pq-crystals FIPS 203 reference KAT),\n"
            f"# first {MLKEM_RECORDS_PER_SET} records of kat_MLKEM_{level}.rsp.\n\n"
        )
        (out / f"mlkem{level}.rsp").write_text(header + body + "\n")


def import_acvp(src: pathlib.Path, out: pathlib.Path) -> None:
    keygen = json.loads((src / "ML-KEM-keyGen-FIPS203" / "internalProjection.json").read_text())
    encdec = json.loads((src / "ML-KEM-encapDecap-FIPS203" / "internalProjection.json").read_text())
    per_set = {}
    for group in keygen["testGroups"]:
        lines = per_set.setdefault(group["parameterSet"], [])
        for t in group["tests"]:
            lines.append(
                f"count = {t['tcId']}\nd = {t['d'].lower()}\nz = {t['z'].lower()}\n"
                f"pk = {t['ek'].lower()}\nsk = {t['dk'].lower()}"
            )
    for group in encdec["testGroups"]:
        lines = per_set.setdefault(group["parameterSet"], [])
        for t in group["tests"]:
            if group["function"] == "encapsulation":
                lines.append(
                    f"count = {t['tcId']}\npk = {t['ek'].lower()}\nsk = {t['dk'].lower()}\n"
                    f"msg = {t['m'].lower()}\nct = {t['c'].lower()}\nss = {t['k'].lower()}"
                )
            else:
                lines.append(
                    f"count = {t['tcId']}\nsk = {group['dk'].lower()}\n"
                    f"ct = {t['c'].lower()}\nss = {t['k'].lower()}"
                )
    for name, records in per_set.items():
        level = name.split("-")[-1]
        header = f"# {name} NIST ACVP-Server vectors (keyGen + encapDecap, FIPS 203).\n\n"
        (out / f"mlkem{level}_acvp.rsp").write_text(header + "\n\n".join(records) + "\n")


def import_gcm(src: pathlib.Path, out: pathlib.Path) -> None:
    for name in ("gcmEncryptExtIV256.rsp", "gcmDecrypt256.rsp"):
        text = (src / "ciphers" / "AES" / "GCM" / name).read_text()
        kept = []
        for block in re.split(r"\n(?=\[Keylen)", text):
            if "[IVlen = 96]" in block and "[Taglen = 128]" in block:
                kept.append(block.strip())
        header = f"# AES-256-GCM vectors from NIST CAVS {name} (96-bit IV, 128-bit tag groups).\n\n"
        (out / name.replace("256.rsp", "256_iv96.rsp")).write_text(header + "\n\n".join(kept) + "\n")


def import_misc(src: pathlib.Path, out: pathlib.Path) -> None:
    (out / "hmac_sha256_rfc4231.txt").write_text((src / "HMAC" / "rfc-4231-sha256.txt").read_text())
    (out / "x25519_rfc7748.txt").write_text((src / "asymmetric" / "X25519" / "rfc7748.txt").read_text())


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--crypto-vectors", type=pathlib.Path, required=True)
    parser.add_argument("--acvp", type=pathlib.Path, required=True)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("data/kat"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    import_mlkem_rsp(args.crypto_vectors, args.out)
    import_acvp(args.acvp, args.out)
    import_gcm(args.crypto_vectors, args.out)
    import_misc(args.crypto_vectors, args.out)


if __name__ == "__main__":
    main()
