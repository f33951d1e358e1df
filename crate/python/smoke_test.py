#!/usr/bin/env python3
"""Smoke test for the tgrs extension module.

Builds the cdylib with cargo (extension-module feature), copies it next to
this script as tgrs.so, imports it, and exercises the main entry points.
Run from anywhere: python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def build():
    subprocess.run(
        [
            "cargo",
            "build",
            "--release",
            "-p",
            "tgrs-py",
            "--features",
            "extension-module",
        ],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "libtgrs.so"
    target = HERE / "tgrs.so"
    shutil.copy2(built, target)


def main():
    build()
    sys.path.insert(0, str(HERE))
    import tgrs

    f = tgrs.Field("2^3")
    assert f.q == 8 and f.p == 2 and f.m == 3
    x = 2  # the polynomial x
    assert f.mul(x, f.inv(x)) == 1
    assert f.add(x, x) == 0  # characteristic 2

    # a GRS code and its dual are both MDS
    c = tgrs.grs("13", list(range(12)), 7)
    assert (c.n, c.k) == (12, 7)
    assert c.min_distance(cap=1 << 27) == 12 - 7 + 1
    assert c.dual().k == 5
    assert c.dual().schur_square().k == 9  # 2(n-k)-1

    # the twisted GF(5) example: non-MDS, certified non-GRS by the oracle
    tw = tgrs.tgrs("5", [0, 1, 2, 3, 4], 2, 2, 1, 1)
    assert tw.min_distance() == 2
    assert tw.oracle_is_grs() is False

    # parity check annihilates the code: every generator row is orthogonal
    h = tgrs.parity_check("5", [0, 1, 2, 3, 4], 2, 2, 1, 1)
    assert len(h) == 3 and all(len(row) == 5 for row in h)
    dual = tw.dual()
    for row in h:
        assert dual.contains(row)

    # certifier cascade + round trip through the verifier
    record = json.loads(tgrs.certify("13", "tgrs", list(range(12)), 6, t=1, h=2, eta=1))
    assert record["verdict"] == "certified-non-grs"
    assert record["certificate"]["kind"] == "dual-square-dim"
    assert tgrs.verify_certificate(json.dumps(record))

    record = json.loads(tgrs.certify("11", "etgrs", list(range(9)), 5, t=2, h=2, eta=2))
    assert record["certificate"]["kind"] == "weight-one"
    assert record["certificate"]["vector"][-1] == 4  # eta^2
    assert tgrs.verify_certificate(json.dumps(record))

    record = json.loads(tgrs.certify("13", "grs", list(range(12)), 7))
    assert record["verdict"] == "grs-consistent"

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
