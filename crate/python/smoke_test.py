#!/usr/bin/env python3
"""End-to-end smoke test for the capsets_py extension module.

Builds the cdylib with cargo, stages it under python/_build where the
interpreter can import it, then walks the public API: builders,
verifiers, products, plans, bounds, and the CNF encoder round trip.

Run from anywhere:  python3 python/smoke_test.py
"""

import math
import shutil
import subprocess
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
STAGE = Path(__file__).resolve().parent / "_build"


def stage_module() -> None:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "capsets-py"],
        cwd=REPO,
        check=True,
    )
    built = REPO / "target" / "release" / "libcapsets_py.so"
    if not built.exists():
        sys.exit(f"expected cdylib at {built}")
    STAGE.mkdir(exist_ok=True)
    shutil.copy2(built, STAGE / "capsets_py.so")
    sys.path.insert(0, str(STAGE))


def expect_raises(exc, fn, *args):
    try:
        fn(*args)
    except exc:
        return
    raise AssertionError(f"{fn.__name__}{args} should have raised {exc.__name__}")


def main() -> None:
    stage_module()
    import capsets_py as cp

    print(f"capsets_py {cp.__version__}")

    # Builders and verifiers.
    chain5 = cp.build_chain(5)
    assert len(chain5) == 5 and all(len(p) == 5 for p in chain5)
    assert cp.is_recursively_admissible(chain5) is None
    assert cp.is_constant_weight(chain5, 5, 4) is None

    low = cp.build_low_weight(4, 2)
    assert len(low) == 6  # C(4, 2) supports
    assert cp.is_constant_weight(low, 4, 2) is None

    bad = cp.is_admissible(["011", "101", "110"])
    assert bad is not None and "triple condition" in bad
    print("builders / verifiers ok")

    # Cap sets and extendable collections.
    a0, a1, a2 = cp.build_edel6()
    assert (len(a0), len(a1), len(a2)) == (12, 112, 112)
    assert cp.is_cap_set(a1) is None
    assert cp.is_extendable(a0, a1, a2) is None

    witness = cp.is_cap_set(["0", "1", "2"])
    assert witness == ("0", "1", "2")
    broken = cp.is_extendable(["0"], ["1"], ["2"])
    assert broken is not None and "0+1+2=0" in broken
    print("cap sets / extendable collections ok")

    # Extended product: 2 patterns of weight 1 over the 6-dim collection.
    chain2 = cp.build_chain(2)
    count = cp.extended_product_count(chain2, a0, a1, a2)
    assert count == str(2 * 12 * 112)
    product = cp.extended_product(chain2, a0, a1, a2)
    assert len(product) == 2688 and len(product[0]) == 12
    assert cp.is_cap_set(product) is None
    print("extended product ok")

    # Meta extension of admissible sets.
    meta = cp.meta_extend(chain2, ["01"], ["12"], ["21"])
    assert len(meta) == 2 and all(len(p) == 4 for p in meta)
    assert cp.is_admissible(meta) is None

    s0 = cp.search_meta_s0(["12"], ["21"], 1, 2)
    assert sorted(s0) == ["01", "10"]
    assert cp.is_meta_extendable(s0, ["12"], ["21"]) is None
    assert cp.search_meta_s0(["12"], ["21"], 1, 5) is None
    print("meta extension ok")

    # Plans and bounds.
    plan = "base 6 12 112\nrstep 6\nfinal 11 7\n"
    dim, size = cp.plan_count(plan)
    assert dim == 396
    assert int(size) == math.comb(11, 7) * 6**4 * 12**4 * 112**62
    report = cp.bound_for_plan(plan)
    assert report["dimension"] == 396
    assert report["bound"].startswith("2.217981")
    assert report["size"] == size

    assert cp.nth_root_bound("124", 6) == "2.233076566"
    alpha, limit = cp.asymptotic_limit(6, 12, 112)
    assert alpha == "28/31" and limit == "2.233076566"
    assert cp.entropy(0.5) == 1.0
    print("plans / bounds ok")

    # CNF encoding round trip and the search oracle.
    dimacs = cp.encode_dimacs(2, 1)
    assert "p cnf 2 0" in dimacs
    assert "p cnf 243705 1076865" in cp.encode_dimacs(11, 7, "i11_7")
    decoded = cp.decode_model([-1, -2], 2, 1)
    assert sorted(decoded) == ["01", "10"]

    found = cp.brute_force_admissible(4, 3)
    assert found is not None and len(found) == 4
    assert cp.is_constant_weight(found, 4, 3) is None
    print("sat encoding / oracle ok")

    # Error mapping.
    expect_raises(ValueError, cp.is_cap_set, [])
    expect_raises(ValueError, cp.is_cap_set, ["0", "12"])
    expect_raises(ValueError, cp.build_low_weight, 4, 9)
    expect_raises(ValueError, cp.encode_dimacs, 5, 4, "i11_7")
    print("error mapping ok")

    print("smoke test passed")


if __name__ == "__main__":
    main()
