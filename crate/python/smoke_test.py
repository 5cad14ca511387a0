"""Smoke test for the pyvagroup extension module.

Build first:
    cargo build -p pyvagroup --release --features extension-module
then run:
    python3 python/smoke_test.py
"""

import importlib.util
import os
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [os.environ.get("PYVAGROUP_LIB")] + [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libpyvagroup.so", "libpyvagroup.dylib", "pyvagroup.dll")
    ]
    for c in candidates:
        if c and pathlib.Path(c).is_file():
            tmp = pathlib.Path(tempfile.mkdtemp()) / "pyvagroup.so"
            shutil.copy(c, tmp)
            spec = importlib.util.spec_from_file_location("pyvagroup", tmp)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module
    sys.exit("pyvagroup library not found; build it with cargo first")


def main():
    pv = load_module()

    names = pv.catalog_names()
    assert len(names) == 22 and names[0] == "p1", names

    p2gg = pv.Group.load("p2gg")
    assert (p2gg.rank, p2gg.point_group_order) == (2, 4)
    assert p2gg.abelianization() == (0, ["2", "4"])
    assert p2gg.has_torsion()

    pg = pv.Group.load("pg")
    assert not pg.has_torsion()
    assert pg.abelianization_str() == "Z x Z2"

    principal = pv.Group.load("p6mm").principal_character()
    assert principal["status"] == "yes" and principal["orbit_size"] == 12, principal

    no = pv.Group.load("not-crystal-like").principal_character()
    assert no["status"] == "no" and no["orbit_size_bound"] == 3, no

    rep = pv.Group.load("p4").induce("1/3,1/5")
    assert rep.dimension == 4 and rep.irreducibility == "irreducible", rep
    control = pv.Group.load("p2").induce("0,0")
    assert control.irreducibility == "reducible" and control.average == "2"

    g1 = pv.Group.load("swap-pair-g1")
    g2 = pv.Group.load("swap-pair-g2")
    for n in range(1, 5):
        assert g1.dimension_census(n) == g2.dimension_census(n)

    report = pv.compare(pv.Group.load("cm"), pg)
    assert report["verdict"] == "separated_by_reference_k_theory", report["verdict"]

    lattice = pv.Group.from_definition("rank = 2\n")
    f = lattice.fingerprint()
    assert f["point_group_order_recovered"] == 1 and f["h1"]["display"] == "Z^2"

    survey = pv.survey_wallpaper()
    assert survey["all_separated"] and len(survey["pairs"]) == 136

    try:
        pv.Group.load("no-such-group")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown group accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
