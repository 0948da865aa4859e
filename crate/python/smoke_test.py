"""End-to-end check of the `lasker` extension module.

Build it first, e.g. `maturin develop -m crates/python/Cargo.toml
--features extension-module`, then run this file.
"""

import lasker

ZZ = {"kind": "integers"}
Z12 = {"kind": "zmod", "n": 12}


def main():
    zz = lasker.Ring(ZZ)
    assert zz.size is None
    six = zz.ideal(6)
    away_from_3 = zz.mset({"complement_of_prime": 3})
    assert lasker.check("irreducible", zz, six)["verdict"] is False
    assert lasker.check("s-irreducible", zz, six, away_from_3)["verdict"] is True
    cert = lasker.check("s-primary", zz, six, away_from_3)
    assert cert["verdict"] and cert["witness"] == 2, cert

    r = lasker.Ring(Z12)
    assert r.size == 12
    ideals = r.ideals()
    assert [str(i) for i in ideals] == ["(0)", "(6)", "(4)", "(3)", "(2)", "(1)"]
    assert str(r.nilradical()) == "(6)"
    zero = r.ideal([0])
    one = r.mset_trivial()
    assert str(r.ideal([4]) & r.ideal([3])) == "(0)"
    assert str(zero.radical()) == "(6)"

    d = lasker.decompose(zero, one)
    assert [c["Q"] for c in d["components"]] == [{"gens": [4]}, {"gens": [3]}], d
    assert d["minimal"]["minimal"]

    redundant = {
        "target": {"gens": [0]},
        "components": [{"Q": {"gens": [g]}} for g in (4, 3, 2)],
    }
    report = lasker.verify_minimality(r, one, redundant)
    assert report["minimal"] is False and report["redundant"] == [2], report
    assert len(lasker.minimalize(r, one, redundant)["components"]) == 2

    boolean = lasker.Ring({"kind": "product", "factors": [{"kind": "zmod", "n": 2}] * 2})
    s = boolean.mset([[1, 0]])
    cert = lasker.check("s-primary", boolean, boolean.ideal([]), s)
    assert cert["witness"] == [1, 0], cert

    try:
        lasker.check("s-primary", zz, zz.ideal(8), away_from_3)
    except ValueError:
        pass
    else:
        raise AssertionError("8Z meets Z minus 3Z")

    corpus = {"moduli": [2, 3, 4, 6, 8, 12], "product_max_size": 8, "integer_samples": 0}
    reports = lasker.verify("all", corpus)
    assert all(r["status"] == "pass" for r in reports), [r["status"] for r in reports]
    assert "s-noetherian-spectrum" in lasker.PREDICATES
    print("smoke test passed:", ", ".join(f"{r['suite']} {r['instances']}" for r in reports))


if __name__ == "__main__":
    main()
