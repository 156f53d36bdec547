"""Smoke test for the ccm extension module.

Build and install first, e.g.
    maturin build --release -m crates/python/Cargo.toml && pip install target/wheels/ccm-*.whl
"""

import ccm


def main():
    assert ccm.syrgen(35) == [35, 53, 5, 1]
    assert ccm.col_seq(35) == [35, 106, 53, 160, 80, 40, 20, 10, 5, 16, 8, 4, 2, 1]
    assert ccm.syr(35) == 53 and ccm.col_step(35) == 106 and ccm.v2(40) == 3

    assert ccm.locate(35) == (5, 0, 8)
    assert ccm.locate(853) == (5, 4, 0)
    assert ccm.entry(5, 4, 0) == 853
    assert ccm.residue6(853) == "r1"
    big = 2**200 + 1
    a, p, q = ccm.locate(big)
    assert ccm.entry(a, p, q) == big
    assert ccm.syr_via_matrix(big) == ccm.syr(big)
    assert ccm.syrgen(big) == ccm.syr_seq_oracle(big)

    assert ccm.connection(1, 1, 3, 0) == 14
    assert ccm.connection(5, 1, 2, 1) == 24
    assert ccm.connection(1, 1, 1, 0) is None

    st = ccm.stats(27)
    assert (st["stopping_time"], st["max_term"]) == (111, 9232)
    try:
        ccm.col_seq(27, budget=10)
    except ccm.Undecided:
        pass
    else:
        raise AssertionError("expected Undecided")
    assert len(ccm.col_seq(27, budget=10, strict=False)) == 11

    tree = ccm.Tree(2, max_p=4)
    assert tree.level(1) == [(5, 0), (1, 14), (5, 56)]
    assert "via=853" in tree.to_dot()
    assert tree.to_dict()["root"] == ["1", "0"]
    assert ccm.path_to_root(53)[-1][:2] == (1, 0)

    assert ccm.table_a(4)[1][2] == [7, 17, 5, 23]
    report = ccm.verify(["T2.9", "T2.12"], bound=10_000)
    assert report["passed"], report
    sweep = ccm.sweep(1, 10_000)
    assert sweep["undecided"] == 0 and sweep["max_stopping_time"]["seed"] == 6171

    print("ccm smoke test ok:", tree)


if __name__ == "__main__":
    main()
