from ecdesigns.paper_suite import CHECKS, SuiteConfig, run_suite


def test_fast_suite_skips_stress_and_fails_only_on_c07():
    rep = run_suite(fast=True)
    ids = [c["id"] for c in rep["checks"]]
    assert ids == [c.id for c in CHECKS if not c.stress]
    assert [c["id"] for c in rep["checks"] if not c["passed"]] == ["C07"]
    assert not rep["passed"] and rep["seed"] == 20190225


def test_config_drives_sample_sizes():
    cfg = SuiteConfig(seed=1, fast=True, kohler_subsets=5, random_graph_count=7, random_graph_max_n=12)
    rep = run_suite(config=cfg)
    by_id = {c["id"]: c for c in rep["checks"]}
    assert "netto13: 5 random subsets" in by_id["C09"]["items"]
    assert "fast 2-e.c. == brute force (7 random graphs)" in by_id["C11"]["items"]
    assert by_id["C05"]["passed"] and rep["seed"] == 1


def test_crashing_check_is_reported():
    from ecdesigns.paper_suite import Check

    def boom(cfg):
        raise RuntimeError("no")

    res = Check("Z", "t", "c", 1.0, boom)()
    assert not res.passed and res.error == "RuntimeError: no"
