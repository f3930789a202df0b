from fibertool import count, curve, fixtures


def names_failing():
    return {r.name for r in fixtures.run_fixtures() if not r.passed}


def test_all_fixtures_pass():
    assert names_failing() == set()


def test_perturbed_bound_constant_is_caught(monkeypatch):
    real = count.bound_M
    monkeypatch.setattr(count, "bound_M", lambda p, B, eps: real(p, B, eps) * 9 / 10)
    assert "epsilon-necessity" in names_failing()


def test_broken_lattice_gcd_is_caught(monkeypatch):
    monkeypatch.setattr(curve, "lattice_scale", lambda param: 1)
    assert "oracle-equivalence" in names_failing()


def test_crash_becomes_failure(monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("boom")

    monkeypatch.setattr(curve, "bruteforce_points", boom)
    failing = fixtures.run_fixtures()
    assert any(r.name == "oracle-equivalence" and "boom" in r.detail for r in failing)
