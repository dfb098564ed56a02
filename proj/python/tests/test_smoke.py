import math

import pytest

import bloomstream as bs


def test_geometry_matches_reported_configuration():
    g = bs.derive_geometry(6935, 0.0078)
    assert (g.k, g.p, g.m) == (7, 10009, 70063)
    assert bs.fragment_capacity(0.001, 3, 5) == 1826
    assert bs.next_prime(10008) == 10009
    assert bs.predicted_fp(149, 1, 100) == pytest.approx(1 - (1 - 1 / 149) ** 100)


def test_guarantees():
    g = bs.derive_cm_guarantees(6935, 0.0078)
    assert g["epsilon"] == pytest.approx(math.e * math.log(2) / 6935)
    assert g["delta"] >= g["epsilon"]
    assert bs.base_hash_count(0.01, 0.0001) == 4


def test_invalid_configuration_raises():
    with pytest.raises(ValueError):
        bs.derive_geometry(10, 1.5)
    with pytest.raises(bs.ConfigError):
        bs.SketchParams(lam=1.0)


def test_ingest_and_classify():
    model = bs.BloomStream(bs.SketchParams(n=100, fp=0.01, lam=0.001, density_threshold=3, dims=1, resolution=1.0))
    assert model.classify([0.5], 0.0) is None
    outcomes = [model.ingest([0.5], float(t)) for t in range(4)]
    assert outcomes[0]["density"] == pytest.approx(1.0)
    assert outcomes[-1]["dense"]
    assert outcomes[-1]["event"] == "created"
    assert model.classify([0.5], 4.0) == outcomes[-1]["label"]
    assert model.stats()["instances_seen"] == 4
    with pytest.raises(bs.MonotonicityError):
        model.ingest([0.5], 1.0)


def test_rejected_input():
    model = bs.BloomStream(bs.SketchParams())
    out = model.ingest([float("nan")] * 5, 0.0)
    assert out["rejected"]
    assert model.stats()["rejected"] == 1


def test_purity():
    predicted = [1] * 10 + [2] * 5
    truth = ["A"] * 8 + ["B"] * 2 + ["B"] * 5
    assert bs.purity(predicted, truth) == pytest.approx(0.9)
    assert bs.purity([None, None], ["A", "B"]) is None


def test_synthetic_stream_windows():
    xs, truth, centers = bs.generate_stream(total_instances=6000, seed=3)
    assert len(xs) == len(truth) == 6000
    assert len(centers) == 5
    model = bs.BloomStream(bs.SketchParams())
    windows = bs.evaluate_over_horizons(model, xs, truth, horizon=2000)
    assert [w["instances"] for w in windows] == [2000, 2000, 2000]
    assert all(w["purity"] >= 0.9 for w in windows)

    blind = bs.evaluate_over_horizons(bs.BloomStream(bs.SketchParams()), xs, None, horizon=2000)
    assert all(w["purity"] is None for w in blind)


def test_determinism():
    xs, _, _ = bs.generate_stream(total_instances=1000)
    a = bs.BloomStream(bs.SketchParams())
    b = bs.BloomStream(bs.SketchParams())
    la = [a.ingest(x)["label"] for x in xs]
    lb = [b.ingest(x)["label"] for x in xs]
    assert la == lb
    assert a.stats() == b.stats()
