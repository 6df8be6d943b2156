import json

import numpy as np
import pytest

from confmetric import (
    ModelFile,
    SchemaMismatchError,
    ValidationError,
    load_model,
    save_model,
    schema_fingerprint,
)


def sample_model(rng):
    return ModelFile.create(
        matrix=rng.normal(size=(3, 4)),
        feature_columns=["a", "b", "c", "d"],
        train_config={"lambda1": 0.5, "lambda2": 0.0, "seed": 1},
        train_X=rng.normal(size=(6, 4)),
        train_y=rng.integers(0, 2, size=6),
    )


class TestFingerprint:
    def test_order_sensitive(self):
        assert schema_fingerprint(["a", "b"]) != schema_fingerprint(["b", "a"])

    def test_deterministic(self):
        assert schema_fingerprint(["x", "y"]) == schema_fingerprint(["x", "y"])

    def test_check_compatible(self):
        model = sample_model(np.random.default_rng(0))
        model.check_compatible(["a", "b", "c", "d"])
        with pytest.raises(SchemaMismatchError):
            model.check_compatible(["a", "b", "c"])


class TestRoundTrip:
    def test_bit_exact(self, tmp_path):
        model = sample_model(np.random.default_rng(1))
        path = tmp_path / "m.json"
        save_model(path, model)
        back = load_model(path)
        assert np.array_equal(back.matrix, model.matrix)
        assert np.array_equal(back.train_X, model.train_X)
        assert np.array_equal(back.train_y, model.train_y)
        assert back.feature_columns == model.feature_columns
        assert back.train_config == model.train_config
        assert back.fingerprint == model.fingerprint

    def test_without_training_instances(self, tmp_path):
        model = ModelFile.create(np.eye(2), ["a", "b"], {"lambda1": 0.0})
        path = tmp_path / "m.json"
        save_model(path, model)
        back = load_model(path)
        assert back.train_X is None and back.train_y is None


class TestCorruptFiles:
    def test_invalid_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        with pytest.raises(ValidationError, match="corrupt"):
            load_model(p)

    def test_missing_field(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"format_version": 1, "matrix": [[1.0]]}))
        with pytest.raises(ValidationError, match="corrupt"):
            load_model(p)

    def test_wrong_version(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"format_version": 99}))
        with pytest.raises(ValidationError, match="version"):
            load_model(p)
