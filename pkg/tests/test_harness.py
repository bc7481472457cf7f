import numpy as np
import pytest

from numrad.harness import (
    CorpusSpec,
    SweepConfig,
    generate_corpus,
    golden_regression,
    run_equivalence_sweep,
)
from numrad.radius import numerical_radius, operator_norm

from conftest import shift_matrix


class TestCorpus:
    def test_deterministic(self):
        spec = CorpusSpec(seed=99, count=5, dim=3, target="radius", target_value=0.8)
        a = generate_corpus(spec)
        b = generate_corpus(spec)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)

    def test_radius_scaling(self):
        spec = CorpusSpec(seed=7, count=4, dim=4, target="radius", target_value=1.3)
        for A in generate_corpus(spec):
            assert abs(numerical_radius(A).value - 1.3) <= 1.3e-9

    def test_norm_scaling(self):
        spec = CorpusSpec(seed=7, count=4, dim=4, target="norm", target_value=0.5)
        for A in generate_corpus(spec):
            assert abs(operator_norm(A) - 0.5) <= 1e-9

    def test_nilpotent_shift_prescale(self):
        spec = CorpusSpec(
            seed=0, count=1, dim=4, target="norm", target_value=1.0, ensemble="nilpotent_shift"
        )
        (A,) = generate_corpus(spec)
        assert np.allclose(A, shift_matrix(4))

    def test_hermitian_radius_equals_norm(self):
        spec = CorpusSpec(
            seed=11, count=3, dim=3, target="radius", target_value=1.0, ensemble="hermitian"
        )
        for A in generate_corpus(spec):
            assert np.abs(A - A.conj().T).max() <= 1e-12
            assert abs(operator_norm(A) - 1.0) <= 1e-8

    def test_unitary_ensemble(self):
        spec = CorpusSpec(
            seed=4, count=2, dim=3, target="norm", target_value=1.0, ensemble="unitary"
        )
        for A in generate_corpus(spec):
            assert operator_norm(A.conj().T @ A - np.eye(3)) <= 1e-9

    def test_zero_target_rejected(self):
        with pytest.raises(ValueError):
            generate_corpus(CorpusSpec(seed=0, count=1, dim=2, target="norm", target_value=0.0))

    def test_unknown_ensemble_rejected(self):
        with pytest.raises(ValueError):
            generate_corpus(
                CorpusSpec(seed=0, count=1, dim=2, target="norm", target_value=1.0, ensemble="bad")
            )


class TestSweep:
    def test_contractive_radius_corpus_clean(self):
        corpus = generate_corpus(
            CorpusSpec(seed=21, count=10, dim=3, target="radius", target_value=0.9)
        )
        summary = run_equivalence_sweep(corpus, SweepConfig(n_max=6, ando_check=True))
        assert summary.clean
        assert summary.inconclusive_count == 0
        for row in summary.rows:
            assert row.results["radius_tridiagonal"] is True
            assert row.results["witness"] is True

    def test_expanding_radius_corpus_refuted(self):
        corpus = generate_corpus(
            CorpusSpec(seed=22, count=10, dim=3, target="radius", target_value=1.2)
        )
        summary = run_equivalence_sweep(corpus, SweepConfig(n_max=6, cap=32, ando_check=True))
        assert summary.clean
        for row in summary.rows:
            assert row.results["radius_tridiagonal"] is True  # refutation found
            assert row.results["witness"] is False  # infeasible upfront

    def test_empty_config_filters(self):
        corpus = generate_corpus(
            CorpusSpec(seed=23, count=2, dim=2, target="radius", target_value=0.5)
        )
        summary = run_equivalence_sweep(
            corpus, SweepConfig(norm_checks=False, radius_checks=False)
        )
        assert summary.clean
        assert all(not row.results for row in summary.rows)

    def test_deterministic_body(self):
        corpus = generate_corpus(
            CorpusSpec(seed=24, count=3, dim=2, target="radius", target_value=0.7)
        )
        s1 = run_equivalence_sweep(corpus, SweepConfig(n_max=4))
        s2 = run_equivalence_sweep(corpus, SweepConfig(n_max=4))
        for r1, r2 in zip(s1.rows, s2.rows):
            assert r1.results == r2.results
            assert r1.norm == r2.norm and r1.radius == r2.radius
            assert r1.min_eigenvalue == r2.min_eigenvalue


class TestGolden:
    def test_all_values(self):
        rep = golden_regression()
        assert rep.all_ok
        named = {c.name: c for c in rep.checks}
        assert abs(named["radius_shift4"].value - (1 + np.sqrt(5)) / 4) <= 1e-7
        assert abs(named["radius_shift4_squared"].value - 0.5) <= 1e-7
        assert abs(named["radius_shift4_cubed"].value - 0.5) <= 1e-7
        assert abs(named["radius_two_nilpotent"].value - 1.0) <= 1e-7
        assert rep.strict_violation
        assert rep.power_bound_ok

    def test_runs_fast(self):
        import time

        t0 = time.time()
        golden_regression()
        assert time.time() - t0 < 1.0
