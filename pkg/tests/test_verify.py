import pytest

from valex.diagram import parse_gauss, smooth_crossing
from valex.alexander import delta0_diagram, delta_bar
from valex.errors import EmptyComponent, NotAKnot
from valex.twist import TwistSpec
from valex.verify import (
    batch_check,
    builtin_corpus,
    check_conjecture,
    grid_specs,
    run_grid,
    run_law_suite,
)

TREFOIL = "O1+U2+O3+U1+O2+U3+"
VTREFOIL = "O1+U2+U1+O2+"


class TestConjecture:
    def test_worked_example_spec(self):
        v = check_conjecture(TwistSpec((7, 4, 3, 5, 9)))
        assert (v.dbar_at_minus_one, v.odd_writhe, v.holds) == (14, 28, True)

    def test_trefoil(self):
        v = check_conjecture(parse_gauss(TREFOIL))
        assert (v.dbar_at_minus_one, v.odd_writhe, v.holds) == (0, 0, True)

    def test_vt_minus_one(self):
        v = check_conjecture(TwistSpec((-1,)))
        assert (v.dbar_at_minus_one, v.odd_writhe, v.holds) == (0, 0, True)

    def test_not_a_knot(self):
        with pytest.raises(NotAKnot):
            check_conjecture(parse_gauss("O1+;U1+"))
        with pytest.raises(NotAKnot):
            check_conjecture(TwistSpec((1,), "b"))

    def test_accepts_code_string(self):
        assert check_conjecture(VTREFOIL).holds

    def test_machine_line(self):
        line = check_conjecture(parse_gauss(VTREFOIL)).machine()
        assert "ow=2" in line and "holds=true" in line


class TestGrid:
    def test_small_grid_all_pass(self):
        results = run_grid(n_max=2, lo=0, hi=3, workers=1)
        assert results and all(r.passed for r in results)

    def test_deterministic_and_ordered(self):
        a = run_grid(n_max=1, lo=-2, hi=2, workers=1)
        b = run_grid(n_max=1, lo=-2, hi=2, workers=1)
        assert a == b
        subjects = [r.subject for r in a[:: 4]]
        expected = [str(s) for s in grid_specs(1, -2, 2)]
        assert subjects == expected

    def test_signed_identity_implies_conjecture(self):
        results = run_grid(n_max=2, lo=-2, hi=2, workers=1)
        by_spec = {}
        for r in results:
            by_spec.setdefault(r.subject, {})[r.check] = r.passed
        for checks in by_spec.values():
            if checks["signed_odd_writhe_identity"]:
                assert checks["conjecture_2dbar_eq_ow"]

    def test_parallel_matches_serial(self):
        specs = grid_specs(2, -1, 2)
        serial = run_grid(specs=specs, workers=1)
        parallel = run_grid(specs=specs, workers=2)
        assert serial == parallel

    def test_va_threads_caps_workers(self, monkeypatch):
        from valex.verify import worker_count

        monkeypatch.setenv("VA_THREADS", "1")
        assert worker_count() == 1
        monkeypatch.setenv("VA_THREADS", "9999")
        assert worker_count() >= 1
        monkeypatch.setenv("VA_THREADS", "junk")
        assert worker_count() >= 1


class TestLawSuite:
    def test_builtin_corpus_passes(self):
        results = run_law_suite()
        bad = [r for r in results if not r.passed]
        assert not bad, "\n".join(str(r) for r in bad)

    def test_corpus_contents(self):
        names = [name for name, _ in builtin_corpus()]
        assert "VHL+" in names and "VHL-" in names
        assert "virtual_trefoil" in names and "trefoil" in names
        assert "VT(1,1,1,1)" in names

    def test_divisibility_of_smoothed_links(self):
        # the (u-1)(v-1) divisibility also covers links made by smoothing
        for name, d in builtin_corpus():
            for cid in d.crossings:
                try:
                    s = smooth_crossing(d, cid)
                except EmptyComponent:
                    continue
                delta_bar(delta0_diagram(s), is_knot=s.is_knot)  # must not raise


class TestBatch:
    def test_hand_file(self, tmp_path):
        path = tmp_path / "knots.txt"
        path.write_text(
            "# two classical knots and two virtual ones\n"
            "\n"
            f"{TREFOIL}\n"
            f"{VTREFOIL}\n"
            "O1+U2-O4-U1+O3+U4-O2-U3+\n"
            "U2+U1+O2+O1+\n"
        )
        summary = batch_check(path)
        assert summary.checked == 4
        assert summary.held == 4
        assert summary.ignored == 2
        assert not summary.errors
        assert summary.ok

    def test_malformed_lines_reported(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text(f"{VTREFOIL}\nO1+O1+\nO1+;U1+\n")
        summary = batch_check(path)
        assert summary.checked == 1
        assert len(summary.errors) == 2
        assert summary.errors[0][0] == 2
        assert not summary.ok

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        summary = batch_check(path)
        assert summary.checked == 0 and summary.ok

    def test_accepts_iterable(self):
        summary = batch_check([f"{VTREFOIL}\n", "# note\n"])
        assert summary.checked == 1 and summary.ignored == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            batch_check(tmp_path / "nope.txt")
