from __future__ import annotations

from collections import Counter

import pytest

from tabinv.bijections import (
    phi1_general,
    phi1_rect,
    phi2_general,
    phi2_rect,
    rewind,
    verify_hook_lemma,
    verify_tail_conjecture,
)
from tabinv.enumeration import inverted_with_inversions, standard_tableaux
from tabinv.models import (
    BumpStep,
    InversionPair,
    Partition,
    Slide,
    StairStepMove,
    Tableau,
)
from tabinv.partition import (
    partitions_up_to,
    rectangle,
    stair_step_shape,
    stair_step_shapes,
    standard_count_hook,
    triangular,
)
from tabinv.tableau import inversion_count, is_standard, parse_tableau


def _t(text: str) -> Tableau:
    return parse_tableau(text).unwrap()


RECTANGLES: tuple[tuple[int, int], ...] = ((2, 2), (2, 3), (3, 2), (3, 3), (4, 2))


class TestForwardRectangle:
    def test_square_example(self) -> None:
        image, trace = phi1_rect(_t("1 2 6 / 4 5 7 / 3 8 9")).unwrap()
        assert image == _t("1 2 5 6 / 3 4 7 / 8 9")
        assert trace.inversion == InversionPair(column=1, small=3, large=4)
        assert trace.flip_row == 2
        assert trace.bumps == (
            BumpStep(cell=(2, 2), incoming=4, outgoing=5),
            BumpStep(cell=(1, 3), incoming=5, outgoing=6),
            BumpStep(cell=(1, 4), incoming=6, outgoing=None),
        )
        assert trace.slides == (
            Slide(value=8, source=(3, 2), target=(3, 1)),
            Slide(value=9, source=(3, 3), target=(3, 2)),
        )
        assert trace.added == (1, 4)
        assert trace.removed == (3, 3)
        assert trace.distinguished == (4, 5, 6)

    def test_wrong_inversion_count(self) -> None:
        res = phi1_rect(_t("1 2 6 / 3 5 8 / 4 7 9"))
        assert not res.ok and res.error is not None
        assert res.error.code == "wrong-inversion-count"

    def test_wrong_shape(self) -> None:
        res = phi1_rect(_t("2 3 / 1"))
        assert not res.ok and res.error is not None and res.error.code == "wrong-shape"

    @pytest.mark.parametrize("m, n", RECTANGLES)
    def test_bijection_onto_stair_step(self, m: int, n: int) -> None:
        ones = inverted_with_inversions(rectangle(m, n), 1).unwrap()
        stair = stair_step_shape(m, n)
        images: set[Tableau] = set()
        for t in ones:
            image, trace = phi1_rect(t).unwrap()
            assert image.shape == stair
            assert is_standard(image)
            assert list(trace.distinguished) == sorted(set(trace.distinguished))
            assert rewind(image, trace) == t
            assert phi2_rect(image).unwrap()[0] == t
            images.add(image)
        assert len(images) == len(ones) == standard_count_hook(stair)


class TestReverseRectangle:
    def test_stair_step_example(self) -> None:
        preimage, trace = phi2_rect(_t("1 2 4 6 / 3 7 9 / 5 8")).unwrap()
        assert preimage == _t("3 4 6 / 1 2 7 / 5 8 9")
        assert trace.inversion == InversionPair(column=2, small=2, large=4)
        assert inversion_count(preimage) == 1

    def test_trace_matches_forward_trace(self) -> None:
        standard = _t("1 2 4 6 / 3 7 9 / 5 8")
        preimage, backward = phi2_rect(standard).unwrap()
        image, forward = phi1_rect(preimage).unwrap()
        assert image == standard
        assert backward == forward

    def test_wrong_shape(self) -> None:
        res = phi2_rect(_t("1 2 3 / 4 5 6"))
        assert not res.ok and res.error is not None and res.error.code == "wrong-shape"

    def test_not_standard(self) -> None:
        res = phi2_rect(_t("1 2 4 6 / 3 7 9 / 8 5"))
        assert not res.ok and res.error is not None and res.error.code == "input-not-standard"

    @pytest.mark.parametrize("m, n", RECTANGLES)
    def test_inverse_on_every_standard_tableau(self, m: int, n: int) -> None:
        for s in standard_tableaux(stair_step_shape(m, n)):
            preimage, _ = phi2_rect(s).unwrap()
            assert preimage.shape == rectangle(m, n)
            assert inversion_count(preimage) == 1
            assert phi1_rect(preimage).unwrap()[0] == s


class TestGeneral:
    def test_four_target_shapes(self) -> None:
        shape = Partition((4, 3, 2, 2))
        tally: Counter[StairStepMove] = Counter()
        for t in inverted_with_inversions(shape, 1).unwrap():
            move, image, trace = phi1_general(t).unwrap()
            assert image.shape == move.apply(shape)
            assert is_standard(image)
            assert rewind(image, trace) == t
            tally[move] += 1
        expected = {move: standard_count_hook(moved) for move, moved in stair_step_shapes(shape)}
        assert dict(tally) == expected

    def test_rectangle_agrees_with_rectangular_map(self) -> None:
        t = _t("3 4 6 / 1 2 7 / 5 8 9")
        move, image, trace = phi1_general(t).unwrap()
        assert move == StairStepMove(source_row=3, target_row=1)
        assert (image, trace) == phi1_rect(t).unwrap()

    @pytest.mark.parametrize("shape", tuple(partitions_up_to(6)), ids=str)
    def test_counts_and_round_trip(self, shape: Partition) -> None:
        ones = inverted_with_inversions(shape, 1).unwrap()
        assert len(ones) == sum(standard_count_hook(moved) for _, moved in stair_step_shapes(shape))
        for t in ones:
            move, image, _ = phi1_general(t).unwrap()
            assert phi2_general(move, image, shape).unwrap()[0] == t

    @pytest.mark.parametrize("shape", [Partition((4, 3, 2, 2)), Partition((3, 2, 1))], ids=str)
    def test_reverse_on_every_standard_tableau(self, shape: Partition) -> None:
        for move, moved in stair_step_shapes(shape):
            for s in standard_tableaux(moved):
                preimage, _ = phi2_general(move, s, shape).unwrap()
                assert preimage.shape == shape
                back_move, image, _ = phi1_general(preimage).unwrap()
                assert (back_move, image) == (move, s)

    def test_hook_shape_from_column(self) -> None:
        move, image, _ = phi1_general(_t("2 / 1")).unwrap()
        assert move == StairStepMove(source_row=2, target_row=1)
        assert image == _t("1 2")

    def test_shape_mismatch(self) -> None:
        res = phi2_general(
            StairStepMove(source_row=2, target_row=1), _t("1 2 5 6 / 3 4 7 / 8 9"), rectangle(3, 3)
        )
        assert not res.ok and res.error is not None and res.error.code == "shape-mismatch"

    def test_wrong_inversion_count(self) -> None:
        res = phi1_general(_t("1 2 8 / 4 5 6 / 3 7 9"))
        assert not res.ok and res.error is not None
        assert res.error.code == "wrong-inversion-count"

    @pytest.mark.parametrize("text", ["3 1 / 2 4", "2 4 3 / 1 5", "1 2 / 5 3 / 4"])
    def test_rejects_rows_out_of_order(self, text: str) -> None:
        res = phi1_general(_t(text))
        assert not res.ok and res.error is not None
        assert res.error.code == "input-not-standard"


class TestHookLemma:
    def test_four_rows(self) -> None:
        report = verify_hook_lemma(4, 4).unwrap()
        assert report.status == "pass"
        assert report.params["column_count"] == 5
        assert report.params["hook_count"] == 5

    def test_smallest(self) -> None:
        report = verify_hook_lemma(2, 1).unwrap()
        assert report.passed
        assert report.params["column_count"] == report.params["hook_count"] == 1

    def test_top(self) -> None:
        report = verify_hook_lemma(4, 6).unwrap()
        assert report.passed
        assert report.params["column_count"] == report.params["hook_count"] == 1

    def test_below_threshold(self) -> None:
        report = verify_hook_lemma(4, 3).unwrap()
        assert report.status == "out-of-hypothesis"
        assert report.params["reason"] == "threshold-violation"

    @pytest.mark.parametrize(
        "m, i",
        [(m, i) for m in range(2, 7) for i in range(triangular(m - 2) + 1, triangular(m - 1) + 1)],
    )
    def test_whole_range(self, m: int, i: int) -> None:
        report = verify_hook_lemma(m, i).unwrap()
        assert report.passed
        for row in report.evidence:
            assert row["match"]

    def test_domain(self) -> None:
        res = verify_hook_lemma(1, 0)
        assert not res.ok and res.error is not None and res.error.code == "domain"


class TestTailConjecture:
    def test_square(self) -> None:
        report = verify_tail_conjecture(3, 3).unwrap()
        assert report.passed
        assert report.params["threshold"] == 3
        assert report.params["empirical_start"] == 4
        tail = [row["rectangle"] for row in report.evidence if row["in_tail"]]
        assert tail == [357, 222, 103, 35, 8, 1]

    def test_three_by_two(self) -> None:
        report = verify_tail_conjecture(3, 2).unwrap()
        assert report.passed
        assert report.params["empirical_start"] == 3

    @pytest.mark.parametrize("m, n", [(2, 1), (2, 2), (2, 3), (3, 1)])
    def test_small(self, m: int, n: int) -> None:
        assert verify_tail_conjecture(m, n).unwrap().passed

    def test_budget(self) -> None:
        res = verify_tail_conjecture(3, 3, budget=100)
        assert not res.ok and res.error is not None and res.error.code == "budget-exceeded"
