import json

import pytest

from sologic.classical import FALSE, TRUE
from sologic.kripke import KripkeModel2, generated_families, peirce_countermodel
from sologic.report import ITEMS, Item, Report, paper_examples


@pytest.mark.parametrize("name", list(ITEMS))
def test_item_verified(name):
    r = paper_examples([name])
    assert r.ok, r.render()
    assert r.items[0].evidence


def test_unknown():
    with pytest.raises(KeyError):
        paper_examples(["coding-example", "missing"])


def test_empty():
    assert paper_examples([""]).items == ()


def test_full_peirce_model_flips_items():
    K, _ = peirce_countermodel()
    roots = [(FALSE, TRUE), (FALSE, FALSE), (TRUE, TRUE)]
    full = KripkeModel2(K.poset, K.domains, {0: generated_families(K.poset, roots)}, names=K.names)
    r = paper_examples(["peirce-model-not-full", "peirce-not-forced", "peirce-refuted-at-root"], full)
    status = {i.name: i.ok for i in r.items}
    assert status == {"peirce-model-not-full": False, "peirce-not-forced": True, "peirce-refuted-at-root": True}


def test_render():
    r = Report((Item("a", "verified", "x"), Item("bbb", "failed", "y")))
    assert r.render().splitlines() == ["a    verified  x", "bbb  failed  y"]
    assert [json.loads(line)["name"] for line in r.render("lines").splitlines()] == ["a", "bbb"]
    assert [i.name for i in r.failures()] == ["bbb"]
