import os

import pytest

import golden_cases

CASES = golden_cases.cases()


@pytest.mark.parametrize('name', sorted(CASES))
def test_golden(name):
    path = os.path.join(golden_cases.GOLDEN_DIR, name)
    with open(path, encoding='utf-8') as fh:
        assert CASES[name] == fh.read()


def test_golden_dir_has_no_strays():
    assert sorted(os.listdir(golden_cases.GOLDEN_DIR)) == sorted(CASES)
