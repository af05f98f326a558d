import json
from pathlib import Path

import pytest
from hypothesis import settings

from oracles import ACCEPTANCE_LINES

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"


@pytest.fixture
def case_study_path():
    return PROBLEMS / "case_study.json"


@pytest.fixture
def case_study_doc(case_study_path):
    return json.loads(case_study_path.read_text())


@pytest.fixture
def write_json(tmp_path):
    def _write(doc, name="problem.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return path

    return _write


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
