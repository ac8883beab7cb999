import pytest

from thematic.corpus import Corpus, data_path, ingest

S4_TOKENS = [
    ["medical", "virus", "emergency"],
    ["medical", "virus", "lockdown"],
    ["care", "panic"],
    ["virus", "panic"],
]

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed
    if report.when == "call" or failed:
        prev = _criteria.get(number, (title, True))
        _criteria[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}")


@pytest.fixture
def s4_path():
    return data_path("s4.csv")


@pytest.fixture
def s4(s4_path):
    return ingest(s4_path, "csv")


@pytest.fixture
def s4_docs():
    return [list(d) for d in S4_TOKENS]


def corpus_of(token_lists):
    return Corpus.from_tokens(token_lists)
