import pytest

from spectral_turan import _fallback

try:
    from spectral_turan import _core
except ImportError:  # extension not built
    _core = None

KERNELS = [pytest.param(_fallback, id="python")]
if _core is not None:
    KERNELS.append(pytest.param(_core, id="cython"))

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(params=KERNELS)
def kernel(request):
    return request.param


@pytest.fixture
def criterion():
    """Record one acceptance criterion's outcome for the end-of-run summary."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE[name] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0])):
        passed, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
