import pytest

from brauerkit import build_standard_ledger


@pytest.fixture(scope="session")
def derived_standard_ledger():
    """The full bound ledger, built and driven to its fixpoint once."""
    led = build_standard_ledger()
    entries = led.derive_all()
    return led, entries
