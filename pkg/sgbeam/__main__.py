"""Allow ``python -m sgbeam``."""

from sgbeam.main import run

run()
