"""Command handlers for the ``sgbeam`` entry point.

Each module exposes ``register(subparsers)`` and a ``cmd_*`` handler that
returns an exit status.
"""
