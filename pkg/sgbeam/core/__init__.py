"""Core package initialization.

This package contains configuration, logging, metrics, and exception-handling
utilities used across the application.
"""
