"""Pydantic schemas for configuration, reports and benchmark rows."""
