"""Estimators, scoring, search and benchmark services."""
