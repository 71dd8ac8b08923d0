"""Smoothed grid density estimation and outlying aspects mining.

This package contains the dataset model, the grid and kernel density
estimators, the density Z-score, the beam search miner, the synthetic
benchmark tooling and the command-line entry points.
"""
