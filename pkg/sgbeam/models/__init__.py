"""Domain models: datasets, subspaces, bit sets, bin grids and ground truth."""
