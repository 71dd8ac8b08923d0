"""File-based persistence for datasets and ground-truth sidecars."""
