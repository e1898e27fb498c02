"""Artifact storage backends."""
from .interface import ArtifactStore, LocalArtifactStore, StagedWrites

__all__ = ["ArtifactStore", "LocalArtifactStore", "StagedWrites"]
