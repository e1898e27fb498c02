"""Batch jobs: dataset ingestion, feature extraction and the experiment stages."""
