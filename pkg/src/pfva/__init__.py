"""Exact computations in the level-k vacuum module of affine sl2 and its parafermion algebra."""

__version__ = "0.1.0"

# bump whenever a change can alter computed bases; cached files from other versions are ignored
ENGINE_VERSION = "pfva-engine-1"
