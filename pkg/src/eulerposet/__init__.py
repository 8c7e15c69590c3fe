"""Strong formal subdivisions of Eulerian posets, mapping cylinders and the cd-index."""

__version__ = "0.1.0"
