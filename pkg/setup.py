import os

from setuptools import setup

ext_modules = []
if not os.environ.get("TATEGB_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/tategb/_corecy.pyx"],
            language_level="3",
            compiler_directives={"boundscheck": False, "wraparound": False},
        )
    except ImportError:
        # no Cython: install with the pure-Python kernel only
        ext_modules = []

setup(ext_modules=ext_modules)
