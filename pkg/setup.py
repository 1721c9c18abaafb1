"""Build script.  The compiled kernel is optional: if Cython or a C compiler is
unavailable the package installs anyway and falls back to the pure-Python engine
at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "chordgenus.kernels._compiled",
                ["src/chordgenus/kernels/_compiled.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
