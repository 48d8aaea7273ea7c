"""Build glue for the optional compiled kernel.

The extension is a pure speedup: if Cython or a C compiler is missing, the
install falls back to the pure-Python kernel (valex._pykernel) selected at
import time by valex._backend.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "valex._speedups",
                ["src/valex/_speedups.pyx"],
                optional=True,
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
