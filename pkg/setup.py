"""Build hooks: compile the Sturm-count kernel when a toolchain is present.

The extension is optional; without it the package falls back to the pure
Python kernel in ``gsdirac._sturm_py`` at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("gsdirac._sturmcy", ["src/gsdirac/_sturmcy.pyx"], optional=True)],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
