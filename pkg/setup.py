"""Build glue for the compiled search kernels.

The hot loops (exact cover, hill climbing, edge-coloring search) live in
src/psts/kernels/_core.pyx and are compiled with Cython.  A pure-Python
twin of the same kernels ships alongside; the package falls back to it at
import time if the extension is missing, so a failed build still yields a
working (slower) installation when this file is bypassed.
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "psts.kernels._core",
        ["src/psts/kernels/_core.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
