import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the NumPy
# implementation in krylovflow.kernels when the extension is absent.
ext_modules = []
if not os.environ.get("KRYLOVFLOW_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "krylovflow._stieltjes",
                    ["src/krylovflow/_stieltjes.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
